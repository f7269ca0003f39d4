"""Dense-matrix reference path for arbitrary site subsets.

Builds <phi_a phi_b> and <pi_a pi_b> for any list of lattice sites and gets
the symplectic spectrum from the symmetric matrix Phi^1/2 Pi Phi^1/2, whose
eigenvalues are the squares of the eigenvalues of sqrt(Phi Pi). Nothing here
uses circulant structure, so it can arbitrate the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import EigensolverStalled, InvalidCorrelatorError, InvalidInput
from .model import ModeSpectrum, thermal_occupations
from .entropy import entropy_from_spectrum
from .symplectic import SymplecticSpectrum

MAX_DENSE_SITES = 512
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class DenseCorrelators:
    phi: np.ndarray
    pi: np.ndarray
    sites: tuple


def dense_correlators(
    modes: ModeSpectrum,
    sites: Sequence[int],
    occupations=None,
) -> DenseCorrelators:
    """Correlators between ``sites`` of the ring whose modes are ``modes``.

    ``occupations`` defaults to the vacuum (all zero).
    """
    n = len(modes)
    sites = tuple(int(s) for s in sites)
    if not sites:
        raise InvalidInput("need at least one site")
    if len(set(sites)) != len(sites) or min(sites) < 0 or max(sites) >= n:
        raise InvalidInput("sites must be distinct indices in [0, N)")
    if len(sites) > MAX_DENSE_SITES:
        raise InvalidInput(f"dense oracle is capped at {MAX_DENSE_SITES} sites")
    if occupations is None:
        factor = np.ones(n)
    else:
        occ = np.asarray(occupations, dtype=float)
        if occ.shape != (n,) or np.any(occ < 0) or not np.all(np.isfinite(occ)):
            raise InvalidInput("occupations must be N finite non-negative reals")
        factor = 2.0 * occ + 1.0

    s = np.array(sites)
    sep = (s[:, None] - s[None, :]) % n
    uniq, inverse = np.unique(sep, return_inverse=True)
    inverse = inverse.reshape(sep.shape)
    norm = 1.0 / (2.0 * n)
    phi_vals = norm * kernels.cosine_sums(factor / modes.u, uniq, n)
    pi_vals = norm * kernels.cosine_sums(factor * modes.u, uniq, n)
    return DenseCorrelators(phi_vals[inverse], pi_vals[inverse], sites)


def thermal_dense_correlators(modes, sites, mass_eps, beta_m) -> DenseCorrelators:
    if math.isinf(beta_m):
        return dense_correlators(modes, sites)
    return dense_correlators(modes, sites, thermal_occupations(modes, mass_eps, beta_m))


def symmetric_eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns by cyclic Jacobi."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInput("matrix must be square")
    scale = max(float(np.max(np.abs(m))), np.finfo(float).tiny) if m.size else 1.0
    if np.max(np.abs(m - m.T), initial=0.0) > 1e-12 * scale:
        raise InvalidInput("matrix is not symmetric")
    w, v, converged, sweeps = kernels.jacobi_eigh(
        0.5 * (m + m.T), JACOBI_TOL, JACOBI_MAX_SWEEPS
    )
    if not converged:
        raise EigensolverStalled(f"eigensolver stalled after {sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def symmetric_eigenvalues(m) -> np.ndarray:
    return symmetric_eigh(m)[0]


def symplectic_spectrum_dense(c: DenseCorrelators, spec=None) -> SymplecticSpectrum:
    """Sorted eigenvalues of sqrt(Phi Pi) via Phi^1/2 Pi Phi^1/2."""
    d, v = symmetric_eigh(c.phi)
    if d[0] <= 0.0:
        raise InvalidCorrelatorError(f"invalid correlator: Phi has eigenvalue {d[0]:.3g} <= 0")
    root = (v * np.sqrt(d)) @ v.T
    m = root @ c.pi @ root
    sq = symmetric_eigenvalues(0.5 * (m + m.T))
    return SymplecticSpectrum(np.sqrt(np.clip(sq, 0.0, None)), spec)


def entropy_of_sites(modes: ModeSpectrum, sites, occupations=None) -> float:
    """Entanglement entropy of an arbitrary site subset (dense path)."""
    c = dense_correlators(modes, sites, occupations)
    return entropy_from_spectrum(symplectic_spectrum_dense(c)).entropy


def periodic_sites(n_sites: int, stride: int) -> list[int]:
    return list(range(0, n_sites, stride))

