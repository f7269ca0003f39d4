"""Closed-form symplectic spectra of periodic sublattices.

Because Phi and Pi are circulant they share Fourier eigenvectors, so the
symplectic eigenvalues are ``sqrt(lambda_phi[l] * lambda_pi[l])``. Each
factor eigenvalue collects the modes ``k = l (mod N_A)`` and ``k = -l
(mod N_A)``:

    lambda_phi[l] = (R_f[l] + R_f[-l mod N_A]) / (4p),   f_k = (2 n_k + 1) / u_k

with ``R_f[r]`` the sum of ``f_k`` over ``k = r (mod N_A)``; likewise for
``lambda_pi`` with ``g_k = (2 n_k + 1) u_k``. This is the product of two
single sums, O(N) overall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidInput
from .model import (
    LatticeSpec,
    ModeSpectrum,
    coth_half,
    dispersion,
    mode_factors,
)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues ``lam`` of a reduced Gaussian state.

    Closed-form spectra are ordered by mode index ``l`` and keep their factor
    eigenvalues; spectra from the dense oracle are sorted ascending and have
    ``spec = None`` when the subset is not a periodic sublattice.
    """

    lam: np.ndarray
    spec: LatticeSpec | None = None
    lambda_phi: np.ndarray | None = None
    lambda_pi: np.ndarray | None = None

    def __post_init__(self):
        for name in ("lam", "lambda_phi", "lambda_pi"):
            v = getattr(self, name)
            if v is not None:
                v = np.array(v, dtype=float)
                v.setflags(write=False)
                object.__setattr__(self, name, v)

    def __len__(self) -> int:
        return self.lam.shape[0]


def _spectrum_from_factors(spec: LatticeSpec, modes: ModeSpectrum, factor: np.ndarray):
    if len(modes) != spec.n_sites:
        raise InvalidInput("mode spectrum length does not match n_sites")
    n_sub, p = spec.n_sub, spec.stride
    u = modes.u
    r_phi = kernels.residue_sums(factor / u, n_sub)
    r_pi = kernels.residue_sums(factor * u, n_sub)
    mirror = (-np.arange(n_sub)) % n_sub
    lam_phi = (r_phi + r_phi[mirror]) / (4.0 * p)
    lam_pi = (r_pi + r_pi[mirror]) / (4.0 * p)
    return SymplecticSpectrum(np.sqrt(lam_phi * lam_pi), spec, lam_phi, lam_pi)


def spectrum_general(spec: LatticeSpec, occupations, modes: ModeSpectrum | None = None
                     ) -> SymplecticSpectrum:
    """Spectrum for an arbitrary diagonal occupation ``<N_k>`` of the N modes.

    ``spec.beta_m`` is ignored; the state is fixed by ``occupations``.
    """
    occ = np.asarray(occupations, dtype=float)
    if occ.shape != (spec.n_sites,):
        raise InvalidInput(f"need {spec.n_sites} occupations, got shape {occ.shape}")
    if not np.all(np.isfinite(occ)) or np.any(occ < 0):
        raise InvalidInput("occupations must be finite and non-negative")
    modes = dispersion(spec) if modes is None else modes
    return _spectrum_from_factors(spec, modes, 2.0 * occ + 1.0)


def spectrum_thermal(spec: LatticeSpec, modes: ModeSpectrum | None = None) -> SymplecticSpectrum:
    """Thermal state at ``spec.beta_m`` (coth(beta omega / 2) weights)."""
    if spec.is_vacuum:
        raise InvalidInput("spectrum_thermal needs finite beta_m; use spectrum_vacuum")
    modes = dispersion(spec) if modes is None else modes
    return _spectrum_from_factors(spec, modes, mode_factors(modes, spec.mass_eps, spec.beta_m))


def spectrum_vacuum(spec: LatticeSpec, modes: ModeSpectrum | None = None) -> SymplecticSpectrum:
    """Ground state. For p = 1 every eigenvalue is exactly 1/2."""
    modes = dispersion(spec) if modes is None else modes
    if spec.stride == 1:
        # pure global state; the ratio sum collapses to p^2 = 1
        half = np.full(spec.n_sub, 0.5)
        return SymplecticSpectrum(half, spec, 0.5 / modes.u, 0.5 * modes.u)
    return _spectrum_from_factors(spec, modes, np.ones(len(modes)))


def spectrum(spec: LatticeSpec, modes: ModeSpectrum | None = None) -> SymplecticSpectrum:
    """Vacuum or thermal spectrum according to ``spec.beta_m``."""
    if spec.is_vacuum:
        return spectrum_vacuum(spec, modes)
    return spectrum_thermal(spec, modes)


def spectrum_two_oscillators(mass_eps: float, beta_m: float = math.inf) -> SymplecticSpectrum:
    """The single eigenvalue of one site out of two coupled oscillators.

    Uses omega_0 = m and omega_1 = m sqrt(1 + 4/(m eps)^2) directly.
    """
    spec = LatticeSpec(2, 2, mass_eps, beta_m)
    u0 = mass_eps
    u1 = mass_eps * math.sqrt(1.0 + 4.0 / mass_eps ** 2)
    if spec.is_vacuum:
        c0 = c1 = 1.0
    else:
        c0 = coth_half(beta_m * u0 / mass_eps)
        c1 = coth_half(beta_m * u1 / mass_eps)
    lam_phi = 0.25 * (c0 / u0 + c1 / u1)
    lam_pi = 0.25 * (c0 * u0 + c1 * u1)
    lam0 = 0.25 * math.sqrt((c0 / u0 + c1 / u1) * (c0 * u0 + c1 * u1))
    return SymplecticSpectrum([lam0], spec, [lam_phi], [lam_pi])
