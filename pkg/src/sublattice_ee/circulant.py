"""Symmetric circulant matrices and the sublattice correlators Phi, Pi."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidInput
from .model import LatticeSpec, ModeSpectrum, dispersion, mode_factors


@dataclass(frozen=True)
class CirculantMatrix:
    """Real symmetric circulant matrix stored as its first row.

    Row ``i`` is the first row cyclically shifted right by ``i``, so
    ``C[i, j] = first_row[(j - i) mod n]``.
    """

    first_row: np.ndarray

    def __post_init__(self):
        row = np.array(self.first_row, dtype=float)
        n = row.shape[0]
        if row.ndim != 1 or n == 0:
            raise InvalidInput("circulant first row must be a non-empty vector")
        mirror = row[(-np.arange(n)) % n]
        if not np.allclose(row, mirror, rtol=1e-12, atol=1e-300):
            raise InvalidInput("circulant matrix is not symmetric")
        row.setflags(write=False)
        object.__setattr__(self, "first_row", row)

    @property
    def n(self) -> int:
        return self.first_row.shape[0]

    def to_dense(self) -> np.ndarray:
        n = self.n
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return self.first_row[idx]


def circulant_eigenvalues(c: CirculantMatrix) -> np.ndarray:
    """lambda_m = sum_k c_k cos(2 pi m k / n), m = 0..n-1 (imaginary parts cancel)."""
    return kernels.cosine_sums(c.first_row, np.arange(c.n), c.n)


def circulant_eigenvector(n: int, m: int) -> np.ndarray:
    """Unit Fourier vector (1, w, w^2, ...)/sqrt(n) with w = exp(-2 pi i m / n)."""
    if not 0 <= m < n:
        raise InvalidInput(f"eigenvector index m={m} outside [0, {n})")
    # integer phase reduction keeps the roots of unity exact at large j
    phase = (m * np.arange(n)) % n
    return np.exp(-2j * np.pi * phase / n) / np.sqrt(n)


def sublattice_correlators(
    spec: LatticeSpec,
    occupations: np.ndarray | None = None,
    modes: ModeSpectrum | None = None,
) -> tuple[CirculantMatrix, CirculantMatrix]:
    """First rows of <phi_0 phi_j> and <pi_0 pi_j> on the sublattice.

    ``occupations`` overrides the thermal Bose-Einstein values of ``spec``;
    ``modes`` overrides the nearest-neighbour dispersion.
    """
    modes = dispersion(spec) if modes is None else modes
    if len(modes) != spec.n_sites:
        raise InvalidInput("mode spectrum length does not match n_sites")
    factor = _factors(spec, modes, occupations)
    u = modes.u
    shifts = np.arange(spec.n_sub)
    norm = 1.0 / (2.0 * spec.n_sites)
    phi = norm * kernels.cosine_sums(factor / u, shifts, spec.n_sub)
    pi = norm * kernels.cosine_sums(factor * u, shifts, spec.n_sub)
    return CirculantMatrix(phi), CirculantMatrix(pi)


def _factors(spec, modes, occupations):
    if occupations is None:
        return mode_factors(modes, spec.mass_eps, spec.beta_m)
    occ = np.asarray(occupations, dtype=float)
    if occ.shape != (spec.n_sites,) or not np.all(np.isfinite(occ)) or np.any(occ < 0):
        raise InvalidInput("occupations must be N finite non-negative reals")
    return 2.0 * occ + 1.0
