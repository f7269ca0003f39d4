"""Dimensionless lattice model: parameters, dispersion, thermal occupation.

Everything is expressed through the pair ``(mass_eps, beta_m)``; the
dimensionless mode frequency is ``u_k = eps * omega_k`` and the Boltzmann
exponent is ``beta * omega_k = beta_m * u_k / mass_eps``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidInput, UnstableCouplingError

VACUUM = math.inf
"""Value of ``beta_m`` that selects the zero-temperature state."""

# e^{-700} is below the smallest normal double, so occupations vanish exactly.
_EXP_CUTOFF = 700.0


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LatticeSpec:
    """A periodic sublattice of an ``n_sites`` ring: every ``stride``-th site.

    ``beta_m = VACUUM`` (``math.inf``) selects the ground state.
    """

    n_sites: int
    stride: int
    mass_eps: float
    beta_m: float = VACUUM

    def __post_init__(self):
        for name in ("n_sites", "stride"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise InvalidInput(f"{name} must be a positive integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.n_sites % self.stride:
            raise InvalidInput(
                f"stride p={self.stride} does not divide n_sites N={self.n_sites}"
            )
        if not (math.isfinite(self.mass_eps) and self.mass_eps > 0):
            raise InvalidInput(f"mass_eps must be positive and finite, got {self.mass_eps!r}")
        if math.isnan(self.beta_m) or self.beta_m <= 0:
            raise InvalidInput(f"beta_m must be positive or VACUUM, got {self.beta_m!r}")
        object.__setattr__(self, "mass_eps", float(self.mass_eps))
        object.__setattr__(self, "beta_m", float(self.beta_m))

    @property
    def n_sub(self) -> int:
        return self.n_sites // self.stride

    @property
    def is_vacuum(self) -> bool:
        return math.isinf(self.beta_m)

    def with_beta_m(self, beta_m: float) -> "LatticeSpec":
        return LatticeSpec(self.n_sites, self.stride, self.mass_eps, beta_m)

    @classmethod
    def from_sublattice(cls, n_sub: int, stride: int, mass_eps: float,
                        beta_m: float = VACUUM) -> "LatticeSpec":
        return cls(n_sub * stride, stride, mass_eps, beta_m)


@dataclass(frozen=True)
class ModeSpectrum:
    """Dimensionless frequencies ``u[k] = eps * omega_k``, k = 0..N-1."""

    u: np.ndarray

    def __post_init__(self):
        u = _frozen(self.u)
        if u.ndim != 1 or u.size == 0 or not np.all(u > 0):
            raise InvalidInput("mode frequencies must be a non-empty vector of positive reals")
        object.__setattr__(self, "u", u)

    def __len__(self) -> int:
        return self.u.shape[0]

    def __getitem__(self, k: int) -> float:
        return float(self.u[k % len(self)])


@dataclass(frozen=True)
class CouplingMatrix:
    """Symmetric circulant coupling ``V`` given by its first row."""

    first_row: np.ndarray

    def __post_init__(self):
        row = _frozen(self.first_row)
        n = row.shape[0]
        if row.ndim != 1 or n == 0:
            raise InvalidInput("coupling first row must be a non-empty vector")
        if not np.allclose(row, row[(-np.arange(n)) % n], rtol=1e-14, atol=0.0):
            raise InvalidInput("coupling matrix is not symmetric (row[j] != row[N-j])")
        object.__setattr__(self, "first_row", row)

    @classmethod
    def nearest_neighbor(cls, n_sites: int, mass_eps: float) -> "CouplingMatrix":
        """circ(2 + (m eps)^2, -1, 0, ..., 0, -1); for N=1 the hops wrap onto the site."""
        row = np.zeros(n_sites)
        row[0] = 2.0 + mass_eps ** 2
        row[1 % n_sites] -= 1.0
        row[-1 % n_sites] -= 1.0
        return cls(row)


def dispersion(spec: LatticeSpec) -> ModeSpectrum:
    """u_k = sqrt((m eps)^2 + 4 sin^2(pi k / N)) for the nearest-neighbour chain."""
    n = spec.n_sites
    k = np.arange(n)
    # reduce to the symmetric representative so that u_k == u_{N-k} bitwise
    k = np.minimum(k, n - k)
    return ModeSpectrum(np.sqrt(spec.mass_eps ** 2 + 4.0 * np.sin(np.pi * k / n) ** 2))


def dispersion_from_coupling(coupling: CouplingMatrix, eps_scale: float = 1.0) -> ModeSpectrum:
    """Mode frequencies of an arbitrary symmetric circulant coupling.

    ``u_k = eps_scale * sqrt(mu_k)`` where ``mu_k`` are the circulant
    eigenvalues of ``V``; ``eps_scale = 1`` means ``V`` is already in lattice
    units, as for the nearest-neighbour row.
    """
    row = coupling.first_row
    n = row.shape[0]
    mu = kernels.cosine_sums(row, np.arange(n), n)
    scale = max(float(np.max(np.abs(mu))), np.finfo(float).tiny)
    bad = np.flatnonzero(mu <= 1e-12 * scale)
    if bad.size:
        raise UnstableCouplingError(
            f"unstable coupling: circulant eigenvalue {mu[bad[0]]:.3g} at mode {bad[0]} is not positive"
        )
    return ModeSpectrum(eps_scale * np.sqrt(mu))


def occupation(u_k: float, spec: LatticeSpec) -> float:
    """Bose-Einstein occupation 1/(e^{beta omega_k} - 1) of one mode."""
    if spec.is_vacuum:
        return 0.0
    x = spec.beta_m * u_k / spec.mass_eps
    if x > _EXP_CUTOFF:
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_occupations(modes: ModeSpectrum, mass_eps: float, beta_m: float) -> np.ndarray:
    if math.isinf(beta_m):
        return np.zeros(len(modes))
    x = beta_m * modes.u / mass_eps
    out = np.zeros_like(x)
    live = x <= _EXP_CUTOFF
    out[live] = 1.0 / np.expm1(x[live])
    return out


def coth_half(x):
    """coth(x/2) = 1 + 2/(e^x - 1), exact 1 beyond the underflow cutoff."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    live = x <= _EXP_CUTOFF
    out[live] = 1.0 + 2.0 / np.expm1(x[live])
    return out if out.ndim else float(out)


def mode_factors(modes: ModeSpectrum, mass_eps: float, beta_m: float) -> np.ndarray:
    """2<N_k> + 1 = coth(beta omega_k / 2) for every mode."""
    if math.isinf(beta_m):
        return np.ones(len(modes))
    return coth_half(beta_m * modes.u / mass_eps)
