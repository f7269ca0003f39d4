"""Entanglement entropy, modular energies and entanglement spectra.

All entropies are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivergentEntropyError,
    InvalidInput,
    SpectrumTooFlatError,
    UnphysicalSpectrumError,
)
from .model import LatticeSpec
from .symplectic import SymplecticSpectrum, spectrum_thermal

PURE_TOL = 1e-12
"""Eigenvalues within this distance of 1/2 are treated as pure modes."""
UNPHYSICAL_TOL = 1e-9
DEFAULT_TAIL = 1e-12
MAX_LADDER = 10 ** 8


@dataclass(frozen=True)
class EntanglementResult:
    entropy: float
    mode_energies: np.ndarray
    xi: np.ndarray
    per_mode_entropy: np.ndarray
    lam: np.ndarray


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Truncated geometric ladders p_n = (1 - e^-b) e^-(b n), one per mode."""

    ladders: tuple
    mode_energies: np.ndarray
    tail: float

    @property
    def n_max(self) -> tuple:
        return tuple(len(ld) - 1 for ld in self.ladders)

    def masses(self) -> np.ndarray:
        return np.array([math.fsum(ld.tolist()) for ld in self.ladders])

    def shannon_entropy(self) -> float:
        """Entropy of the (truncated) product distribution, as a sum over modes."""
        total = []
        for ld in self.ladders:
            live = ld[ld > 0]
            total.extend((-live * np.log(live)).tolist())
        return math.fsum(total)

    def truncation_bound(self) -> float:
        """tail * (1 + max_l b_l * max_l n_max(l)) over modes with finite b_l."""
        finite = [(b, n) for b, n in zip(self.mode_energies, self.n_max) if math.isfinite(b)]
        if not finite:
            return self.tail
        return self.tail * (1.0 + max(b for b, _ in finite) * max(n for _, n in finite))

    def missing_entropy(self) -> float:
        """Exact entropy carried by the discarded tails of all ladders."""
        out = []
        for b, n in zip(self.mode_energies, self.n_max):
            if not math.isfinite(b):
                continue
            tau = math.exp(-b * (n + 1))
            one_minus_xi = -math.expm1(-b)
            out.append(tau * (-math.log(one_minus_xi) + b * (n + 1) + b / math.expm1(b)))
        return math.fsum(out)


def _lam(s) -> np.ndarray:
    lam = np.asarray(s.lam if isinstance(s, SymplecticSpectrum) else s, dtype=float)
    if np.any(np.isnan(lam)):
        raise UnphysicalSpectrumError("spectrum contains NaN")
    low = np.flatnonzero(lam < 0.5 - UNPHYSICAL_TOL)
    if low.size:
        raise UnphysicalSpectrumError(
            f"unphysical spectrum: lambda[{low[0]}] = {lam[low[0]]!r} < 1/2"
        )
    return lam


def mode_entropy(lam: float) -> float:
    """(lam + 1/2) log(lam + 1/2) - (lam - 1/2) log(lam - 1/2), 0 for pure modes."""
    x = lam - 0.5
    if x <= PURE_TOL:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < 1.0:
        return (1.0 + x) * math.log1p(x) - x * math.log(x)
    # same expression regrouped to avoid cancelling two x log x terms
    return (1.0 + x) * math.log1p(1.0 / x) + math.log(x)


def modular_energy(lam: float) -> float:
    x = lam - 0.5
    if x <= 0.0:
        return math.inf
    return math.log1p(1.0 / x)


def lam_from_energy(beta: float) -> float:
    """Inverse of ``modular_energy``: 1/2 coth(beta/2)."""
    if math.isinf(beta):
        return 0.5
    return 0.5 + 1.0 / math.expm1(beta)


def modular_energies(s) -> np.ndarray:
    """b_l = log((lam + 1/2)/(lam - 1/2)); +inf for lam = 1/2."""
    lam = np.asarray(s.lam if isinstance(s, SymplecticSpectrum) else s, dtype=float)
    return np.array([modular_energy(v) for v in lam])


def entropy_from_spectrum(s) -> EntanglementResult:
    lam = _lam(s)
    per_mode = np.array([mode_entropy(v) for v in lam])
    betas = modular_energies(lam)
    xi = np.exp(-betas)
    return EntanglementResult(math.fsum(per_mode.tolist()), betas, xi, per_mode, lam)


def _xi_mode_entropy(beta: float) -> float:
    # -log(1 - xi) - xi/(1 - xi) log xi with xi = e^-b, written through expm1
    if math.isinf(beta):
        return 0.0
    if beta <= 0.0:
        raise DivergentEntropyError("divergent EE: xi >= 1")
    return -math.log(-math.expm1(-beta)) + beta / math.expm1(beta)


def entropy_xi_form(s) -> EntanglementResult:
    """Same contract as ``entropy_from_spectrum`` via the xi = e^-b parametrisation."""
    lam = _lam(s)
    if np.any(np.isinf(lam)):
        raise DivergentEntropyError("divergent EE: xi -> 1 for an infinite eigenvalue")
    betas = np.array([math.inf if v - 0.5 <= PURE_TOL else modular_energy(v) for v in lam])
    per_mode = np.array([_xi_mode_entropy(b) for b in betas])
    return EntanglementResult(math.fsum(per_mode.tolist()), betas, np.exp(-betas), per_mode, lam)


def entanglement_spectrum(s, tail: float = DEFAULT_TAIL) -> EntanglementSpectrum:
    """Per-mode probability ladders truncated once the tail mass is <= ``tail``."""
    if not 0.0 < tail < 1.0:
        raise InvalidInput("tail must lie in (0, 1)")
    betas = modular_energies(_lam(s))
    log_tail = -math.log(tail)
    ladders = []
    for l, b in enumerate(betas):
        if math.isinf(b):
            ladders.append(np.array([1.0]))
            continue
        if b <= 0.0:
            raise SpectrumTooFlatError(l, math.inf)
        need = log_tail / b
        if need > MAX_LADDER + 1:
            raise SpectrumTooFlatError(l, need)
        n_max = max(math.ceil(need) - 1, 0)
        # guard the ceil against rounding on exact ratios
        while n_max > 0 and math.exp(-b * n_max) <= tail:
            n_max -= 1
        while math.exp(-b * (n_max + 1)) > tail:
            n_max += 1
        n = np.arange(n_max + 1)
        ladders.append(-math.expm1(-b) * np.exp(-b * n))
    return EntanglementSpectrum(tuple(ladders), betas, tail)


def first_law_check(spec: LatticeSpec, delta_beta_m: float) -> tuple[float, float]:
    """(S(b+d) - S(b), sum_l b_l (lam_l(b+d) - lam_l(b))) at beta_m = b."""
    if spec.is_vacuum or not math.isfinite(spec.beta_m + delta_beta_m):
        raise InvalidInput("first_law_check needs finite beta_m on both sides")
    if spec.beta_m + delta_beta_m <= 0:
        raise InvalidInput("perturbed beta_m must stay positive")
    if delta_beta_m == 0:
        return 0.0, 0.0
    s0 = spectrum_thermal(spec)
    s1 = spectrum_thermal(spec.with_beta_m(spec.beta_m + delta_beta_m))
    r0 = entropy_from_spectrum(s0)
    r1 = entropy_from_spectrum(s1)
    dlam = s1.lam - s0.lam
    live = np.isfinite(r0.mode_energies)
    rhs = math.fsum((r0.mode_energies[live] * dlam[live]).tolist())
    lhs = math.fsum((r1.per_mode_entropy - r0.per_mode_entropy).tolist())
    return lhs, rhs
