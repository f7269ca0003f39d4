"""Continuum-limit machinery and leading-order reference formulas.

Elliptic integrals use the parameter convention (argument m = k^2). Only the
negative-parameter branch is needed: the continuum eigenvalue evaluates them
at m = -4/(m eps)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .entropy import mode_entropy
from .errors import InvalidInput, QuadratureError
from .model import VACUUM, coth_half

_AGM_MAX_ITER = 64
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class ContinuumSpec:
    """N_A points of the circle in the limit p, N -> infinity."""

    n_sub: int
    mass_eps: float
    beta_m: float = VACUUM

    def __post_init__(self):
        if isinstance(self.n_sub, bool) or int(self.n_sub) != self.n_sub or self.n_sub < 1:
            raise InvalidInput("n_sub must be a positive integer")
        if not (math.isfinite(self.mass_eps) and self.mass_eps > 0):
            raise InvalidInput("mass_eps must be positive and finite")
        if math.isnan(self.beta_m) or self.beta_m <= 0:
            raise InvalidInput("beta_m must be positive or VACUUM")

    @property
    def is_vacuum(self) -> bool:
        return math.isinf(self.beta_m)


def _agm_ke(m_param: float) -> tuple[float, float]:
    """K(m), E(m) for m <= 0 through the reciprocal-parameter transformation.

    With m' = -m/(1-m) in [0, 1):
        K(m) = K(m')/sqrt(1-m),   E(m) = sqrt(1-m) E(m').
    K(m') = pi/(2 AGM(1, sqrt(1-m'))) and 1 - m' = 1/(1-m) is formed directly,
    so nothing rounds to m' = 1 even for m ~ -1e17.
    """
    if not m_param <= 0.0:
        raise InvalidInput(f"elliptic integrals are implemented for m <= 0 only, got {m_param!r}")
    one_minus_m = 1.0 - m_param
    mp = -m_param / one_minus_m
    a, b = 1.0, math.sqrt(1.0 / one_minus_m)
    # E(m')/K(m') = 1 - sum_n 2^(n-1) c_n^2 with c_0^2 = m', c_{n+1} = (a_n - b_n)/2
    acc = 0.5 * mp
    weight = 0.5
    for _ in range(_AGM_MAX_ITER):
        # a - b can stall at one ulp; the doubling weights would then pile
        # up rounding noise, so stop at a few ulps
        if abs(a - b) <= 4.0 * _EPS * a:
            break
        c = 0.5 * (a - b)
        weight *= 2.0
        acc += weight * c * c
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    k_prime = math.pi / (2.0 * a)
    e_prime = k_prime * (1.0 - acc)
    root = math.sqrt(one_minus_m)
    return k_prime / root, e_prime * root


def elliptic_K(m_param: float) -> float:
    """Complete elliptic integral of the first kind, parameter convention, m <= 0."""
    return _agm_ke(m_param)[0]


def elliptic_E(m_param: float) -> float:
    """Complete elliptic integral of the second kind, parameter convention, m <= 0."""
    return _agm_ke(m_param)[1]


def continuum_lambda0(mass_eps: float) -> float:
    """Degenerate vacuum eigenvalue (1/pi) sqrt(E(q) K(q)), q = -4/(m eps)^2."""
    if not mass_eps > 0:
        raise InvalidInput("mass_eps must be positive")
    k, e = _agm_ke(-4.0 / mass_eps ** 2)
    return math.sqrt(e * k) / math.pi


def _quad(f, a, b, breaks, tol):
    """scipy quad with ``tol`` read as absolute below 1 and relative above."""
    val, err = integrate.quad(f, a, b, points=breaks or None, epsabs=tol, epsrel=1e-13, limit=500)
    if not err <= tol * max(1.0, abs(val)):
        raise QuadratureError(f"quadrature did not converge: achieved {err:.3g}, wanted {tol:.3g}")
    return val


def thermal_continuum_lambda0(c: ContinuumSpec, tol: float = 1e-10) -> float:
    """Degenerate eigenvalue at finite temperature, by adaptive quadrature.

    After rescaling y -> t = N_A y the two integrals run over one period
    t in [0, 1] and N_A drops out; the integrand is symmetric about t = 1/2.
    """
    if c.is_vacuum:
        raise InvalidInput("thermal_continuum_lambda0 needs finite beta_m")
    me, bm = c.mass_eps, c.beta_m

    def u(t):
        return math.sqrt(me * me + 4.0 * math.sin(math.pi * t) ** 2)

    def w(t):
        return coth_half(bm * u(t) / me)

    # the integrand varies on the scale t ~ m eps near t = 0
    breaks = [x for x in (me / 20.0, me / 2.0, 2.0 * me) if x < 0.5]
    inv = 2.0 * _quad(lambda t: w(t) / u(t), 0.0, 0.5, breaks, tol)
    fwd = 2.0 * _quad(lambda t: w(t) * u(t), 0.0, 0.5, breaks, tol)
    return 0.5 * math.sqrt(inv * fwd)


def continuum_entropy(c: ContinuumSpec) -> float:
    """N_A times the single-mode entropy of the degenerate eigenvalue."""
    if c.is_vacuum:
        lam0 = continuum_lambda0(c.mass_eps)
    else:
        lam0 = thermal_continuum_lambda0(c)
    return c.n_sub * mode_entropy(lam0)


def uv_lambda(x: float) -> float:
    """Massless p = 2 eigenvalue profile (sin pi x + cos pi x)/(4 sqrt(sin pi x cos pi x))."""
    s, co = math.sin(math.pi * x), math.cos(math.pi * x)
    return (s + co) / (4.0 * math.sqrt(s * co))


def uv_entropy_density_p2(tol: float = 1e-12) -> float:
    """2 * integral_0^1/2 s(lambda(x)) dx, the p = 2 UV entropy per sublattice site.

    The substitution x = sin^2(pi t / 2)/2, t in [0, 1], puts a sin(pi t)
    Jacobian on the log-divergent endpoints x = 0 and x = 1/2.
    """
    def integrand(t):
        half = 0.5 * math.pi * t
        x = 0.5 * math.sin(half) ** 2
        jac = 0.25 * math.pi * math.sin(math.pi * t)
        if jac == 0.0 or x <= 0.0 or x >= 0.5:
            return 0.0
        return mode_entropy(uv_lambda(x)) * jac

    return 2.0 * _quad(integrand, 0.0, 1.0, [0.5], tol)


def _need(params, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise InvalidInput(f"missing parameters: {', '.join(missing)}")
    return [float(params[n]) for n in names]


def _zeromode(p):
    (me,) = _need(p, "mass_eps")
    return 1.0 / (2.0 * math.sqrt(2.0 * me))


def _massless_div_2(p):
    (me,) = _need(p, "mass_eps")
    return 0.5 * math.log(1.0 / me) + 1.0 - 1.5 * math.log(2.0)


def _ir_p2(p):
    me, bm = _need(p, "mass_eps", "beta_m")
    r = bm / me  # beta / eps
    return math.log(1.0 / bm) + 1.0 - math.log(2.0) + 0.5 * math.log1p(r / math.tanh(r))


def _two_osc_high_t_lambda(p):
    me, bm = _need(p, "mass_eps", "beta_m")
    return (1.0 / bm) * math.sqrt((1.0 + 2.0 / me ** 2) / (1.0 + 4.0 / me ** 2))


def _two_osc_high_t(p):
    me, bm = _need(p, "mass_eps", "beta_m")
    ratio = (1.0 + 2.0 / me ** 2) / (1.0 + 4.0 / me ** 2)
    return math.log(1.0 / bm) + 0.5 * math.log(ratio) + 1.0


def _p2_high_t(p):
    n_sub, bm = _need(p, "n_sub", "beta_m")
    return n_sub * (1.0 + math.log(1.0 / bm))


def _low_t_correction(p):
    (bm,) = _need(p, "beta_m")
    return math.exp(-bm)


def _continuum_lambda0_small_mass(p):
    (me,) = _need(p, "mass_eps")
    return math.sqrt(math.log(8.0) + math.log(1.0 / me)) / math.pi


def _continuum_low_t(p):
    n_sub, me = _need(p, "n_sub", "mass_eps")
    return n_sub * (0.5 * math.log(math.log(1.0 / me)) + 1.0 - math.log(math.pi))


def _continuum_high_t_lambda0(p):
    me, bm = _need(p, "mass_eps", "beta_m")
    return 1.0 / (bm * (1.0 + 4.0 / me ** 2) ** 0.25)


def _continuum_high_t(p):
    # the coefficient of log(1/(m eps)) is 1/2, as follows from the
    # leading-order eigenvalue above
    n_sub, me, bm = _need(p, "n_sub", "mass_eps", "beta_m")
    return n_sub * (math.log(1.0 / bm) - 0.5 * math.log(1.0 / me) + 1.0 - 0.5 * math.log(2.0))


REFERENCE_FORMULAS = {
    "zeromode": _zeromode,
    "massless_div_2": _massless_div_2,
    "ir_p2": _ir_p2,
    "two_osc_high_t_lambda": _two_osc_high_t_lambda,
    "two_osc_high_t": _two_osc_high_t,
    "p2_high_t": _p2_high_t,
    "low_t_correction": _low_t_correction,
    "continuum_lambda0_small_mass": _continuum_lambda0_small_mass,
    "continuum_low_t": _continuum_low_t,
    "continuum_high_t_lambda0": _continuum_high_t_lambda0,
    "continuum_high_t": _continuum_high_t,
}


def reference_expansions(name: str, **params) -> float:
    """Evaluate a named leading-order asymptotic formula.

    Temperatures enter through ``beta_m`` (T/m = 1/beta_m). These are
    comparison targets only; the exact engine never substitutes them.
    """
    try:
        fn = REFERENCE_FORMULAS[name]
    except KeyError:
        raise InvalidInput(
            f"unknown expansion {name!r}; known: {', '.join(sorted(REFERENCE_FORMULAS))}"
        ) from None
    return fn(params)
