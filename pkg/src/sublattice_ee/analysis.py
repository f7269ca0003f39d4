"""Composite studies: mutual information, extensivity sweeps, figure data,
and the closed-form vs dense-oracle cross-validation grid."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import ContinuumSpec, continuum_entropy, continuum_lambda0
from .entropy import entropy_from_spectrum
from .errors import InvalidInput
from .model import VACUUM, LatticeSpec, dispersion
from .oracle import periodic_sites, symplectic_spectrum_dense, thermal_dense_correlators
from .symplectic import spectrum

THREADS_ENV = "SUBLATTICE_EE_THREADS"
DEFAULT_MASS_GRID = (1e-6, 1e2, 60)

FIGURE_SUBLATTICES = {"fig4": (2, (5, 10, 500)), "fig5": (10, (1, 2, 100))}


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise InvalidInput(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _map(fn, items):
    """Ordered map, threaded when the environment allows it."""
    items = list(items)
    workers = min(thread_count(), len(items)) or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def mass_grid(start=DEFAULT_MASS_GRID[0], stop=DEFAULT_MASS_GRID[1], num=DEFAULT_MASS_GRID[2]):
    return np.logspace(math.log10(start), math.log10(stop), int(num))


@dataclass(frozen=True)
class SweepResult:
    """Tabulated study: ``columns`` names the fields of every row in ``rows``."""

    axis: str
    columns: tuple
    rows: list = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        return np.array([r[name] for r in self.rows])

    def where(self, **fixed) -> "SweepResult":
        rows = [r for r in self.rows if all(r[k] == v for k, v in fixed.items())]
        return SweepResult(self.axis, self.columns, rows)


@dataclass(frozen=True)
class MutualInfoResult:
    n_sites: int
    i_ab: float
    s_a: float
    s_b: float
    s_ab: float


def mutual_information_antipodal(n_sites: int, mass_eps: float, beta_m: float = VACUUM
                                 ) -> MutualInfoResult:
    """I(A:B) between two diametrically opposite sites of an ``n_sites`` ring.

    A alone is the N_A = 1 sublattice (p = N); A u B is the N_A = 2
    sublattice (p = N/2). S_B = S_A by translation symmetry.
    """
    if isinstance(n_sites, bool) or int(n_sites) != n_sites or n_sites < 4 or n_sites % 2:
        raise InvalidInput(f"antipodal mutual information needs even N >= 4, got {n_sites!r}")
    n_sites = int(n_sites)
    spec_a = LatticeSpec(n_sites, n_sites, mass_eps, beta_m)
    spec_ab = LatticeSpec(n_sites, n_sites // 2, mass_eps, beta_m)
    modes = dispersion(spec_a)
    s_a = entropy_from_spectrum(spectrum(spec_a, modes)).entropy
    s_ab = entropy_from_spectrum(spectrum(spec_ab, modes)).entropy
    return MutualInfoResult(n_sites, 2.0 * s_a - s_ab, s_a, s_a, s_ab)


def _spec_row(spec: LatticeSpec) -> dict:
    sp = spectrum(spec)
    s = entropy_from_spectrum(sp).entropy
    return {
        "N": spec.n_sites,
        "N_A": spec.n_sub,
        "p": spec.stride,
        "mass_eps": spec.mass_eps,
        "beta_m": spec.beta_m,
        "S_A": s,
        "S_per_site": s / spec.n_sub,
        "min_lambda": float(np.min(sp.lam)),
        "max_lambda": float(np.max(sp.lam)),
    }


SPEC_COLUMNS = ("N", "N_A", "p", "mass_eps", "beta_m", "S_A", "S_per_site",
                "min_lambda", "max_lambda")


def extensivity_profile(p: int, mass_eps_grid, n_sub_list, beta_m: float = VACUUM) -> SweepResult:
    """Entropy per sublattice site against m eps, one block of rows per N_A."""
    grid = [float(m) for m in mass_eps_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidInput("mass_eps grid must be strictly increasing")
    specs = [LatticeSpec.from_sublattice(int(na), p, m, beta_m) for na in n_sub_list for m in grid]
    return SweepResult("mass_eps", SPEC_COLUMNS, _map(_spec_row, specs))


SWEEP_AXES = ("mass_eps", "beta_m", "n_sites", "n_sub", "stride")


def parameter_sweep(axis: str, values, *, n_sub: int | None = None, stride: int | None = None,
                    n_sites: int | None = None, mass_eps: float | None = None,
                    beta_m: float = VACUUM) -> SweepResult:
    """Vary one parameter along ``values`` holding the others fixed.

    Exactly two of ``n_sites``, ``n_sub``, ``stride`` (counting the axis
    itself) fix the lattice.
    """
    if axis not in SWEEP_AXES:
        raise InvalidInput(f"unknown sweep axis {axis!r}; choose from {', '.join(SWEEP_AXES)}")
    values = list(values)
    if not values:
        raise InvalidInput("sweep needs at least one grid point")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise InvalidInput("sweep grid must be strictly increasing")

    def make(v):
        kw = dict(n_sites=n_sites, n_sub=n_sub, stride=stride, mass_eps=mass_eps, beta_m=beta_m)
        kw[axis] = v
        if kw["mass_eps"] is None:
            raise InvalidInput("mass_eps is required")
        n, na, p = kw["n_sites"], kw["n_sub"], kw["stride"]
        given = sum(x is not None for x in (n, na, p))
        if given != 2:
            raise InvalidInput("exactly two of n_sites, n_sub, stride (axis included) are needed")
        if n is None:
            n = int(na) * int(p)
        elif p is None:
            if int(n) % int(na):
                raise InvalidInput(f"N_A={na} does not divide N={n}")
            p = int(n) // int(na)
        return LatticeSpec(int(n), int(p), float(kw["mass_eps"]), float(kw["beta_m"]))

    specs = [make(v) for v in values]
    rows = _map(_spec_row, specs)
    for v, r in zip(values, rows):
        r["axis_value"] = v
    return SweepResult(axis, ("axis_value",) + SPEC_COLUMNS, rows)


def fig7_sizes(n_max: int) -> list[int]:
    """4, 8, 16, ... up to ``n_max``, plus ``n_max`` itself when even."""
    if n_max < 4:
        raise InvalidInput("fig7 needs n_max >= 4")
    sizes, n = [], 4
    while n <= n_max:
        sizes.append(n)
        n *= 2
    if n_max >= 4 and n_max % 2 == 0 and sizes[-1] != n_max:
        sizes.append(n_max)
    return sizes


def figure_data(figure_id: str, resolution: int = 60, *, mass_eps: float = 1e-6,
                n_max: int = 1024, mass_range=(1e-6, 1e2)) -> SweepResult:
    """Plot-ready series for the four standard figures.

    fig4/fig5: vacuum entropy per site vs m eps for p = 2 / p = 10.
    fig6: continuum eigenvalue and single-point entropy vs m eps.
    fig7: antipodal mutual information vs N at fixed m eps (vacuum).
    """
    if figure_id in FIGURE_SUBLATTICES:
        p, n_subs = FIGURE_SUBLATTICES[figure_id]
        return extensivity_profile(p, mass_grid(*mass_range, resolution), n_subs)
    if figure_id == "fig6":
        rows = []
        for m in mass_grid(*mass_range, resolution):
            rows.append({
                "mass_eps": float(m),
                "lambda0": continuum_lambda0(float(m)),
                "S_point": continuum_entropy(ContinuumSpec(1, float(m))),
            })
        return SweepResult("mass_eps", ("mass_eps", "lambda0", "S_point"), rows)
    if figure_id == "fig7":
        results = _map(lambda n: mutual_information_antipodal(n, mass_eps), fig7_sizes(n_max))
        rows = [{"N": r.n_sites, "I_AB": r.i_ab, "S_A": r.s_a, "S_AB": r.s_ab} for r in results]
        return SweepResult("N", ("N", "I_AB", "S_A", "S_AB"), rows)
    raise InvalidInput(f"unknown figure id {figure_id!r}; choose fig4, fig5, fig6 or fig7")


VALIDATION_MASSES = (0.1, 1.0, 10.0)
VALIDATION_BETAS = (VACUUM, 1.0, 0.1)


def cross_validate(max_n: int = 24, masses=VALIDATION_MASSES, betas=VALIDATION_BETAS,
                   tol: float = 1e-10) -> SweepResult:
    """Closed-form spectra and entropies against the dense oracle.

    Every N <= max_n, every divisor p, every (m eps, beta m) pair. Rows carry
    the worst relative eigenvalue error, the absolute entropy error and an
    ``ok`` flag at tolerance ``tol``.
    """
    specs = [
        LatticeSpec(n, p, m, b)
        for n in range(1, max_n + 1)
        for p in range(1, n + 1) if n % p == 0
        for m in masses
        for b in betas
    ]

    def check(spec):
        modes = dispersion(spec)
        closed = spectrum(spec, modes)
        dense = symplectic_spectrum_dense(thermal_dense_correlators(
            modes, periodic_sites(spec.n_sites, spec.stride), spec.mass_eps, spec.beta_m))
        lam_err = float(np.max(np.abs(np.sort(closed.lam) - dense.lam) / dense.lam))
        s_closed = entropy_from_spectrum(closed).entropy
        s_dense = entropy_from_spectrum(dense).entropy
        s_err = abs(s_closed - s_dense)
        return {
            "N": spec.n_sites, "p": spec.stride, "mass_eps": spec.mass_eps,
            "beta_m": spec.beta_m, "S_A": s_closed, "lambda_rel_err": lam_err,
            "entropy_err": s_err,
            "ok": bool(lam_err <= tol and s_err <= tol * max(1.0, abs(s_dense))),
        }

    cols = ("N", "p", "mass_eps", "beta_m", "S_A", "lambda_rel_err", "entropy_err", "ok")
    return SweepResult("N", cols, _map(check, specs))
