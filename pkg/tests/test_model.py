import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sublattice_ee.errors import InvalidInput, UnstableCouplingError
from sublattice_ee.model import (
    VACUUM,
    CouplingMatrix,
    LatticeSpec,
    ModeSpectrum,
    coth_half,
    dispersion,
    dispersion_from_coupling,
    mode_factors,
    occupation,
    thermal_occupations,
)


def test_lattice_spec_basics():
    s = LatticeSpec(12, 3, 0.5)
    assert s.n_sub == 4 and s.is_vacuum and s.beta_m == VACUUM
    t = s.with_beta_m(2.0)
    assert not t.is_vacuum and t.n_sites == 12
    assert LatticeSpec.from_sublattice(4, 3, 0.5) == s


@pytest.mark.parametrize("args", [
    (12, 5, 1.0), (0, 1, 1.0), (4, 0, 1.0), (4, 2, 0.0), (4, 2, -1.0),
    (4, 2, math.inf), (4, 2, math.nan), (4, 2, 1.0, 0.0), (4, 2, 1.0, -1.0),
    (4, 2, 1.0, math.nan), (2.5, 1, 1.0), (True, 1, 1.0),
])
def test_lattice_spec_rejects(args):
    with pytest.raises(InvalidInput):
        LatticeSpec(*args)


def test_dispersion_values_and_symmetry():
    u = dispersion(LatticeSpec(8, 1, 0.3)).u
    k = np.arange(8)
    np.testing.assert_allclose(u, np.sqrt(0.09 + 4 * np.sin(np.pi * k / 8) ** 2), rtol=1e-15)
    np.testing.assert_array_equal(u, u[(-k) % 8])
    assert u[0] == 0.3


@given(st.integers(1, 64), st.floats(1e-3, 1e2))
def test_nearest_neighbour_coupling_reproduces_dispersion(n, m):
    from_row = dispersion_from_coupling(CouplingMatrix.nearest_neighbor(n, m)).u
    np.testing.assert_allclose(from_row, dispersion(LatticeSpec(n, 1, m)).u, rtol=1e-10)


def test_coupling_eps_scale():
    base = dispersion_from_coupling(CouplingMatrix.nearest_neighbor(6, 1.0)).u
    np.testing.assert_allclose(dispersion_from_coupling(CouplingMatrix.nearest_neighbor(6, 1.0), 2.0).u,
                               2 * base)


def test_unstable_coupling_rejected():
    # massless chain: zero mode
    with pytest.raises(UnstableCouplingError):
        dispersion_from_coupling(CouplingMatrix([2.0, -1.0, 0.0, -1.0]))
    with pytest.raises(UnstableCouplingError):
        dispersion_from_coupling(CouplingMatrix([1.0, -2.0, -2.0]))


def test_coupling_must_be_symmetric():
    with pytest.raises(InvalidInput):
        CouplingMatrix([2.0, -1.0, 0.0, 0.0])


def test_mode_spectrum():
    m = ModeSpectrum([1.0, 2.0, 3.0])
    assert len(m) == 3 and m[4] == 2.0 and m[-1] == 3.0
    with pytest.raises(ValueError):
        m.u[0] = 5.0
    for bad in ([], [1.0, 0.0], [[1.0]]):
        with pytest.raises(InvalidInput):
            ModeSpectrum(bad)


def test_occupation():
    spec = LatticeSpec(4, 1, 2.0, 0.5)
    assert occupation(2.0, spec) == pytest.approx(1 / math.expm1(0.5), rel=1e-15)
    assert occupation(1.0, LatticeSpec(4, 1, 2.0)) == 0.0
    assert occupation(1e6, spec) == 0.0
    modes = dispersion(spec)
    occ = thermal_occupations(modes, 2.0, 0.5)
    np.testing.assert_allclose(occ, [occupation(x, spec) for x in modes.u], rtol=1e-15)
    assert np.all(thermal_occupations(modes, 2.0, VACUUM) == 0)


@given(st.floats(1e-8, 800.0))
def test_coth_half(x):
    c = coth_half(x)
    assert c >= 1.0
    if x < 30:
        assert c == pytest.approx(1 / math.tanh(x / 2), rel=1e-12)
    assert coth_half(np.array([x]))[0] == c


def test_mode_factors_vacuum_and_thermal():
    modes = dispersion(LatticeSpec(6, 1, 1.0))
    assert np.all(mode_factors(modes, 1.0, VACUUM) == 1.0)
    f = mode_factors(modes, 1.0, 3.0)
    np.testing.assert_allclose(f, 2 * thermal_occupations(modes, 1.0, 3.0) + 1, rtol=1e-14)
