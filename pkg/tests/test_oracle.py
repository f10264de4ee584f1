import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from gentile_unify.errors import DomainError
from gentile_unify.oracle import (
    BOSE,
    FERMI,
    GentileSpec,
    bose_energy_quadrature,
    gentile_occupation,
    verify_energy_asymptotic,
    verify_g_integral,
    verify_gentile_limits,
)
from gentile_unify.specfun import f_alpha
from gentile_unify.system_model import SolverSettings


def test_energy_quadrature_classic_integral():
    assert bose_energy_quadrature(1.0, 1.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-9)


def test_energy_quadrature_against_mpmath():
    # alpha int eps^alpha/(e^(eps/T) - 1) d eps at alpha = 1.5, T = 10
    with mp.workdps(30):
        ref = 1.5 * mp.quad(lambda e: e ** 1.5 / mp.expm1(e / 10), [0, 10, mp.inf])
    assert bose_energy_quadrature(1.5, 10.0) == pytest.approx(float(ref), rel=1e-9)


def test_energy_quadrature_with_chemical_potential():
    # alpha = 1, T = 1: int eps/(e^(eps + kappa) - 1) = Li_2(e^-kappa)
    kappa = 0.7
    expected = float(mp.polylog(2, mp.e ** -kappa))
    assert bose_energy_quadrature(1.0, 1.0, kappa) == pytest.approx(expected, rel=1e-9)


def test_energy_quadrature_boltzmann_suppression():
    values = [bose_energy_quadrature(1.2, 5.0, k) for k in (10.0, 100.0, 1e4)]
    assert values[0] > values[1] > values[2] >= 0
    assert values[2] < 1e-300


def test_energy_quadrature_domain():
    with pytest.raises(DomainError):
        bose_energy_quadrature(1.0, 0.0)
    with pytest.raises(DomainError):
        bose_energy_quadrature(1.0, 1.0, -1.0)


def test_verify_energy_grid():
    rows = verify_energy_asymptotic([0.5, 1.0, 1.5], [1.0, 10.0, 100.0])
    assert len(rows) == 9
    assert [(r.alpha, r.T) for r in rows[:3]] == [(0.5, 1.0), (0.5, 10.0), (0.5, 100.0)]
    assert all(r.rel_error <= 1e-7 and r.passed for r in rows)


def test_verify_energy_reductions():
    assert verify_energy_asymptotic([], [1.0]) == []
    assert verify_energy_asymptotic([1.0], []) == []
    (row,) = verify_energy_asymptotic([1.0], [1.0])
    assert row.closed_form == pytest.approx(math.pi ** 2 / 6, rel=1e-13)
    assert row.quadrature == pytest.approx(math.pi ** 2 / 6, rel=1e-9)


def test_gentile_fermi_identity():
    for y in (1e-3, 0.1, 0.4, 1.0, 5.0, 30.0):
        fermi = 1.0 / (math.exp(y) + 1.0)
        assert abs(gentile_occupation(y, 1.0, 0.0, FERMI) - fermi) <= 1e-14 * fermi


def test_gentile_bose_and_large_m():
    assert gentile_occupation(2.0, 1.0, 0.0, BOSE) == 1.0 / math.expm1(2.0)
    assert gentile_occupation(1.0, 1.0, 0.0, GentileSpec(10 ** 6)) == pytest.approx(
        1.0 / math.expm1(1.0), abs=1e-6
    )
    # energy and mu enter only through (energy - mu)/T
    assert gentile_occupation(5.0, 2.0, 1.0, GentileSpec(3)) == gentile_occupation(2.0, 1.0, 0.0, GentileSpec(3))


def test_gentile_occupation_against_mpmath():
    with mp.workdps(30):
        for m in (1, 2, 5, 40):
            for y in (1e-3, 0.01, 0.2, 2.0):
                ref = 1 / mp.expm1(y) - (m + 1) / mp.expm1((m + 1) * mp.mpf(y))
                assert gentile_occupation(y, 1.0, 0.0, GentileSpec(m)) == pytest.approx(float(ref), rel=1e-12)


def test_gentile_domain():
    with pytest.raises(DomainError):
        gentile_occupation(1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        GentileSpec(0)


@given(st.floats(1e-3, 30.0), st.integers(1, 1000))
def test_gentile_monotone_in_m_and_below_bose(y, m):
    lo = gentile_occupation(y, 1.0, 0.0, GentileSpec(m))
    hi = gentile_occupation(y, 1.0, 0.0, GentileSpec(m + 1))
    bose = gentile_occupation(y, 1.0, 0.0, BOSE)
    assert lo <= hi * (1 + 1e-13)
    assert hi <= bose * (1 + 1e-13)


def test_verify_gentile_limits():
    fermi_dev, bose_dev = verify_gentile_limits()
    assert fermi_dev <= 1e-14
    assert bose_dev <= 1e-6
    assert verify_gentile_limits(0) == (0.0, 0.0)


def test_verify_g_integral():
    rows = verify_g_integral([0.5, 0.6, 0.9])
    assert rows[0].g_approx == 1.0
    # the integral equals -Gamma(alpha + 1) zeta(alpha) (mpmath)
    assert rows[0].g_integral == pytest.approx(float((-mp.gamma(1.5) * mp.zeta(0.5)) ** 2), rel=1e-8)
    assert all(r.g_integral > 0 and r.g_approx > 0 for r in rows)
    assert rows[2].rel_gap != 0
    assert verify_g_integral([]) == []
    with pytest.raises(DomainError):
        verify_g_integral([0.95])


def test_energy_identity_uses_f_alpha():
    s = SolverSettings(quad_rel_tol=1e-10)
    for a in (0.55, 0.8, 1.3):
        assert bose_energy_quadrature(a, 3.0, 0.0, s) == pytest.approx(f_alpha(a) * 3.0 ** (1 + a), rel=1e-9)
