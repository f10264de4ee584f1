import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gentile_unify.errors import NoSolutionError, PreconditionError, RegimeError
from gentile_unify.specfun import f_alpha, h_alpha
from gentile_unify.system_model import SystemState, energy_of, entropy_of
from gentile_unify.unify import entropy_budget, unify, unify_case1, unify_case2


def case1_pair(draw_a1, draw_a2, t_hot, t_cold):
    a1, a2 = sorted((draw_a1, draw_a2))
    return SystemState(a1, t_hot, 10), SystemState(a2, t_cold, 10)


def test_case1_closed_forms():
    r = unify_case1(SystemState(1.1, 120, 10), SystemState(1.3, 80, 10))
    assert r.T_unified == 100.0
    assert r.alpha_unified == pytest.approx(1.2, abs=1e-15)
    assert r.ordering_ok
    assert r.E_unified == pytest.approx(2 * f_alpha(1.2) * 100 ** 2.2, rel=1e-14)
    assert r.S_unified == pytest.approx(2 * f_alpha(1.2) * 100 ** 1.2, rel=1e-14)


def test_case1_symmetric_inputs_give_zero_residuals():
    s = SystemState(1.25, 40, 10)
    r = unify_case1(s, s)
    assert (r.T_unified, r.alpha_unified) == (40, 1.25)
    assert r.energy_residual == 0 and r.entropy_residual == 0
    assert r.entropy_contributions == (0.5, 0.5)


def test_case1_refined_solution_gap():
    # exact solve of both additivity equations, checked by back-substitution
    s1, s2 = SystemState(1.1, 120, 10), SystemState(1.3, 80, 10)
    r = unify_case1(s1, s2)
    ref = r.refined
    assert ref.converged
    E_sum = energy_of(s1) + energy_of(s2)
    S_sum = entropy_of(s1) + entropy_of(s2)
    assert 2 * f_alpha(ref.alpha) * ref.T ** (1 + ref.alpha) == pytest.approx(E_sum, rel=1e-10)
    assert 2 * f_alpha(ref.alpha) * ref.T ** ref.alpha == pytest.approx(S_sum, rel=1e-10)
    assert ref.gap_T == pytest.approx(abs(ref.T - 100), rel=1e-12)
    # the closed forms are only asymptotic: the measured gap is several degrees
    assert 1.0 < ref.gap_T < 20.0


def test_case1_rejects_other_regimes():
    with pytest.raises(PreconditionError):
        unify_case1(SystemState(0.8, 10, 1), SystemState(1.3, 10, 1))


def test_case1_low_temperature_warning():
    r = unify_case1(SystemState(1.1, 5, 10), SystemState(1.3, 3, 10))
    assert any("asymptotic_T_min" in w for w in r.warnings)


@given(
    st.floats(1.0001, 1.5), st.floats(1.0001, 1.5),
    st.floats(10, 1e4), st.floats(10, 1e4),
)
@settings(max_examples=300, deadline=None)
def test_case1_ordering_and_symmetry(x, y, t, u):
    s1, s2 = case1_pair(x, y, max(t, u), min(t, u))
    r = unify_case1(s1, s2)
    assert s2.temperature <= r.T_unified <= s1.temperature
    assert s1.alpha <= r.alpha_unified <= s2.alpha
    assert r.ordering_ok
    # repr equality treats NaN fields of an unconverged refined solve as equal
    assert repr(unify_case1(s2, s1)) == repr(r)


@given(st.floats(1.0001, 1.5), st.floats(1.0001, 1.5), st.floats(10, 1e3), st.floats(10, 1e3))
@settings(max_examples=100, deadline=None)
def test_refined_solution_satisfies_energy_additivity(x, y, t, u):
    s1, s2 = case1_pair(x, y, max(t, u), min(t, u))
    ref = unify_case1(s1, s2).refined
    if ref.converged:
        assert abs(ref.energy_residual) < 1e-10


def test_case2_high_temperature_example_has_no_root():
    # alpha1=0.8, alpha2=1.4, T1=200, T2=100: tau=150 raised to (1+a1)/(a a1) > 1
    # makes 2 f T^(1+alpha) exceed E1 + E2 everywhere on (0.8, 1.4)
    with pytest.raises(NoSolutionError) as info:
        unify_case2(SystemState(0.8, 200, 2), SystemState(1.4, 100, 2))
    diag = info.value.diagnostics
    assert diag["tau"] == 150
    curve = np.array(diag["residual_curve"])
    assert np.all(curve[:, 1] < 0)
    assert np.all((curve[:, 0] > 0.8) & (curve[:, 0] < 1.4))


def test_case2_solution_structure():
    # low temperatures (tau < 1) are the only place the energy root exists
    s1, s2 = SystemState(0.8, 1.2, 2), SystemState(1.4, 0.6, 2)
    r = unify_case2(s1, s2)
    a = r.alpha_unified
    assert 0.8 < a < 1.4
    assert r.tau == pytest.approx(0.9)
    exponent = 1.8 / (a * 0.8)
    assert r.temperature_exponent == pytest.approx(exponent, rel=1e-14)
    assert r.T_unified == pytest.approx(0.9 ** exponent, rel=1e-14)
    assert r.S_unified == pytest.approx(h_alpha(a, 0.8) * r.T_unified ** a, rel=1e-14)
    assert abs(r.energy_residual) < 1e-10
    assert r.T_deviation_estimate == pytest.approx(-exponent * math.log(0.9), rel=1e-14)
    assert r.exponent_condition_ok is False
    assert any("exponent" in w for w in r.warnings)


def test_case2_rejects_case1_inputs():
    with pytest.raises(PreconditionError):
        unify_case2(SystemState(1.1, 10, 1), SystemState(1.3, 10, 1))


def test_unify_dispatch():
    assert unify(SystemState(1.1, 12, 1), SystemState(1.3, 8, 1)).T_unified == 10
    with pytest.raises(RegimeError):
        unify(SystemState(0.6, 12, 1), SystemState(0.9, 8, 1))


def test_entropy_budget():
    s = SystemState(1.2, 50, 3)
    b = entropy_budget(s, s)
    assert (b.share1, b.share2) == (0.5, 0.5)

    lo, hi = SystemState(0.8, 1e3, 2), SystemState(1.4, 1e3, 2)
    b = entropy_budget(hi, lo)
    assert b.share1 > b.share2
    assert b.entropy1 == pytest.approx(4.0 ** 1.25 * 1e3 ** 2.25, rel=1e-13)

    # alpha1 = 0.8, T1 = 100: g(0.8) 100^2.25 (mpmath)
    b = entropy_budget(SystemState(0.8, 100, 2), hi)
    assert b.entropy1 == pytest.approx(178885.43819998316, rel=1e-13)
    with pytest.raises(RegimeError):
        entropy_budget(SystemState(0.6, 10, 1), SystemState(0.7, 10, 1))
