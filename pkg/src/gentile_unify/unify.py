"""Temperature, dimension, energy and entropy of the unified system."""

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy import optimize

from .errors import NoSolutionError, PreconditionError, RegimeError
from .specfun import f_alpha, h_alpha
from .system_model import (
    DEFAULT_SETTINGS,
    RegimeTag,
    classify_regime,
    energy_of,
    entropy_branch,
    entropy_of,
    order_pair,
)

# Number of points in the case-2 residual scan used to bracket the root.
CASE2_SCAN_POINTS = 129


@dataclass(frozen=True)
class RefinedSolution:
    """Exact solution (T*, alpha*) of the two additivity equations, case 1."""

    T: float
    alpha: float
    converged: bool
    gap_T: float
    gap_alpha: float
    energy_residual: float
    entropy_residual: float


@dataclass(frozen=True)
class UnificationReport:
    regime: object
    T_unified: float
    alpha_unified: float
    E_unified: float
    S_unified: float
    tau: float
    T_deviation_estimate: Optional[float]
    energy_residual: float
    entropy_residual: float
    ordering_ok: bool
    entropy_contributions: tuple
    refined: Optional[RefinedSolution] = None
    # case 2 only: whether (1 + alpha1) / (alpha alpha1) < 1 at the returned alpha
    exponent_condition_ok: Optional[bool] = None
    temperature_exponent: Optional[float] = None
    warnings: tuple = field(default_factory=tuple)

    def to_dict(self):
        d = asdict(self)
        d["regime"] = {"tag": self.regime.tag.value, "detail": self.regime.detail}
        d["entropy_contributions"] = list(self.entropy_contributions)
        d["warnings"] = list(self.warnings)
        return d


class EntropyBudget(NamedTuple):
    entropy1: float
    entropy2: float
    share1: float
    share2: float


def _rel(lhs, rhs):
    return (lhs - rhs) / rhs


def _temperature_warnings(pair, settings):
    out = []
    for i, s in enumerate(pair, start=1):
        if s.temperature < settings.asymptotic_T_min:
            out.append(
                f"T{i}={s.temperature:g} is below asymptotic_T_min={settings.asymptotic_T_min:g}; "
                "the large-temperature laws may be inaccurate"
            )
    for i, s in enumerate(pair, start=1):
        if entropy_branch(s.alpha, settings.delta_guard) == "interpolated":
            out.append(
                f"alpha{i}={s.alpha:g} lies in the near-critical guard band; "
                "its entropy is log-linearly interpolated to f(1) T at alpha = 1"
            )
    return out


def _refine_case1(E_sum, S_sum, T_closed, alpha_closed, settings):
    # Dividing the energy equation by the entropy equation gives T* exactly.
    T_star = E_sum / S_sum

    def r(a):
        return math.log(2.0 * f_alpha(a)) + a * math.log(T_star) - math.log(S_sum)

    lo, hi = 1.0, 1.5
    converged = r(lo) * r(hi) <= 0.0 and T_star > 0
    if converged:
        a_star = optimize.brentq(r, lo, hi, xtol=1e-15, maxiter=settings.max_iter)
    else:
        a_star = float("nan")
        return RefinedSolution(T_star, a_star, False, abs(T_star - T_closed), float("nan"),
                               float("nan"), float("nan"))
    e_res = _rel(E_sum, 2.0 * f_alpha(a_star) * T_star ** (1.0 + a_star))
    s_res = _rel(S_sum, 2.0 * f_alpha(a_star) * T_star ** a_star)
    return RefinedSolution(T_star, a_star, True, abs(T_star - T_closed),
                           abs(a_star - alpha_closed), e_res, s_res)


def unify_case1(s1, s2, settings=DEFAULT_SETTINGS):
    """Unify two super-critical systems (1 < alpha1 <= alpha2 <= 3/2).

    The unified temperature and half-dimension are the arithmetic means of the
    inputs. Energy and entropy of the union follow from the single-system laws
    with the doubling factor of the additivity equations,
    E = 2 f(alpha) T^(1+alpha) and S = 2 f(alpha) T^alpha. Because the means
    solve the additivity equations only asymptotically, the report carries
    their relative residuals and the exact solution for comparison.
    """
    regime = classify_regime(s1, s2)
    if regime.tag is not RegimeTag.CASE1_SAME_SIDE:
        raise PreconditionError(f"unify_case1 needs the same-side regime, got {regime.tag.value}: {regime.detail}")
    lo, hi = order_pair(s1, s2)
    T1, T2, a1, a2 = lo.temperature, hi.temperature, lo.alpha, hi.alpha
    T = 0.5 * (T1 + T2)
    a = 0.5 * (a1 + a2)
    E1, E2 = energy_of(lo), energy_of(hi)
    S1, S2 = entropy_of(lo, settings), entropy_of(hi, settings)
    fa = f_alpha(a)
    E = 2.0 * fa * T ** (1.0 + a)
    S = 2.0 * fa * T ** a
    refined = _refine_case1(E1 + E2, S1 + S2, T, a, settings)
    warnings = _temperature_warnings((lo, hi), settings)
    ordering_ok = T2 <= T <= T1 and a1 <= a <= a2
    if not ordering_ok:
        warnings.append(
            f"ordering T1 > T > T2 fails: the lower-dimension system has T1={T1:g} <= T2={T2:g}"
        )
    if not refined.converged:
        warnings.append("exact additivity solve did not converge in 1 <= alpha <= 3/2; closed forms reported")
    return UnificationReport(
        regime=regime,
        T_unified=T,
        alpha_unified=a,
        E_unified=E,
        S_unified=S,
        tau=T,
        T_deviation_estimate=None,
        energy_residual=_rel(E1 + E2, E),
        entropy_residual=_rel(S1 + S2, S),
        ordering_ok=ordering_ok,
        entropy_contributions=(S1 / (S1 + S2), S2 / (S1 + S2)),
        refined=refined,
        warnings=tuple(warnings),
    )


def case2_temperature(tau, alpha, alpha1):
    """Unified temperature tau**((1 + alpha1) / (alpha alpha1)) in the straddling case."""
    return tau ** ((1.0 + alpha1) / (alpha * alpha1))


def case2_residual_curve(s1, s2, points=CASE2_SCAN_POINTS):
    """Log-energy imbalance over alpha in (alpha1, alpha2) for the straddling case.

    Returns ``(alphas, rho)`` where rho = ln(E1 + E2) - ln(2 f(alpha) T(alpha)^(1+alpha))
    and T(alpha) is :func:`case2_temperature`.
    """
    lo, hi = order_pair(s1, s2)
    a1, a2 = lo.alpha, hi.alpha
    tau = 0.5 * (lo.temperature + hi.temperature)
    log_E = math.log(energy_of(lo) + energy_of(hi))
    alphas = np.linspace(a1, a2, points + 2)[1:-1]
    rho = np.array([
        log_E - math.log(2.0 * f_alpha(a)) - (1.0 + a) * (1.0 + a1) / (a * a1) * math.log(tau)
        for a in alphas
    ])
    return alphas, rho


def unify_case2(s1, s2, settings=DEFAULT_SETTINGS):
    """Unify a sub-critical and a super-critical system (1/2 <= alpha1 < 1 < alpha2 <= 3/2).

    The unified temperature is tied to the half-dimension by
    T = tau**((1 + alpha1)/(alpha alpha1)), tau the mean input temperature.
    The half-dimension is pinned by energy additivity
    E1 + E2 = 2 f(alpha) T^(1+alpha), root-found on (alpha1, alpha2).
    The unified entropy is h(alpha) T^alpha.

    Raises
    ------
    NoSolutionError
        When the energy imbalance has no sign change on (alpha1, alpha2);
        ``diagnostics["residual_curve"]`` holds the scanned curve.
    """
    regime = classify_regime(s1, s2)
    if regime.tag is not RegimeTag.CASE2_STRADDLING:
        raise PreconditionError(
            f"unify_case2 needs the straddling regime, got {regime.tag.value}: {regime.detail}"
        )
    lo, hi = order_pair(s1, s2)
    T1, T2, a1, a2 = lo.temperature, hi.temperature, lo.alpha, hi.alpha
    tau = 0.5 * (T1 + T2)
    alphas, rho = case2_residual_curve(lo, hi)
    sign_change = np.nonzero(np.sign(rho[:-1]) * np.sign(rho[1:]) <= 0)[0]
    if sign_change.size == 0:
        raise NoSolutionError(
            f"energy additivity has no root for alpha in ({a1:g}, {a2:g}): the log-imbalance "
            f"stays in [{rho.min():.6g}, {rho.max():.6g}] with T(alpha) = tau^((1+alpha1)/(alpha alpha1)), tau={tau:g}",
            {"tau": tau, "residual_curve": list(zip(alphas.tolist(), rho.tolist()))},
        )
    i = int(sign_change[0])
    log_E = math.log(energy_of(lo) + energy_of(hi))

    def r(a):
        return log_E - math.log(2.0 * f_alpha(a)) - (1.0 + a) * (1.0 + a1) / (a * a1) * math.log(tau)

    a = float(alphas[i]) if rho[i] == 0 else optimize.brentq(
        r, alphas[i], alphas[i + 1], xtol=settings.root_tol, maxiter=settings.max_iter
    )
    exponent = (1.0 + a1) / (a * a1)
    T = tau ** exponent
    E = 2.0 * f_alpha(a) * T ** (1.0 + a)
    S = h_alpha(a, a1) * T ** a
    S1, S2 = entropy_of(lo, settings), entropy_of(hi, settings)
    warnings = _temperature_warnings((lo, hi), settings)
    exponent_ok = exponent < 1.0
    if not exponent_ok:
        warnings.append(
            f"temperature exponent (1+alpha1)/(alpha alpha1)={exponent:.6g} is not below 1, "
            "so T < tau cannot follow from the unified-temperature relation"
        )
    below_mean = T < tau
    above_mean_dim = a > 0.5 * (a1 + a2)
    if not below_mean:
        warnings.append(f"unified temperature T={T:.6g} is not below the mean tau={tau:.6g}")
    if not above_mean_dim:
        warnings.append(f"unified alpha={a:.6g} is not above the mean half-dimension {0.5 * (a1 + a2):.6g}")
    if len(sign_change) > 1:
        warnings.append(f"energy imbalance changes sign {len(sign_change)} times; the lowest root is reported")
    return UnificationReport(
        regime=regime,
        T_unified=T,
        alpha_unified=a,
        E_unified=E,
        S_unified=S,
        tau=tau,
        T_deviation_estimate=-exponent * math.log(tau),
        energy_residual=_rel(energy_of(lo) + energy_of(hi), E),
        entropy_residual=_rel(S1 + S2, S),
        ordering_ok=T2 <= T <= T1 and a1 <= a <= a2,
        entropy_contributions=(S1 / (S1 + S2), S2 / (S1 + S2)),
        exponent_condition_ok=exponent_ok,
        temperature_exponent=exponent,
        warnings=tuple(warnings),
    )


def unify(s1, s2, settings=DEFAULT_SETTINGS):
    """Dispatch to :func:`unify_case1` or :func:`unify_case2` by regime."""
    regime = classify_regime(s1, s2)
    if regime.tag is RegimeTag.CASE1_SAME_SIDE:
        return unify_case1(s1, s2, settings)
    if regime.tag is RegimeTag.CASE2_STRADDLING:
        return unify_case2(s1, s2, settings)
    raise RegimeError(f"no unification law applies: {regime.detail}")


def entropy_budget(s1, s2, report=None, settings=DEFAULT_SETTINGS):
    """Entropy of each input system and its share of the total.

    ``report`` (a :class:`UnificationReport`) only fixes the regime; when it is
    omitted the regime is classified from the inputs. Systems are returned in
    the canonical order, lower half-dimension first.
    """
    regime = report.regime if report is not None else classify_regime(s1, s2)
    if regime.tag is RegimeTag.UNSUPPORTED:
        raise RegimeError(f"no entropy additivity law applies: {regime.detail}")
    lo, hi = order_pair(s1, s2)
    S1, S2 = entropy_of(lo, settings), entropy_of(hi, settings)
    total = S1 + S2
    return EntropyBudget(S1, S2, S1 / total, S2 / total)
