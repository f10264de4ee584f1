"""A single parastatistical system and its equilibrium observables.

All quantities are dimensionless (Boltzmann constant set to one). In the
economic reading the temperature is the capital turnover rate, the particle
count is the number of banknotes and kappa = -mu is the nominal interest rate.
"""

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional

from scipy import optimize

from .errors import DomainError, NoSolutionError, PreconditionError
from .specfun import check_half_dimension, f_alpha, g_alpha


@dataclass(frozen=True)
class SolverSettings:
    """Numerical controls shared by the solvers."""

    root_tol: float = 1e-10
    max_iter: int = 200
    quad_rel_tol: float = 1e-8
    delta_guard: float = 0.1
    # the asymptotic laws hold for large temperatures; warn below this
    asymptotic_T_min: float = 10.0

    def __post_init__(self):
        for name in ("root_tol", "quad_rel_tol", "delta_guard", "asymptotic_T_min"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"settings.{name} must be a positive finite number, got {value!r}")
        if not isinstance(self.max_iter, int) or self.max_iter < 10:
            raise DomainError(f"settings.max_iter must be an integer >= 10, got {self.max_iter!r}")
        if self.delta_guard >= 0.5:
            raise DomainError("settings.delta_guard must be below 0.5")


DEFAULT_SETTINGS = SolverSettings()


@dataclass(frozen=True)
class SystemState:
    """One system of identical elements.

    ``particle_count`` is real-valued; it only enters through ln k and dk.
    """

    alpha: float
    temperature: float
    particle_count: float
    kappa: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_half_dimension(self.alpha))
        t = float(self.temperature)
        if not (math.isfinite(t) and t > 0):
            raise DomainError(f"temperature must be positive and finite, got {self.temperature!r}")
        object.__setattr__(self, "temperature", t)
        k = float(self.particle_count)
        if not (math.isfinite(k) and k >= 1):
            raise DomainError(f"particle_count must be finite and >= 1, got {self.particle_count!r}")
        object.__setattr__(self, "particle_count", k)
        if self.kappa is not None:
            kap = float(self.kappa)
            if not (math.isfinite(kap) and kap > 0):
                raise DomainError(f"kappa must be positive and finite, got {self.kappa!r}")
            object.__setattr__(self, "kappa", kap)

    def with_kappa(self, settings=DEFAULT_SETTINGS):
        """Return a copy whose kappa is solved from the chemical-potential relation."""
        if self.kappa is not None:
            return self
        kap = solve_kappa(self.particle_count, self.temperature, self.alpha, settings)
        return replace(self, kappa=kap)


class RegimeTag(enum.Enum):
    CASE1_SAME_SIDE = "Case1SameSide"
    CASE2_STRADDLING = "Case2Straddling"
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    detail: str


def energy_of(s):
    """Total energy E = f(alpha) T^(1 + alpha)."""
    return f_alpha(s.alpha) * s.temperature ** (1.0 + s.alpha)


def _subcritical_entropy(alpha, t, delta):
    return g_alpha(alpha, "approximation", delta) * t ** ((1.0 + alpha) / alpha)


def entropy_branch(alpha, delta=DEFAULT_SETTINGS.delta_guard):
    """Name of the entropy law used at ``alpha``: "supercritical", "subcritical" or "interpolated"."""
    if alpha >= 1.0:
        return "supercritical"
    if alpha <= 1.0 - delta:
        return "subcritical"
    return "interpolated"


def entropy_of(s, settings=DEFAULT_SETTINGS):
    """Entropy of a single system, piecewise in alpha.

    For alpha >= 1, S = f(alpha) T^alpha. For alpha <= 1 - delta,
    S = g(alpha) T^((1 + alpha)/alpha) with the closed g approximation.
    Inside the guard band (1 - delta, 1), ln S is interpolated linearly in
    alpha between the sub-critical value at 1 - delta and f(1) T at alpha = 1,
    which makes S continuous at the critical point.
    """
    delta = settings.delta_guard
    branch = entropy_branch(s.alpha, delta)
    t = s.temperature
    if branch == "supercritical":
        return f_alpha(s.alpha) * t ** s.alpha
    if branch == "subcritical":
        return _subcritical_entropy(s.alpha, t, delta)
    a0 = 1.0 - delta
    w = (s.alpha - a0) / delta
    log_lo = math.log(_subcritical_entropy(a0, t, delta))
    log_hi = math.log(f_alpha(1.0) * t)
    return math.exp((1.0 - w) * log_lo + w * log_hi)


def kappa_residual(kappa, k, T, alpha):
    """k kappa - T[(alpha - 1) ln k + alpha ln kappa]."""
    return k * kappa - T * ((alpha - 1.0) * math.log(k) + alpha * math.log(kappa))


def solve_kappa(k, T, alpha, settings=DEFAULT_SETTINGS):
    """Chemical-potential magnitude kappa > 1 solving k kappa = T[(alpha-1) ln k + alpha ln kappa].

    The residual is convex in kappa with its minimum at alpha T / k, so there
    are at most two positive roots. The larger one (the branch growing like
    T ln T) is bracketed between max(1, alpha T / k) and an expanding upper
    bound, located with Brent's method and polished by Newton steps.

    Raises
    ------
    NoSolutionError
        If no root with kappa > 1 exists.
    """
    k = float(k)
    T = float(T)
    alpha = check_half_dimension(alpha)
    if k < 1 or T <= 0:
        raise DomainError(f"solve_kappa needs k >= 1 and T > 0, got k={k}, T={T}")

    def r(x):
        return kappa_residual(x, k, T, alpha)

    lo = max(1.0, alpha * T / k)
    r_lo = r(lo)
    if r_lo >= 0.0:
        if r_lo == 0.0 and lo > 1.0:
            return lo
        raise NoSolutionError(
            f"no kappa > 1 solves the chemical-potential relation for k={k:g}, T={T:g}, alpha={alpha:g}: "
            f"residual at its minimum over kappa > 1 is {r_lo:.6g} > 0",
            {"bracket_lo": lo, "residual_lo": r_lo},
        )
    hi = max(10.0, 10.0 * alpha * T * math.log(10.0 * T)) if T > 0.1 else 10.0
    hi = max(hi, 2.0 * lo)
    for _ in range(settings.max_iter):
        if r(hi) > 0.0:
            break
        hi *= 10.0
    else:
        raise NoSolutionError(
            "could not bracket the upper kappa root",
            {"bracket_lo": lo, "bracket_hi": hi, "residual_hi": r(hi)},
        )
    kap = optimize.brentq(r, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=settings.max_iter)
    for _ in range(3):
        slope = k - alpha * T / kap
        if slope <= 0:
            break
        step = r(kap) / slope
        if not abs(step) < 1e-6 * kap:
            break
        kap -= step
    res = r(kap)
    if abs(res) > settings.root_tol * max(1.0, k * kap):
        raise NoSolutionError(
            f"kappa root residual {res:.3g} above tolerance",
            {"kappa": kap, "residual": res, "bracket_lo": lo, "bracket_hi": hi},
        )
    return kap


def gibbs_of(s):
    """Gibbs potential G = k mu = -k kappa."""
    if s.kappa is None:
        raise PreconditionError("gibbs_of needs a chemical potential; call with_kappa() first")
    return -s.particle_count * s.kappa


def gibbs_residual(s):
    """|G| - T(alpha ln|G| - ln k); zero when kappa solves the chemical-potential relation."""
    g = abs(gibbs_of(s))
    return g - s.temperature * (s.alpha * math.log(g) - math.log(s.particle_count))


def order_pair(s1, s2):
    """Order two systems so the first has the smaller half-dimension.

    Ties in alpha put the hotter system first, then the smaller particle count,
    so the ordering does not depend on argument order.
    """

    def key(s):
        return (s.alpha, -s.temperature, s.particle_count,
                -1.0 if s.kappa is None else s.kappa)

    return (s1, s2) if key(s1) <= key(s2) else (s2, s1)


def classify_regime(s1, s2):
    """Decide which unification law applies to a pair of systems."""
    lo, hi = order_pair(s1, s2)
    a1, a2 = lo.alpha, hi.alpha
    if 1.0 < a1 <= a2 <= 1.5:
        return Regime(RegimeTag.CASE1_SAME_SIDE, f"1 < alpha1={a1:g} <= alpha2={a2:g} <= 3/2")
    if 0.5 <= a1 < 1.0 < a2 <= 1.5:
        if a2 < 1.0 + 1.0 / a1:
            return Regime(
                RegimeTag.CASE2_STRADDLING,
                f"1/2 <= alpha1={a1:g} < 1 < alpha2={a2:g} <= 3/2, alpha2 < 1 + 1/alpha1",
            )
        return Regime(RegimeTag.UNSUPPORTED, f"alpha2={a2:g} >= 1 + 1/alpha1={1 + 1 / a1:g}")
    if a1 == 1.0 or a2 == 1.0:
        return Regime(RegimeTag.UNSUPPORTED, "a half-dimension sits exactly on the critical point alpha = 1")
    if a2 < 1.0:
        return Regime(RegimeTag.UNSUPPORTED, f"both half-dimensions below 1 (alpha1={a1:g}, alpha2={a2:g})")
    return Regime(RegimeTag.UNSUPPORTED, f"alpha1={a1:g}, alpha2={a2:g} match no unification law")
