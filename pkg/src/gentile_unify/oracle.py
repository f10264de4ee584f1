"""Brute-force checks of the asymptotic laws by direct quadrature.

Nothing here calls the Lanczos gamma or the Euler-Maclaurin zeta; the energy
integral is evaluated by scipy's adaptive quadrature and compared against the
closed form built from :mod:`gentile_unify.specfun`.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from scipy import integrate

from .errors import DomainError, QuadratureError
from .specfun import check_half_dimension, f_alpha, g_alpha, g_integral_value
from .system_model import DEFAULT_SETTINGS


@dataclass(frozen=True)
class GentileSpec:
    """Maximum occupation number of a single state; ``None`` means unbounded (Bose)."""

    max_occupancy: Optional[int] = None

    def __post_init__(self):
        m = self.max_occupancy
        if m is not None and (not isinstance(m, int) or m < 1):
            raise DomainError(f"max_occupancy must be an integer >= 1 or None, got {m!r}")


BOSE = GentileSpec(None)
FERMI = GentileSpec(1)

# 1/(e^z - 1) - 1/z = sum_k B_2k z^(2k-1)/(2k)! - 1/2, k = 1..8
_BOSE_SERIES = (
    1 / 12, -1 / 720, 1 / 30240, -1 / 1209600,
    1 / 47900160, -691 / 1307674368000, 1 / 74724249600, -3617 / 10670622842880000,
)


def _bose_minus_pole(z):
    # 1/(e^z - 1) - 1/z for |z| < 1/2
    z2 = z * z
    acc = 0.0
    for c in reversed(_BOSE_SERIES):
        acc = acc * z2 + c
    return acc * z - 0.5


def gentile_occupation(energy, T, mu, m=BOSE):
    """Mean occupation of a level under Gentile statistics.

    With y = (energy - mu)/T the bounded form is
    1/(e^y - 1) - (m + 1)/(e^((m+1) y) - 1); the Bose term alone when m is
    unbounded. For (m + 1) y < 1/2 the two poles are cancelled analytically.
    """
    y = (energy - mu) / T
    if not y > 0:
        raise DomainError(f"reduced energy (energy - mu)/T must be positive, got {y!r}")
    if m.max_occupancy is None:
        return 1.0 / math.expm1(y)
    n1 = m.max_occupancy + 1
    z = n1 * y
    if z < 0.5:
        # the 1/y poles cancel: 1/y - n1/(n1 y) = 0
        return _bose_minus_pole(y) - n1 * _bose_minus_pole(z)
    if z > 700.0:
        return 1.0 / math.expm1(y)
    return 1.0 / math.expm1(y) - n1 / math.expm1(z)


def _bose_kernel(x, c):
    # x / (e^(x + c) - 1), computed from exp(-(x + c)) so large c cannot overflow
    u = x + c
    if u == 0.0:
        return 1.0
    return x * math.exp(-u) / -math.expm1(-u)


def bose_energy_quadrature(alpha, T, kappa_mag=0.0, settings=DEFAULT_SETTINGS):
    """Energy alpha * int_0^inf eps^alpha / (e^((eps + kappa)/T) - 1) d eps.

    With the density of states alpha eps^(alpha-1) this equals f(alpha) T^(1+alpha)
    exactly at kappa = 0. The integral is scaled to x = eps/T and split at x = 1;
    on [0, 1] the x^(alpha-1) factor is carried by an algebraic weight.
    """
    alpha = check_half_dimension(alpha)
    T = float(T)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T}")
    if kappa_mag < 0:
        raise DomainError(f"kappa_mag must be non-negative, got {kappa_mag}")
    c = kappa_mag / T
    # quadpack refuses epsrel below 50 machine epsilons
    rel = max(settings.quad_rel_tol / 10.0, 1.2e-14)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            head, e1 = integrate.quad(_bose_kernel, 0.0, 1.0, args=(c,), weight="alg",
                                      wvar=(alpha - 1.0, 0.0), epsabs=0.0, epsrel=rel, limit=200)
            tail, e2 = integrate.quad(lambda x: x ** alpha * math.exp(-(x + c)) / -math.expm1(-(x + c)),
                                      1.0, math.inf, epsabs=0.0, epsrel=rel, limit=200)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(
                f"energy quadrature did not converge at alpha={alpha}, T={T}, kappa={kappa_mag}: {exc}",
                {"alpha": alpha, "T": T, "kappa": kappa_mag},
            ) from None
    value = head + tail
    if value > 0 and (e1 + e2) > settings.quad_rel_tol * value:
        raise QuadratureError(
            f"energy quadrature error {e1 + e2:.3g} exceeds quad_rel_tol={settings.quad_rel_tol:.3g} "
            f"of the value {value:.6g}",
            {"alpha": alpha, "T": T, "kappa": kappa_mag, "abserr": e1 + e2},
        )
    return alpha * T ** (alpha + 1.0) * value


@dataclass(frozen=True)
class EnergyCheck:
    alpha: float
    T: float
    quadrature: float
    closed_form: float
    rel_error: float
    passed: bool


def verify_energy_asymptotic(alpha_grid, T_grid, settings=DEFAULT_SETTINGS):
    """Compare the quadrature energy at kappa = 0 with f(alpha) T^(1+alpha) on a grid.

    Rows are ordered alpha-major. A row passes when its relative error is at
    most 10 * quad_rel_tol.
    """
    rows = []
    for a in alpha_grid:
        for t in T_grid:
            quad = bose_energy_quadrature(a, t, 0.0, settings)
            closed = f_alpha(a) * t ** (1.0 + a)
            err = abs(quad - closed) / closed
            rows.append(EnergyCheck(float(a), float(t), quad, closed, err, err <= 10 * settings.quad_rel_tol))
    return rows


@dataclass(frozen=True)
class GCheck:
    alpha: float
    g_integral: float
    g_approx: float
    rel_gap: float
    integral_error: float


def verify_g_integral(alpha_grid, settings=DEFAULT_SETTINGS):
    """Tabulate g by quadrature against its closed approximation.

    The gap is reported, not judged; it is large away from alpha = 1/2 ... 1.
    """
    rows = []
    for a in alpha_grid:
        a = check_half_dimension(a, hi=1.0 - settings.delta_guard + 1e-12)
        integral, abserr = g_integral_value(a, settings.quad_rel_tol)
        g_int = integral ** (1.0 / a)
        g_apx = g_alpha(a, "approximation", settings.delta_guard)
        rows.append(GCheck(a, g_int, g_apx, (g_int - g_apx) / g_apx, abserr / integral / a))
    return rows


def verify_gentile_limits(n_points=100, m_large=10**6, y_lo=1e-3, y_hi=30.0):
    """Maximum deviations of Gentile occupations from their Fermi and Bose limits.

    Returns ``(fermi_max_rel_dev, bose_max_abs_dev)`` over a geometric grid of
    reduced energies. The Bose comparison uses y >= 1, where the m_large
    occupation has converged.
    """
    if n_points < 1:
        return 0.0, 0.0
    ratio = (y_hi / y_lo) ** (1.0 / max(n_points - 1, 1))
    ys = [y_lo * ratio ** i for i in range(n_points)]
    fermi_dev = max(
        abs(gentile_occupation(y, 1.0, 0.0, FERMI) - 1.0 / (math.exp(y) + 1.0)) / (1.0 / (math.exp(y) + 1.0))
        for y in ys
    )
    big = GentileSpec(m_large)
    bose_ys = [1.0 + (y_hi - 1.0) * i / max(n_points - 1, 1) for i in range(n_points)]
    bose_dev = max(abs(gentile_occupation(y, 1.0, 0.0, big) - 1.0 / math.expm1(y)) for y in bose_ys)
    return fermi_dev, bose_dev
