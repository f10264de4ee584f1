"""Special functions used by the unification laws.

Only the narrow argument ranges the thermodynamic relations need are
supported: the gamma function on x > 0 (callers use [1/2, 5/2]), the Riemann
zeta function on s > 1 (callers use (3/2, 5/2]) and the structural functions
of the half-dimension alpha on [1/2, 3/2].
"""

import math
import warnings

from scipy import integrate

from .errors import DomainError, QuadratureError

ALPHA_MIN = 0.5
ALPHA_MAX = 1.5

# Lanczos approximation, g = 7, n = 9 (relative error ~1e-15 for x >= 1/2).
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_{2k} / (2k)! for k = 1..10, Euler-Maclaurin correction terms.
_BERNOULLI_2K = (
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66,
    -691 / 2730, 7 / 6, -3617 / 510, 43867 / 798, -174611 / 330,
)
_EM_COEF = tuple(b / math.factorial(2 * (k + 1)) for k, b in enumerate(_BERNOULLI_2K))
_EM_N = 12

# Beyond this point the Bose part of the g integrand is below exp(-40).
_G_SPLIT = 40.0


def check_half_dimension(alpha, lo=ALPHA_MIN, hi=ALPHA_MAX, name="alpha"):
    """Validate a half-dimension and return it as a float."""
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"{name} must be finite, got {alpha!r}")
    if not lo <= alpha <= hi:
        raise DomainError(f"{name}={alpha!r} outside [{lo}, {hi}]")
    return alpha


def gamma(x):
    """Gamma function for real x > 0.

    Lanczos approximation for x >= 1/2; the recurrence Gamma(x) = Gamma(x+1)/x
    below that. Relative error is below 1e-13 on [1/2, 5/2].
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        return gamma(x + 1.0) / x
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * math.exp((z + 0.5) * math.log(t) - t) * acc


def zeta(s):
    """Riemann zeta function for real s > 1 via Euler-Maclaurin summation."""
    s = float(s)
    if not math.isfinite(s) or s <= 1.0:
        raise DomainError(f"zeta requires finite s > 1, got {s!r}")
    n = _EM_N
    terms = [k ** -s for k in range(1, n)]
    terms.append(n ** (1.0 - s) / (s - 1.0))
    terms.append(0.5 * n ** -s)
    # rising factorial s (s+1) ... (s+2k-2), built incrementally
    rising = s
    for k, coef in enumerate(_EM_COEF, start=1):
        terms.append(coef * rising * n ** (-s - 2 * k + 1))
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return math.fsum(terms)


def _f(alpha):
    return alpha * alpha * gamma(alpha) * zeta(1.0 + alpha)


def f_alpha(alpha):
    """Energy/entropy prefactor f(alpha) = alpha^2 Gamma(alpha) zeta(1 + alpha).

    Defined on [1/2, 3/2], where it is positive and strictly increasing.
    """
    return _f(check_half_dimension(alpha))


def f_prime(alpha, step=1e-3):
    """Derivative of :func:`f_alpha`.

    Central differences at steps ``step`` and ``step/2`` combined by one
    Richardson extrapolation, giving O(step**4) truncation error.
    """
    alpha = check_half_dimension(alpha)
    if alpha - step < ALPHA_MIN or alpha + step > ALPHA_MAX:
        raise DomainError(
            f"f_prime stencil of width {step} at alpha={alpha} leaves "
            f"[{ALPHA_MIN}, {ALPHA_MAX}]"
        )

    def central(h):
        return (_f(alpha + h) - _f(alpha - h)) / (2.0 * h)

    return (4.0 * central(step / 2.0) - central(step)) / 3.0


def _one_over_x_minus_bose(x):
    # 1/x - 1/(e^x - 1), series near 0 to avoid cancellation
    if x < 1e-4:
        return 0.5 - x / 12.0 + x ** 3 / 720.0
    return 1.0 / x - 1.0 / math.expm1(x)


def _quad(func, a, b, rel_tol, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(
                func, a, b, epsabs=0.0, epsrel=rel_tol, limit=200, **kwargs
            )
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(
                f"quadrature on [{a}, {b}] did not converge: {exc}",
                {"interval": (a, b), "rel_tol": rel_tol},
            ) from None
    return value, abserr


def g_integral_value(alpha, rel_tol=1e-8):
    """The integral of (1/x - 1/(e^x - 1)) d(x^alpha) over (0, inf), 0 < alpha < 1.

    Returns ``(value, abserr)``. The range is split at 1 and at 40:
    the x^(alpha-1) endpoint singularity on [0, 1] is absorbed by an algebraic
    quadrature weight, and on [40, inf) the 1/x part is integrated in closed
    form while the neglected Bose part is bounded by exp(-40).
    """
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"g integral converges only for 0 < alpha < 1, got {alpha}")
    # quadpack refuses epsrel below 50 machine epsilons
    inner_tol = max(rel_tol / 10.0, 1.2e-14)
    head, err_head = _quad(
        _one_over_x_minus_bose, 0.0, 1.0, inner_tol, weight="alg", wvar=(alpha - 1.0, 0.0)
    )
    body, err_body = _quad(
        lambda x: x ** (alpha - 1.0) * _one_over_x_minus_bose(x), 1.0, _G_SPLIT, inner_tol
    )
    tail = _G_SPLIT ** (alpha - 1.0) / (1.0 - alpha)
    bose_tail_bound = _G_SPLIT ** (alpha - 1.0) * math.exp(-_G_SPLIT) / (1.0 - math.exp(-_G_SPLIT))
    value = alpha * (head + body + tail)
    abserr = alpha * (err_head + err_body + bose_tail_bound)
    if not abserr <= rel_tol * abs(value):
        raise QuadratureError(
            f"g integral at alpha={alpha}: error estimate {abserr:.3g} exceeds "
            f"rel_tol={rel_tol:.3g} of value {value:.6g}",
            {"alpha": alpha, "value": value, "abserr": abserr},
        )
    return value, abserr


def g_alpha(alpha, mode="approximation", delta=0.1, rel_tol=1e-8):
    """Entropy prefactor g(alpha) for the sub-critical branch 1/2 <= alpha < 1.

    Parameters
    ----------
    alpha : float
        Half-dimension in [1/2, 1).
    mode : {"approximation", "integral"}
        ``"approximation"`` returns (alpha / (1 - alpha))**(1/alpha) and is
        only admitted for alpha <= 1 - delta. ``"integral"`` evaluates the
        defining integral by adaptive quadrature and raises it to 1/alpha.
    delta : float
        Guard band below the critical point alpha = 1.
    rel_tol : float
        Relative quadrature tolerance for ``mode="integral"``.
    """
    alpha = check_half_dimension(alpha)
    if alpha >= 1.0:
        raise DomainError(f"g is defined only below the critical point, got alpha={alpha}")
    if mode == "approximation":
        if alpha > 1.0 - delta + 1e-12:
            raise DomainError(
                f"g approximation not admitted at alpha={alpha} inside the guard band "
                f"(1 - {delta}, 1)"
            )
        return (alpha / (1.0 - alpha)) ** (1.0 / alpha)
    if mode == "integral":
        value, _ = g_integral_value(alpha, rel_tol)
        return value ** (1.0 / alpha)
    raise ValueError(f"unknown mode {mode!r}")


def h_alpha(alpha, alpha1):
    """Unified-entropy prefactor h(alpha) = (alpha / (1 + alpha1))**(1 / (1 - alpha1)).

    Only defined when the lower system is sub-critical (alpha1 < 1).
    """
    alpha1 = check_half_dimension(alpha1, name="alpha1")
    if alpha1 >= 1.0:
        raise DomainError(f"h requires alpha1 < 1, got {alpha1}")
    alpha = check_half_dimension(alpha, lo=alpha1)
    return (alpha / (1.0 + alpha1)) ** (1.0 / (1.0 - alpha1))


def h_alpha_leading_order_form(alpha, alpha1):
    """Diagnostic: the leading-order coefficient (alpha / (1 - alpha1))**(1 / (1 - alpha1)).

    This is the coefficient appearing in the highest-order balance before h is
    identified; its denominator differs from :func:`h_alpha`. Exposed so the
    two printed forms can be compared, never used in computations.
    """
    alpha1 = check_half_dimension(alpha1, name="alpha1")
    if alpha1 >= 1.0:
        raise DomainError(f"requires alpha1 < 1, got {alpha1}")
    alpha = check_half_dimension(alpha, lo=alpha1)
    return (alpha / (1.0 - alpha1)) ** (1.0 / (1.0 - alpha1))
