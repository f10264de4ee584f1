"""Direction and size of the particle (capital) transfer under unification.

System 1 is always the lower-dimension system of the pair. Its particle count
after unification is k = k1 + lambda; lambda > 0 means particles (capital)
flow into system 1 from the higher-dimension system.
"""

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError, NoSolutionError, PreconditionError, RegimeError, SingularityError
from .specfun import check_half_dimension, f_alpha, f_prime
from .system_model import DEFAULT_SETTINGS, entropy_of

# |M| below this fraction of alpha1 f(alpha1) T1^alpha1 counts as no flow.
DEAD_BAND_REL = 1e-6

# Numeric range of alpha f(alpha) on (1, 3/2] as printed alongside the no-flow law.
PRINTED_ALPHA_F_RANGE = (1.5, 3.4)

H2_NOTE = "H2 is evaluated as (k1 kappa1/T1 - alpha1)/kappa1, by symmetry with H1 (the printed bracket is unbalanced)"
DG_NOTE = "dG = -k dkappa is used for the printed 'dG = -k dk'; the operative form dG = -2 alpha S dT is unaffected"


class TransferDirection(enum.Enum):
    INTO_SYSTEM1 = "IntoSystem1"
    OUT_OF_SYSTEM1 = "OutOfSystem1"
    NONE = "None"


class PerturbationCoefficients(NamedTuple):
    H1: float
    H2: float
    H3: float


@dataclass(frozen=True)
class TransferReport:
    q1: float
    H1: Optional[float]
    H2: Optional[float]
    H3: Optional[float]
    kappa1: Optional[float]
    Delta: float
    xi: Optional[float]
    lambda_value: Optional[float]
    no_flow_margin: float
    direction: TransferDirection
    delta_k: Optional[float]
    relative_transfer: Optional[float]
    relative_lower_bound: float
    warnings: tuple = field(default_factory=tuple)

    def to_dict(self):
        d = asdict(self)
        d["direction"] = self.direction.value
        d["warnings"] = list(self.warnings)
        return d


def q_factor(s1):
    """q1 = f'(alpha1)/f(alpha1) + ln T1."""
    return f_prime(s1.alpha) / f_alpha(s1.alpha) + math.log(s1.temperature)


def temperature_dimension_link(s1, alpha_unified):
    """Unified temperature implied by a dimension shift: T1 - (alpha - alpha1) T1 q1 / alpha1."""
    alpha_unified = check_half_dimension(alpha_unified)
    if alpha_unified < s1.alpha:
        raise DomainError(f"alpha_unified={alpha_unified} below alpha1={s1.alpha}")
    return s1.temperature - (alpha_unified - s1.alpha) * s1.temperature * q_factor(s1) / s1.alpha


def perturbation_coefficients(s1):
    """The coefficients of lambda H1 + xi H2 = Delta H3.

    H1 = (k1 kappa1/T1 - (alpha1 - 1))/k1
    H2 = (k1 kappa1/T1 - alpha1)/kappa1
    H3 = (1 - q1 (alpha1 - 1)/alpha1) ln k1 + (1 - q1) ln kappa1
    """
    if s1.kappa is None:
        raise PreconditionError("perturbation_coefficients needs kappa1; call with_kappa() first")
    a, t, k, kap = s1.alpha, s1.temperature, s1.particle_count, s1.kappa
    q1 = q_factor(s1)
    x = k * kap / t
    return PerturbationCoefficients(
        H1=(x - (a - 1.0)) / k,
        H2=(x - a) / kap,
        H3=(1.0 - (a - 1.0) / a * q1) * math.log(k) + (1.0 - q1) * math.log(kap),
    )


def lambda_transfer(H, Delta, xi, tol=1e-12):
    """Perturbative particle-count change of system 1, (H3 Delta - H2 xi)/H1."""
    H1, H2, H3 = H
    if Delta < 0:
        raise DomainError(f"Delta must be non-negative, got {Delta}")
    if abs(H1) <= tol * max(1.0, abs(H2), abs(H3)):
        raise SingularityError(f"H1={H1:.3g} vanishes; the transfer formula is singular")
    return (H3 * Delta - H2 * xi) / H1


def chemical_potential_shift(s1, dT, settings=DEFAULT_SETTINGS):
    """Closure for xi: dkappa = -dG/k1 with dG = -2 alpha1 S1 dT at fixed k1."""
    return -gibbs_duhem_dG(s1, dT, settings) / s1.particle_count


def no_flow_margin(s1):
    """M = alpha1 f(alpha1) T1^alpha1 - ln k1; zero on the no-flow manifold."""
    return s1.alpha * f_alpha(s1.alpha) * s1.temperature ** s1.alpha - math.log(s1.particle_count)


def _dead_band(s1, dead_band_rel):
    return dead_band_rel * max(1.0, s1.alpha * f_alpha(s1.alpha) * s1.temperature ** s1.alpha)


def flow_direction(s1, dead_band_rel=DEAD_BAND_REL):
    """Sign of :func:`no_flow_margin` with a relative dead band."""
    m = no_flow_margin(s1)
    band = _dead_band(s1, dead_band_rel)
    if m > band:
        return TransferDirection.INTO_SYSTEM1
    if m < -band:
        return TransferDirection.OUT_OF_SYSTEM1
    return TransferDirection.NONE


def transfer_size(s1, T_unified, dead_band_rel=DEAD_BAND_REL):
    """Particle-count gain of system 1, k - k1, to highest order.

    k1 (T1 - T) (2 alpha1 f T1^alpha1 + (alpha1 - 1) ln k1) / (f T1^(alpha1 + 1)).
    Derived only where the flow goes into system 1 (or vanishes) and the
    unified temperature is not above T1.
    """
    a, t, k = s1.alpha, s1.temperature, s1.particle_count
    if T_unified > t:
        raise RegimeError(f"T_unified={T_unified:g} exceeds T1={t:g}")
    if flow_direction(s1, dead_band_rel) is TransferDirection.OUT_OF_SYSTEM1:
        raise RegimeError(
            f"no-flow margin {no_flow_margin(s1):.6g} < 0: the transfer-size law needs flow into system 1"
        )
    fa = f_alpha(a)
    return k * (t - T_unified) * (2.0 * a * fa * t ** a + (a - 1.0) * math.log(k)) / (fa * t ** (a + 1.0))


def relative_transfer(s1, T_unified, settings=DEFAULT_SETTINGS, dead_band_rel=DEAD_BAND_REL):
    """Relative gain (k - k1)/k1 in terms of ln k1 and ln kappa1, with its lower bound.

    Returns ``(value, lower_bound)`` where lower_bound = 2 alpha1 (T1 - T)/T1.
    kappa1 is solved when ``s1.kappa`` is absent.
    """
    a, t, k = s1.alpha, s1.temperature, s1.particle_count
    if T_unified > t:
        raise RegimeError(f"T_unified={T_unified:g} exceeds T1={t:g}")
    if flow_direction(s1, dead_band_rel) is TransferDirection.OUT_OF_SYSTEM1:
        raise RegimeError("relative transfer law needs flow into system 1")
    kap = s1.with_kappa(settings).kappa
    lk, lkap = math.log(k), math.log(kap)
    if lk <= 0 or lkap <= 0:
        raise DomainError(f"ln k1={lk:.3g} and ln kappa1={lkap:.3g} must both be positive")
    den = (a - 1.0) * lk + a * lkap
    if den == 0:
        raise SingularityError("zero denominator in the relative transfer")
    drop = (t - T_unified) / t
    value = drop * ((2.0 * a + 1.0) * (a - 1.0) * lk + 2.0 * a * a * lkap) / den
    return value, 2.0 * a * drop


def kappa_asymptotic_threehalves(T):
    """Leading-order chemical potential (3/2) T ln T at alpha = 3/2."""
    T = float(T)
    if not T >= math.e * (1 - 1e-15):
        raise DomainError(f"asymptotic kappa needs T >= e, got {T}")
    return 1.5 * T * math.log(T)


def gibbs_duhem_dG(s, dT, settings=DEFAULT_SETTINGS):
    """Gibbs-potential change dG = -T dS = -2 alpha S dT (super-critical entropy law)."""
    if s.alpha < 1.0:
        raise DomainError(f"the Gibbs-Duhem chain uses the alpha >= 1 entropy law, got alpha={s.alpha}")
    return -2.0 * s.alpha * entropy_of(s, settings) * dT


@dataclass(frozen=True)
class AlphaFScan:
    minimum: float
    maximum: float
    table: np.ndarray
    printed_range: tuple
    printed_range_reproduced: bool
    note: str


def scan_alpha_f(lo=1.0, hi=1.5, steps=51):
    """Tabulate alpha f(alpha) on [lo, hi] and compare with the printed range 1.5 .. 3.4.

    The comparison is informational; a mismatch is reported in ``note``.
    """
    lo = check_half_dimension(lo, lo=1.0)
    hi = check_half_dimension(hi, lo=lo)
    alphas = np.linspace(lo, hi, max(int(steps), 2))
    values = np.array([a * f_alpha(a) for a in alphas])
    table = np.column_stack([alphas, values])
    pmin, pmax = PRINTED_ALPHA_F_RANGE
    reproduced = bool(values.min() >= pmin and values.max() <= pmax)
    note = (
        f"alpha f(alpha) on [{lo:g}, {hi:g}] spans [{values.min():.6g}, {values.max():.6g}]; "
        + ("consistent with" if reproduced else "does not reproduce")
        + f" the printed range [{pmin}, {pmax}]"
    )
    return AlphaFScan(float(values.min()), float(values.max()), table, PRINTED_ALPHA_F_RANGE, reproduced, note)


def analyze_transfer(s1, unified, settings=DEFAULT_SETTINGS, dead_band_rel=DEAD_BAND_REL):
    """Assemble a :class:`TransferReport` for system 1 given a unification report.

    Quantities that need kappa1 are left as None (with a warning) when the
    chemical-potential relation has no root with kappa1 > 1; the transfer size
    is left as None outside its regime of validity.
    """
    warns = []
    T = unified.T_unified
    Delta = unified.alpha_unified - s1.alpha
    q1 = q_factor(s1)
    margin = no_flow_margin(s1)
    direction = flow_direction(s1, dead_band_rel)
    dT = T - s1.temperature
    xi = None
    if s1.alpha >= 1.0:
        xi = chemical_potential_shift(s1, dT, settings)
        warns.append(DG_NOTE)

    H = kap = lam = rel = None
    try:
        s1k = s1.with_kappa(settings)
        kap = s1k.kappa
        H = perturbation_coefficients(s1k)
        warns.append(H2_NOTE)
    except NoSolutionError as exc:
        warns.append(f"kappa1 unavailable: {exc}")
    if H is not None and xi is not None:
        try:
            lam = lambda_transfer(H, Delta, xi)
        except (SingularityError, DomainError) as exc:
            warns.append(f"lambda unavailable: {exc}")

    dk = None
    try:
        dk = transfer_size(s1, T, dead_band_rel)
    except RegimeError as exc:
        warns.append(f"transfer size not applicable: {exc}")
    drop = (s1.temperature - T) / s1.temperature
    lower = 2.0 * s1.alpha * drop
    if kap is not None and dk is not None:
        try:
            rel, lower = relative_transfer(s1k, T, settings, dead_band_rel)
        except (DomainError, SingularityError, RegimeError) as exc:
            warns.append(f"relative transfer unavailable: {exc}")
    return TransferReport(
        q1=q1,
        H1=None if H is None else H.H1,
        H2=None if H is None else H.H2,
        H3=None if H is None else H.H3,
        kappa1=kap,
        Delta=Delta,
        xi=xi,
        lambda_value=lam,
        no_flow_margin=margin,
        direction=direction,
        delta_k=dk,
        relative_transfer=rel,
        relative_lower_bound=lower,
        warnings=tuple(warns),
    )
