"""
Straddling the critical point
=============================

One system is sub-critical (alpha1 < 1), the other super-critical. The
unified temperature is tied to the half-dimension through the mean
temperature tau, and energy additivity pins alpha. At large tau the energy
balance has no root; the residual curve shows why.
"""

import numpy as np

from gentile_unify import NoSolutionError, SystemState, unify
from gentile_unify.unify import case2_residual_curve

hot = SystemState(alpha=0.8, temperature=200.0, particle_count=2.0)
cold = SystemState(alpha=1.4, temperature=100.0, particle_count=2.0)

try:
    unify(hot, cold)
except NoSolutionError as exc:
    print("no solution:", exc)
    curve = np.array(exc.diagnostics["residual_curve"])
    print("log-imbalance range:", curve[:, 1].min(), curve[:, 1].max())

# a root exists once tau drops below about 1
for tau_pair in ((1.2, 0.6), (0.9, 0.5), (3.0, 2.0)):
    lo, hi = SystemState(0.8, tau_pair[0], 2), SystemState(1.4, tau_pair[1], 2)
    alphas, rho = case2_residual_curve(lo, hi)
    print(f"T1={tau_pair[0]}, T2={tau_pair[1]}: sign change on (0.8, 1.4): {bool(np.any(np.diff(np.sign(rho))))}")

r = unify(SystemState(0.8, 1.2, 2), SystemState(1.4, 0.6, 2))
print("alpha, T, tau     :", r.alpha_unified, r.T_unified, r.tau)
print("temperature exp.  :", r.temperature_exponent, "below 1:", r.exponent_condition_ok)
for w in r.warnings:
    print("warning:", w)
