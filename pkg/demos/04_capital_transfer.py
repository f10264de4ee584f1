"""
Direction and size of the capital transfer
==========================================

System 1 is the lower-dimension system. The sign of the no-flow margin
M = alpha1 f(alpha1) T1^alpha1 - ln k1 decides whether particles (capital)
flow into it when the systems are unified.
"""

import math

import numpy as np

from gentile_unify import SystemState, unify
from gentile_unify.specfun import f_alpha
from gentile_unify.transfer import analyze_transfer, flow_direction, no_flow_margin, transfer_size

# margin as the turnover rate T1 grows at fixed capital k1 = 1e6
for T1 in np.linspace(2, 12, 6):
    s = SystemState(1.1, T1, 1e6)
    print(f"T1={T1:5.1f}  M={no_flow_margin(s):+9.3f}  {flow_direction(s).value}")

# on the no-flow manifold the transfer vanishes with the temperature drop
on = SystemState(1.1, 10.0, math.exp(1.1 * f_alpha(1.1) * 10 ** 1.1))
print("margin on the manifold:", no_flow_margin(on), flow_direction(on).value)
for eps in (1e-1, 1e-3, 1e-5):
    print(f"  T = T1 - {eps:g}:  (k - k1)/k1 = {transfer_size(on, 10 - eps) / on.particle_count:.3e}")

# a full report for a small system whose chemical potential is solvable
s1, s2 = SystemState(1.1, 120, 10), SystemState(1.3, 80, 10)
t = analyze_transfer(s1, unify(s1, s2))
print("q1, kappa1      :", t.q1, t.kappa1)
print("H1, H2, H3      :", t.H1, t.H2, t.H3)
print("lambda          :", t.lambda_value)
print("delta k         :", t.delta_k)
print("relative, bound :", t.relative_transfer, t.relative_lower_bound)
