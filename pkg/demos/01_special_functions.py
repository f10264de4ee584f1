"""
Special functions of the half-dimension
=======================================

The energy and entropy laws are built on f(alpha) = alpha^2 Gamma(alpha) zeta(1 + alpha)
and, below the critical point alpha = 1, on the entropy prefactor g(alpha).
"""

import math

import numpy as np

from gentile_unify.specfun import f_alpha, f_prime, g_alpha, gamma, zeta

# Gamma and zeta anchors
print("Gamma(1/2) - sqrt(pi) =", gamma(0.5) - math.sqrt(math.pi))
print("zeta(2) - pi^2/6      =", zeta(2.0) - math.pi ** 2 / 6)

# f is positive and increasing on the working interval [1/2, 3/2]
alphas = np.linspace(0.5, 1.5, 11)
for a in alphas:
    print(f"alpha={a:.1f}  f={f_alpha(a):.6f}")

# its logarithmic derivative enters the transfer laws
print("f'(1.1)/f(1.1) =", f_prime(1.1) / f_alpha(1.1))

# the closed approximation of g against its defining integral
for a in (0.5, 0.6, 0.75, 0.9):
    approx, integral = g_alpha(a), g_alpha(a, mode="integral")
    print(f"alpha={a:.2f}  approx={approx:.6f}  integral={integral:.6f}  gap={(integral - approx) / approx:+.3f}")
