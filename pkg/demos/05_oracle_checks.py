"""
Independent checks by direct quadrature
=======================================

The energy law E = f(alpha) T^(1+alpha) is recomputed from the Bose integral,
and the Gentile occupation is checked against its Fermi and Bose limits.
"""

from gentile_unify.oracle import (
    FERMI,
    GentileSpec,
    gentile_occupation,
    verify_energy_asymptotic,
    verify_g_integral,
    verify_gentile_limits,
)

for row in verify_energy_asymptotic([0.5, 1.0, 1.5], [1.0, 10.0, 100.0]):
    print(f"alpha={row.alpha:.1f} T={row.T:6.1f}  rel. error {row.rel_error:.1e}")

for row in verify_g_integral([0.5, 0.6, 0.75, 0.9]):
    print(f"alpha={row.alpha:.2f}  g integral {row.g_integral:.5f}  approx {row.g_approx:.5f}  gap {row.rel_gap:+.3f}")

# occupation at reduced energy 0.5 for growing maximum occupancy
for m in (1, 2, 10, 100, 10 ** 6):
    print(f"m={m:<8d} n={gentile_occupation(0.5, 1.0, 0.0, GentileSpec(m)):.8f}")
print("Fermi check:", gentile_occupation(0.5, 1.0, 0.0, FERMI))
print("limit deviations (Fermi rel, Bose abs):", verify_gentile_limits())
