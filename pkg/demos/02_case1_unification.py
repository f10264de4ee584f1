"""
Unifying two super-critical systems
===================================

Both half-dimensions exceed 1. The unified temperature and half-dimension are
the arithmetic means; the exact solution of the additivity equations is
reported beside them to show how far the closed forms are from it.
"""

from gentile_unify import SystemState, entropy_budget, unify

s1 = SystemState(alpha=1.1, temperature=120.0, particle_count=10.0)
s2 = SystemState(alpha=1.3, temperature=80.0, particle_count=10.0)

report = unify(s1, s2)
print("regime        :", report.regime.tag.value)
print("T, alpha      :", report.T_unified, report.alpha_unified)
print("E, S          :", report.E_unified, report.S_unified)
print("residuals E, S:", report.energy_residual, report.entropy_residual)
print("exact T*, a*  :", report.refined.T, report.refined.alpha)

budget = entropy_budget(s1, s2, report)
print("entropy shares:", budget.share1, budget.share2)

# residuals as both temperatures are scaled up
for scale in (1, 10, 100, 1000):
    r = unify(SystemState(1.1, 12.0 * scale, 10), SystemState(1.3, 8.0 * scale, 10))
    print(f"x{scale:<5d} entropy residual {r.entropy_residual:+.4f}  energy residual {r.energy_residual:+.4f}")
