"""
Two-sided consistency identities
================================

Asymptotic parameters computed on two linked sides of the same arithmetic
situation are not independent: the ranks corrected by finite defects must
agree, the exponential coefficients must match, and the linear coefficients
differ exactly by the difference of stable ranks.  The checker takes one
parameter triple plus (finite defect, stable rank) per side and evaluates
all three identities.
"""

import dataclasses

from towergrowth import lambda_floor_holds, mirror_check, mirror_context_for_full_span

print("reference pairs derived from the full-span family")
print()
for level in range(4):
    left, right = mirror_context_for_full_span(level)
    report = mirror_check(left, right)
    lp, rp = left.params, right.params
    print(f"level {level}:")
    print(f"  left  rho={lp.rho} mu={lp.mu} lam_tilde={lp.lam_tilde} "
          f"defect={left.finite_defect} stable={left.stable_rank}")
    print(f"  right rho={rp.rho} mu={rp.mu} lam_tilde={rp.lam_tilde} "
          f"defect={right.finite_defect} stable={right.stable_rank}")
    for check in report.checks:
        mark = "ok" if check.ok else "MISMATCH"
        print(f"  {check.name}: {check.lhs} vs {check.rhs}  {mark}")
    print(f"  verdict: {report.verdict}")
    # the linear coefficient can never drop below stable rank minus one
    print(f"  lambda floor holds on the right: "
          f"{lambda_floor_holds(rp.lam_tilde, 1)}")
    print()

print("perturbing any single field breaks at least one identity:")
print()
left, right = mirror_context_for_full_span(2)
for field in ("rho", "mu", "lam_tilde"):
    params = dataclasses.replace(left.params, **{field: getattr(left.params, field) + 1})
    broken = mirror_check(dataclasses.replace(left, params=params), right)
    failed = [c.name for c in broken.checks if not c.ok]
    print(f"  left.{field} + 1  ->  fails: {', '.join(failed)}")
for field in ("finite_defect", "stable_rank"):
    bumped = dataclasses.replace(right, **{field: getattr(right, field) + 1})
    broken = mirror_check(left, bumped)
    failed = [c.name for c in broken.checks if not c.ok]
    note = " (and a parity warning)" if broken.warnings else ""
    print(f"  right.{field} + 1  ->  fails: {', '.join(failed)}{note}")
