"""
Growth curves for the basic building blocks
===========================================

Every elementary module contributes a simple closed form to the order
valuation x(n): the free part gives n*l^n per rank, each l-power factor
gives a multiple of l^n, and each distinguished polynomial factor gives
a multiple of n.  This script computes the exact sequences and then
recovers the parameters by fitting, so the two directions check each
other.
"""

from towergrowth import (
    DistinguishedFactor,
    ElementaryModule,
    GenericDescent,
    IntPoly,
    LPower,
    SpecialDescent,
    fit_parameters,
    order_sequence,
)

TRIVIAL = GenericDescent(0, ())

blocks = [
    ("free line", ElementaryModule(prime=2, free_rank=1), TRIVIAL),
    ("2-torsion line", ElementaryModule(prime=2, free_rank=0, torsion_factors=(LPower(1),)), TRIVIAL),
    ("eigenvalue line T", ElementaryModule(prime=2, free_rank=0, torsion_factors=(DistinguishedFactor(IntPoly((0, 1))),)), TRIVIAL),
    ("free line, invariant summand", ElementaryModule(prime=2, free_rank=1), SpecialDescent()),
]

print("exact order valuations x(n) for n = 1..6")
print()
header = "module".ljust(28) + "".join(f"n={n}".rjust(8) for n in range(1, 7))
print(header)
for name, module, descent in blocks:
    seq = order_sequence(module, descent, 1, 6)
    print(name.ljust(28) + "".join(str(x).rjust(8) for x in seq.values))

print()
print("fitted parameters (rho, mu, lam_tilde, nu)")
print()
for name, module, descent in blocks:
    seq = order_sequence(module, descent, 1, 6)
    fit = fit_parameters(seq)
    p = fit.params
    print(f"{name.ljust(28)} rho={p.rho} mu={p.mu} lam_tilde={p.lam_tilde} nu={p.nu}"
          f"  [{fit.classification}]")

# a mixed module adds the pieces up
print()
mixed = ElementaryModule(
    prime=2,
    free_rank=1,
    torsion_factors=(LPower(2), DistinguishedFactor(IntPoly((2, 2, 1)))),
)
seq = order_sequence(mixed, TRIVIAL, 1, 6)
fit = fit_parameters(seq)
p = fit.params
print("mixed module (free + 4-torsion + quadratic factor):")
print("  x(n) =", ", ".join(str(x) for x in seq.values))
print(f"  fitted rho={p.rho} mu={p.mu} lam_tilde={p.lam_tilde} nu={p.nu}")
print("  expected rho=1 (rank), mu=2 (annihilator exponent), lam=2 (degree)")
