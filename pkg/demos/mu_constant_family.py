"""Walk through a classical mu-constant family that is equimultiple.

Run with ``python demos/mu_constant_family.py``.
"""

from equimult.analysis import check_equimultiplicity, check_necessary_bounds, is_mu_constant, mu_at
from equimult.parser import parse_family
from equimult.polynomial import order

F = parse_family("vars: x, y, z\nF: x^5 + z^15 + y^7*z + t*x*y^6")

print("family:", F.total)
print("mu at t = 0, 1:", mu_at(F, 0), mu_at(F, 1))

verdict = is_mu_constant(F)
print("mu-constant:", verdict.constant, "(generic mu =", f"{verdict.mu_generic})")

for t0 in (0, 1, 2):
    print(f"multiplicity at t = {t0}:", order(F.member(t0)))

bounds = check_necessary_bounds(F)
for c in bounds.checks:
    print(f"  m(g_{c.k}) = {c.multiplicity} >= {c.required}: {'PASS' if c.passed else 'VIOLATION'}")

eq = check_equimultiplicity(F)
print("equimultiplicity:", eq.verdict, eq.reason)
