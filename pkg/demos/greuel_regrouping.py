"""Show why the Greuel-type criterion needs independent initial forms.

The lambda_i coefficients below are distinct, yet regrouping by powers of t
exposes a t^2 coefficient whose order is bounded by m - 1.

Run with ``python demos/greuel_regrouping.py``.
"""

from equimult.analysis import check_greuel, check_necessary_bounds
from equimult.parser import parse_document

DOC = """\
vars: x, y
f: x^4 + y^4
lambda[1]: t^3 + a*t^2
g[1]: x*y + x^2*y^2 + x^5
lambda[2]: t^4 + t^2
g[2]: -a*x*y + x^4
lambda[3]: a*t^4 - t^3
g[3]: x*y + x^2*y^2 + y^5
"""

doc = parse_document(DOC)
gate = check_greuel(doc.greuel)
print("Greuel gate:", gate.verdict, "dependent initial forms:", gate.dependent_forms)

F = doc.family
for k, g in F.deformations.items():
    print(f"t^{k}: {g.poly}")

for c in check_necessary_bounds(F).checks:
    print(f"  k = {c.k}: r = {c.multiplicity} >= {c.required}: {'PASS' if c.passed else 'VIOLATION'}")
