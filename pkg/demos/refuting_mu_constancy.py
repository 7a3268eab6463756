"""Find an arc certificate showing that a family is not mu-constant.

Run with ``python demos/refuting_mu_constancy.py``.
"""

from equimult.analysis import certificate_search, check_necessary_bounds, mu_at, mu_generic, replay_certificate
from equimult.parser import parse_family

F = parse_family("F: x^3 + y^3 + t*x^2")
print("family:", F.total)
print("mu(0) =", mu_at(F, 0), " generic mu =", mu_generic(F))

bounds = check_necessary_bounds(F)
for c in bounds.violations:
    print(f"bound violated: m(g_{c.k}) = {c.multiplicity} < {c.required}")

cert = certificate_search(F, seed=0)
print("certificate arc:", cert.arc)
print("gap:", cert.gap, " replayed:", replay_certificate(F, cert))
