"""Freeness and injective group bonds are sufficient, not necessary.

Negation on Z/3^k fixes 0, so the action is not free, yet psi is still a
bijection: transporter sets exist, they just are not singletons.
"""

from orbitlimit import builtin_negation, certify_hypotheses, verify
from orbitlimit.limits import orbit_equivalent, push_down

tower = builtin_negation(3, 3)
h = certify_hypotheses(tower)
print("hypotheses hold:", h.ok)
print("freeness witness:", h.free_witness.as_dict())

rep = verify(tower)
print(f"psi bijective: {rep.bijective} ({rep.domain_size} classes), verdict {rep.limit_verdict}")

# the zero thread is fixed by both group threads
zero = push_down(tower, 0)
res = orbit_equivalent(tower, zero, zero)
print("transporters of zero to itself, per level:", res.transporters)
