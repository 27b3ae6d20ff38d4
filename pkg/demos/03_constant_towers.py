"""Constant towers: one G-set, one equivariant self-map, iterated forever.

Tripling on Z/18 with G = Z/2 acting by x -> x + 9 collapses onto {0, 9}; the
stabilized comparison pairs the single Gamma-orbit there with the single
surviving orbit class.
"""

from orbitlimit import materialize, stabilized_commutation_check, validate_constant_spec
from orbitlimit.groups import cyclic_group
from orbitlimit.limits import eventual_image

rows = [list(range(18)), [(x + 9) % 18 for x in range(18)]]
spec = validate_constant_spec(18, [3 * x % 18 for x in range(18)], cyclic_group(2), [0, 1], rows)

tower = materialize(spec, 1)
for m in (1, 2, 3):
    e = eventual_image(tower, 0, m)
    print(f"image after {m} steps: {sorted(e.elements)} exact={e.exact}")

rep = stabilized_commutation_check(spec)
print("Omega:", sorted(rep.omega), "Gamma:", sorted(rep.gamma))
print("Gamma-orbits on Omega:", rep.domain_classes)
print("stable orbit classes:", sorted(rep.q), "bijective:", rep.bijective)
