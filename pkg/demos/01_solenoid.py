"""The 3-adic solenoid tower and its orbit tower.

Level k is Z/(2*3^k) with the involution x -> x + 3^k and reduction bonds.
Threads of the tower double the threads of the quotient, and the quotient is
the tower Z/3^k itself.
"""

from orbitlimit import builtin_solenoid, enumerate_threads, orbit_tower, verify
from orbitlimit.commutation import quotient_matches_reduction
from orbitlimit.limits import Thread, act_on_thread

tower = builtin_solenoid(3, 3)
print("carriers:", tower.spaces.sizes)
print("threads at depth 3:", len(enumerate_threads(tower)))

ot = orbit_tower(tower)
print("orbit counts:", ot.sizes)
print("quotient is the Z/3^k tower:", quotient_matches_reduction(ot, 3))

zero = Thread(tower.spaces, (0, 0, 0, 0))
flip = Thread(tower.groups, (1, 1, 1, 1))
print("involution applied to the zero thread:", act_on_thread(tower, flip, zero).entries)

rep = verify(tower)
print(f"psi: {rep.domain_size} thread orbits -> {rep.codomain_size} orbit threads,"
      f" bijective={rep.bijective}, verdict={rep.limit_verdict}")
