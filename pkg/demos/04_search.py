"""Random towers in each violation mode; psi never fails."""

from orbitlimit.search import MODES, SearchParams, search

for mode in MODES:
    c = search(1, SearchParams(count=50, violation=mode))["counts"]
    print(f"{mode:>14}: {c['psi_bijective']}/{c['towers']} bijective,"
          f" hypotheses hold in {c['hypotheses_hold']},"
          f" stabilized {c['stabilized_bijective']}/{c['constant_specs']}")
