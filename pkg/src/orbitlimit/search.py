"""Seeded random equivariant towers and constant specs, and a search driver.

Towers are grown from level 0 upward.  Each new level picks a group ``G'`` and
a homomorphism ``nu : G' -> G`` to the level below, then builds its carrier as
a disjoint union of coset spaces ``G'/H``.  An orbit ``G'/H`` sent to a point
``x0`` below needs ``nu(H)`` inside the stabilizer of ``x0``; the bond is then
``aH -> nu(a).x0``.  Every equivariant map between finite G-sets has this
shape, so no repair step is ever needed; oversize samples are just redrawn.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional

from .groups import coset_space, homomorphisms, small_groups, subgroups
from .systems import explicit_tower, validate_constant_spec

MODES = ("none", "not-free", "not-injective", "any")


@lru_cache(maxsize=None)
def _library(max_order):
    return tuple(small_groups(max_order))


@lru_cache(maxsize=None)
def _homs(max_order, i, j):
    lib = _library(max_order)
    return tuple(homomorphisms(lib[i][1], lib[j][1]))


@lru_cache(maxsize=None)
def _subgroups(max_order, i):
    return tuple(subgroups(_library(max_order)[i][1]))


def _orbit_pieces(rng, group_idx, max_order, budget, subgroup_ok, min_orbits=1):
    """Choose subgroups for coset orbits fitting in ``budget`` points."""
    group = _library(max_order)[group_idx][1]
    pieces = []
    n_orbits = rng.randint(min_orbits, 3)
    for _ in range(n_orbits):
        options = [h for h in _subgroups(max_order, group_idx)
                   if subgroup_ok(h) and group.order // len(h) <= budget]
        if not options:
            break
        h = rng.choice(options)
        pieces.append(h)
        budget -= group.order // len(h)
    return pieces


def _union_of_cosets(group, pieces):
    """Action rows and per-point (orbit, coset) labels for a union of coset spaces."""
    spaces = [coset_space(group, h) for h in pieces]
    n = sum(s.carrier for s, _ in spaces)
    rows = [[0] * n for _ in group.elements]
    offsets = []
    off = 0
    for s, _ in spaces:
        offsets.append(off)
        for g in group.elements:
            for x in range(s.carrier):
                rows[g][off + x] = off + s.action[g][x]
        off += s.carrier
    return n, rows, spaces, offsets


def random_tower(rng: random.Random, max_carrier=6, max_group=6, depth=3, mode="any"):
    """A random valid nat tower; ``mode`` fixes the status of the hypotheses.

    ``none`` makes level 0 free and every group bond injective; ``not-free``
    and ``not-injective`` break exactly that hypothesis; ``any`` is unconstrained.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    lib = _library(max_group)
    for _ in range(1000):
        tower = _try_tower(rng, lib, max_carrier, max_group, depth, mode)
        if tower is not None:
            return tower
    raise RuntimeError("could not sample a tower with these parameters")


def _try_tower(rng, lib, max_carrier, max_group, depth, mode):
    candidates = [i for i, (_, g) in enumerate(lib)
                  if g.order <= max_carrier and (mode != "not-free" or g.order > 1)]
    gi = rng.choice(candidates)
    g0 = lib[gi][1]
    if mode in ("none", "not-injective"):
        pieces = _orbit_pieces(rng, gi, max_group, max_carrier, lambda h: len(h) == 1)
    elif mode == "not-free":
        nontriv = [h for h in _subgroups(max_group, gi) if len(h) > 1]
        first = rng.choice(nontriv)
        rest = _orbit_pieces(rng, gi, max_group, max_carrier - g0.order // len(first),
                             lambda h: True, min_orbits=0)
        pieces = [first] + rest
    else:
        pieces = _orbit_pieces(rng, gi, max_group, max_carrier, lambda h: True)
    if not pieces:
        return None
    n, rows, _, _ = _union_of_cosets(g0, pieces)
    levels = [(g0, n, rows)]
    space_bonds, group_bonds = [], []
    index_of = [gi]
    breaking_level = rng.randrange(depth) if (mode == "not-injective" and depth > 0) else None

    for k in range(depth):
        below_i = index_of[-1]
        below_g, below_n, below_rows = levels[-1]
        choices = []
        for j in range(len(lib)):
            for hom in _homs(max_group, j, below_i):
                inj = hom.is_injective()
                if mode in ("none", "not-free") and not inj:
                    continue
                if k == breaking_level and inj:
                    continue
                if mode == "not-injective" and k != breaking_level and not inj and rng.random() < 0.5:
                    continue
                choices.append((j, hom))
        if not choices:
            return None
        j, nu = rng.choice(choices)
        g = lib[j][1]
        subs = _subgroups(max_group, j)
        budget = max_carrier
        pieces, targets = [], []
        wanted = [rng.randrange(below_n) for _ in range(rng.randint(1, 3))]
        if rng.random() < 0.5:
            # aim for a surjective bond: one target per orbit below
            below_orbits = sorted({min(r[x] for r in below_rows) for x in range(below_n)})
            rng.shuffle(below_orbits)
            wanted = below_orbits
        for x0 in wanted:
            stab = {h for h in below_g.elements if below_rows[h][x0] == x0}
            options = [h for h in subs
                       if all(nu(v) in stab for v in h) and g.order // len(h) <= budget]
            if not options:
                break
            h = rng.choice(options)
            pieces.append(h)
            targets.append(x0)
            budget -= g.order // len(h)
        if not pieces:
            return None
        n, rows, spaces, offsets = _union_of_cosets(g, pieces)
        bond = [0] * n
        for (space, cosets), off, x0 in zip(spaces, offsets, targets):
            for c, coset in enumerate(cosets):
                bond[off + c] = below_rows[nu(min(coset))][x0]
        levels.append((g, n, rows))
        space_bonds.append(bond)
        group_bonds.append(nu.map)
        index_of.append(j)
    return explicit_tower(levels, space_bonds, group_bonds)


def random_constant_spec(rng: random.Random, max_carrier=8, max_group=6, mode="any"):
    """A random ``(X, f, G, nu)`` with ``f`` nu-equivariant."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    lib = _library(max_group)
    for _ in range(1000):
        gi = rng.randrange(len(lib))
        g = lib[gi][1]
        if g.order > max_carrier or (mode == "not-free" and g.order == 1):
            continue
        endos = _homs(max_group, gi, gi)
        if mode in ("none", "not-free"):
            endos = [e for e in endos if e.is_injective()]
        elif mode == "not-injective":
            endos = [e for e in endos if not e.is_injective()]
        if not endos:
            continue
        nu = rng.choice(endos)
        if mode in ("none", "not-injective"):
            pieces = _orbit_pieces(rng, gi, max_group, max_carrier, lambda h: len(h) == 1)
        elif mode == "not-free":
            nontriv = [h for h in _subgroups(max_group, gi) if len(h) > 1]
            pieces = [rng.choice(nontriv)]
            pieces += _orbit_pieces(rng, gi, max_group, max_carrier - g.order // len(pieces[0]),
                                    lambda h: True, min_orbits=0)
        else:
            pieces = _orbit_pieces(rng, gi, max_group, max_carrier, lambda h: True)
        if not pieces:
            continue
        n, rows, spaces, offsets = _union_of_cosets(g, pieces)
        f = [0] * n
        ok = True
        for (space, cosets), off, h in zip(spaces, offsets, pieces):
            image_h = {nu(v) for v in h}
            targets = [y for y in range(n) if all(rows[v][y] == y for v in image_h)]
            if not targets:
                ok = False
                break
            y0 = rng.choice(targets)
            for c, coset in enumerate(cosets):
                f[off + c] = rows[nu(min(coset))][y0]
        if ok:
            return validate_constant_spec(n, f, g, nu, rows)
    raise RuntimeError("could not sample a constant spec with these parameters")


@dataclass(frozen=True)
class SearchParams:
    max_carrier: int = 6
    max_group: int = 6
    depth: int = 3
    count: int = 100
    violation: str = "none"


def search(seed: int, params: Optional[SearchParams] = None) -> dict:
    """Verify random towers and constant specs and tally the outcomes.

    The summary is a plain dict and depends only on ``seed`` and ``params``.
    """
    from .commutation import stabilized_commutation_check, verify
    from .serialize import spec_to_dict, tower_to_dict

    params = params or SearchParams()
    rng = random.Random(seed)
    tally = {
        "towers": 0, "surjective": 0, "injective": 0, "psi_bijective": 0,
        "hypotheses_hold": 0, "unique_transporters": 0,
        "constant_specs": 0, "stabilized_bijective": 0,
    }
    failures = []
    for _ in range(params.count):
        t = random_tower(rng, params.max_carrier, params.max_group, params.depth, params.violation)
        rep = verify(t)
        tally["towers"] += 1
        tally["surjective"] += rep.surjective
        tally["injective"] += rep.injective
        tally["psi_bijective"] += rep.bijective
        tally["hypotheses_hold"] += rep.hypotheses.ok
        tally["unique_transporters"] += bool(rep.unique_transporters)
        if not rep.bijective:
            failures.append((sum(t.spaces.sizes), {"tower": tower_to_dict(t)}))

        spec = random_constant_spec(rng, params.max_carrier, params.max_group, params.violation)
        stab = stabilized_commutation_check(spec)
        tally["constant_specs"] += 1
        tally["stabilized_bijective"] += stab.bijective
        if not stab.bijective:
            failures.append((spec.space, {"constant_spec": spec_to_dict(spec)}))
    failures.sort(key=lambda item: item[0])
    return {
        "seed": seed,
        "params": asdict(params),
        "counts": tally,
        "failures": [inst for _, inst in failures[:5]],
    }
