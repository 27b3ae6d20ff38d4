"""Constructors for small groups, subgroups, coset spaces and homomorphisms."""

from __future__ import annotations

from itertools import permutations, product

from .algebra import FiniteGroup, GroupHom, GSpace, validate_group, validate_hom


def cyclic_group(n: int) -> FiniteGroup:
    return validate_group([[(i + j) % n for j in range(n)] for i in range(n)])


def group_from_permutations(generators) -> tuple[FiniteGroup, list]:
    """Close a set of permutations (tuples) under composition.

    Elements are indexed in lexicographic order of the permutations, so the
    identity permutation gets index 0.  Product ``a*b`` is ``a after b``.
    """
    generators = [tuple(p) for p in generators]
    degree = len(generators[0]) if generators else 1
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in generators:
                q = tuple(s[p[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
        frontier = nxt
    elems = sorted(elems)
    index = {p: i for i, p in enumerate(elems)}
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
    return validate_group(table), elems


def symmetric_group(n: int) -> FiniteGroup:
    return group_from_permutations(permutations(range(n)))[0]


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations([rot, ref])[0]


def quaternion_group() -> FiniteGroup:
    # elements (sign, unit) with unit in 1, i, j, k
    units = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, u) for s in (1, -1) for u in range(4)]
    index = {e: i for i, e in enumerate(elems)}

    def mul(a, b):
        sign, u = units[(a[1], b[1])]
        return (a[0] * b[0] * sign, u)

    return validate_group([[index[mul(a, b)] for b in elems] for a in elems])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs ``(a, b)`` indexed as ``a * h.order + b``."""
    m = h.order
    table = [
        [g.table[a1][a2] * m + h.table[b1][b2] for a2 in g.elements for b2 in h.elements]
        for a1 in g.elements for b1 in h.elements
    ]
    return validate_group(table)


def projection(g: FiniteGroup, h: FiniteGroup, prod: FiniteGroup, side: int = 0) -> GroupHom:
    m = h.order
    if side == 0:
        return validate_hom(prod, g, [i // m for i in prod.elements])
    return validate_hom(prod, h, [i % m for i in prod.elements])


def subgroup_generated(group: FiniteGroup, gens) -> frozenset:
    elems = {group.identity}
    frontier = [group.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = group.table[a][s]
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(elems)


def subgroups(group: FiniteGroup) -> list:
    """Every subgroup, as sorted tuples, ordered by (size, elements)."""
    found = {subgroup_generated(group, [g]) for g in group.elements}
    changed = True
    while changed:
        changed = False
        current = list(found)
        for a in current:
            for b in current:
                j = subgroup_generated(group, a | b)
                if j not in found:
                    found.add(j)
                    changed = True
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))


def generating_set(group: FiniteGroup) -> tuple:
    gens = []
    span = subgroup_generated(group, gens)
    for g in group.elements:
        if g not in span:
            gens.append(g)
            span = subgroup_generated(group, gens)
    return tuple(gens)


def homomorphisms(source: FiniteGroup, target: FiniteGroup) -> list:
    """All homomorphisms, found by assigning images to a generating set."""
    gens = generating_set(source)
    # words: reach every element from the identity by right-multiplying generators
    order = [source.identity]
    steps = {}
    seen = {source.identity}
    for a in order:
        for s in gens:
            b = source.table[a][s]
            if b not in seen:
                seen.add(b)
                steps[b] = (a, s)
                order.append(b)
    out = []
    for images in product(range(target.order), repeat=len(gens)):
        img = dict(zip(gens, images))
        m = [None] * source.order
        m[source.identity] = target.identity
        for b in order[1:]:
            a, s = steps[b]
            m[b] = target.table[m[a]][img[s]]
        try:
            out.append(validate_hom(source, target, m))
        except ValueError:
            continue
    return out


def endomorphisms(group: FiniteGroup) -> list:
    return homomorphisms(group, group)


def subgroup_as_group(group: FiniteGroup, elements) -> tuple[FiniteGroup, GroupHom]:
    """Re-index a subgroup as a group of its own, with its inclusion map."""
    elements = sorted(elements)
    index = {g: i for i, g in enumerate(elements)}
    table = [[index[group.table[a][b]] for b in elements] for a in elements]
    sub = validate_group(table)
    return sub, validate_hom(sub, group, elements)


def coset_space(group: FiniteGroup, subgroup) -> tuple[GSpace, list]:
    """Left action on the cosets ``aH``; cosets are ordered by least element."""
    subgroup = tuple(subgroup)
    cosets = {}
    for a in group.elements:
        c = frozenset(group.table[a][h] for h in subgroup)
        cosets.setdefault(c, min(c))
    ordered = sorted(cosets, key=min)
    index = {}
    for i, c in enumerate(ordered):
        for g in c:
            index[g] = i
    reps = [min(c) for c in ordered]
    action = tuple(
        tuple(index[group.table[g][r]] for r in reps) for g in group.elements
    )
    return GSpace(group, len(ordered), action), ordered


def small_groups(max_order: int) -> list:
    """Named groups of order at most ``max_order`` (one per isomorphism type up to 8)."""
    lib = [(f"C{n}", lambda n=n: cyclic_group(n)) for n in range(1, 9)]
    lib += [
        ("C2xC2", lambda: direct_product(cyclic_group(2), cyclic_group(2))),
        ("S3", lambda: symmetric_group(3)),
        ("C2xC4", lambda: direct_product(cyclic_group(2), cyclic_group(4))),
        ("C2xC2xC2", lambda: direct_product(cyclic_group(2),
                                           direct_product(cyclic_group(2), cyclic_group(2)))),
        ("D4", lambda: dihedral_group(4)),
        ("Q8", quaternion_group),
    ]
    sizes = {"C2xC2": 4, "S3": 6, "C2xC4": 8, "C2xC2xC2": 8, "D4": 8, "Q8": 8}
    out = []
    for name, make in lib:
        order = sizes.get(name) or int(name[1:])
        if order <= max_order:
            out.append((name, make()))
    out.sort(key=lambda item: (item[1].order, item[0]))
    return out
