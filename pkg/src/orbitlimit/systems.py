"""Directed index sets and inverse systems of spaces, groups and actions.

Two index flavours are supported.  ``nat`` towers are truncations
``0 < 1 < ... < d`` of the natural numbers and store only the adjacent bonds
``level k+1 -> level k``; composites are folds of those, so coherence holds by
construction.  ``poset`` systems store a bond for every comparable pair and are
checked for identity and composition coherence.

Every finite directed poset has a greatest element, so its limit is just the
top level.  Verification of the comparison map therefore targets ``nat`` towers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import (
    FiniteGroup,
    GroupHom,
    GSpace,
    validate_action,
    validate_hom,
)
from .errors import (
    CompositionMismatch,
    IdentityBondMissing,
    NotDirected,
    NotEquivariant,
    NotPartialOrder,
    RangeError,
    ShapeError,
)
from .groups import cyclic_group


@dataclass(frozen=True)
class DirectedIndex:
    kind: str
    size: int
    relation: frozenset
    least: Optional[int]
    greatest: Optional[int]

    @classmethod
    def nat(cls, depth: int) -> "DirectedIndex":
        n = depth + 1
        rel = frozenset((a, b) for a in range(n) for b in range(a, n))
        return cls("nat", n, rel, 0, depth)

    @property
    def depth(self) -> int:
        if self.kind != "nat":
            raise TypeError("depth is only defined for nat towers")
        return self.size - 1

    @property
    def elements(self):
        return range(self.size)

    def le(self, a: int, b: int) -> bool:
        return (a, b) in self.relation

    def strict_pairs(self):
        return sorted((a, b) for a, b in self.relation if a != b)

    def bond_keys(self):
        """Pairs for which a bond is stored."""
        if self.kind == "nat":
            return [(k, k + 1) for k in range(self.size - 1)]
        return sorted(self.relation)


def validate_index(size: int, relation) -> DirectedIndex:
    """Validate a finite poset given as the full set of pairs ``a <= b``."""
    rel = frozenset((int(a), int(b)) for a, b in relation)
    if size < 1:
        raise NotPartialOrder(detail="index set must be non-empty")
    for a, b in sorted(rel):
        if not (0 <= a < size and 0 <= b < size):
            raise NotPartialOrder(a, b, detail="pair outside index range")
    for a in range(size):
        if (a, a) not in rel:
            raise NotPartialOrder(a, a, detail="not reflexive")
    for a, b in sorted(rel):
        if a != b and (b, a) in rel:
            raise NotPartialOrder(a, b, detail="not antisymmetric")
    for a, b in sorted(rel):
        for c in range(size):
            if (b, c) in rel and (a, c) not in rel:
                raise NotPartialOrder(a, b, c, detail="not transitive")
    for a in range(size):
        for b in range(a + 1, size):
            if not any((a, c) in rel and (b, c) in rel for c in range(size)):
                raise NotDirected(a, b)
    least = next((a for a in range(size) if all((a, b) in rel for b in range(size))), None)
    greatest = next((b for b in range(size) if all((a, b) in rel for a in range(size))), None)
    # finite + directed forces a maximum
    assert greatest is not None
    return DirectedIndex("poset", size, rel, least, greatest)


def poset_from_covers(size: int, covers) -> DirectedIndex:
    """Reflexive-transitive closure of ``covers``, then validated."""
    rel = {(a, a) for a in range(size)} | {(a, b) for a, b in covers}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return validate_index(size, rel)


class _System:
    """Shared composite-map machinery for space and group towers."""

    def _bond_table(self, a, b):
        raise NotImplementedError

    def _composites(self):
        cache = self.__dict__.get("_cache")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_cache", cache)
        return cache

    def map(self, a: int, b: int) -> tuple:
        """The bond ``level b -> level a`` as a tuple, for ``a <= b``."""
        if not self.index.le(a, b):
            raise ValueError(f"{a} is not below {b}")
        cache = self._composites()
        key = (a, b)
        if key not in cache:
            if a == b and self.index.kind == "nat":
                cache[key] = tuple(range(self.sizes[a]))
            elif self.index.kind == "poset" or b == a + 1:
                cache[key] = self._bond_table(a, b)
            else:
                lower = self.map(a, b - 1)
                step = self.map(b - 1, b)
                cache[key] = tuple(lower[v] for v in step)
        return cache[key]

    @property
    def depth(self) -> int:
        return self.index.depth

    def bond(self, k: int) -> tuple:
        """Adjacent bond ``level k+1 -> level k`` of a nat tower."""
        return self.map(k, k + 1)

    @property
    def surjective_bonds(self) -> bool:
        return all(
            len(set(self.map(a, b))) == self.sizes[a] for a, b in self.index.bond_keys()
        )


@dataclass(frozen=True)
class SpaceTower(_System):
    index: DirectedIndex
    sizes: tuple
    bonds: tuple  # ((a, b), mapping) sorted by key

    def _bond_table(self, a, b):
        return dict(self.bonds)[(a, b)]

    def truncate(self, depth: int) -> "SpaceTower":
        return SpaceTower(DirectedIndex.nat(depth), self.sizes[: depth + 1],
                          tuple(kv for kv in self.bonds if kv[0][1] <= depth))


@dataclass(frozen=True)
class GroupTower(_System):
    index: DirectedIndex
    groups: tuple
    bonds: tuple  # ((a, b), GroupHom)

    @property
    def sizes(self):
        return tuple(g.order for g in self.groups)

    def _bond_table(self, a, b):
        return dict(self.bonds)[(a, b)].map

    def hom(self, a: int, b: int) -> GroupHom:
        return GroupHom(self.groups[b], self.groups[a], self.map(a, b))

    def truncate(self, depth: int) -> "GroupTower":
        return GroupTower(DirectedIndex.nat(depth), self.groups[: depth + 1],
                          tuple(kv for kv in self.bonds if kv[0][1] <= depth))


def _check_coherence(index, sizes, table_of):
    keys = set(index.bond_keys())
    if index.kind == "poset":
        for a in index.elements:
            if (a, a) not in keys or tuple(table_of((a, a))) != tuple(range(sizes[a])):
                raise IdentityBondMissing(a)
        for a, b in index.strict_pairs():
            if (a, b) not in keys:
                raise ShapeError(a, b, detail="bond missing for comparable pair")
        for a, b in index.strict_pairs():
            ab = table_of((a, b))
            for c in index.elements:
                if c != b and index.le(b, c):
                    bc, ac = table_of((b, c)), table_of((a, c))
                    if any(ab[bc[x]] != ac[x] for x in range(sizes[c])):
                        raise CompositionMismatch(a, b, c)


def _check_map_shape(key, mapping, src, dst):
    if len(mapping) != src:
        raise ShapeError(*key, detail=f"bond has length {len(mapping)}, expected {src}")
    for x, v in enumerate(mapping):
        if not (isinstance(v, int) and 0 <= v < dst):
            raise RangeError(*key, x, detail=f"bond entry {v!r} outside level of size {dst}")


def validate_space_tower(index: DirectedIndex, sizes, bonds: dict) -> SpaceTower:
    """``bonds[(a, b)]`` maps level ``b`` to level ``a``; nat towers take adjacent pairs."""
    sizes = tuple(sizes)
    if len(sizes) != index.size:
        raise ShapeError(detail="one carrier size per index element required")
    extra = set(bonds) - set(index.bond_keys())
    if extra:
        raise ShapeError(*min(extra), detail="bond for a pair that is not stored")
    for key in index.bond_keys():
        if key in bonds:
            a, b = key
            _check_map_shape(key, bonds[key], sizes[b], sizes[a])
        elif index.kind == "nat":
            raise ShapeError(*key, detail="adjacent bond missing")
    _check_coherence(index, sizes, lambda k: bonds[k])
    return SpaceTower(index, sizes, tuple(sorted((k, tuple(v)) for k, v in bonds.items())))


def validate_group_tower(index: DirectedIndex, groups, bonds: dict) -> GroupTower:
    """``bonds[(a, b)]`` is a raw image list or a GroupHom from level b to level a."""
    groups = tuple(groups)
    if len(groups) != index.size:
        raise ShapeError(detail="one group per index element required")
    homs = {}
    for key in index.bond_keys():
        if key not in bonds:
            if index.kind == "nat":
                raise ShapeError(*key, detail="adjacent bond missing")
            continue
        a, b = key
        raw = bonds[key]
        raw = raw.map if isinstance(raw, GroupHom) else raw
        _check_map_shape(key, raw, groups[b].order, groups[a].order)
        homs[key] = validate_hom(groups[b], groups[a], raw)
    sizes = tuple(g.order for g in groups)
    _check_coherence(index, sizes, lambda k: homs[k].map)
    return GroupTower(index, groups, tuple(sorted(homs.items(), key=lambda kv: kv[0])))


@dataclass(frozen=True)
class EquivariantTower:
    spaces: SpaceTower
    groups: GroupTower
    actions: tuple
    family: str = field(default="explicit", compare=False)
    params: tuple = field(default=(), compare=False)

    @property
    def index(self):
        return self.spaces.index

    @property
    def depth(self) -> int:
        return self.spaces.depth

    @property
    def extensible(self) -> bool:
        return self.family != "explicit"

    def truncate(self, depth: int) -> "EquivariantTower":
        if depth > self.depth:
            raise ValueError(f"cannot truncate depth {self.depth} tower to {depth}")
        return EquivariantTower(self.spaces.truncate(depth), self.groups.truncate(depth),
                                self.actions[: depth + 1], self.family, self.params)

    def extended(self, depth: int) -> "EquivariantTower":
        """The same family at another depth; explicit towers can only shrink."""
        if depth <= self.depth:
            return self.truncate(depth)
        p = dict(self.params)
        if self.family == "constant":
            return materialize(p["spec"], depth)
        if self.family == "solenoid":
            return builtin_solenoid(p["p"], depth)
        if self.family == "negation":
            return builtin_negation(p["p"], depth)
        from .errors import DepthUnavailable
        raise DepthUnavailable(depth, self.depth)


def validate_equivariant_tower(spaces: SpaceTower, groups: GroupTower, actions,
                               family="explicit", params=()) -> EquivariantTower:
    """Check every stored bond satisfies ``pi(g.x) = nu(g).pi(x)``."""
    if spaces.index != groups.index:
        raise ShapeError(detail="space and group towers have different indices")
    actions = tuple(actions)
    if len(actions) != spaces.index.size:
        raise ShapeError(detail="one action per level required")
    for k, s in enumerate(actions):
        if s.group != groups.groups[k] or s.carrier != spaces.sizes[k]:
            raise ShapeError(k, detail="action does not match level group/carrier")
    for a, b in spaces.index.bond_keys():
        pi = spaces.map(a, b)
        nu = groups.map(a, b)
        upper, lower = actions[b].action, actions[a].action
        for g in range(groups.sizes[b]):
            ug, lg = upper[g], lower[nu[g]]
            for x in range(spaces.sizes[b]):
                if pi[ug[x]] != lg[pi[x]]:
                    raise NotEquivariant((a, b), g, x)
    return EquivariantTower(spaces, groups, actions, family, params)


def explicit_tower(levels, space_bonds, group_bonds) -> EquivariantTower:
    """Build and validate a nat tower from raw pieces.

    ``levels`` is a list of ``(group, carrier, action_rows)``; bond ``k`` maps
    level ``k+1`` to level ``k``.
    """
    depth = len(levels) - 1
    index = DirectedIndex.nat(depth)
    groups = [g for g, _, _ in levels]
    actions = [validate_action(g, n, rows) for g, n, rows in levels]
    spaces = validate_space_tower(index, [n for _, n, _ in levels],
                                  {(k, k + 1): b for k, b in enumerate(space_bonds)})
    gtower = validate_group_tower(index, groups,
                                  {(k, k + 1): b for k, b in enumerate(group_bonds)})
    return validate_equivariant_tower(spaces, gtower, actions)


@dataclass(frozen=True)
class ConstantTowerSpec:
    space: int
    f: tuple
    group: FiniteGroup
    nu: GroupHom
    action: GSpace


def validate_constant_spec(space: int, f, group: FiniteGroup, nu, action_rows) -> ConstantTowerSpec:
    action = action_rows if isinstance(action_rows, GSpace) else validate_action(group, space, action_rows)
    if isinstance(nu, GroupHom):
        nu = nu.map
    nu = validate_hom(group, group, list(nu) if nu is not None else list(group.elements))
    _check_map_shape(("f",), f, space, space)
    f = tuple(f)
    rows = action.action
    for g in group.elements:
        for x in range(space):
            if f[rows[g][x]] != rows[nu.map[g]][f[x]]:
                raise NotEquivariant(("f",), g, x)
    return ConstantTowerSpec(space, f, group, nu, action)


def materialize(spec: ConstantTowerSpec, depth: int) -> EquivariantTower:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    index = DirectedIndex.nat(depth)
    keys = index.bond_keys()
    spaces = SpaceTower(index, (spec.space,) * (depth + 1), tuple((k, spec.f) for k in keys))
    groups = GroupTower(index, (spec.group,) * (depth + 1), tuple((k, spec.nu) for k in keys))
    # spec validation already established equivariance for the repeated bond
    return EquivariantTower(spaces, groups, (spec.action,) * (depth + 1),
                            "constant", (("spec", spec),))


def _translation_action(group, n, step):
    return validate_action(group, n, [list(range(n)), [(x + step) % n for x in range(n)]])


def builtin_solenoid(p: int = 3, depth: int = 0) -> EquivariantTower:
    """Levels Z/(2 p^k) under reduction, Z/2 acting by ``x -> x + p^k``.

    The circle-level stand-in for the cubing solenoid with its antipodal
    involution; the action is free at every level.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    c2 = cyclic_group(2)
    index = DirectedIndex.nat(depth)
    sizes = tuple(2 * p ** k for k in range(depth + 1))
    bonds = {(k, k + 1): tuple(x % sizes[k] for x in range(sizes[k + 1])) for k in range(depth)}
    spaces = SpaceTower(index, sizes, tuple(sorted(bonds.items())))
    ident = GroupHom.identity_on(c2)
    groups = GroupTower(index, (c2,) * (depth + 1), tuple((k, ident) for k in index.bond_keys()))
    actions = [_translation_action(c2, sizes[k], p ** k) for k in range(depth + 1)]
    return validate_equivariant_tower(spaces, groups, actions, "solenoid", (("p", p),))


def builtin_negation(p: int = 3, depth: int = 0) -> EquivariantTower:
    """Levels Z/p^k under reduction, Z/2 acting by ``x -> -x``; 0 is always fixed."""
    if p < 2:
        raise ValueError("p must be >= 2")
    c2 = cyclic_group(2)
    index = DirectedIndex.nat(depth)
    sizes = tuple(p ** k for k in range(depth + 1))
    bonds = {(k, k + 1): tuple(x % sizes[k] for x in range(sizes[k + 1])) for k in range(depth)}
    spaces = SpaceTower(index, sizes, tuple(sorted(bonds.items())))
    ident = GroupHom.identity_on(c2)
    groups = GroupTower(index, (c2,) * (depth + 1), tuple((k, ident) for k in index.bond_keys()))
    actions = [
        validate_action(c2, n, [list(range(n)), [(-x) % n for x in range(n)]]) for n in sizes
    ]
    return validate_equivariant_tower(spaces, groups, actions, "negation", (("p", p),))
