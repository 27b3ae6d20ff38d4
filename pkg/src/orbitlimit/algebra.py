"""Finite groups, homomorphisms, actions, orbits and transporters.

Groups are Cayley tables over indices ``0..order-1``.  The identity is found
by search; index 0 is not assumed to be it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    CompatibilityFails,
    IdentityAxiomFails,
    InternalInconsistency,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    RangeError,
    ShapeError,
)


def _is_index(v, n):
    return isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n


@dataclass(frozen=True)
class FiniteGroup:
    order: int
    table: tuple
    identity: int
    inverse: tuple

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    @property
    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, identity={self.identity})"


def validate_group(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Check the group axioms exhaustively and return the validated group.

    Errors name the first witness in index order: ``NotClosed(g, h)``,
    ``NoIdentity``, ``NoInverse(g)``, ``NotAssociative(g, h, k)``.
    """
    n = len(table)
    if n == 0:
        raise ShapeError(detail="empty table")
    for g, row in enumerate(table):
        if len(row) != n:
            raise ShapeError(g, detail=f"row {g} has length {len(row)}, expected {n}")
    for g in range(n):
        for h in range(n):
            if not _is_index(table[g][h], n):
                raise NotClosed(g, h)
    t = tuple(tuple(row) for row in table)
    everything = tuple(range(n))

    identity = None
    for e in range(n):
        if t[e] == everything and all(t[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverse = []
    for g in range(n):
        for x in range(n):
            if t[g][x] == identity and t[x][g] == identity:
                inverse.append(x)
                break
        else:
            raise NoInverse(g)

    for g in range(n):
        tg = t[g]
        for h in range(n):
            gh = tg[h]
            th = t[h]
            tgh = t[gh]
            for k in range(n):
                if tgh[k] != tg[th[k]]:
                    raise NotAssociative(g, h, k)

    return FiniteGroup(n, t, identity, tuple(inverse))


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple

    def __call__(self, g: int) -> int:
        return self.map[g]

    def kernel(self):
        e = self.target.identity
        return tuple(g for g in self.source.elements if self.map[g] == e)

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def injectivity_witness(self) -> Optional[int]:
        """Least non-identity element of the kernel, or None."""
        for g in self.kernel():
            if g != self.source.identity:
                return g
        return None

    def image(self):
        return frozenset(self.map)

    def after(self, other: "GroupHom") -> "GroupHom":
        """The composite ``self . other``."""
        return GroupHom(other.source, self.target, tuple(self.map[v] for v in other.map))

    @classmethod
    def identity_on(cls, group: FiniteGroup) -> "GroupHom":
        return cls(group, group, tuple(group.elements))

    def __repr__(self):
        return f"GroupHom({self.source.order}->{self.target.order}, map={list(self.map)})"


def validate_hom(source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int]) -> GroupHom:
    if len(mapping) != source.order:
        raise ShapeError(detail=f"map has length {len(mapping)}, expected {source.order}")
    for g, v in enumerate(mapping):
        if not _is_index(v, target.order):
            raise RangeError(g, detail=f"image {v!r} outside target of order {target.order}")
    m = tuple(mapping)
    tt = target.table
    for g in source.elements:
        sg = source.table[g]
        for h in source.elements:
            if m[sg[h]] != tt[m[g]][m[h]]:
                raise NotHomomorphism(g, h)
    if m[source.identity] != target.identity:
        # implied by multiplicativity
        raise NotHomomorphism(source.identity, source.identity)
    return GroupHom(source, target, m)


@dataclass(frozen=True)
class GSpace:
    group: FiniteGroup
    carrier: int
    action: tuple

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def stabilizer(self, x: int):
        return tuple(g for g in self.group.elements if self.action[g][x] == x)

    def orbit(self, x: int):
        return sorted({row[x] for row in self.action})

    def __repr__(self):
        return f"GSpace(group order={self.group.order}, carrier={self.carrier})"


def validate_action(group: FiniteGroup, carrier: int, action: Sequence[Sequence[int]]) -> GSpace:
    """Check ``e.x = x`` and ``g.(h.x) = (gh).x`` for every tuple."""
    if carrier < 1:
        raise ShapeError(detail="carrier must be non-empty")
    if len(action) != group.order:
        raise ShapeError(detail=f"{len(action)} action rows for a group of order {group.order}")
    for g, row in enumerate(action):
        if len(row) != carrier:
            raise ShapeError(g, detail=f"action row {g} has length {len(row)}, expected {carrier}")
        for x, v in enumerate(row):
            if not _is_index(v, carrier):
                raise RangeError(g, x, detail=f"action entry {v!r} outside carrier of size {carrier}")
    a = tuple(tuple(row) for row in action)
    e = group.identity
    for x in range(carrier):
        if a[e][x] != x:
            raise IdentityAxiomFails(x)
    for g in group.elements:
        ag = a[g]
        for h in group.elements:
            ah = a[h]
            agh = a[group.table[g][h]]
            for x in range(carrier):
                if ag[ah[x]] != agh[x]:
                    raise CompatibilityFails(g, h, x)
    for g in group.elements:
        if len(set(a[g])) != carrier:
            raise InternalInconsistency(g, detail="action row is not a bijection")
    return GSpace(group, carrier, a)


def trivial_action(group: FiniteGroup, carrier: int) -> GSpace:
    return GSpace(group, carrier, tuple(tuple(range(carrier)) for _ in group.elements))


def regular_action(group: FiniteGroup) -> GSpace:
    """Left translation of a group on itself."""
    return GSpace(group, group.order, group.table)


def is_free(s: GSpace):
    """Return ``(True, None)`` or ``(False, (g, x))`` with ``g != e`` fixing ``x``."""
    e = s.group.identity
    for g in s.group.elements:
        if g == e:
            continue
        row = s.action[g]
        for x in range(s.carrier):
            if row[x] == x:
                return False, (g, x)
    return True, None


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            # smaller index becomes the root so roots are class minima
            if y < x:
                x, y = y, x
            self.parent[y] = x


@dataclass(frozen=True)
class OrbitPartition:
    class_of: tuple
    representatives: tuple

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    def members(self, c: int):
        return tuple(x for x, k in enumerate(self.class_of) if k == c)


def partition_from_pairs(n: int, pairs) -> OrbitPartition:
    """Equivalence classes on ``range(n)`` generated by ``pairs``.

    Class ids are assigned in order of minimal members.
    """
    uf = _UnionFind(n)
    for x, y in pairs:
        uf.union(x, y)
    root_id = {}
    class_of = []
    reps = []
    for x in range(n):
        r = uf.find(x)
        if r not in root_id:
            root_id[r] = len(reps)
            reps.append(x)
        class_of.append(root_id[r])
    return OrbitPartition(tuple(class_of), tuple(reps))


def orbits(s: GSpace) -> OrbitPartition:
    return partition_from_pairs(
        s.carrier,
        ((x, row[x]) for row in s.action for x in range(s.carrier)),
    )


def transporter(s: GSpace, x: int, y: int):
    """All ``g`` with ``g.x = y``, ascending."""
    return tuple(g for g in s.group.elements if s.action[g][x] == y)
