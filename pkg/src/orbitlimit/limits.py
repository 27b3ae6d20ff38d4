"""Inverse limits as threads.

A depth-``d`` thread of a nat tower is a tuple ``(x_0, ..., x_d)`` with
``x_k = bond_k(x_{k+1})``.  Because bonds are total functions, a thread is
fixed by its top entry: push it down.  Threads are therefore ordered by the
top entry first, then downward.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import transporter
from .errors import (
    DepthMismatch,
    DepthUnavailable,
    EmptyLevel,
    InternalInconsistency,
    NotACone,
    TowerMismatch,
)
from .systems import EquivariantTower, GroupTower, SpaceTower


class Thread:
    __slots__ = ("tower", "entries")

    def __init__(self, tower, entries):
        self.tower = tower
        self.entries = tuple(entries)

    @property
    def depth(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, k):
        return self.entries[k]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Thread):
            return NotImplemented
        return self.entries == other.entries and (
            self.tower is other.tower or self.tower == other.tower
        )

    def __hash__(self):
        return hash(self.entries)

    def sort_key(self):
        return self.entries[::-1]

    def __repr__(self):
        return f"Thread{self.entries}"


def _system(tower):
    if isinstance(tower, EquivariantTower):
        return tower.spaces
    inner = getattr(tower, "tower", None)
    if isinstance(inner, SpaceTower):  # OrbitTower
        return inner
    return tower


def _levels(system, depth):
    """(levels, top) for a depth request; poset systems ignore depth."""
    if system.index.kind == "poset":
        return list(system.index.elements), system.index.greatest
    if depth is None:
        depth = system.depth
    if depth < 0 or depth > system.depth:
        raise DepthUnavailable(depth, system.depth)
    return list(range(depth + 1)), depth


def is_compatible(thread: Thread) -> bool:
    system = thread.tower
    if system.index.kind == "nat":
        return all(
            system.bond(k)[thread.entries[k + 1]] == thread.entries[k]
            for k in range(thread.depth)
        )
    return all(
        system.map(a, b)[thread.entries[b]] == thread.entries[a]
        for a, b in system.index.strict_pairs()
    )


def push_down(tower, top_entry: int, depth: Optional[int] = None) -> Thread:
    system = _system(tower)
    levels, top = _levels(system, depth)
    return Thread(system, (system.map(a, top)[top_entry] for a in levels))


def enumerate_threads(tower, depth: Optional[int] = None) -> list:
    """Every thread at the given depth, ordered by top entry then downward.

    There is exactly one thread per top-level element, whether or not the
    bonds are surjective.
    """
    system = _system(tower)
    _, top = _levels(system, depth)
    threads = [push_down(system, x, depth) for x in range(system.sizes[top])]
    threads.sort(key=Thread.sort_key)
    return threads


def find_thread(tower, depth: Optional[int] = None) -> Thread:
    """The least thread; exists whenever every level is non-empty."""
    system = _system(tower)
    levels, _ = _levels(system, depth)
    for k in levels:
        if system.sizes[k] == 0:
            raise EmptyLevel(k)
    return enumerate_threads(system, depth)[0]


@dataclass(frozen=True)
class MediatingMap:
    threads: tuple
    unique: bool

    def __call__(self, s):
        return self.threads[s]


def mediating_map(tower, cone, depth: Optional[int] = None) -> MediatingMap:
    """Factor a cone ``psi_a : S -> level a`` through the threads.

    ``cone[a][s]`` is the image of ``s`` at level ``a``.  The uniqueness flag
    records that exactly one thread has the projections of each ``s``.
    """
    system = _system(tower)
    levels, top = _levels(system, depth)
    cone = [tuple(cone[a]) for a in levels]
    n = len(cone[0]) if cone else 0
    if any(len(c) != n for c in cone):
        raise NotACone(detail="cone maps have different domain sizes")
    for a in levels:
        for s, v in enumerate(cone[a]):
            if not 0 <= v < system.sizes[a]:
                raise NotACone(a, a, s, detail="cone value outside level")
    pairs = [(a, b) for a in levels for b in levels if a != b and system.index.le(a, b)]
    for a, b in sorted(pairs):
        m = system.map(a, b)
        for s in range(n):
            if m[cone[b][s]] != cone[a][s]:
                raise NotACone(a, b, s)
    threads = tuple(Thread(system, (cone[a][s] for a in levels)) for s in range(n))
    for t in threads:
        if not is_compatible(t):
            raise InternalInconsistency(t.entries, detail="cone produced an incompatible thread")
    counts = {}
    for t in enumerate_threads(system, depth):
        counts[t.entries] = counts.get(t.entries, 0) + 1
    unique = all(counts.get(t.entries, 0) == 1 for t in threads)
    return MediatingMap(threads, unique)


@dataclass(frozen=True)
class EventualImage:
    level: int
    elements: frozenset
    exact: bool
    horizon: int


def eventual_image(tower, level: int, horizon: int, side: str = "space") -> EventualImage:
    """Intersection of the images of ``level m -> level`` for ``m <= horizon``.

    ``exact`` is claimed only for constant or generated families once two
    consecutive horizons agree; the generated families shipped here have
    surjective bonds, and for a constant family equal consecutive images
    ``im f^j = im f^(j+1)`` stay equal forever.  Explicit truncations never
    claim exactness.
    """
    if level > horizon:
        raise ValueError("horizon must be at least the level")
    extensible = isinstance(tower, EquivariantTower) and tower.extensible
    if isinstance(tower, EquivariantTower):
        if horizon > tower.depth:
            if not extensible:
                raise DepthUnavailable(horizon, tower.depth)
            tower = tower.extended(horizon)
        system = tower.spaces if side == "space" else tower.groups
    else:
        system = tower
        if horizon > system.depth:
            raise DepthUnavailable(horizon, system.depth)
    prev = None
    current = frozenset(range(system.sizes[level]))
    for m in range(level + 1, horizon + 1):
        prev = current
        current = current & frozenset(system.map(level, m))
    exact = extensible and prev is not None and prev == current
    return EventualImage(level, current, exact, horizon)


def stable_image(mapping) -> frozenset:
    """``im f^m`` for ``m`` large, i.e. the eventual image of a self-map."""
    current = frozenset(range(len(mapping)))
    while True:
        nxt = frozenset(mapping[x] for x in current)
        if nxt == current:
            return current
        current = nxt


def identity_thread(groups: GroupTower, depth: Optional[int] = None) -> Thread:
    levels, _ = _levels(groups, depth)
    return Thread(groups, (groups.groups[k].identity for k in levels))


def _check_pair(a: Thread, b: Thread):
    if not (a.tower is b.tower or a.tower == b.tower):
        raise TowerMismatch(detail="threads belong to different towers")
    if a.depth != b.depth:
        raise DepthMismatch(a.depth, b.depth)


def limit_group_multiply(a: Thread, b: Thread) -> Thread:
    _check_pair(a, b)
    if not isinstance(a.tower, GroupTower):
        raise TowerMismatch(detail="not a group tower")
    gs = a.tower.groups
    out = Thread(a.tower, (gs[k].table[a[k]][b[k]] for k in range(len(a))))
    if not is_compatible(out):
        raise InternalInconsistency(out.entries, detail="product thread incompatible")
    return out


def limit_group_inverse(a: Thread) -> Thread:
    if not isinstance(a.tower, GroupTower):
        raise TowerMismatch(detail="not a group tower")
    gs = a.tower.groups
    out = Thread(a.tower, (gs[k].inverse[a[k]] for k in range(len(a))))
    if not is_compatible(out):
        raise InternalInconsistency(out.entries, detail="inverse thread incompatible")
    return out


def act_on_thread(tower: EquivariantTower, g: Thread, x: Thread) -> Thread:
    """Componentwise action ``(g_k . x_k)`` of a group thread on a space thread."""
    if not (g.tower is tower.groups or g.tower == tower.groups):
        raise TowerMismatch(detail="group thread is not over this tower")
    if not (x.tower is tower.spaces or x.tower == tower.spaces):
        raise TowerMismatch(detail="space thread is not over this tower")
    if g.depth != x.depth:
        raise DepthMismatch(g.depth, x.depth)
    out = Thread(tower.spaces, (tower.actions[k].action[g[k]][x[k]] for k in range(len(x))))
    if not is_compatible(out):
        raise InternalInconsistency(out.entries, detail="acted thread incompatible")
    return out


def transporter_tower(tower: EquivariantTower, x: Thread, y: Thread) -> list:
    """Per-level transporter sets ``{g : g.x_k = y_k}``."""
    _check_pair(x, y)
    return [transporter(tower.actions[k], x[k], y[k]) for k in range(len(x))]


@dataclass(frozen=True)
class OrbitEquivalence:
    verdict: str  # "yes", "no" or "yes_at_depth"
    witness: Optional[Thread] = None
    empty_level: Optional[int] = None
    transporters: tuple = ()

    def __bool__(self):
        return self.verdict != "no"


def orbit_equivalent(tower: EquivariantTower, x: Thread, y: Thread,
                     limit: bool = False) -> OrbitEquivalence:
    """Decide whether some group thread carries ``x`` to ``y``.

    Equivariance gives ``nu(T_{k+1})`` inside ``T_k``, so any top-level
    transporter pushes down to a compatible witness; the least one is returned.
    With ``limit=True`` on an explicit truncation the verdict is downgraded to
    ``yes_at_depth``.
    """
    if not (x.tower is tower.spaces or x.tower == tower.spaces):
        raise TowerMismatch(detail="thread is not over this tower")
    ts = transporter_tower(tower, x, y)
    for k, t in enumerate(ts):
        if not t:
            return OrbitEquivalence("no", None, k, tuple(ts))
    d = x.depth
    groups = tower.groups
    witness = Thread(groups, (groups.map(k, d)[ts[d][0]] for k in range(d + 1)))
    for k in range(d + 1):
        if witness[k] not in ts[k]:
            raise InternalInconsistency(k, detail="pushed transporter left the transporter set")
    verdict = "yes_at_depth" if limit and not tower.extensible else "yes"
    return OrbitEquivalence(verdict, witness, None, tuple(ts))
