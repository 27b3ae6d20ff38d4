"""Orbit towers and the comparison map from thread-orbits to orbit-threads.

``psi`` sends the orbit of a thread ``(x_k)`` under the limit group to the
thread of orbits ``(class of x_k)``.  At any finite depth it is always a
bijection: lifts exist by pushing a top representative down, and equal images
give non-empty transporter sets whose top elements push down to a compatible
group thread.  Freeness at the least level plus injective group bonds is the
classical sufficient condition; it is checked separately and, when it holds,
forces every transporter thread to be unique.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .algebra import OrbitPartition, is_free, orbits, partition_from_pairs, transporter
from .errors import (
    HypothesesNotCertified,
    InternalInconsistency,
    NoLeastElement,
    TowerMismatch,
)
from .limits import (
    Thread,
    act_on_thread,
    enumerate_threads,
    orbit_equivalent,
    push_down,
    stable_image,
)
from .systems import ConstantTowerSpec, EquivariantTower, SpaceTower

CERTIFIED_BY_HYPOTHESES = "CertifiedByHypotheses"
CERTIFIED_BY_TRANSPORTERS = "CertifiedByTransporters"
DEPTH_ONLY = "DepthOnly"


@dataclass(frozen=True)
class Witness:
    kind: str  # NotFree, NotInjectiveHom, NotEquivariant, LiftFailure, TransporterEmpty
    location: tuple
    data: tuple

    def as_dict(self):
        return {"kind": self.kind, "location": list(self.location), "data": _plain(self.data)}


def _plain(v):
    if isinstance(v, (tuple, list)):
        return [_plain(x) for x in v]
    if isinstance(v, Thread):
        return list(v.entries)
    return v


def replay_witness(w: Witness, tower: EquivariantTower) -> bool:
    """True when the failure recorded by ``w`` really occurs in ``tower``."""
    if w.kind == "NotFree":
        (k,), (g, x) = w.location, w.data
        s = tower.actions[k]
        return g != s.group.identity and s.action[g][x] == x
    if w.kind == "NotInjectiveHom":
        (a, b), (g,) = w.location, w.data
        hom = tower.groups.hom(a, b)
        return g != hom.source.identity and hom(g) == hom.target.identity
    if w.kind == "NotEquivariant":
        (a, b), (g, x) = w.location, w.data
        pi, nu = tower.spaces.map(a, b), tower.groups.map(a, b)
        return pi[tower.actions[b].action[g][x]] != tower.actions[a].action[nu[g]][pi[x]]
    if w.kind == "TransporterEmpty":
        (k,), (x, y) = w.location, w.data
        return not transporter(tower.actions[k], x[k], y[k])
    if w.kind == "LiftFailure":
        (k,), (classes, lift) = w.location, w.data
        part = orbits(tower.actions[k])
        return part.class_of[lift[k]] != classes[k]
    raise ValueError(f"unknown witness kind {w.kind!r}")


@dataclass(frozen=True)
class OrbitTower:
    base: EquivariantTower
    partitions: tuple
    tower: SpaceTower

    @property
    def sizes(self):
        return self.tower.sizes


def orbit_tower(t: EquivariantTower) -> OrbitTower:
    """Pass to orbit spaces levelwise, with bonds induced on class ids."""
    parts = tuple(orbits(s) for s in t.actions)
    bonds = {}
    for a, b in t.index.bond_keys():
        pi = t.spaces.map(a, b)
        lower, upper = parts[a], parts[b]
        induced = tuple(lower.class_of[pi[r]] for r in upper.representatives)
        for x in range(t.spaces.sizes[b]):
            if lower.class_of[pi[x]] != induced[upper.class_of[x]]:
                raise InternalInconsistency(
                    (a, b), x, detail="induced orbit map depends on the representative")
        bonds[(a, b)] = induced
    sizes = tuple(p.class_count for p in parts)
    quotient = SpaceTower(t.index, sizes, tuple(sorted(bonds.items())))
    return OrbitTower(t, parts, quotient)


def psi(ot: OrbitTower, x: Thread) -> Thread:
    if not (x.tower is ot.base.spaces or x.tower == ot.base.spaces):
        raise TowerMismatch(detail="thread is not over the base of this orbit tower")
    return Thread(ot.tower, (ot.partitions[k].class_of[x[k]] for k in range(len(x))))


def thread_orbits(t: EquivariantTower, depth: Optional[int] = None):
    """Threads and their partition into orbits of the limit group.

    Computed by acting with every group thread, independently of ``psi``.
    """
    threads = enumerate_threads(t.spaces, depth)
    gthreads = enumerate_threads(t.groups, depth)
    where = {th.entries: i for i, th in enumerate(threads)}
    pairs = []
    for i, th in enumerate(threads):
        for g in gthreads:
            pairs.append((i, where[act_on_thread(t, g, th).entries]))
    return threads, partition_from_pairs(len(threads), pairs)


@dataclass(frozen=True)
class SurjectivityResult:
    lifts: dict
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_surjectivity(t: EquivariantTower, depth: Optional[int] = None,
                        ot: Optional[OrbitTower] = None) -> SurjectivityResult:
    """Lift every orbit thread by pushing its top representative down."""
    ot = ot or orbit_tower(t)
    lifts = {}
    failures = []
    top_part = None
    for c in enumerate_threads(ot.tower, depth):
        d = c.depth
        top_part = ot.partitions[d]
        lift = push_down(t.spaces, top_part.representatives[c[d]], d)
        bad = next((k for k in range(d + 1)
                    if ot.partitions[k].class_of[lift[k]] != c[k]), None)
        if bad is not None:
            failures.append(Witness("LiftFailure", (bad,), (c.entries, lift.entries)))
        lifts[c.entries] = lift
    return SurjectivityResult(lifts, tuple(failures))


@dataclass(frozen=True)
class InjectivityResult:
    injective: bool
    witnesses: dict
    failures: tuple
    psi_classes: int


def _psi_classes(t, ot, depth):
    classes = defaultdict(list)
    for x in enumerate_threads(t.spaces, depth):
        classes[psi(ot, x).entries].append(x)
    return classes


def verify_injectivity(t: EquivariantTower, depth: Optional[int] = None,
                       ot: Optional[OrbitTower] = None) -> InjectivityResult:
    """Every pair of threads with equal ``psi`` image must be orbit-equivalent."""
    ot = ot or orbit_tower(t)
    witnesses = {}
    failures = []
    classes = _psi_classes(t, ot, depth)
    for key in sorted(classes, key=lambda e: e[::-1]):
        members = classes[key]
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                res = orbit_equivalent(t, x, y)
                if res.verdict == "no":
                    failures.append(Witness("TransporterEmpty", (res.empty_level,), (x, y)))
                else:
                    witnesses[(x.entries, y.entries)] = res.witness
    return InjectivityResult(not failures, witnesses, tuple(failures), len(classes))


@dataclass(frozen=True)
class HypothesisReport:
    least: Optional[int]
    free: bool
    free_witness: Optional[Witness]
    nu_injective: tuple  # (alpha, ok, witness-or-None)
    exact: bool  # True when the injectivity check covers every alpha of the family

    @property
    def ok(self) -> bool:
        return self.least is not None and self.free and all(ok for _, ok, _ in self.nu_injective)

    def witnesses(self):
        out = [self.free_witness] if self.free_witness else []
        out += [w for _, _, w in self.nu_injective if w]
        return out

    def as_dict(self):
        return {
            "least": self.least,
            "free_at_least": self.free,
            "nu_injective": {str(a): ok for a, ok, _ in self.nu_injective},
            "exact_for_all_levels": self.exact,
            "ok": self.ok,
        }


def certify_hypotheses(t: EquivariantTower, depth: Optional[int] = None) -> HypothesisReport:
    """A least index with a free action there, and injective bonds ``nu_least^alpha``.

    For a constant family a single injective endomorphism of a finite group is
    bijective, so all its powers are injective and the check is exact.
    """
    index = t.index
    lam = index.least
    if lam is None:
        raise NoLeastElement()
    free, wit = is_free(t.actions[lam])
    free_witness = None if free else Witness("NotFree", (lam,), wit)
    if index.kind == "nat":
        top = t.depth if depth is None else depth
        alphas = range(lam + 1, top + 1)
    else:
        alphas = [a for a in index.elements if a != lam]
    exact = t.family in ("constant", "solenoid", "negation") or index.kind == "poset"
    if t.family == "constant" and index.kind == "nat" and t.depth >= 1:
        alphas = [1]
    checks = []
    for a in alphas:
        hom = t.groups.hom(lam, a)
        g = hom.injectivity_witness()
        checks.append((a, g is None, None if g is None else Witness("NotInjectiveHom", (lam, a), (g,))))
    return HypothesisReport(lam, free, free_witness, tuple(checks), exact)


@dataclass(frozen=True)
class UniquenessResult:
    unique: bool
    counterexample: Optional[tuple] = None  # (x, y, witness_1, witness_2)
    pairs_checked: int = 0


def unique_transporter_check(t: EquivariantTower, depth: Optional[int] = None,
                             hypotheses: Optional[HypothesisReport] = None) -> UniquenessResult:
    """Each psi-equal pair has exactly one transporting group thread."""
    hypotheses = hypotheses or certify_hypotheses(t, depth)
    if not hypotheses.ok:
        raise HypothesesNotCertified(detail="freeness or injectivity of group bonds fails")
    ot = orbit_tower(t)
    groups = t.groups
    checked = 0
    for members in _psi_classes(t, ot, depth).values():
        for i, x in enumerate(members):
            for y in members[i:]:
                checked += 1
                ts = [transporter(t.actions[k], x[k], y[k]) for k in range(len(x))]
                d = x.depth
                found = [Thread(groups, (groups.map(k, d)[g] for k in range(d + 1))) for g in ts[d]]
                found = [w for w in found if all(w[k] in ts[k] for k in range(d + 1))]
                if len(found) != 1:
                    pair = (found[0], found[1]) if len(found) > 1 else (None, None)
                    return UniquenessResult(False, (x, y) + pair, checked)
    return UniquenessResult(True, None, checked)


@dataclass(frozen=True)
class PsiReport:
    depth: int
    thread_count: int
    domain_size: int
    codomain_size: int
    surjective: bool
    lifts: dict
    injective: bool
    transporter_witnesses: dict
    limit_verdict: str
    hypotheses: HypothesisReport
    unique_transporters: Optional[bool] = None
    failures: tuple = field(default=())

    @property
    def bijective(self) -> bool:
        return self.surjective and self.injective and self.domain_size == self.codomain_size


def verify(t: EquivariantTower, depth: Optional[int] = None) -> PsiReport:
    """Run every depth-``d`` check and assign a limit verdict."""
    if depth is None:
        depth = t.depth
    if depth > t.depth:
        t = t.extended(depth)
    ot = orbit_tower(t)
    surj = verify_surjectivity(t, depth, ot)
    inj = verify_injectivity(t, depth, ot)
    threads, dom = thread_orbits(t, depth)
    codomain = ot.sizes[depth]
    hyp = certify_hypotheses(t, depth)
    unique = unique_transporter_check(t, depth, hyp).unique if hyp.ok else None
    bijective = surj.ok and inj.injective and dom.class_count == codomain
    if not t.extensible or not bijective:
        verdict = DEPTH_ONLY
    elif hyp.ok and hyp.exact:
        verdict = CERTIFIED_BY_HYPOTHESES
    else:
        verdict = CERTIFIED_BY_TRANSPORTERS
        if t.family == "constant":
            stab = stabilized_commutation_check(dict(t.params)["spec"])
            if not stab.bijective:
                verdict = DEPTH_ONLY
    if hyp.ok and unique is False:
        raise InternalInconsistency(detail="hypotheses hold but a transporter thread is not unique")
    return PsiReport(
        depth=depth,
        thread_count=len(threads),
        domain_size=dom.class_count,
        codomain_size=codomain,
        surjective=surj.ok,
        lifts=surj.lifts,
        injective=inj.injective,
        transporter_witnesses=inj.witnesses,
        limit_verdict=verdict,
        hypotheses=hyp,
        unique_transporters=unique,
        failures=surj.failures + inj.failures,
    )


@dataclass(frozen=True)
class StabilizedReport:
    omega: frozenset
    gamma: frozenset
    closed: bool
    domain_classes: tuple  # Gamma-orbits on Omega, each a sorted tuple
    quotient: OrbitPartition  # G-orbits on X
    q: frozenset  # stable class ids of the induced map
    correspondence: tuple  # class id in Q for each domain class
    bijective: bool


def stabilized_commutation_check(spec: ConstantTowerSpec) -> StabilizedReport:
    """Limit-level comparison for a constant tower, through stabilized data.

    On the eventual images ``Omega`` of ``f`` and ``Gamma`` of ``nu`` both maps
    are bijections, so the limits of spaces and groups are identified with
    ``Omega`` and ``Gamma``; likewise the limit of orbit spaces is the eventual
    image ``Q`` of the induced map.  The comparison is ``Gamma.w -> G.w``.
    """
    rows = spec.action.action
    omega = stable_image(spec.f)
    gamma = stable_image(spec.nu.map)
    closed = all(rows[g][w] in omega for g in gamma for w in omega)
    om = sorted(omega)
    pos = {w: i for i, w in enumerate(om)}
    dom = partition_from_pairs(
        len(om), ((pos[w], pos[rows[g][w]]) for g in gamma for w in om if rows[g][w] in pos))
    domain_classes = tuple(tuple(om[i] for i in dom.members(c)) for c in range(dom.class_count))
    quotient = orbits(spec.action)
    fbar = tuple(quotient.class_of[spec.f[r]] for r in quotient.representatives)
    q = stable_image(fbar)
    corr = tuple(quotient.class_of[cls[0]] for cls in domain_classes)
    consistent = all(
        len({quotient.class_of[w] for w in cls}) == 1 for cls in domain_classes)
    bijective = (closed and consistent and set(corr) == set(q) and len(set(corr)) == len(corr))
    return StabilizedReport(omega, gamma, closed, domain_classes, quotient, q, corr, bijective)


def quotient_matches_reduction(ot: OrbitTower, p: int) -> bool:
    """Is the orbit tower of a solenoid the tower Z/p^k under reduction?

    Level ``k`` classes are sent to their representative mod ``p^k``; this must
    be a bijection onto Z/p^k that intertwines the induced bonds with reduction.
    """
    t = ot.tower
    phis = []
    for k, part in enumerate(ot.partitions):
        m = p ** k
        phi = tuple(r % m for r in part.representatives)
        if sorted(phi) != list(range(m)):
            return False
        if any(phi[part.class_of[x]] != x % m for x in range(len(part.class_of))):
            return False
        phis.append(phi)
    for k in range(t.depth):
        bond = t.bond(k)
        m = p ** k
        if any(phis[k][bond[c]] != phis[k + 1][c] % m for c in range(t.sizes[k + 1])):
            return False
    return True
