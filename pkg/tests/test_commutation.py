import random
import pytest

from orbitlimit.algebra import regular_action, trivial_action
from orbitlimit.commutation import (
    CERTIFIED_BY_HYPOTHESES,
    CERTIFIED_BY_TRANSPORTERS,
    DEPTH_ONLY,
    Witness,
    certify_hypotheses,
    orbit_tower,
    psi,
    quotient_matches_reduction,
    replay_witness,
    stabilized_commutation_check,
    thread_orbits,
    unique_transporter_check,
    verify,
    verify_injectivity,
    verify_surjectivity,
)
from orbitlimit.errors import HypothesesNotCertified, NoLeastElement
from orbitlimit.groups import cyclic_group
from orbitlimit.limits import Thread, enumerate_threads, push_down
from orbitlimit.search import MODES, SearchParams, random_constant_spec, random_tower, search
from orbitlimit.systems import (
    EquivariantTower,
    builtin_negation,
    builtin_solenoid,
    explicit_tower,
    materialize,
    validate_constant_spec,
)

from oracles import brute_orbit_count, brute_orbit_equivalent


def times3_spec():
    rows = [list(range(18)), [(x + 9) % 18 for x in range(18)]]
    return validate_constant_spec(18, [3 * x % 18 for x in range(18)], cyclic_group(2), [0, 1], rows)


# --- orbit towers and psi ----------------------------------------------------

def test_solenoid_orbit_tower():
    ot = orbit_tower(builtin_solenoid(3, 2))
    assert ot.sizes == (1, 3, 9)
    assert quotient_matches_reduction(ot, 3)


def test_trivial_action_orbit_tower_is_the_space_tower():
    g = cyclic_group(2)
    t = explicit_tower([(g, 2, trivial_action(g, 2).action), (g, 4, trivial_action(g, 4).action)],
                       [[0, 1, 0, 1]], [[0, 1]])
    ot = orbit_tower(t)
    assert ot.tower.sizes == t.spaces.sizes
    assert ot.tower.bond(0) == t.spaces.bond(0)


@pytest.mark.parametrize("d", range(5))
def test_negation_orbit_sizes(d):
    ot = orbit_tower(builtin_negation(3, d))
    assert ot.sizes == tuple((3 ** k + 1) // 2 for k in range(d + 1))


def test_orbit_counts_match_brute_force():
    rng = random.Random(3)
    for _ in range(50):
        t = random_tower(rng, 6, 6, 2, "any")
        ot = orbit_tower(t)
        assert list(ot.sizes) == [brute_orbit_count(s.action, s.carrier) for s in t.actions]


def test_psi_of_solenoid_threads():
    t = builtin_solenoid(3, 2)
    ot = orbit_tower(t)
    assert psi(ot, Thread(t.spaces, (0, 0, 0))).entries == (0, 0, 0)
    assert psi(ot, Thread(t.spaces, (1, 3, 9))).entries == (0, 0, 0)
    assert psi(ot, Thread(t.spaces, (1, 1, 1))).entries == (0, 1, 1)


def test_surjectivity_lifts():
    t = builtin_solenoid(3, 2)
    res = verify_surjectivity(t)
    assert res.ok and len(res.lifts) == 9
    ot = orbit_tower(t)
    for c, lift in res.lifts.items():
        assert psi(ot, lift).entries == c


def test_injectivity_solenoid():
    t = builtin_solenoid(3, 2)
    res = verify_injectivity(t)
    assert res.injective and res.psi_classes == 9
    # each psi class has two threads; their witness is the involution
    pairs = {k: w.entries for k, w in res.witnesses.items()}
    assert pairs[((0, 0, 0), (1, 3, 9))] == (1, 1, 1)


def test_thread_orbits_against_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        t = random_tower(rng, 5, 6, 2, "any")
        threads, part = thread_orbits(t)
        for i, x in enumerate(threads):
            for j, y in enumerate(threads):
                same = part.class_of[i] == part.class_of[j]
                assert same == bool(brute_orbit_equivalent(t, x, y))


# --- hypotheses ----------------------------------------------------------------

def test_solenoid_hypotheses_hold():
    h = certify_hypotheses(builtin_solenoid(3, 3))
    assert h.ok and h.exact and h.least == 0


def test_negation_not_free():
    t = builtin_negation(3, 2)
    h = certify_hypotheses(t)
    assert not h.ok
    assert h.free_witness == Witness("NotFree", (0,), (1, 0))
    assert replay_witness(h.free_witness, t)


def test_constant_nu_not_injective():
    z4 = cyclic_group(4)
    rows = [[(x + g) % 4 for x in range(4)] for g in range(4)]
    spec = validate_constant_spec(4, [2 * x % 4 for x in range(4)], z4, [2 * g % 4 for g in range(4)], rows)
    t = materialize(spec, 3)
    h = certify_hypotheses(t)
    assert h.free and not h.ok
    (alpha, ok, w), = h.nu_injective
    assert (alpha, ok) == (1, False) and w.data == (2,)
    assert replay_witness(w, t)


def test_no_least_element():
    from orbitlimit.systems import validate_index
    idx = validate_index(3, {(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)})
    fake = EquivariantTower.__new__(EquivariantTower)
    object.__setattr__(fake, "spaces", type("S", (), {"index": idx})())
    with pytest.raises(NoLeastElement):
        certify_hypotheses(fake)


def test_uniqueness_under_hypotheses():
    assert unique_transporter_check(builtin_solenoid(3, 2)).unique
    g = cyclic_group(3)
    reg = regular_action(g).action
    t = explicit_tower([(g, 3, reg), (g, 3, reg)], [[0, 1, 2]], [[0, 1, 2]])
    r = unique_transporter_check(t)
    assert r.unique and r.pairs_checked == 6  # one psi class of three threads
    one = cyclic_group(1)
    t1 = explicit_tower([(one, 2, [[0, 1]]), (one, 4, [[0, 1, 2, 3]])], [[0, 0, 1, 1]], [[0]])
    assert unique_transporter_check(t1).unique


def test_uniqueness_requires_hypotheses():
    with pytest.raises(HypothesesNotCertified):
        unique_transporter_check(builtin_negation(3, 2))


@pytest.mark.parametrize("seed", range(40))
def test_unique_transporters_against_brute_force(seed):
    rng = random.Random(seed)
    t = random_tower(rng, 6, 6, 2, "none")
    assert certify_hypotheses(t).ok
    assert unique_transporter_check(t).unique
    threads = enumerate_threads(t)
    for x in threads:
        for y in threads:
            assert len(brute_orbit_equivalent(t, x, y)) <= 1


# --- verify --------------------------------------------------------------------

def test_verify_solenoid():
    rep = verify(builtin_solenoid(3, 3))
    assert (rep.thread_count, rep.domain_size, rep.codomain_size) == (54, 27, 27)
    assert rep.bijective and rep.limit_verdict == CERTIFIED_BY_HYPOTHESES
    assert rep.unique_transporters


def test_verify_negation():
    rep = verify(builtin_negation(3, 3))
    assert rep.bijective and rep.limit_verdict == CERTIFIED_BY_TRANSPORTERS
    assert rep.unique_transporters is None
    assert rep.domain_size == 14


def test_verify_explicit_is_depth_only():
    rng = random.Random(5)
    rep = verify(random_tower(rng, 5, 5, 2, "none"))
    assert rep.bijective and rep.limit_verdict == DEPTH_ONLY


def test_verify_extends_generated_families():
    assert verify(builtin_solenoid(3, 1), 3).thread_count == 54


@pytest.mark.parametrize("mode", MODES)
def test_verify_random_towers_bijective(mode):
    rng = random.Random(MODES.index(mode))
    for _ in range(30):
        assert verify(random_tower(rng, 6, 6, 3, mode)).bijective


# --- stabilized check ----------------------------------------------------------

def test_stabilized_bijection():
    z3 = cyclic_group(3)
    rows = [[(x + g) % 3 for x in range(3)] for g in range(3)]
    rep = stabilized_commutation_check(validate_constant_spec(3, [1, 2, 0], z3, None, rows))
    assert rep.omega == {0, 1, 2} and rep.gamma == {0, 1, 2}
    assert rep.bijective and len(rep.domain_classes) == 1


def test_stabilized_times3():
    rep = stabilized_commutation_check(times3_spec())
    assert rep.omega == {0, 9}
    assert rep.gamma == {0, 1}
    assert rep.closed
    assert rep.domain_classes == ((0, 9),)
    assert rep.q == {0}
    assert rep.correspondence == (0,)
    assert rep.bijective


def test_constant_verdicts():
    assert verify(materialize(times3_spec(), 3)).limit_verdict == CERTIFIED_BY_HYPOTHESES
    # nu = x2 on Z/4 is not injective, so the stabilized check decides
    z4 = cyclic_group(4)
    rows = [[(x + g) % 4 for x in range(4)] for g in range(4)]
    spec = validate_constant_spec(4, [2 * x % 4 for x in range(4)], z4, [2 * g % 4 for g in range(4)], rows)
    assert stabilized_commutation_check(spec).bijective
    v = verify(materialize(spec, 3))
    assert v.bijective and v.limit_verdict == CERTIFIED_BY_TRANSPORTERS


def naive_stable(f):
    s = set(range(len(f)))
    for _ in range(len(f)):
        s = {f[x] for x in s}
    return s


@pytest.mark.parametrize("mode", MODES)
def test_stabilized_random_specs(mode):
    rng = random.Random(len(mode))
    for _ in range(60):
        spec = random_constant_spec(rng, 8, 6, mode)
        rep = stabilized_commutation_check(spec)
        assert rep.omega == naive_stable(spec.f)
        assert rep.gamma == naive_stable(spec.nu.map)
        assert rep.bijective


# --- witnesses -----------------------------------------------------------------

def test_replay_rejects_bogus_witness():
    t = builtin_solenoid(3, 1)
    assert not replay_witness(Witness("NotFree", (0,), (1, 0)), t)
    assert not replay_witness(Witness("NotInjectiveHom", (0, 1), (1,)), t)
    assert not replay_witness(Witness("TransporterEmpty", (0,), (push_down(t, 0), push_down(t, 3))), t)
    with pytest.raises(ValueError):
        replay_witness(Witness("Nonsense", (), ()), t)


# --- search --------------------------------------------------------------------

def test_search_deterministic():
    p = SearchParams(count=20)
    assert search(7, p) == search(7, p)


@pytest.mark.parametrize("mode", MODES)
def test_search_modes(mode):
    out = search(1, SearchParams(count=30, violation=mode))
    c = out["counts"]
    assert c["towers"] == c["surjective"] == c["injective"] == c["psi_bijective"] == 30
    assert c["stabilized_bijective"] == 30
    if mode == "none":
        assert c["hypotheses_hold"] == c["unique_transporters"] == 30
    elif mode in ("not-free", "not-injective"):
        assert c["hypotheses_hold"] == 0
    assert out["failures"] == []


def test_random_tower_modes():
    rng = random.Random(0)
    for _ in range(30):
        t = random_tower(rng, 6, 6, 3, "not-free")
        h = certify_hypotheses(t)
        assert not h.free and replay_witness(h.free_witness, t)
        t = random_tower(rng, 6, 6, 3, "not-injective")
        h = certify_hypotheses(t)
        assert h.free and not h.ok
        assert all(replay_witness(w, t) for w in h.witnesses())
    with pytest.raises(ValueError):
        random_tower(rng, mode="bogus")
