from itertools import permutations, product

import pytest

from orbitlimit.algebra import (
    is_free,
    orbits,
    regular_action,
    transporter,
    trivial_action,
    validate_action,
    validate_group,
    validate_hom,
)
from orbitlimit.errors import (
    CompatibilityFails,
    IdentityAxiomFails,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    RangeError,
    ShapeError,
)
from orbitlimit.groups import (
    cyclic_group,
    dihedral_group,
    direct_product,
    homomorphisms,
    quaternion_group,
    small_groups,
    subgroups,
    symmetric_group,
)

from oracles import is_group_table


def s3_table():
    perms = sorted(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    return [[idx[tuple(a[b[i]] for i in range(3))] for b in perms] for a in perms], perms


def translation(n, step):
    return [list(range(n)), [(x + step) % n for x in range(n)]]


# --- validate_group ----------------------------------------------------------

def test_z2_table():
    g = validate_group([[0, 1], [1, 0]])
    assert g.order == 2 and g.identity == 0 and g.inverse == (0, 1)


def test_constant_table_rejected():
    # 0*1 = 0, so 0 is not an identity and no other element is either
    with pytest.raises(NoIdentity):
        validate_group([[0, 0], [0, 0]])


def test_s3_from_permutation_composition():
    table, perms = s3_table()
    assert is_group_table(table)  # all 216 triples, brute force
    g = validate_group(table)
    assert perms[g.identity] == (0, 1, 2)


def test_identity_need_not_be_zero():
    # Z/3 relabelled so the identity sits at index 2
    relabel = [2, 0, 1]  # new index of old element
    old = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    table = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            table[relabel[i]][relabel[j]] = relabel[old[i][j]]
    assert validate_group(table).identity == 2


def test_not_closed_and_shape():
    with pytest.raises(NotClosed) as e:
        validate_group([[0, 1], [1, 2]])
    assert e.value.witness == (1, 1)
    with pytest.raises(ShapeError):
        validate_group([[0, 1], [1]])


def test_no_inverse_first_witness():
    # identity 0; element 1 has no inverse (row 1 never hits 0)
    table = [[0, 1, 2], [1, 1, 1], [2, 1, 0]]
    with pytest.raises(NoInverse) as e:
        validate_group(table)
    assert e.value.witness == (1,)


def test_not_associative_witness():
    # loop of order 5 with identity and inverses but not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    assert not is_group_table(table)
    with pytest.raises(NotAssociative) as e:
        validate_group(table)
    g, h, k = e.value.witness
    assert table[table[g][h]][k] != table[g][table[h][k]]
    first = next(t for t in product(range(5), repeat=3)
                 if table[table[t[0]][t[1]]][t[2]] != table[t[0]][table[t[1]][t[2]]])
    assert (g, h, k) == first


@pytest.mark.parametrize("name,group", small_groups(8))
def test_library_groups_are_groups(name, group):
    assert is_group_table([list(r) for r in group.table])


def test_library_orders():
    assert symmetric_group(3).order == 6
    assert dihedral_group(4).order == 8
    assert quaternion_group().order == 8
    assert direct_product(cyclic_group(2), cyclic_group(3)).order == 6
    # Q8 has a unique element of order 2, D4 has five
    q8, d4 = quaternion_group(), dihedral_group(4)
    invol = lambda g: sum(1 for x in g.elements if x != g.identity and g.table[x][x] == g.identity)
    assert invol(q8) == 1 and invol(d4) == 5


def test_subgroup_counts():
    # known subgroup counts
    assert len(subgroups(cyclic_group(6))) == 4
    assert len(subgroups(symmetric_group(3))) == 6
    assert len(subgroups(quaternion_group())) == 6
    assert len(subgroups(dihedral_group(4))) == 10


def test_hom_counts():
    # |Hom(Z/m, Z/n)| = gcd(m, n); |End(S3)| = 10
    from math import gcd
    for m in range(1, 7):
        for n in range(1, 7):
            assert len(homomorphisms(cyclic_group(m), cyclic_group(n))) == gcd(m, n)
    assert len(homomorphisms(symmetric_group(3), symmetric_group(3))) == 10


# --- validate_hom ------------------------------------------------------------

def test_identity_hom():
    z2 = cyclic_group(2)
    assert validate_hom(z2, z2, [0, 1]).is_injective()


def test_parity_hom():
    h = validate_hom(cyclic_group(4), cyclic_group(2), [0, 1, 0, 1])
    assert h.kernel() == (0, 2)


def test_bad_hom_first_pair():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    m = [0, 0, 1, 1]
    with pytest.raises(NotHomomorphism) as e:
        validate_hom(z4, z2, m)
    assert e.value.witness == (1, 1)
    # brute force: (1,1) is the first failing pair
    first = next((a, b) for a in range(4) for b in range(4) if m[(a + b) % 4] != (m[a] + m[b]) % 2)
    assert first == (1, 1)


def test_hom_range():
    with pytest.raises(RangeError):
        validate_hom(cyclic_group(2), cyclic_group(2), [0, 2])


# --- validate_action ---------------------------------------------------------

def test_translation_action_valid():
    s = validate_action(cyclic_group(2), 6, translation(6, 3))
    assert s.carrier == 6


def test_trivial_action_valid():
    g = symmetric_group(3)
    rows = [list(range(4)) for _ in g.elements]
    assert validate_action(g, 4, rows) == trivial_action(g, 4)


def test_three_cycle_is_not_a_z2_action():
    with pytest.raises(CompatibilityFails) as e:
        validate_action(cyclic_group(2), 3, [[0, 1, 2], [1, 2, 0]])
    assert e.value.witness == (1, 1, 0)


def test_identity_axiom():
    with pytest.raises(IdentityAxiomFails) as e:
        validate_action(cyclic_group(2), 3, [[0, 2, 1], [0, 1, 2]])
    assert e.value.witness == (1,)


# --- is_free / orbits / transporter -----------------------------------------

def test_free_translation():
    s = validate_action(cyclic_group(2), 6, translation(6, 3))
    assert is_free(s) == (True, None)


def test_negation_not_free():
    s = validate_action(cyclic_group(2), 3, [[0, 1, 2], [0, 2, 1]])
    assert is_free(s) == (False, (1, 0))


@pytest.mark.parametrize("name,group", small_groups(8))
def test_regular_action_free_and_transitive(name, group):
    s = regular_action(group)
    assert is_free(s)[0]
    assert orbits(s).class_count == 1


def test_orbits_of_translation():
    p = orbits(validate_action(cyclic_group(2), 6, translation(6, 3)))
    assert p.class_count == 3
    assert [p.members(c) for c in range(3)] == [(0, 3), (1, 4), (2, 5)]
    assert p.representatives == (0, 1, 2)


def test_trivial_orbits():
    p = orbits(trivial_action(cyclic_group(3), 5))
    assert p.class_of == (0, 1, 2, 3, 4)


def test_transporters():
    s18 = validate_action(cyclic_group(2), 18, translation(18, 9))
    assert transporter(s18, 0, 9) == (1,)
    assert transporter(s18, 4, 4) == (0,)
    neg = validate_action(cyclic_group(2), 3, [[0, 1, 2], [0, 2, 1]])
    assert transporter(neg, 1, 2) == (1,)
    assert transporter(neg, 0, 0) == (0, 1)
    assert transporter(neg, 0, 1) == ()


# --- laws on generated inputs ------------------------------------------------

from hypothesis import given, settings, strategies as st  # noqa: E402

from orbitlimit.groups import coset_space  # noqa: E402

from oracles import brute_orbit_count, is_action, is_hom  # noqa: E402

SMALL = [g for _, g in small_groups(6)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_direct_product_is_group(a, b):
    assert is_group_table([list(r) for r in direct_product(a, b).table])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_hom_composition(a, b, c, data):
    f = data.draw(st.sampled_from(homomorphisms(a, b)))
    g = data.draw(st.sampled_from(homomorphisms(b, c)))
    h = g.after(f)
    assert is_hom(a.table, c.table, h.map)
    assert all(h(x) == g(f(x)) for x in a.elements)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_coset_spaces_are_actions(g, data):
    h = data.draw(st.sampled_from(subgroups(g)))
    s, cosets = coset_space(g, h)
    assert s.carrier == g.order // len(h)
    assert is_action(g.table, s.action, s.carrier)
    assert orbits(s).class_count == brute_orbit_count(s.action, s.carrier) == 1
    # stabilizer of the identity coset is h itself
    base = next(i for i, c in enumerate(cosets) if g.identity in c)
    assert set(s.stabilizer(base)) == set(h)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_orbit_stabilizer(g, data):
    h = data.draw(st.sampled_from(subgroups(g)))
    s, _ = coset_space(g, h)
    for x in range(s.carrier):
        assert len(s.orbit(x)) * len(s.stabilizer(x)) == g.order
