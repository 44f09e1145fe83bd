import random

import pytest

from commclass.catalog import (
    alternating,
    catalog_group,
    catalog_groups,
    catalog_names,
    cyclic,
    dihedral,
    permutation_group,
    quaternion,
    symmetric,
)
from commclass.errors import BudgetExceededError, ValidationError
from commclass.groups import (
    FiniteGroup,
    Subgroup,
    abelianization,
    almost_commuting_tuples,
    center,
    central_product,
    closure,
    commutator_subgroup,
    commuting_tuples,
    direct_product,
    generated_subgroup,
    invariant_factors_of_abelian,
    quotient_group,
    realize_triple,
)

rng = random.Random(0x9009)


def test_table_validation():
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1], [0, 1]])  # not a Latin square
    with pytest.raises(ValidationError):
        FiniteGroup([[1, 0], [0, 1]])  # identity not at index 0
    # Latin square with identity that fails associativity
    bad = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValidationError):
        FiniteGroup(bad)


def test_catalog_is_valid_and_ordered():
    names = catalog_names()
    assert len(names) == 38
    for name in names:
        G = catalog_group(name)
        # revalidate the table from scratch
        FiniteGroup(G.table, check=True)
        assert G.order >= 1


def test_basic_arithmetic():
    G = catalog_group("S3")
    for a in range(G.order):
        assert G.mul(a, G.inv(a)) == 0
        assert G.mul(0, a) == a
        assert G.commutator(a, a) == 0
    for _ in range(200):
        a, b, c = (rng.randrange(G.order) for _ in range(3))
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        assert G.commute(a, b) == (G.mul(a, b) == G.mul(b, a))
    assert not G.is_abelian
    assert catalog_group("Z12").is_abelian


def test_element_order_and_power():
    G = cyclic(12)
    assert G.element_order(1) == 12
    assert G.element_order(4) == 3
    assert G.power(1, 5) == 5
    assert G.power(1, -1) == 11
    assert G.power(0, 100) == 0


def test_permutation_group_s3():
    G = permutation_group([(1, 0, 2), (1, 2, 0)], label="S3")
    assert G.order == 6
    assert sorted(G.element_order(g) for g in range(6)) == [1, 2, 2, 2, 3, 3]
    assert symmetric(4).order == 24
    assert alternating(4).order == 12


def test_dihedral_quaternion_presentations():
    D8 = dihedral(4)
    assert D8.order == 8
    assert not D8.is_abelian
    r, s = D8.index_of_name("r"), D8.index_of_name("s")
    assert D8.element_order(r) == 4
    assert D8.element_order(s) == 2
    # s r s^-1 = r^-1
    assert D8.mul(D8.mul(s, r), D8.inv(s)) == D8.inv(r)
    Q8 = quaternion(2)
    i, j = Q8.index_of_name("i"), Q8.index_of_name("j")
    minus_one = Q8.index_of_name("-1")
    assert Q8.mul(i, i) == minus_one
    assert Q8.mul(j, j) == minus_one
    assert Q8.commutator(i, j) == minus_one


def test_center_and_commutator_subgroup():
    Q8 = catalog_group("Q8")
    Z = center(Q8)
    assert sorted(Z.elements) == [0, 2]
    assert sorted(commutator_subgroup(Q8).elements) == [0, 2]
    S3 = catalog_group("S3")
    assert len(center(S3).elements) == 1
    assert len(commutator_subgroup(S3).elements) == 3
    A4 = catalog_group("A4")
    assert len(commutator_subgroup(A4).elements) == 4


def test_subgroup_machinery():
    S3 = catalog_group("S3")
    H = generated_subgroup(S3, [S3.index_of_name("(0 1 2)")])
    assert len(H.elements) == 3
    assert H.is_normal()
    assert H.is_abelian()
    with pytest.raises(ValidationError):
        Subgroup(S3, (0, 1, 2))  # not closed unless those happen to be
    assert closure(S3, [0]) == (0,)


def test_quotient_group():
    S3 = catalog_group("S3")
    N = commutator_subgroup(S3)
    Q, proj = quotient_group(S3, N)
    assert Q.order == 2
    for _ in range(50):
        a, b = rng.randrange(6), rng.randrange(6)
        assert proj[S3.mul(a, b)] == Q.mul(proj[a], proj[b])


def test_direct_product_and_invariant_factors():
    G = direct_product(cyclic(2), cyclic(4))
    assert G.order == 8
    assert G.is_abelian
    assert invariant_factors_of_abelian(G) == [2, 4]
    assert invariant_factors_of_abelian(cyclic(12)) == [12]
    assert invariant_factors_of_abelian(cyclic(1)) == []
    assert invariant_factors_of_abelian(direct_product(cyclic(2), cyclic(3))) == [6]
    with pytest.raises(ValidationError):
        invariant_factors_of_abelian(catalog_group("S3"))


def test_abelianization():
    assert abelianization(catalog_group("Q8")) == [2, 2]
    assert abelianization(catalog_group("S4")) == [2]
    assert abelianization(catalog_group("A4")) == [3]
    assert abelianization(catalog_group("D8")) == [2, 2]
    assert abelianization(catalog_group("Z6")) == [6]


def test_commuting_tuples_counts():
    # the pair count is the sum of centralizer orders
    for name in ("S3", "D8", "Q8", "A4", "Z12"):
        G = catalog_group(name)
        pairs = commuting_tuples(G, 2)
        assert len(pairs) == sum(len(G.commuting_set(g)) for g in range(G.order))
    S3 = catalog_group("S3")
    assert len(commuting_tuples(S3, 0)) == 1
    assert len(commuting_tuples(S3, 1)) == 6
    assert len(commuting_tuples(S3, 3)) == 48


def test_commuting_tuples_symmetry():
    G = catalog_group("D8")
    triples = set(commuting_tuples(G, 3))
    for t in triples:
        assert (t[2], t[0], t[1]) in triples
        assert tuple(G.inv(g) for g in t) in triples
        for a in t:
            for b in t:
                assert G.commute(a, b)


def test_commuting_tuples_budget():
    with pytest.raises(BudgetExceededError):
        commuting_tuples(catalog_group("S4"), 4, budget=1000)


def test_central_product():
    Z4 = cyclic(4)
    G, proj = central_product(Z4, Z4, {0: 0, 2: 2})
    assert G.order == 8
    assert G.is_abelian
    assert invariant_factors_of_abelian(G) == [2, 4]
    # antidiagonal identification: (2, 2) maps to the identity
    assert proj[2 * 4 + 2] == 0
    Q8oZ4 = catalog_group("Q8oZ4")
    assert Q8oZ4.order == 16
    assert abelianization(Q8oZ4) == [2, 2, 2]
    assert len(center(Q8oZ4).elements) == 4
    with pytest.raises(ValidationError):
        central_product(Z4, Z4, {0: 0, 1: 1})  # {0,1} is not a subgroup of Z4


def test_almost_commuting_tuples():
    Q8 = catalog_group("Q8")
    K = center(Q8)
    pairs = almost_commuting_tuples(Q8, K, 2)
    assert len(pairs) == 64  # every pair of Q8 has central commutator
    S3 = catalog_group("S3")
    with pytest.raises(ValidationError):
        # A3 is normal in S3 but not central
        almost_commuting_tuples(S3, commutator_subgroup(S3), 2)


def test_realize_triple():
    Q8 = catalog_group("Q8")
    K = Subgroup(Q8, (0, 2))
    minus_one = 2
    triple = realize_triple(Q8, K, minus_one, minus_one)
    assert triple == (1, 1, 4)  # (i, i, j), the lexicographically first witness
    g1, g2, g3 = triple
    assert Q8.commutator(g1, g2) == 0
    assert Q8.commutator(g2, g3) == minus_one
    assert Q8.commutator(g1, g3) == minus_one
    assert realize_triple(Q8, K, 0, 0) == (0, 0, 0)
    with pytest.raises(ValidationError):
        realize_triple(Q8, K, 1, 2)  # i is not in K


def test_names_round_trip():
    for name, G in catalog_groups(12):
        for g in range(G.order):
            assert G.index_of_name(G.name_of(g)) == g
