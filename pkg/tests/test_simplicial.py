import pytest

from commclass.catalog import catalog_group, catalog_groups, cyclic, dihedral
from commclass.errors import (
    BudgetExceededError,
    MathInvariantError,
    TruncationError,
    ValidationError,
)
from commclass.groups import direct_product
from commclass.intlinalg import AbelianGroupInvariants
from commclass.simplicial import (
    build_c,
    build_e,
    commutator_map,
    homology,
    is_successively_commuting,
    p_map,
    reduced_homology_range,
    successive_quotients,
)

Z = AbelianGroupInvariants


def test_level_counts_s3():
    S3 = catalog_group("S3")
    C = build_c(S3, 3)
    assert [len(C.levels[k]) for k in range(4)] == [1, 6, 18, 48]
    E = build_e(S3, 3)
    assert [len(E.levels[k]) for k in range(4)] == [6, 36, 108, 288]
    # each total-space level fibers over the commuting tuples with fiber G
    for k in range(4):
        assert len(E.levels[k]) == 6 * len(C.levels[k])


def test_nondegenerate_counts_s3():
    S3 = catalog_group("S3")
    C = build_c(S3, 3)
    assert [len(C.nondegenerate(k)) for k in range(4)] == [1, 5, 7, 11]
    E = build_e(S3, 3)
    assert [len(E.nondegenerate(k)) for k in range(4)] == [6, 30, 42, 66]


def test_simplicial_identities_hold():
    for G in (catalog_group("S3"), catalog_group("Z4"), catalog_group("Q8")):
        assert build_c(G, 3).verify_identities() > 0
        assert build_e(G, 3).verify_identities() > 0


def test_face_degeneracy_tables_in_range():
    S3 = catalog_group("S3")
    C = build_c(S3, 3)
    for k in (1, 2, 3):
        for idx in range(len(C.levels[k])):
            for i in range(k + 1):
                assert 0 <= C.face(k, idx, i) < len(C.levels[k - 1])
    for k in (0, 1, 2):
        for idx in range(len(C.levels[k])):
            for i in range(k + 1):
                s = C.degeneracy(k, idx, i)
                assert C.degenerate[k + 1][s]


def test_classifying_space_cyclic_homology():
    # for abelian G the commuting-tuple model is the full classifying space,
    # and cyclic groups have 2-periodic homology
    C = build_c(cyclic(2), 4)
    assert homology(C, 1) == Z(0, (2,))
    assert homology(C, 2) == Z(0, ())
    assert homology(C, 3) == Z(0, (2,))
    C3 = build_c(cyclic(3), 3)
    assert homology(C3, 1) == Z(0, (3,))
    assert homology(C3, 2) == Z(0, ())
    C4 = build_c(cyclic(4), 3)
    assert homology(C4, 1) == Z(0, (4,))
    assert homology(C4, 2) == Z(0, ())


def test_classifying_space_klein_homology():
    V = direct_product(cyclic(2), cyclic(2))
    C = build_c(V, 3)
    assert homology(C, 0) == Z(1, ())
    assert homology(C, 1) == Z(0, (2, 2))
    assert homology(C, 2) == Z(0, (2,))


def test_h0_and_reduced_h0():
    S3 = catalog_group("S3")
    C = build_c(S3, 2)
    assert homology(C, 0) == Z(1, ())
    assert homology(C, 0, reduced=True) == Z(0, ())
    E = build_e(S3, 2)
    assert homology(E, 0) == Z(1, ())


def test_normalized_matches_unnormalized():
    for name in ("Z6", "S3", "D8"):
        G = catalog_group(name)
        C = build_c(G, 3)
        for k in (0, 1, 2):
            assert homology(C, k, normalized=True) == homology(C, k, normalized=False)


def test_total_space_s3():
    S3 = catalog_group("S3")
    E = build_e(S3, 3)
    assert reduced_homology_range(E, 2) == [Z(0, ()), Z(8, ()), Z(0, ())]


def test_total_space_bigger_groups():
    assert reduced_homology_range(build_e(dihedral(8), 3), 1)[1] == Z(15, ())
    assert reduced_homology_range(build_e(catalog_group("Q8oZ4"), 3), 1)[1] == Z(3, ())


def test_abelian_total_space_contractible_range():
    for name, G in catalog_groups(9):
        if not G.is_abelian:
            continue
        assert reduced_homology_range(build_e(G, 3), 2) == [Z(0, ())] * 3


def test_p_map_and_commutator_map():
    S3 = catalog_group("S3")
    E = build_e(S3, 3)
    C = build_c(S3, 3)
    for k in range(4):
        for tup in E.levels[k]:
            assert p_map(S3, tup) in C.index[k]
            assert len(commutator_map(S3, tup)) == k
    # a simplex of the total space is determined by its start and projection
    for tup in E.levels[2]:
        q = successive_quotients(S3, tup)
        assert tup == (tup[0], S3.mul(tup[0], q[0]), S3.mul(S3.mul(tup[0], q[0]), q[1]))


def test_p_map_rejects_noncommuting_quotients():
    S3 = catalog_group("S3")
    g0, g1 = next(
        (a, b)
        for a in range(6)
        for b in range(6)
        if not S3.commute(a, b)
    )
    bad = (0, g0, S3.mul(g0, S3.mul(g1, g0)))
    if is_successively_commuting(S3, bad):
        bad = (0, g0, S3.mul(g0, g1))
    assert not is_successively_commuting(S3, bad)
    with pytest.raises(ValidationError):
        p_map(S3, bad)
    with pytest.raises(ValidationError):
        commutator_map(S3, bad)


def test_truncation_guard():
    C = build_c(cyclic(2), 2)
    with pytest.raises(TruncationError):
        homology(C, 2)
    with pytest.raises(TruncationError):
        C.boundary_matrix(3)
    with pytest.raises(ValidationError):
        homology(C, -1)


def test_verify_identities_detects_corruption():
    C = build_c(cyclic(3), 2)
    table = C.face_index[2][0]
    original = table[0]
    table[0] = (original + 1) % len(C.levels[1])
    try:
        with pytest.raises(MathInvariantError):
            C.verify_identities()
    finally:
        table[0] = original
    assert C.verify_identities() > 0


def test_build_budget():
    with pytest.raises(BudgetExceededError):
        build_e(catalog_group("S4"), 4, budget=10_000)
    with pytest.raises(ValidationError):
        build_c(catalog_group("S3"), -1)
