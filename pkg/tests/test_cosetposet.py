from commclass.catalog import catalog_group, catalog_groups, cyclic
from commclass.cosetposet import CosetPoset, abelian_subgroups, coset_poset_homology
from commclass.intlinalg import AbelianGroupInvariants

Z = AbelianGroupInvariants


def test_abelian_subgroup_counts():
    # S3: trivial, three <transposition>, <3-cycle>
    assert len(abelian_subgroups(catalog_group("S3"))) == 5
    # Q8: trivial, center, <i>, <j>, <k>
    assert len(abelian_subgroups(catalog_group("Q8"))) == 5
    # a prime-order group: trivial and itself
    assert len(abelian_subgroups(cyclic(5))) == 2
    assert len(abelian_subgroups(cyclic(1))) == 1


def test_abelian_subgroups_are_abelian_and_closed():
    G = catalog_group("D8")
    subs = abelian_subgroups(G)
    for s in subs:
        assert s.is_abelian()
        for a in s.elements:
            for b in s.elements:
                assert G.mul(a, b) in s._set
    # the whole group only appears when abelian
    assert all(s.order < G.order for s in subs)
    H = cyclic(6)
    assert any(s.order == 6 for s in abelian_subgroups(H))


def test_poset_sizes():
    P = CosetPoset(catalog_group("S3"))
    assert P.size() == (17, 24)
    Q = CosetPoset(catalog_group("Q8"))
    assert Q.size() == (18, 44)


def test_poset_homology_fixtures():
    assert coset_poset_homology(catalog_group("S3"), 2) == [Z(0, ()), Z(8, ()), Z(0, ())]
    assert coset_poset_homology(catalog_group("Q8"), 2) == [Z(0, ()), Z(3, ()), Z(0, ())]
    assert coset_poset_homology(catalog_group("D8"), 1)[1] == Z(3, ())


def test_poset_contractible_for_abelian():
    for name, G in catalog_groups(9):
        if not G.is_abelian:
            continue
        assert coset_poset_homology(G, 2) == [Z(0, ())] * 3


def test_chain_counts_s3():
    P = CosetPoset(catalog_group("S3"))
    chains = P.chains(2)
    assert [len(level) for level in chains] == [17, 24, 0]
    # every edge joins comparable cosets
    for a, b in chains[1]:
        assert P.vertices[a] < P.vertices[b]
