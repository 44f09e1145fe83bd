"""One test per acceptance criterion; each prints one pass/fail line under
pytest -v and carries the criterion's own diagnostic in the assertion."""

from commclass import acceptance


def check(n):
    number, name, fn = acceptance.CRITERIA[n - 1]
    assert number == n
    passed, detail = fn()
    assert passed, f"criterion {n} ({name}): {detail}"


def test_criteria_table_is_complete():
    assert [number for number, _, _ in acceptance.CRITERIA] == list(range(1, 13))
    assert len({name for _, name, _ in acceptance.CRITERIA}) == 12


def test_criterion_01_coinvariants_match_abelianization():
    check(1)


def test_criterion_02_moore_complex_middle_homology():
    check(2)


def test_criterion_03_pi2_of_connected_total_space():
    check(3)


def test_criterion_04_total_space_matches_coset_poset():
    check(4)


def test_criterion_05_abelian_groups_exactly_acyclic():
    check(5)


def test_criterion_06_commutation_action_lattice_suite():
    check(6)


def test_criterion_07_lifted_commutator_identity():
    check(7)


def test_criterion_08_bracket_equals_lattice_action():
    check(8)


def test_criterion_09_clutching_winding_suite():
    check(9)


def test_criterion_10_central_product_commuting_tuples():
    check(10)


def test_criterion_11_projection_and_commutator_maps_simplicial():
    check(11)


def test_criterion_12_almost_commuting_triple_realization():
    check(12)
