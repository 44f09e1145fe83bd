import random
from fractions import Fraction

import pytest

from commclass.catalog import catalog_group, cyclic
from commclass.errors import ValidationError
from commclass.intlinalg import IntMatrix, Lattice
from commclass.torus import (
    TorusExtension,
    catalog_extension,
    catalog_extensions,
    commutator_lattices,
    extension_names,
    pi1_split,
    psi_star,
    rho_from_generators,
    single_commutator_cover,
    torus_pi1_lattice,
)

rng = random.Random(0x70f)

F12 = [Fraction(k, 12) for k in range(12)]


def random_point(rank):
    return tuple(rng.choice(F12) for _ in range(rank))


def test_catalog_extension_names():
    names = extension_names()
    assert "o2" in names and "su2_normalizer" in names
    assert len(names) == 13
    with pytest.raises(ValidationError):
        catalog_extension("nope")


def test_element_algebra_laws():
    for name in ("o2", "su2_normalizer", "d8_square"):
        E = catalog_extension(name)
        pool = E.elements_of_denominator(4)
        e = E.identity()
        for x in pool:
            assert E.mul(x, E.inv(x)) == e
            assert E.mul(e, x) == x and E.mul(x, e) == x
            assert x.inv().inv() == x
        for _ in range(60):
            x, y, z = (rng.choice(pool) for _ in range(3))
            assert E.mul(E.mul(x, y), z) == E.mul(x, E.mul(y, z))
            assert (x * y).inv() == y.inv() * x.inv()


def test_operator_forms_match_methods():
    E = catalog_extension("o2")
    x = E.element([Fraction(1, 3)], 1)
    y = E.element([Fraction(1, 4)], 0)
    assert x * y == E.mul(x, y)
    assert x.inv() == E.inv(x)
    assert x.commutator(y) == E.commutator(x, y)
    assert E.identity().is_identity()
    assert not x.is_identity()


def test_o2_psi_and_lattices():
    E = catalog_extension("o2")
    assert psi_star(E, 0) == IntMatrix.zero(1, 1)
    assert psi_star(E, 1) == IntMatrix.from_rows([[2]])
    total, sub = commutator_lattices(E)
    assert total == Lattice.from_columns(1, [[2]])
    assert sub.is_full
    sub2, comp = pi1_split(E)
    assert sub2.is_full
    assert comp.rank == 0
    assert torus_pi1_lattice(E) == (1, Lattice.full(1))
    assert E.is_split


def test_o2_bracket_fixture():
    E = catalog_extension("o2")
    tau = E.lift_element(1)
    third = E.torus_element([Fraction(1, 3)])
    assert E.commutator(tau, third) == E.torus_element([Fraction(2, 3)])


def test_su2_normalizer_central_quotient():
    E = catalog_extension("su2_normalizer")
    assert not E.is_split
    assert set(E.z_elements) == {((Fraction(0),), 0), ((Fraction(1, 2),), 2)}
    # canonical representatives identify (t, f) with (t + 1/2, f + 2)
    assert E.element([Fraction(3, 4)], 0) == E.element([Fraction(1, 4)], 2)
    assert E.element([Fraction(1, 2)], 2) == E.identity()
    assert torus_pi1_lattice(E) == (1, Lattice.full(1))


def test_o2_half_fractional_pi1():
    E = catalog_extension("o2_half")
    assert not E.is_split
    D, L = torus_pi1_lattice(E)
    assert D == 2
    assert L == Lattice.full(1)  # honest lattice is (1/2) Z
    # the quotient halves the circle: denominator-2 points collapse
    assert len(E.elements_of_denominator(2)) == 2
    assert len(catalog_extension("o2").elements_of_denominator(2)) == 4


def test_elements_of_denominator_counts():
    E = catalog_extension("trivial_z3")
    assert len(E.elements_of_denominator(1)) == 3
    assert len(E.elements_of_denominator(2)) == 12
    with pytest.raises(ValidationError):
        E.elements_of_denominator(0)


def test_bracket_against_torus_is_linear():
    # [x, torus(t)] depends only on the finite part of x and acts by psi_star
    for name, E in catalog_extensions():
        for _ in range(40):
            f = rng.randrange(E.F.order)
            x = E.mul(E.lift_element(f), E.torus_element(random_point(E.rank)))
            t = random_point(E.rank)
            got = E.commutator(x, E.torus_element(t))
            want = E.torus_element(psi_star(E, f).times_vector(t))
            assert got == want


def test_lifted_commutator_identity_sampled():
    for name in ("o2", "su2_normalizer", "rot4", "perm_s3"):
        E = catalog_extension(name)
        F = E.F
        for _ in range(80):
            p, q = rng.randrange(F.order), rng.randrange(F.order)
            s = E.torus_element(random_point(E.rank))
            t = E.torus_element(random_point(E.rank))
            lhs = E.commutator(E.mul(E.lift_element(p), s), E.mul(E.lift_element(q), t))
            conj = F.mul(F.mul(F.inv(q), p), q)
            rhs = E.commutator(E.lift_element(p), E.lift_element(q))
            rhs = E.mul(rhs, E.commutator(E.lift_element(F.commutator(p, q)), s))
            rhs = E.mul(rhs, E.commutator(E.lift_element(conj), t))
            rhs = E.mul(rhs, E.commutator(E.lift_element(q), E.inv(s)))
            assert lhs == rhs


def test_commutator_lattice_shapes():
    # rotation by 90 degrees: I - rho(q) has determinant 2, index-2 sublattice
    E = catalog_extension("rot4")
    total, sub = commutator_lattices(E)
    assert sub.is_full
    assert total.rank == 2
    # trivial action: no commutators at all
    T = catalog_extension("trivial_z3")
    total, sub = commutator_lattices(T)
    assert total.rank == 0
    assert sub.rank == 0
    sub2, comp = pi1_split(T)
    assert comp.is_full


def test_perm_s3_splitting():
    E = catalog_extension("perm_s3")
    sub, comp = pi1_split(E)
    assert sub.rank == 2
    assert comp.rank == 1
    # together they span the whole ambient lattice
    stacked = IntMatrix.from_rows(sub.basis_rows() + comp.basis_rows())
    from commclass.intlinalg import determinant

    assert determinant(stacked) in (1, -1)
    # the diagonal is fixed by every permutation, so it avoids the subtorus
    assert not sub.contains([1, 1, 1])


def test_single_commutator_cover_o2():
    E = catalog_extension("o2")
    report = single_commutator_cover(E, 4)
    assert report.covered
    assert report.denominator == 4
    assert report.search_denominator == 8
    assert len(report.targets) == 4
    assert not report.missing
    for target, x, y in report.witnesses:
        assert E.commutator(x, y) == target
    assert "covered" in repr(report)


def test_single_commutator_cover_can_fail_honestly():
    E = catalog_extension("su2_normalizer")
    report = single_commutator_cover(E, 2, search_denominator=1)
    assert not report.covered
    assert report.missing
    assert len(report.witnesses) + len(report.missing) == len(report.targets)


def test_rho_from_generators_errors():
    with pytest.raises(ValidationError):
        # [[0,-1],[1,0]] has order 4, inconsistent over Z2
        rho_from_generators(cyclic(2), {1: IntMatrix.from_rows([[0, -1], [1, 0]])}, 2)
    with pytest.raises(ValidationError):
        # the image of 2 alone does not generate Z4
        rho_from_generators(cyclic(4), {2: IntMatrix.identity(1)}, 1)


def test_constructor_validation():
    ident = IntMatrix.identity(1)
    with pytest.raises(ValidationError):
        TorusExtension(1, cyclic(2), [ident, IntMatrix.from_rows([[2]])])
    with pytest.raises(ValidationError):
        # not a homomorphism: rho(1)^2 != rho(2)
        neg = IntMatrix.from_rows([[-1]])
        TorusExtension(1, cyclic(3), [ident, neg, neg])
    with pytest.raises(ValidationError):
        # central torus part not fixed by the action
        TorusExtension(
            1,
            cyclic(2),
            [ident, IntMatrix.from_rows([[-1]])],
            central_quotient=[((Fraction(1, 4),), 0)],
        )
    with pytest.raises(ValidationError):
        # finite part of a central generator must act trivially
        z4 = cyclic(4)
        neg = IntMatrix.from_rows([[-1]])
        TorusExtension(
            1, z4, [ident, neg, ident, neg], central_quotient=[((Fraction(0),), 1)]
        )
    with pytest.raises(ValidationError):
        # finite part of a central generator must be central in F
        D8 = catalog_group("D8")
        TorusExtension(
            1,
            D8,
            [ident] * 8,
            central_quotient=[((Fraction(0),), D8.names.index("r"))],
        )


def test_parent_separation():
    A = catalog_extension("o2")
    B = TorusExtension(1, cyclic(2), [IntMatrix.identity(1), IntMatrix.from_rows([[-1]])])
    with pytest.raises(ValidationError):
        A.mul(A.identity(), B.identity())
