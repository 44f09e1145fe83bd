import random
from fractions import Fraction

import pytest

from commclass.errors import ValidationError
from commclass.intlinalg import (
    AbelianGroupInvariants,
    IntMatrix,
    Lattice,
    complement,
    determinant,
    homology_at,
    integer_kernel,
    lattice_sum,
    rank,
    row_hnf,
    saturate,
    smith_normal_form,
    snf_diagonal,
)

rng = random.Random(0xa11ce)


def random_matrix(max_dim=12, lo=-9, hi=9):
    m = rng.randrange(1, max_dim + 1)
    n = rng.randrange(1, max_dim + 1)
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
    )


def is_divisibility_chain(divs):
    return all(b % a == 0 for a, b in zip(divs, divs[1:]))


def test_intmatrix_basics():
    M = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert M.to_rows() == [[1, 2], [3, 4]]
    assert M.transpose().to_rows() == [[1, 3], [2, 4]]
    assert (M @ IntMatrix.identity(2)) == M
    assert M.times_vector([1, 0]) == (1, 3)
    assert M.times_vector([Fraction(1, 2), 0]) == (Fraction(1, 2), Fraction(3, 2))
    N = IntMatrix.from_columns([[1, 3], [2, 4]], 2)
    assert N == M
    assert IntMatrix.from_rows([[0, 0]]).is_zero()


def test_intmatrix_shape_errors():
    with pytest.raises(ValidationError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValidationError):
        IntMatrix.from_columns([[1, 2, 3]], 2)


def test_smith_normal_form_fixture():
    M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    U, D, V = smith_normal_form(M)
    assert (U @ M @ V) == D
    assert snf_diagonal(M) == [2, 2, 156]


def test_smith_normal_form_random():
    for _ in range(250):
        M = random_matrix(8, -6, 6)
        U, D, V = smith_normal_form(M)
        assert (U @ M @ V) == D
        assert abs(determinant(U)) == 1
        assert abs(determinant(V)) == 1
        divs = [D.get(i, i) for i in range(min(D.rows, D.cols)) if D.get(i, i)]
        assert all(d > 0 for d in divs)
        assert is_divisibility_chain(divs)
        for i in range(D.rows):
            for j in range(D.cols):
                if i != j:
                    assert D.get(i, j) == 0
        assert snf_diagonal(M) == divs


def test_sparse_path_matches_dense():
    # matrices above the size cutoff take the unit-pivot route; the dense
    # routine is the oracle
    from commclass.intlinalg import _dense_smith

    for _ in range(10):
        m, n = rng.randrange(65, 75), rng.randrange(65, 75)
        rows = [[0] * n for _ in range(m)]
        for _ in range(140):
            rows[rng.randrange(m)][rng.randrange(n)] = rng.randint(-4, 4)
        M = IntMatrix.from_rows(rows)
        assert m * n > 64 * 64
        dense = _dense_smith([list(r) for r in rows], m, n, False)[0]
        assert snf_diagonal(M) == [d for d in dense if d]


def test_integer_kernel():
    M = IntMatrix.from_rows([[2, -4, 2]])
    K = integer_kernel(M)
    assert K.cols == 2
    assert (M @ K).is_zero()
    # kernel bases are saturated: their lattice equals its own saturation
    L = Lattice.from_columns(3, K.to_columns())
    assert saturate(L) == L
    for _ in range(100):
        M = random_matrix(8)
        K = integer_kernel(M)
        assert (M @ K).is_zero()
        assert K.cols == M.cols - rank(M)


def test_homology_at_fixtures():
    zero_out = IntMatrix.zero(0, 3)
    d_in = IntMatrix.from_columns([[2, 0, 0]], 3)
    h = homology_at(zero_out, d_in)
    assert h == AbelianGroupInvariants(2, (2,))
    assert str(h) == "Z^2 + Z/2"
    assert homology_at(zero_out, IntMatrix.zero(3, 0)) == AbelianGroupInvariants(3, ())
    assert AbelianGroupInvariants(0, ()).is_trivial


def test_homology_at_random_oracle():
    """ker/im invariants computed two ways: homology_at on the raw pair
    versus SNF of the inclusion written in kernel coordinates."""
    for _ in range(60):
        n = rng.randrange(2, 7)
        d_out = IntMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randrange(1, 5))]
        )
        K = integer_kernel(d_out)
        r = K.cols
        s = rng.randrange(1, 5)
        R = IntMatrix.from_rows([[rng.randint(-3, 3) for _ in range(s)] for _ in range(r)])
        d_in = K @ R
        got = homology_at(d_out, d_in)
        divs = snf_diagonal(R)
        expected = AbelianGroupInvariants(r - len(divs), tuple(d for d in divs if d > 1))
        assert got == expected


def test_homology_at_rejects_noncomplex():
    d_out = IntMatrix.from_rows([[1, 0]])
    d_in = IntMatrix.from_columns([[1, 0]], 2)
    with pytest.raises(Exception):
        homology_at(d_out, d_in)


def test_row_hnf_canonical():
    rows = [[2, 4], [4, 2]]
    hnf = row_hnf(rows, 2)
    assert hnf == row_hnf(hnf, 2)
    assert Lattice(2, tuple(map(tuple, hnf))) == Lattice.from_columns(
        2, [[2, 4], [4, 2]]
    )


def test_lattice_membership_and_sum():
    L = Lattice.from_columns(2, [[2, 0], [0, 3]])
    assert L.contains((4, 3))
    assert not L.contains((1, 0))
    assert not L.contains((Fraction(1, 2), 0))
    M = Lattice.from_columns(2, [[1, 0]])
    S = lattice_sum([L, M])
    assert S.contains((1, 0)) and S.contains((0, 3))
    assert not S.contains((0, 1))
    assert Lattice.zero(2).rank == 0
    assert Lattice.full(2).is_full


def test_saturate_properties():
    for _ in range(80):
        k = rng.randrange(1, 5)
        cols = [
            [rng.randint(-4, 4) for _ in range(k)] for _ in range(rng.randrange(1, 4))
        ]
        L = Lattice.from_columns(k, cols)
        S = saturate(L)
        assert S.rank == L.rank
        assert saturate(S) == S
        for row in L.basis_rows():
            assert S.contains(row)


def test_complement_unimodular():
    for _ in range(60):
        k = rng.randrange(1, 5)
        cols = [
            [rng.randint(-4, 4) for _ in range(k)] for _ in range(rng.randrange(1, 4))
        ]
        L = saturate(Lattice.from_columns(k, cols))
        C = complement(L)
        assert L.rank + C.rank == k
        square = IntMatrix.from_rows(
            [list(r) for r in L.basis_rows()] + [list(r) for r in C.basis_rows()]
        )
        assert abs(determinant(square)) == 1
