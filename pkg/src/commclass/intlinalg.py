"""Exact integer linear algebra: Smith normal form, Hermite form, integer
kernels, lattices in Z^k, and homology of integer chain complex slots.

All arithmetic uses Python's arbitrary-precision integers.  Matrices are
stored sparsely (one dict per row) so that boundary matrices of large chain
complexes stay affordable; the dense Smith routine with unimodular
transforms is used for small matrices and as the exact fallback of the
sparse elimination.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import MathInvariantError, ValidationError


class IntMatrix:
    """Integer matrix with explicit dimensions and sparse row storage."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, row_dicts=None):
        if rows < 0 or cols < 0:
            raise ValidationError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if row_dicts is None:
            self._data = [dict() for _ in range(rows)]
        else:
            if len(row_dicts) != rows:
                raise ValidationError("row_dicts length does not match rows")
            self._data = []
            for r in row_dicts:
                d = {}
                for j, v in r.items():
                    if not isinstance(j, int) or j < 0 or j >= cols:
                        raise ValidationError(f"column index {j} out of range")
                    if not isinstance(v, int) or isinstance(v, bool):
                        raise ValidationError("entries must be ints")
                    if v:
                        d[j] = v
                self._data.append(d)

    @classmethod
    def from_rows(cls, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        data = []
        for row in rows_list:
            if len(row) != cols:
                raise ValidationError("ragged rows")
            data.append({j: v for j, v in enumerate(row) if v})
        m = cls(rows, cols)
        m._data = data
        cls._check_entries(data)
        return m

    @classmethod
    def from_columns(cls, cols_list, nrows):
        data = [dict() for _ in range(nrows)]
        for j, col in enumerate(cols_list):
            if len(col) != nrows:
                raise ValidationError("column length does not match nrows")
            for i, v in enumerate(col):
                if v:
                    data[i][j] = v
        m = cls(nrows, len(cols_list))
        m._data = data
        cls._check_entries(data)
        return m

    @classmethod
    def from_column_dicts(cls, col_dicts, nrows):
        """Build from sparse columns: col_dicts[j] maps row index to entry."""
        data = [dict() for _ in range(nrows)]
        for j, col in enumerate(col_dicts):
            for i, v in col.items():
                if not 0 <= i < nrows:
                    raise ValidationError(f"row index {i} out of range")
                if v:
                    data[i][j] = v
        m = cls(nrows, len(col_dicts))
        m._data = data
        cls._check_entries(data)
        return m

    @staticmethod
    def _check_entries(data):
        for row in data:
            for v in row.values():
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValidationError("entries must be ints")

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m._data[i][i] = 1
        return m

    def get(self, i, j):
        return self._data[i].get(j, 0)

    def row_dict(self, i):
        return dict(self._data[i])

    def to_rows(self):
        return [[self._data[i].get(j, 0) for j in range(self.cols)] for i in range(self.rows)]

    def to_columns(self):
        return [[self._data[i].get(j, 0) for i in range(self.rows)] for j in range(self.cols)]

    def column_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for i, row in enumerate(self._data):
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def transpose(self):
        t = IntMatrix(self.cols, self.rows)
        for i, row in enumerate(self._data):
            for j, v in row.items():
                t._data[j][i] = v
        return t

    @property
    def nnz(self):
        return sum(len(r) for r in self._data)

    def is_zero(self):
        return all(not r for r in self._data)

    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValidationError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = IntMatrix(self.rows, other.cols)
        odata = other._data
        for i, row in enumerate(self._data):
            acc = {}
            for k, v in row.items():
                for j, w in odata[k].items():
                    s = acc.get(j, 0) + v * w
                    if s:
                        acc[j] = s
                    elif j in acc:
                        del acc[j]
            out._data[i] = acc
        return out

    def times_vector(self, vec):
        """Matrix-vector product; the vector may hold ints or Fractions."""
        if len(vec) != self.cols:
            raise ValidationError("vector length does not match cols")
        return tuple(sum(v * vec[j] for j, v in row.items()) for row in self._data)

    def scaled(self, c):
        out = IntMatrix(self.rows, self.cols)
        if c:
            for i, row in enumerate(self._data):
                out._data[i] = {j: c * v for j, v in row.items()}
        return out

    def __add__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("shape mismatch")
        out = IntMatrix(self.rows, self.cols)
        for i in range(self.rows):
            acc = dict(self._data[i])
            for j, v in other._data[i].items():
                s = acc.get(j, 0) + v
                if s:
                    acc[j] = s
                elif j in acc:
                    del acc[j]
            out._data[i] = acc
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()!r})"
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# ---------------------------------------------------------------------------
# dense Smith normal form with unimodular transforms


def _find_pivot(A, m, n, t):
    """Smallest absolute nonzero entry of A[t:, t:], ties by lowest (row, col)."""
    best = None
    for i in range(t, m):
        Ai = A[i]
        for j in range(t, n):
            v = Ai[j]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        return best
        if best is not None and best[0] == 1:
            return best
    return best


class _Transforms:
    """Row/column transform bookkeeping for the dense Smith routine."""

    def __init__(self, m, n, want):
        self.want = want
        if want:
            self.U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
            self.Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
            self.V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(self, i, k):
        if self.want:
            U, Uinv = self.U, self.Uinv
            U[i], U[k] = U[k], U[i]
            for r in Uinv:
                r[i], r[k] = r[k], r[i]

    def row_add(self, i, k, q):
        # row_i -= q * row_k
        if self.want:
            Ui, Uk = self.U[i], self.U[k]
            for j in range(len(Ui)):
                Ui[j] -= q * Uk[j]
            for r in self.Uinv:
                r[k] += q * r[i]

    def row_negate(self, i):
        if self.want:
            self.U[i] = [-x for x in self.U[i]]
            for r in self.Uinv:
                r[i] = -r[i]

    def col_swap(self, j, l):
        if self.want:
            for r in self.V:
                r[j], r[l] = r[l], r[j]

    def col_add(self, j, l, q):
        # col_j -= q * col_l
        if self.want:
            for r in self.V:
                r[j] -= q * r[l]

    def row_mix(self, t, i, x, y, a1, b1):
        # rows (t, i) <- (x*row_t + y*row_i, -b1*row_t + a1*row_i),
        # determinant x*a1 + y*b1 = 1
        if self.want:
            Ut, Ui = self.U[t], self.U[i]
            for j in range(len(Ut)):
                ut, ui = Ut[j], Ui[j]
                Ut[j] = x * ut + y * ui
                Ui[j] = a1 * ui - b1 * ut
            for r in self.Uinv:
                rt, ri = r[t], r[i]
                r[t] = a1 * rt + b1 * ri
                r[i] = x * ri - y * rt
    def col_mix(self, t, j, x, y, a1, b1):
        # cols (t, j) <- (x*col_t + y*col_j, -b1*col_t + a1*col_j)
        if self.want:
            for r in self.V:
                rt, rj = r[t], r[j]
                r[t] = x * rt + y * rj
                r[j] = a1 * rj - b1 * rt


def _ext_gcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _dense_smith(rows, m, n, want_transforms):
    """Core dense SNF. Returns (diag_entries, U, Uinv, V, A) as lists.

    Entries are cleared with single extended-gcd row/column mixes rather
    than repeated division, which keeps coefficient growth polynomial;
    the divisibility chain is restored afterwards on diagonal pairs.
    """
    A = [row[:] for row in rows]
    tr = _Transforms(m, n, want_transforms)
    t = 0
    limit = min(m, n)
    while t < limit:
        piv = _find_pivot(A, m, n, t)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            A[t], A[pi] = A[pi], A[t]
            tr.row_swap(t, pi)
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            tr.col_swap(t, pj)
        while True:
            for i in range(t + 1, m):
                b = A[i][t]
                if not b:
                    continue
                a = A[t][t]
                if b % a == 0:
                    q = b // a
                    Ai, At = A[i], A[t]
                    for j in range(t, n):
                        Ai[j] -= q * At[j]
                    tr.row_add(i, t, q)
                else:
                    g, x, y = _ext_gcd(a, b)
                    a1, b1 = a // g, b // g
                    Ai, At = A[i], A[t]
                    for j in range(t, n):
                        at, ai = At[j], Ai[j]
                        At[j] = x * at + y * ai
                        Ai[j] = a1 * ai - b1 * at
                    tr.row_mix(t, i, x, y, a1, b1)
            # column phase: exact-division clears leave column t alone,
            # gcd mixes can refill it and shrink the pivot, so loop
            column_dirtied = False
            for j in range(t + 1, n):
                b = A[t][j]
                if not b:
                    continue
                a = A[t][t]
                if b % a == 0:
                    q = b // a
                    for row in A:
                        row[j] -= q * row[t]
                    tr.col_add(j, t, q)
                else:
                    g, x, y = _ext_gcd(a, b)
                    a1, b1 = a // g, b // g
                    for row in A:
                        rt, rj = row[t], row[j]
                        row[t] = x * rt + y * rj
                        row[j] = a1 * rj - b1 * rt
                    tr.col_mix(t, j, x, y, a1, b1)
                    column_dirtied = True
            if not column_dirtied:
                break
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            tr.row_negate(t)
        t += 1
    r = t
    # restore the divisibility chain on the nonzero diagonal
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if b % a == 0:
                continue
            # couple the pair, then one gcd mix and one exact clear
            Ai, An = A[i], A[i + 1]
            for j in range(n):
                Ai[j] += An[j]
            tr.row_add(i, i + 1, -1)
            g, x, y = _ext_gcd(a, b)
            a1, b1 = a // g, b // g
            for row in A:
                rt, rj = row[i], row[i + 1]
                row[i] = x * rt + y * rj
                row[i + 1] = a1 * rj - b1 * rt
            tr.col_mix(i, i + 1, x, y, a1, b1)
            q = A[i + 1][i] // g
            for j in range(n):
                An[j] -= q * Ai[j]
            tr.row_add(i + 1, i, q)
            if A[i + 1][i + 1] < 0:
                An[i + 1] = -An[i + 1]
                tr.row_negate(i + 1)
            changed = True
    diag = [A[i][i] for i in range(limit)]
    if want_transforms:
        return diag, tr.U, tr.Uinv, tr.V, A
    return diag, None, None, None, A


def smith_normal_form(M: IntMatrix):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, and D diagonal
    with a nonnegative divisibility chain d1 | d2 | ... .

    Pivot rule: smallest absolute nonzero entry, ties broken by lowest
    (row, column) index, so the factorization is deterministic.
    """
    diag, U, Uinv, V, A = _dense_smith(M.to_rows(), M.rows, M.cols, True)
    return (
        IntMatrix.from_rows(U) if M.rows else IntMatrix.zero(0, 0),
        IntMatrix.from_rows(A) if M.rows else IntMatrix.zero(0, M.cols),
        IntMatrix.from_rows(V) if M.cols else IntMatrix.zero(0, 0),
    )


def _smith_with_uinv(M: IntMatrix):
    diag, U, Uinv, V, A = _dense_smith(M.to_rows(), M.rows, M.cols, True)
    return diag, Uinv, V


# ---------------------------------------------------------------------------
# sparse elimination for invariant factors of large matrices

_DENSE_CUTOFF = 64 * 64


def snf_diagonal(M: IntMatrix):
    """Nonzero invariant factors of M (the nonzero diagonal of its SNF).

    Small matrices go through the dense routine.  Large ones are reduced by
    unit-pivot sparse elimination (each unit pivot is a unimodular
    equivalence splitting off diag(1)); whatever remains without a +-1
    entry is finished densely.
    """
    if M.rows * M.cols <= _DENSE_CUTOFF:
        diag, *_ = _dense_smith(M.to_rows(), M.rows, M.cols, False)
        return [d for d in diag if d]

    rows = {}
    cols = {}
    for i, r in enumerate(M._data):
        if r:
            rows[i] = dict(r)
            for j in r:
                cols.setdefault(j, set()).add(i)

    ones = 0
    heap = []
    for i, r in rows.items():
        li = len(r)
        for j, v in r.items():
            if v == 1 or v == -1:
                heap.append(((li - 1) * (len(cols[j]) - 1), i, j))
    heapq.heapify(heap)

    while heap:
        cost, i, j = heapq.heappop(heap)
        r = rows.get(i)
        if r is None:
            continue
        v = r.get(j)
        if v is None or not (v == 1 or v == -1):
            continue
        true_cost = (len(r) - 1) * (len(cols[j]) - 1)
        if true_cost != cost:
            heapq.heappush(heap, (true_cost, i, j))
            continue
        # eliminate with pivot (i, j), value +-1
        prow = rows.pop(i)
        for j2 in prow:
            cols[j2].discard(i)
        pcol = cols.pop(j)
        for i2 in sorted(pcol):
            r2 = rows[i2]
            f = r2[j] * v
            del r2[j]
            for j2, pv in prow.items():
                if j2 == j:
                    continue
                new = r2.get(j2, 0) - f * pv
                if new:
                    if j2 not in r2:
                        cols[j2].add(i2)
                    r2[j2] = new
                    if new == 1 or new == -1:
                        heapq.heappush(
                            heap, ((len(r2) - 1) * (len(cols[j2]) - 1), i2, j2)
                        )
                elif j2 in r2:
                    del r2[j2]
                    cols[j2].discard(i2)
            if not r2:
                del rows[i2]
        ones += 1

    divisors = [1] * ones
    if rows:
        # no +-1 entries remain; finish densely on the remaining block
        live_rows = sorted(rows)
        live_cols = sorted({j for r in rows.values() for j in r})
        colpos = {j: a for a, j in enumerate(live_cols)}
        block = []
        for i in live_rows:
            row = [0] * len(live_cols)
            for j, v in rows[i].items():
                row[colpos[j]] = v
            block.append(row)
        diag, *_ = _dense_smith(block, len(live_rows), len(live_cols), False)
        divisors.extend(d for d in diag if d)
    return divisors


def rank(M: IntMatrix) -> int:
    return len(snf_diagonal(M))


def determinant(M: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValidationError("determinant requires a square matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_rows()
    sign = 1
    prev = 1
    for t in range(n - 1):
        if A[t][t] == 0:
            for i in range(t + 1, n):
                if A[i][t]:
                    A[t], A[i] = A[i], A[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                A[i][j] = (A[i][j] * A[t][t] - A[i][t] * A[t][j]) // prev
            A[i][t] = 0
        prev = A[t][t]
    return sign * A[n - 1][n - 1]


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """Basis of {x in Z^cols : M x = 0} as columns; the basis is saturated."""
    if M.rows == 0:
        return IntMatrix.identity(M.cols)
    diag, _uinv, V = _smith_with_uinv(M)
    r = sum(1 for d in diag if d)
    n = M.cols
    cols = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return IntMatrix.from_columns(cols, n)


# ---------------------------------------------------------------------------
# Hermite form and lattices


def row_hnf(rows_list, ncols):
    """Canonical row Hermite normal form; returns the nonzero rows.

    Echelon with positive pivots; entries above each pivot lie in
    [0, pivot).  The result is a canonical basis of the row lattice.
    """
    work = [list(r) for r in rows_list if any(r)]
    m = len(work)
    r = 0
    for c in range(ncols):
        # gather a pivot at position (r, c)
        while True:
            nz = [i for i in range(r, m) if work[i][c]]
            if not nz:
                break
            if len(nz) == 1 and (r in nz):
                break
            piv = min(nz, key=lambda i: (abs(work[i][c]), i))
            if piv != r:
                work[r], work[piv] = work[piv], work[r]
            p = work[r][c]
            done = True
            for i in range(r + 1, m):
                if work[i][c]:
                    q = work[i][c] // p
                    if q:
                        wi, wr = work[i], work[r]
                        for j in range(c, ncols):
                            wi[j] -= q * wr[j]
                    if work[i][c]:
                        done = False
            if done:
                break
        if r < m and work[r][c]:
            if work[r][c] < 0:
                work[r] = [-x for x in work[r]]
            p = work[r][c]
            for i in range(r):
                q = work[i][c] // p
                if q:
                    wi, wr = work[i], work[r]
                    for j in range(c, ncols):
                        wi[j] -= q * wr[j]
            r += 1
        if r == m:
            break
    return [row for row in work[:r]]


class Lattice:
    """Sublattice of Z^k stored by a canonical Hermite basis.

    Generators may be given as columns; internally the basis is kept as
    HNF rows so equality of lattices is equality of representations.
    """

    __slots__ = ("ambient", "_rows")

    def __init__(self, ambient, hnf_rows):
        self.ambient = ambient
        self._rows = tuple(tuple(r) for r in hnf_rows)

    @classmethod
    def from_columns(cls, ambient, columns):
        for c in columns:
            if len(c) != ambient:
                raise ValidationError("generator length does not match ambient rank")
            for v in c:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValidationError("lattice generators must be integer vectors")
        return cls(ambient, row_hnf([list(c) for c in columns], ambient))

    @classmethod
    def from_matrix(cls, M: IntMatrix):
        return cls.from_columns(M.rows, M.to_columns())

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [])

    @classmethod
    def full(cls, ambient):
        return cls.from_columns(ambient, [[1 if i == j else 0 for i in range(ambient)] for j in range(ambient)])

    @property
    def rank(self):
        return len(self._rows)

    @property
    def basis_columns(self) -> IntMatrix:
        """Basis vectors as the columns of an ambient x rank matrix."""
        return IntMatrix.from_columns([list(r) for r in self._rows], self.ambient)

    def basis_rows(self):
        return [list(r) for r in self._rows]

    def is_full(self):
        return self.rank == self.ambient and all(
            self._rows[i][self._pivot(i)] == 1 for i in range(self.rank)
        )

    def _pivot(self, i):
        row = self._rows[i]
        for c, v in enumerate(row):
            if v:
                return c
        raise MathInvariantError("zero row in HNF basis")  # pragma: no cover

    def contains(self, vec) -> bool:
        """Exact membership; accepts int or Fraction coordinates."""
        if len(vec) != self.ambient:
            raise ValidationError("vector length does not match ambient rank")
        v = list(vec)
        for x in v:
            if x != int(x):
                return False
        v = [int(x) for x in v]
        for row in self._rows:
            c = next(i for i, x in enumerate(row) if x)
            if v[c]:
                q, rem = divmod(v[c], row[c])
                if rem:
                    return False
                for j in range(c, self.ambient):
                    v[j] -= q * row[j]
        return not any(v)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __hash__(self):
        return hash((self.ambient, self._rows))

    def __repr__(self):
        return f"Lattice(ambient={self.ambient}, basis_rows={[list(r) for r in self._rows]})"


def lattice_sum(lattices) -> Lattice:
    """Smallest lattice containing all the given ones (common ambient rank)."""
    lattices = list(lattices)
    if not lattices:
        raise ValidationError("lattice_sum of an empty family is undefined")
    ambient = lattices[0].ambient
    rows = []
    for L in lattices:
        if L.ambient != ambient:
            raise ValidationError("lattice_sum requires a common ambient rank")
        rows.extend(L.basis_rows())
    return Lattice(ambient, row_hnf(rows, ambient))


def saturate(L: Lattice) -> Lattice:
    """Saturation (L tensor Q) intersected with Z^k; computed by taking the
    integer kernel of the transpose twice (kernels are always saturated)."""
    B = L.basis_columns  # ambient x r
    K = integer_kernel(B.transpose())  # ambient x (ambient - r)
    S = integer_kernel(K.transpose())  # ambient x r, saturated
    return Lattice.from_matrix(S)


def complement(L: Lattice) -> Lattice:
    """A primitive complement: a lattice C with L (+) C = Z^k.

    Requires L primitive (saturated); raises ValidationError otherwise.
    """
    if saturate(L) != L:
        raise ValidationError("complement requires a primitive (saturated) lattice")
    k, r = L.ambient, L.rank
    if r == 0:
        return Lattice.full(k)
    if r == k:
        return Lattice.zero(k)
    diag, Uinv, _V = _smith_with_uinv(L.basis_columns)
    cols = [[Uinv[i][j] for i in range(k)] for j in range(r, k)]
    return Lattice.from_columns(k, cols)


# ---------------------------------------------------------------------------
# abelian group invariants and homology


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Finitely generated abelian group: free rank plus invariant factors
    (each >= 2, each dividing the next)."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValidationError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValidationError("invariant factors must be >= 2")
            if prev is not None and d % prev:
                raise ValidationError("invariant factors must form a divisibility chain")
            prev = d

    @classmethod
    def from_divisors(cls, free_rank, divisors):
        return cls(free_rank, tuple(d for d in divisors if d > 1))

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def factor_list(self):
        return list(self.torsion)


def homology_at(d_out: IntMatrix, d_in: IntMatrix, check: bool = True) -> AbelianGroupInvariants:
    """Homology ker(d_out)/im(d_in) at the middle slot of
    Z^m --d_in--> Z^n --d_out--> Z^p, with d_out o d_in = 0.

    ker(d_out) is a saturated direct summand of Z^n, so the torsion of the
    quotient equals the torsion of Z^n / im(d_in): the invariant factors of
    d_in that exceed 1.  The free rank is n - rank(d_out) - rank(d_in).
    """
    n = d_out.cols
    if d_in.rows != n:
        raise ValidationError(
            f"non-composable dimensions: d_out is {d_out.rows}x{d_out.cols}, "
            f"d_in is {d_in.rows}x{d_in.cols}"
        )
    if check and d_in.cols and d_out.rows:
        if not (d_out @ d_in).is_zero():
            raise ValidationError("composite d_out o d_in is nonzero")
    rank_out = rank(d_out) if d_out.rows else 0
    div_in = snf_diagonal(d_in) if d_in.cols else []
    free = n - rank_out - len(div_in)
    if free < 0:
        raise MathInvariantError("negative free rank; matrices are inconsistent")
    return AbelianGroupInvariants.from_divisors(free, div_in)
