"""Truncated simplicial sets built from commuting tuples in a finite group,
their normalized chain complexes, and integral homology.

Two models are provided.  build_c stacks the pairwise-commuting k-tuples
with bar-style faces (multiply adjacent entries, drop at the ends); its
realization is the commutativity classifying space of the group.  build_e
stacks the (k+1)-tuples whose successive quotients commute pairwise, with
homogeneous faces (drop an entry); it models the total space whose homology
vanishes exactly for abelian groups.  The projection p_map sends the second
model to the first, and commutator_map records successive commutators.
"""

from __future__ import annotations

from .errors import (
    DEFAULT_BUDGET,
    MathInvariantError,
    TruncationError,
    ValidationError,
    check_budget,
)
from .groups import FiniteGroup, commuting_tuples
from .intlinalg import AbelianGroupInvariants, IntMatrix, homology_at


class SimplicialTruncation:
    """A simplicial set stored up to a degree bound.

    levels[k] lists the k-simplices (arbitrary hashable objects, here
    tuples of group-element indices).  Face and degeneracy maps are stored
    as index tables; levels must be closed under both (faces up to the
    bound, degeneracies below it).
    """

    __slots__ = (
        "max_degree",
        "levels",
        "index",
        "face_index",
        "degen_index",
        "degenerate",
        "label",
        "_nondegen",
    )

    def __init__(self, levels, face, degeneracy, label=None):
        levels = [list(level) for level in levels]
        if not levels:
            raise ValidationError("need at least level 0")
        self.max_degree = len(levels) - 1
        self.levels = levels
        self.label = label
        self.index = []
        for k, level in enumerate(levels):
            idx = {sx: i for i, sx in enumerate(level)}
            if len(idx) != len(level):
                raise ValidationError(f"duplicate simplices at level {k}")
            self.index.append(idx)

        self.face_index = [None]
        for k in range(1, self.max_degree + 1):
            below = self.index[k - 1]
            tables = []
            for i in range(k + 1):
                row = []
                for sx in levels[k]:
                    fx = face(k, sx, i)
                    if fx not in below:
                        raise MathInvariantError(
                            f"face d_{i} leaves the stored levels at degree {k}: {sx!r}"
                        )
                    row.append(below[fx])
                tables.append(row)
            self.face_index.append(tables)

        self.degen_index = []
        self.degenerate = [[False] * len(level) for level in levels]
        for k in range(self.max_degree):
            above = self.index[k + 1]
            tables = []
            for i in range(k + 1):
                row = []
                for sx in levels[k]:
                    dx = degeneracy(k, sx, i)
                    if dx not in above:
                        raise MathInvariantError(
                            f"degeneracy s_{i} leaves the stored levels at degree {k}: {sx!r}"
                        )
                    j = above[dx]
                    row.append(j)
                    self.degenerate[k + 1][j] = True
                tables.append(row)
            self.degen_index.append(tables)
        self.degen_index.append(None)
        self._nondegen = [
            [i for i, d in enumerate(flags) if not d] for flags in self.degenerate
        ]

    def level_size(self, k):
        return len(self.levels[k])

    def nondegenerate(self, k):
        """Indices of the nondegenerate k-simplices."""
        return self._nondegen[k]

    def face(self, k, idx, i):
        return self.face_index[k][i][idx]

    def degeneracy(self, k, idx, i):
        return self.degen_index[k][i][idx]

    def verify_identities(self):
        """Exhaustively check the simplicial identities on all stored levels.

        Raises MathInvariantError at the first failure; returns the number
        of identities checked.
        """
        checked = 0
        N = self.max_degree
        for k in range(2, N + 1):
            for idx in range(len(self.levels[k])):
                for j in range(1, k + 1):
                    dj = self.face(k, idx, j)
                    for i in range(j):
                        if self.face(k - 1, dj, i) != self.face(
                            k - 1, self.face(k, idx, i), j - 1
                        ):
                            raise MathInvariantError(
                                f"d_{i} d_{j} != d_{j - 1} d_{i} at level {k}, simplex {idx}"
                            )
                        checked += 1
        for k in range(N - 1):
            for idx in range(len(self.levels[k])):
                for j in range(k + 1):
                    sj = self.degeneracy(k, idx, j)
                    for i in range(j + 1):
                        if self.degeneracy(k + 1, sj, i) != self.degeneracy(
                            k + 1, self.degeneracy(k, idx, i), j + 1
                        ):
                            raise MathInvariantError(
                                f"s_{i} s_{j} != s_{j + 1} s_{i} at level {k}, simplex {idx}"
                            )
                        checked += 1
        for k in range(N):
            for idx in range(len(self.levels[k])):
                for j in range(k + 1):
                    sj = self.degeneracy(k, idx, j)
                    for i in range(k + 2):
                        got = self.face(k + 1, sj, i)
                        if i == j or i == j + 1:
                            want = idx
                        elif i < j:
                            want = self.degeneracy(k - 1, self.face(k, idx, i), j - 1)
                        else:
                            want = self.degeneracy(k - 1, self.face(k, idx, i - 1), j)
                        if got != want:
                            raise MathInvariantError(
                                f"d_{i} s_{j} identity fails at level {k}, simplex {idx}"
                            )
                        checked += 1
        return checked

    def boundary_matrix(self, k, normalized=True):
        """The degree-k boundary Σ(-1)^i d_i as an IntMatrix.

        Columns index k-simplices, rows index (k-1)-simplices.  With
        normalized=True both sides use only nondegenerate simplices and
        degenerate faces are dropped (the normalized chain complex).
        """
        if not 1 <= k <= self.max_degree:
            raise TruncationError(f"no boundary at degree {k} in a depth-{self.max_degree} truncation")
        if normalized:
            row_basis = self._nondegen[k - 1]
            col_basis = self._nondegen[k]
            row_pos = {idx: r for r, idx in enumerate(row_basis)}
            deg_flags = self.degenerate[k - 1]
            cols = []
            for idx in col_basis:
                col = {}
                sign = 1
                for i in range(k + 1):
                    f = self.face_index[k][i][idx]
                    if not deg_flags[f]:
                        r = row_pos[f]
                        col[r] = col.get(r, 0) + sign
                    sign = -sign
                cols.append(col)
            return IntMatrix.from_column_dicts(cols, len(row_basis))
        cols = []
        nrows = len(self.levels[k - 1])
        for idx in range(len(self.levels[k])):
            col = {}
            sign = 1
            for i in range(k + 1):
                f = self.face_index[k][i][idx]
                col[f] = col.get(f, 0) + sign
                sign = -sign
            cols.append(col)
        return IntMatrix.from_column_dicts(cols, nrows)

    def chain_rank(self, k, normalized=True):
        return len(self._nondegen[k]) if normalized else len(self.levels[k])

    def homology(self, k, reduced=False, normalized=True):
        return homology(self, k, reduced=reduced, normalized=normalized)

    def __repr__(self):
        tag = f"{self.label}, " if self.label else ""
        sizes = "/".join(str(len(level)) for level in self.levels)
        return f"SimplicialTruncation({tag}levels {sizes})"


def homology(S: SimplicialTruncation, k: int, reduced=False, normalized=True) -> AbelianGroupInvariants:
    """Integral homology H_k (or reduced homology) of the chain complex of S.

    Needs the boundary out of degree k+1, so the truncation must extend at
    least one level beyond k.
    """
    if k < 0:
        raise ValidationError("homology degree must be nonnegative")
    if k + 1 > S.max_degree:
        raise TruncationError(
            f"H_{k} needs levels through {k + 1}; truncation stops at {S.max_degree}"
        )
    d_in = S.boundary_matrix(k + 1, normalized=normalized)
    if k == 0:
        n0 = S.chain_rank(0, normalized=normalized)
        if reduced:
            d_out = IntMatrix.from_rows([[1] * n0]) if n0 else IntMatrix.zero(1, 0)
        else:
            d_out = IntMatrix.zero(0, n0)
    else:
        d_out = S.boundary_matrix(k, normalized=normalized)
    return homology_at(d_out, d_in)


def reduced_homology_range(S: SimplicialTruncation, top: int, normalized=True) -> list:
    """Reduced homology in degrees 0..top as a list."""
    return [homology(S, k, reduced=True, normalized=normalized) for k in range(top + 1)]


# ---------------------------------------------------------------------------
# the two models


def build_c(G: FiniteGroup, N: int, budget: int = DEFAULT_BUDGET) -> SimplicialTruncation:
    """Truncation of the commuting-tuple nerve: level k lists the pairwise
    commuting k-tuples, faces multiply adjacent entries (dropping at the
    ends), degeneracies insert the identity."""
    if N < 0:
        raise ValidationError("degree bound must be nonnegative")
    levels = [commuting_tuples(G, k, budget=budget) for k in range(N + 1)]

    def face(k, t, i):
        if i == 0:
            return t[1:]
        if i == k:
            return t[:-1]
        return t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1 :]

    def degeneracy(k, t, i):
        return t[:i] + (0,) + t[i:]

    label = f"commuting-nerve({G.label or G.order}, N={N})"
    return SimplicialTruncation(levels, face, degeneracy, label=label)


def successive_quotients(G: FiniteGroup, e) -> tuple:
    """(g0,...,gk) -> (g0^-1 g1, ..., g_{k-1}^-1 gk)."""
    return tuple(G.mul(G.inv(e[i]), e[i + 1]) for i in range(len(e) - 1))


def is_successively_commuting(G: FiniteGroup, e) -> bool:
    """True when the successive quotients of e commute pairwise, i.e. when
    they generate an abelian subgroup."""
    q = successive_quotients(G, e)
    return all(G.commute(a, b) for i, a in enumerate(q) for b in q[i + 1 :])


def build_e(G: FiniteGroup, N: int, budget: int = DEFAULT_BUDGET) -> SimplicialTruncation:
    """Truncation of the homogeneous model: level k lists the (k+1)-tuples
    whose successive quotients commute pairwise, faces drop an entry,
    degeneracies repeat one."""
    if N < 0:
        raise ValidationError("degree bound must be nonnegative")
    check_budget(G.order ** (N + 1), budget, f"tuples of length {N + 1}")
    levels = []
    for k in range(N + 1):
        level = []
        for t in commuting_tuples(G, k, budget=budget):
            for g0 in range(G.order):
                e = [g0]
                for x in t:
                    e.append(G.mul(e[-1], x))
                level.append(tuple(e))
        level.sort()
        levels.append(level)

    def face(k, e, i):
        return e[:i] + e[i + 1 :]

    def degeneracy(k, e, i):
        return e[: i + 1] + e[i:]

    label = f"homogeneous-model({G.label or G.order}, N={N})"
    return SimplicialTruncation(levels, face, degeneracy, label=label)


def p_map(G: FiniteGroup, e) -> tuple:
    """Project a simplex of the homogeneous model to its commuting tuple of
    successive quotients."""
    if not is_successively_commuting(G, e):
        raise ValidationError("successive quotients do not commute pairwise")
    return successive_quotients(G, e)


def commutator_map(G: FiniteGroup, e) -> tuple:
    """(g0,...,gk) -> ([g0,g1],...,[g_{k-1},gk]), the successive commutators.

    Defined on the homogeneous model; lands in the nerve of the commutator
    subgroup (no commutation condition on the output)."""
    if not is_successively_commuting(G, e):
        raise ValidationError("successive quotients do not commute pairwise")
    return tuple(G.commutator(e[i], e[i + 1]) for i in range(len(e) - 1))
