"""Extensions of a finite group by a torus, modelled exactly.

An extension is split data: a rank k, a finite group F, and an action
rho: F -> GL_k(Z).  Elements are pairs (t, f) with t a rational point of
(Q/Z)^k, multiplying by (t, f) * (t', f') = (t + rho(f) t', f f').
Non-split groups are supported as quotients of a split extension by a
finite central subgroup Z given by generators; elements then live in
canonical coset representatives (lexicographically least (t, f) in the
Z-orbit, torus part compared first).

On fundamental groups, commutation against a lift of q induces the integer
matrix I - rho(q^-1) (psi_star); summing its images over all q and
saturating yields the lattice of the subtorus generated by commutators.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm

from .errors import DEFAULT_BUDGET, ValidationError, check_budget
from .groups import FiniteGroup
from .intlinalg import (
    IntMatrix,
    Lattice,
    complement,
    determinant,
    lattice_sum,
    saturate,
)


def _frac(x) -> Fraction:
    f = Fraction(x)
    return f


def _mod1(vec) -> tuple:
    return tuple(Fraction(x) % 1 for x in vec)


class ExtElement:
    """An element of a TorusExtension: canonical representative (t, f)."""

    __slots__ = ("parent", "t", "f")

    def __init__(self, parent, t, f):
        self.parent = parent
        self.t = t
        self.f = f

    def __mul__(self, other):
        return self.parent.mul(self, other)

    def inv(self):
        return self.parent.inv(self)

    def commutator(self, other):
        return self.parent.commutator(self, other)

    def is_identity(self):
        return self.f == 0 and all(x == 0 for x in self.t)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        if self.parent is not other.parent:
            return False
        return self.t == other.t and self.f == other.f

    def __hash__(self):
        return hash((id(self.parent), self.t, self.f))

    def __repr__(self):
        ts = ",".join(str(x) for x in self.t)
        fname = self.parent.F.names[self.f]
        return f"(({ts}), {fname})"


class TorusExtension:
    """Split-or-central-quotient model of a torus-by-finite-group extension."""

    __slots__ = ("rank", "F", "rho", "z_generators", "z_elements", "label")

    def __init__(self, rank: int, F: FiniteGroup, rho, central_quotient=(), label=None):
        if rank < 0:
            raise ValidationError("rank must be nonnegative")
        self.rank = rank
        self.F = F
        self.label = label
        rho = list(rho)
        if len(rho) != F.order:
            raise ValidationError("rho must give one matrix per finite-part element")
        for M in rho:
            if not isinstance(M, IntMatrix) or M.rows != rank or M.cols != rank:
                raise ValidationError("action matrices must be rank x rank IntMatrix")
        ident = IntMatrix.identity(rank)
        if rho[0] != ident:
            raise ValidationError("action at the identity must be the identity matrix")
        for f in range(F.order):
            if determinant(rho[f]) not in (1, -1):
                raise ValidationError(
                    f"action of {F.names[f]} is not invertible over the integers"
                )
            for g in range(F.order):
                if rho[f] @ rho[g] != rho[F.mul(f, g)]:
                    raise ValidationError(
                        f"action is not a homomorphism at ({F.names[f]},{F.names[g]})"
                    )
        self.rho = tuple(rho)

        gens = []
        for t, f in central_quotient:
            t = _mod1(t)
            if len(t) != rank:
                raise ValidationError("central generator torus part has wrong length")
            f = int(f)
            if not 0 <= f < F.order:
                raise ValidationError("central generator finite part out of range")
            if any(F.mul(f, g) != F.mul(g, f) for g in range(F.order)):
                raise ValidationError(
                    f"central generator finite part {F.names[f]} is not central in F"
                )
            if self.rho[f] != ident:
                raise ValidationError(
                    f"central generator finite part {F.names[f]} must act trivially"
                )
            for g in range(F.order):
                moved = _mod1(self.rho[g].times_vector(t))
                if moved != t:
                    raise ValidationError(
                        "central generator torus part is not fixed by the action"
                    )
            gens.append((t, f))
        self.z_generators = tuple(gens)
        self.z_elements = self._close_central(gens)

    def _close_central(self, gens):
        zero = tuple(Fraction(0) for _ in range(self.rank))
        elements = {(zero, 0)}
        frontier = [(zero, 0)]
        while frontier:
            nxt = []
            for t, f in frontier:
                for tg, fg in gens:
                    # generators act trivially, so the raw product is t + tg
                    prod = (_mod1(a + b for a, b in zip(t, tg)), self.F.mul(f, fg))
                    if prod not in elements:
                        elements.add(prod)
                        nxt.append(prod)
            frontier = nxt
        return tuple(sorted(elements))

    @property
    def is_split(self):
        return len(self.z_elements) == 1

    def _canonical(self, t, f):
        if self.is_split:
            return t, f
        best = None
        for tz, fz in self.z_elements:
            cand = (
                _mod1(a + b for a, b in zip(t, self.rho[f].times_vector(tz))),
                self.F.mul(f, fz),
            )
            if best is None or cand < best:
                best = cand
        return best

    def element(self, t, f=0) -> ExtElement:
        t = _mod1(_frac(x) for x in t)
        if len(t) != self.rank:
            raise ValidationError(f"torus part must have length {self.rank}")
        f = int(f)
        if not 0 <= f < self.F.order:
            raise ValidationError("finite part out of range")
        t, f = self._canonical(t, f)
        return ExtElement(self, t, f)

    def identity(self) -> ExtElement:
        return self.element([0] * self.rank, 0)

    def torus_element(self, t) -> ExtElement:
        return self.element(t, 0)

    def lift_element(self, f) -> ExtElement:
        """The canonical lift (0, f) of a finite-part element."""
        return self.element([0] * self.rank, f)

    def _check_parent(self, x: ExtElement):
        if x.parent is not self:
            raise ValidationError("element belongs to a different extension")

    def mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        self._check_parent(x)
        self._check_parent(y)
        moved = self.rho[x.f].times_vector(y.t)
        t = _mod1(a + b for a, b in zip(x.t, moved))
        t, f = self._canonical(t, self.F.mul(x.f, y.f))
        return ExtElement(self, t, f)

    def inv(self, x: ExtElement) -> ExtElement:
        self._check_parent(x)
        finv = self.F.inv(x.f)
        moved = self.rho[finv].times_vector(x.t)
        t = _mod1(-a for a in moved)
        t, f = self._canonical(t, finv)
        return ExtElement(self, t, f)

    def commutator(self, x: ExtElement, y: ExtElement) -> ExtElement:
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def elements_of_denominator(self, M: int, budget: int = DEFAULT_BUDGET) -> list:
        """All group elements whose torus lift has coordinates with
        denominator dividing M, sorted canonically."""
        if M < 1:
            raise ValidationError("denominator must be >= 1")
        check_budget(M**self.rank * self.F.order, budget, "element pool")
        coords = [Fraction(a, M) for a in range(M)]
        out = set()
        for t in product(coords, repeat=self.rank):
            for f in range(self.F.order):
                out.add(self._canonical(t, f))
        return [ExtElement(self, t, f) for t, f in sorted(out)]

    def __repr__(self):
        tag = self.label or f"rank {self.rank} over {self.F!r}"
        return f"TorusExtension({tag})"


def rho_from_generators(F: FiniteGroup, images: dict, rank: int) -> list:
    """Extend matrices on generators to the whole finite group by products.

    images maps element indices to IntMatrix values; the indexed elements
    must generate F.  Conflicting extensions raise."""
    rho = {0: IntMatrix.identity(rank)}
    for g, M in images.items():
        if g == 0:
            if M != rho[0]:
                raise ValidationError("identity must map to the identity matrix")
            continue
        rho[g] = M
    frontier = list(rho)
    gens = [g for g in images if g != 0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = F.mul(x, g)
                M = rho[x] @ rho[g]
                if y in rho:
                    if rho[y] != M:
                        raise ValidationError(
                            f"generator images are inconsistent at {F.names[y]}"
                        )
                else:
                    rho[y] = M
                    nxt.append(y)
        frontier = nxt
    if len(rho) != F.order:
        raise ValidationError("generator images do not generate the finite part")
    return [rho[f] for f in range(F.order)]


def torus_pi1_lattice(E: TorusExtension):
    """Fundamental-group lattice of the identity component's torus.

    Returns (D, L) with L an integer lattice in Z^rank: the honest lattice
    is (1/D) L.  For split extensions (and whenever the central quotient
    meets the torus trivially) D = 1 and L = Z^rank; otherwise loops may
    close through central torus elements and pick up denominators."""
    if E.rank == 0:
        return 1, Lattice.full(0)
    torus_parts = [t for t, f in E.z_elements if f == 0]
    D = 1
    for t in torus_parts:
        for x in t:
            D = lcm(D, x.denominator)
    gens = [[D if i == j else 0 for j in range(E.rank)] for i in range(E.rank)]
    gens.extend([int(x * D) for x in t] for t in torus_parts)
    return D, Lattice.from_columns(E.rank, gens)


def psi_star(E: TorusExtension, q: int) -> IntMatrix:
    """The lattice map of commutation against the lift of q: the matrix L
    with [q-lift, torus point t] = torus point L t.  Equals I - rho(q^-1)
    under this module's product convention."""
    if not 0 <= q < E.F.order:
        raise ValidationError("finite part out of range")
    return IntMatrix.identity(E.rank) - E.rho[E.F.inv(q)]


def commutator_lattices(E: TorusExtension):
    """(sum, subtorus): the sum of the images of psi_star over all finite
    parts, and its saturation - the fundamental-group lattice of the
    subtorus generated by commutators."""
    images = [
        Lattice.from_matrix(psi_star(E, q)) for q in range(E.F.order)
    ]
    total = lattice_sum(images)
    return total, saturate(total)


def pi1_split(E: TorusExtension):
    """Primitive commutator-subtorus lattice and a primitive complement,
    together spanning the whole ambient lattice."""
    _, sub = commutator_lattices(E)
    return sub, complement(sub)


class CoverReport:
    """Outcome of a single-commutator coverage search.

    covered is True when every target was written as one commutator.  A
    False result only means no witness exists at this search denominator;
    it is not a refutation."""

    __slots__ = ("covered", "denominator", "search_denominator", "targets", "witnesses", "missing")

    def __init__(self, covered, denominator, search_denominator, targets, witnesses, missing):
        self.covered = covered
        self.denominator = denominator
        self.search_denominator = search_denominator
        self.targets = targets
        self.witnesses = witnesses
        self.missing = missing

    def __repr__(self):
        status = "covered" if self.covered else f"{len(self.missing)} missing"
        return (
            f"CoverReport({status}, {len(self.targets)} targets, "
            f"denominator {self.denominator}, search {self.search_denominator})"
        )


def single_commutator_cover(
    E: TorusExtension,
    N: int,
    search_denominator: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> CoverReport:
    """Try to write every denominator-N point of the commutator subtorus as
    a single commutator [x, y].

    x and y range over all elements whose torus parts have denominator
    dividing the search denominator (default N * |F|).  Returns the witness
    table; missing targets are reported, never silently dropped."""
    if N < 1:
        raise ValidationError("denominator must be >= 1")
    M = N * E.F.order if search_denominator is None else int(search_denominator)
    if M < 1:
        raise ValidationError("search denominator must be >= 1")
    _, sub = commutator_lattices(E)
    r = sub.rank
    check_budget(N**r, budget, "cover targets")
    basis = sub.basis_rows()
    targets = []
    seen = set()
    for c in product(range(N), repeat=r):
        vec = [Fraction(0)] * E.rank
        for ci, row in zip(c, basis):
            for j, bj in enumerate(row):
                vec[j] += Fraction(ci, N) * bj
        el = E.torus_element(vec)
        if el not in seen:
            seen.add(el)
            targets.append(el)
    targets.sort(key=lambda e: (e.t, e.f))

    pool = E.elements_of_denominator(M, budget=budget)
    check_budget(len(pool) * len(pool), budget, "commutator pairs")
    wanted = set(targets)
    witnesses = {}
    for x in pool:
        for y in pool:
            c = E.commutator(x, y)
            if c in wanted and c not in witnesses:
                witnesses[c] = (x, y)
        if len(witnesses) == len(targets):
            break
    missing = [t for t in targets if t not in witnesses]
    ordered = [(t, witnesses[t][0], witnesses[t][1]) for t in targets if t in witnesses]
    return CoverReport(not missing, N, M, targets, ordered, missing)


# ---------------------------------------------------------------------------
# pinned extension corpus


def _catalog_builders():
    from .catalog import catalog_group, cyclic

    def m(rows):
        return IntMatrix.from_rows(rows)

    def o2():
        return TorusExtension(1, cyclic(2), [m([[1]]), m([[-1]])], label="o2")

    def su2_normalizer():
        z4 = cyclic(4)
        rho = [m([[1]]), m([[-1]]), m([[1]]), m([[-1]])]
        return TorusExtension(
            1, z4, rho, central_quotient=[((Fraction(1, 2),), 2)], label="su2_normalizer"
        )

    def o2_half():
        return TorusExtension(
            1,
            cyclic(2),
            [m([[1]]), m([[-1]])],
            central_quotient=[((Fraction(1, 2),), 0)],
            label="o2_half",
        )

    def trivial_z3():
        ident = IntMatrix.identity(2)
        return TorusExtension(2, cyclic(3), [ident] * 3, label="trivial_z3")

    def swap2():
        return TorusExtension(
            2,
            cyclic(2),
            [IntMatrix.identity(2), m([[0, 1], [1, 0]])],
            label="swap2",
        )

    def reflect2():
        return TorusExtension(
            2,
            cyclic(2),
            [IntMatrix.identity(2), m([[-1, 0], [0, 1]])],
            label="reflect2",
        )

    def rot4():
        F = cyclic(4)
        rho = rho_from_generators(F, {1: m([[0, -1], [1, 0]])}, 2)
        return TorusExtension(2, F, rho, label="rot4")

    def rot3():
        F = cyclic(3)
        rho = rho_from_generators(F, {1: m([[0, -1], [1, -1]])}, 2)
        return TorusExtension(2, F, rho, label="rot3")

    def rot6():
        F = cyclic(6)
        rho = rho_from_generators(F, {1: m([[0, -1], [1, 1]])}, 2)
        return TorusExtension(2, F, rho, label="rot6")

    def perm_s3():
        F = catalog_group("S3")
        swap01 = F.names.index("(0 1)")
        cyc = F.names.index("(0 1 2)")
        rho = rho_from_generators(
            F,
            {
                swap01: m([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
                cyc: m([[0, 0, 1], [1, 0, 0], [0, 1, 0]]),
            },
            3,
        )
        return TorusExtension(3, F, rho, label="perm_s3")

    def antipodal3():
        neg = m([[-1, 0, 0], [0, -1, 0], [0, 0, -1]])
        return TorusExtension(3, cyclic(2), [IntMatrix.identity(3), neg], label="antipodal3")

    def d8_square():
        F = catalog_group("D8")
        r = F.names.index("r")
        s = F.names.index("s")
        rho = rho_from_generators(
            F, {r: m([[0, -1], [1, 0]]), s: m([[1, 0], [0, -1]])}, 2
        )
        return TorusExtension(2, F, rho, label="d8_square")

    def q8_sign():
        F = catalog_group("Q8")
        i = F.names.index("i")
        j = F.names.index("j")
        rho = rho_from_generators(F, {i: m([[-1]]), j: m([[-1]])}, 1)
        return TorusExtension(1, F, rho, label="q8_sign")

    return {
        "o2": o2,
        "su2_normalizer": su2_normalizer,
        "o2_half": o2_half,
        "trivial_z3": trivial_z3,
        "swap2": swap2,
        "reflect2": reflect2,
        "rot4": rot4,
        "rot3": rot3,
        "rot6": rot6,
        "perm_s3": perm_s3,
        "antipodal3": antipodal3,
        "d8_square": d8_square,
        "q8_sign": q8_sign,
    }


_ext_cache: dict = {}


def extension_names() -> tuple:
    return tuple(_catalog_builders())


def catalog_extension(name: str) -> TorusExtension:
    builders = _catalog_builders()
    if name not in builders:
        raise ValidationError(f"unknown catalog extension {name!r}")
    if name not in _ext_cache:
        _ext_cache[name] = builders[name]()
    return _ext_cache[name]


def catalog_extensions():
    """Yield (name, extension) over the pinned corpus."""
    for name in extension_names():
        yield name, catalog_extension(name)
