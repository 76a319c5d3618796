"""R-rngs: finite rngs carrying a compatible unital (R,R)-bimodule structure.

Besides validation and annihilators this module holds the Hom_R search
engine.  Targets of a search are duck-typed: anything exposing ``R``, ``n``,
``add``, ``scalar``, ``mul``, ``act_left``, ``act_right`` and ``orders_of``
works, which is how quotients R/Z enter without structure constants.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .core import (
    AlgebraError,
    DimensionMismatch,
    FiniteRing,
    FiniteRng,
    _bilinear,
    additive_order,
    backtrack_basis_images,
    check_cap,
    element_orders,
    rng_from_tables,
)
from .substructure import ElementSet, EmbeddedSubring, canonical, whole


class AxiomViolation(AlgebraError):
    def __init__(self, axiom: str, where: tuple):
        super().__init__(f"{axiom} fails at basis tuple {where}")
        self.axiom = axiom
        self.where = where


class ZeroRng(AlgebraError):
    pass


class NotMinimal(AlgebraError):
    pass


class RRng:
    """An R-rng with structure constants.

    ``lact[a, j]`` holds the coordinates of e_a . f_j and ``ract[j, a]`` those
    of f_j . e_a, for R-basis e and I-basis f.
    """

    def __init__(self, R: FiniteRing, I: FiniteRng, lact, ract, name: str | None = None):
        self.R = R
        self.I = I
        kR, kI = R.k, I.k
        self.lact = np.array(lact, dtype=np.int64).reshape(kR, kI, kI) % (I.carrier.moduli if kI else 1)
        self.ract = np.array(ract, dtype=np.int64).reshape(kI, kR, kI) % (I.carrier.moduli if kI else 1)
        self.name = name

    def __repr__(self):
        return f"<RRng {self.name or ''} |I|={self.I.n} over |R|={self.R.n}>"

    @property
    def n(self) -> int:
        return self.I.n

    def add(self, x: int, y: int) -> int:
        return self.I.add(x, y)

    def neg(self, x: int) -> int:
        return self.I.neg(x)

    def mul(self, x: int, y: int) -> int:
        return self.I.mul(x, y)

    def scalar(self, c: int, x: int) -> int:
        return self.I.scalar(c, x)

    def act_left(self, r: int, x: int) -> int:
        return int(self.lact_table[r, x])

    def act_right(self, x: int, r: int) -> int:
        return int(self.ract_table[x, r])

    @cached_property
    def orders_of(self) -> np.ndarray:
        return element_orders(self.I)

    @cached_property
    def lact_table(self) -> np.ndarray:
        check_cap(self.R.n * self.I.n, "enumeration", "action table")
        if self.I.k == 0:
            return np.zeros((self.R.n, 1), dtype=np.int64)
        A, X = self.R.coords, self.I.coords
        out = _bilinear(A[:, None, :], X[None, :, :], self.lact, self.I.carrier.moduli)
        return self.I.carrier.encode(out)

    @cached_property
    def ract_table(self) -> np.ndarray:
        check_cap(self.R.n * self.I.n, "enumeration", "action table")
        if self.I.k == 0:
            return np.zeros((1, self.R.n), dtype=np.int64)
        A, X = self.R.coords, self.I.coords
        out = _bilinear(X[:, None, :], A[None, :, :], self.ract, self.I.carrier.moduli)
        return self.I.carrier.encode(out)

    @property
    def is_square_zero(self) -> bool:
        return self.I.is_zero_product


def _divides_gcd(c: np.ndarray, moduli, d1: int, d2: int) -> bool:
    from math import gcd
    from .core import _order_of

    return gcd(d1, d2) % _order_of(c, moduli) == 0


def validate_rrng(R: FiniteRing, I: FiniteRng, lact, ract, name: str | None = None) -> RRng:
    """Check every R-rng axiom on basis tuples; raise AxiomViolation naming the first failure."""
    kR, kI = R.k, I.k
    lact = np.array(lact, dtype=np.int64)
    ract = np.array(ract, dtype=np.int64)
    if lact.size != kR * kI * kI or ract.size != kI * kR * kI:
        raise DimensionMismatch(f"action tables must be {kR}x{kI} and {kI}x{kR} rows of length {kI}")
    lact = lact.reshape(kR, kI, kI)
    ract = ract.reshape(kI, kR, kI)
    mods = I.carrier.moduli
    for a, j in itertools.product(range(kR), range(kI)):
        if not _divides_gcd(lact[a, j] % mods, mods, R.orders[a], I.orders[j]):
            raise AxiomViolation("well-defined-left", (a, j))
        if not _divides_gcd(ract[j, a] % mods, mods, I.orders[j], R.orders[a]):
            raise AxiomViolation("well-defined-right", (j, a))
    M = RRng(R, I, lact, ract, name)
    eR, eI = R.basis, I.basis
    L, Rt = M.act_left, M.act_right
    for j, f in enumerate(eI):
        if L(R.unity, f) != f:
            raise AxiomViolation("unital-left", (j,))
        if Rt(f, R.unity) != f:
            raise AxiomViolation("unital-right", (j,))
    for (a, ea), (b, eb), (j, f) in itertools.product(enumerate(eR), enumerate(eR), enumerate(eI)):
        if L(R.mul(ea, eb), f) != L(ea, L(eb, f)):
            raise AxiomViolation("left-module", (a, b, j))
        if Rt(f, R.mul(ea, eb)) != Rt(Rt(f, ea), eb):
            raise AxiomViolation("right-module", (j, a, b))
        if Rt(L(ea, f), eb) != L(ea, Rt(f, eb)):
            raise AxiomViolation("bimodule", (a, j, b))
    for (a, ea), (i, fi), (j, fj) in itertools.product(enumerate(eR), enumerate(eI), enumerate(eI)):
        if L(ea, I.mul(fi, fj)) != I.mul(L(ea, fi), fj):
            raise AxiomViolation("compat-left", (a, i, j))
        if I.mul(fi, L(ea, fj)) != I.mul(Rt(fi, ea), fj):
            raise AxiomViolation("compat-middle", (i, a, j))
        if Rt(I.mul(fi, fj), ea) != I.mul(fi, Rt(fj, ea)):
            raise AxiomViolation("compat-right", (i, j, a))
    return M


# standard R-rngs


def regular_rrng(R: FiniteRing, name: str | None = None) -> RRng:
    """R as an R-rng over itself."""
    return RRng(R, R, R.sc, R.sc, name or f"{R.name}_reg")


def rrng_from_subset(big: FiniteRing, emb: EmbeddedSubring | None, members: ElementSet | None = None,
                     square_zero: bool = False, name: str | None = None) -> tuple[RRng, dict[int, int]]:
    """The R-rng carried by a subset of ``big`` stable under +, product and the R-actions.

    ``emb`` embeds R into ``big`` (None means R = big).  Returns the R-rng and
    the relabelling from ``big`` indices to indices of the new rng.
    """
    R = emb.small if emb is not None else big
    iota = emb.map if emb is not None else np.arange(big.n)
    if members is None or members.is_all():
        I = FiniteRng(big.carrier, np.zeros_like(big.sc) if square_zero else big.sc, name)
        relabel = {x: x for x in range(big.n)}
    else:
        mul = (lambda x, y: 0) if square_zero else big.mul
        I, relabel = rng_from_tables(members.sorted(), big.add, mul, name=name)
    gens = [None] * I.k
    for x, t in relabel.items():
        for j, b in enumerate(I.basis):
            if t == b:
                gens[j] = x
    lact = np.zeros((R.k, I.k, I.k), dtype=np.int64)
    ract = np.zeros((I.k, R.k, I.k), dtype=np.int64)
    for a, ea in enumerate(R.basis):
        r = int(iota[ea])
        for j, g in enumerate(gens):
            lact[a, j] = I.elem(relabel[big.mul(r, g)])
            ract[j, a] = I.elem(relabel[big.mul(g, r)])
    return RRng(R, I, lact, ract, name), relabel


def rrng_over(emb: EmbeddedSubring, name: str | None = None) -> RRng:
    """The big ring of an embedding viewed as an R-rng."""
    M, _ = rrng_from_subset(emb.big, emb, None, name=name)
    return M


class QuotientRRng:
    """L/Z for ideals Z <= L of R, as a table-backed R-rng.

    Cosets are labelled by their least member, in increasing order.  With
    ``within`` omitted this is the quotient ring R/Z.
    """

    def __init__(self, R: FiniteRing, Z: ElementSet, within: ElementSet | None = None):
        self.R = R
        self.Z = Z
        self.L = within if within is not None else whole(R)
        zs = Z.array()
        reps: dict[int, int] = {}
        for r in self.L:
            if r in reps:
                continue
            coset = R.add_many(r, zs)
            rep = int(coset.min())
            for c in coset.tolist():
                reps[c] = rep
        self.reps = sorted(set(reps.values()))
        label = {rep: t for t, rep in enumerate(self.reps)}
        self._label = np.full(R.n, -1, dtype=np.int64)
        for c, rep in reps.items():
            self._label[c] = label[rep]
        rp = np.array(self.reps, dtype=np.int64)
        self.add_table = self._label[R.add_many(rp[:, None], rp[None, :])]
        self.mul_table = self._label[R.mul_many(rp[:, None], rp[None, :])]
        every = np.arange(R.n)
        self.lact_table = self._label[R.mul_many(every[:, None], rp[None, :])]
        self.ract_table = self._label[R.mul_many(rp[:, None], every[None, :])]

    def __repr__(self):
        return f"<QuotientRRng |L/Z|={self.n} over |R|={self.R.n}>"

    @property
    def n(self) -> int:
        return len(self.reps)

    def project(self, r: int) -> int:
        t = int(self._label[r])
        if t < 0:
            raise ValueError(f"{r} is not in the numerator ideal")
        return t

    def add(self, x: int, y: int) -> int:
        return int(self.add_table[x, y])

    def neg(self, x: int) -> int:
        return self.project(self.R.neg(self.reps[x]))

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def scalar(self, c: int, x: int) -> int:
        c %= int(self.orders_of[x])
        acc = 0
        for _ in range(c):
            acc = self.add(acc, x)
        return acc

    def act_left(self, r: int, x: int) -> int:
        return int(self.lact_table[r, x])

    def act_right(self, x: int, r: int) -> int:
        return int(self.ract_table[x, r])

    @cached_property
    def orders_of(self) -> np.ndarray:
        return np.array([additive_order(self.add, x) for x in range(self.n)], dtype=np.int64)

    def as_rrng(self, square_zero: bool = False, name: str | None = None) -> RRng:
        """Re-present as a structure-constant R-rng."""
        mul = (lambda x, y: 0) if square_zero else self.mul
        I, relabel = rng_from_tables(range(self.n), self.add, mul, name=name)
        gens = [next(x for x, t in relabel.items() if t == b) for b in I.basis]
        R = self.R
        lact = np.zeros((R.k, I.k, I.k), dtype=np.int64)
        ract = np.zeros((I.k, R.k, I.k), dtype=np.int64)
        for a, ea in enumerate(R.basis):
            for j, g in enumerate(gens):
                lact[a, j] = I.elem(relabel[self.act_left(ea, g)])
                ract[j, a] = I.elem(relabel[self.act_right(g, ea)])
        return RRng(R, I, lact, ract, name)

    def as_ring(self, name: str | None = None) -> tuple[FiniteRing, dict[int, int]]:
        I, relabel = rng_from_tables(range(self.n), self.add, self.mul, name=name)
        unity = relabel[self.project(self.R.unity)]
        return FiniteRing.from_rng(I, unity, name), relabel


# annihilators and sub-R-rngs


@dataclass(frozen=True)
class AnnihilatorTriple:
    right: ElementSet
    left: ElementSet
    two_sided: ElementSet


def annihilators(M: RRng) -> AnnihilatorTriple:
    zero_right = (M.ract_table == 0).all(axis=0)  # r with I r = 0
    zero_left = (M.lact_table == 0).all(axis=1)  # r with r I = 0
    R = M.R
    right = ElementSet(R, np.flatnonzero(zero_right).tolist(), "ideal")
    left = ElementSet(R, np.flatnonzero(zero_left).tolist(), "ideal")
    both = ElementSet(R, np.flatnonzero(zero_right & zero_left).tolist(), "ideal")
    return AnnihilatorTriple(right, left, both)


def ann(M: RRng) -> ElementSet:
    return annihilators(M).two_sided


def rsub_closure(M: RRng, seed) -> ElementSet:
    """Smallest R-subrng of I containing ``seed``."""
    I = M.I
    n = I.n
    check_cap(n, "closure", "R-subrng closure")
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    mask[np.fromiter((int(s) for s in seed), dtype=np.int64)] = True
    frontier = np.flatnonzero(mask)
    rb = np.array(M.R.basis, dtype=np.int64)
    while frontier.size:
        members = np.flatnonzero(mask)
        found = [
            I.add_many(frontier[:, None], members[None, :]).ravel(),
            I.mul_many(frontier[:, None], members[None, :]).ravel(),
            I.mul_many(members[None, :], frontier[:, None]).ravel(),
            M.lact_table[rb[:, None], frontier[None, :]].ravel(),
            M.ract_table[frontier[:, None], rb[None, :]].ravel(),
        ]
        new = np.unique(np.concatenate(found))
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return ElementSet(I, np.flatnonzero(mask).tolist(), "R-subrng")


def is_minimal_rrng(M: RRng) -> bool:
    if M.n == 1:
        raise ZeroRng("the zero R-rng is not minimal by definition")
    return all(rsub_closure(M, [x]).is_all() for x in range(1, M.n))


def rsubrngs(M: RRng) -> list[ElementSet]:
    """All R-subrngs of I, canonically ordered."""
    start = rsub_closure(M, [])
    found = {start.members: start}
    queue = [start]
    while queue:
        T = queue.pop()
        for s in range(M.n):
            if s in T:
                continue
            U = rsub_closure(M, [*T.members, s])
            if U.members not in found:
                found[U.members] = U
                queue.append(U)
    return canonical(found.values())


def rng_ideals(I: FiniteRng) -> list[ElementSet]:
    """Two-sided ideals of I as a bare rng."""
    from .substructure import enumerate_ideals

    return enumerate_ideals(I)


# homomorphisms


@dataclass(eq=False)
class RHom:
    source: RRng
    target: object
    images: tuple[int, ...]
    table: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def is_zero(self) -> bool:
        return not self.table.any()

    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == len(self.table)

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.table) == self.target.n

    def kernel(self) -> ElementSet:
        return ElementSet(self.source.I, np.flatnonzero(self.table == 0).tolist())

    def image(self) -> list[int]:
        return sorted(set(self.table.tolist()))


def linear_extension(source: FiniteRng, images, target) -> np.ndarray:
    """Additive map on all source elements from basis images."""
    C = source.coords
    out = np.zeros(source.n, dtype=np.int64)
    w = source.carrier.weights
    for x in range(1, source.n):
        # peel the lowest nonzero coordinate: x = x' + e_t
        t = max(i for i in range(source.k) if C[x, i])
        out[x] = target.add(out[x - int(w[t])], images[t])
    return out


def _lin(target, terms, ys):
    acc = 0
    for t, c in terms:
        acc = target.add(acc, target.scalar(c, ys[t]))
    return acc


def _terms(c) -> list[tuple[int, int]]:
    return [(t, int(v)) for t, v in enumerate(c) if v]


def _hom_constraints(source: RRng, target, multiplicative: bool):
    R, I = source.R, source.I
    kI = I.k
    out = []
    for a, ea in enumerate(R.basis):
        for j in range(kI):
            terms = _terms(source.lact[a, j])
            need = max([j] + [t for t, _ in terms])
            out.append((need, lambda ys, terms=terms, ea=ea, j=j: _lin(target, terms, ys) == target.act_left(ea, ys[j])))
            terms = _terms(source.ract[j, a])
            need = max([j] + [t for t, _ in terms])
            out.append((need, lambda ys, terms=terms, ea=ea, j=j: _lin(target, terms, ys) == target.act_right(ys[j], ea)))
    if multiplicative:
        for i in range(kI):
            for j in range(kI):
                terms = _terms(I.sc[i, j])
                need = max([i, j] + [t for t, _ in terms])
                out.append((need, lambda ys, terms=terms, i=i, j=j: _lin(target, terms, ys) == target.mul(ys[i], ys[j])))
    return out


def iter_rhoms(source: RRng, target, multiplicative: bool = True) -> Iterator[RHom]:
    """R-homomorphisms source -> target in canonical search order.

    With ``multiplicative=False`` these are the (R,R)-bimodule maps.
    """
    if source.R.n != target.R.n:
        raise DimensionMismatch("source and target are over different rings")
    check_cap(target.n, "closure", "Hom search target")
    orders = target.orders_of
    cands = [[y for y in range(target.n) if d % int(orders[y]) == 0] for d in source.I.orders]
    for images in backtrack_basis_images(cands, _hom_constraints(source, target, multiplicative)):
        yield RHom(source, target, images, linear_extension(source.I, images, target))


def enumerate_rhoms(source: RRng, target, multiplicative: bool = True) -> list[RHom]:
    return list(iter_rhoms(source, target, multiplicative))


def has_nonzero_rhom(source: RRng, target, multiplicative: bool = True) -> bool:
    return any(not h.is_zero() for h in iter_rhoms(source, target, multiplicative))


def r_isomorphic(I: RRng, J, multiplicative: bool = True) -> tuple[bool, RHom | None]:
    """Whether an R-isomorphism I -> J exists, with the first one found as witness."""
    if I.n != J.n:
        return False, None
    for h in iter_rhoms(I, J, multiplicative):
        if h.is_bijective():
            return True, h
    return False, None


def bimodule_isomorphic(I: RRng, J) -> tuple[bool, RHom | None]:
    return r_isomorphic(I, J, multiplicative=False)


def is_rhom(source: RRng, target, table, multiplicative: bool = True) -> bool:
    """Full-scan check of a map given on every source element."""
    I, R = source.I, source.R
    phi = np.asarray(table)
    if phi[0] != 0:
        return False
    for x in range(I.n):
        for y in I.basis:
            if phi[I.add(x, y)] != target.add(int(phi[x]), int(phi[y])):
                return False
    for x in range(I.n):
        for r in R.basis:
            if phi[source.act_left(r, x)] != target.act_left(r, int(phi[x])):
                return False
            if phi[source.act_right(x, r)] != target.act_right(int(phi[x]), r):
                return False
    if multiplicative:
        for x in range(I.n):
            for y in range(I.n):
                if phi[I.mul(x, y)] != target.mul(int(phi[x]), int(phi[y])):
                    return False
    return True


def brute_force_rhoms(source: RRng, target, multiplicative: bool = True) -> list[tuple[int, ...]]:
    """Every function I -> J obeying the axioms, by element-wise exhaustive search.

    A partial function is dropped as soon as some axiom instance whose
    elements are all assigned fails; nothing about bases is used.
    """
    I, R = source.I, source.R
    n, m = I.n, target.n
    checks: list[list[tuple]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            s = I.add(x, y)
            checks[max(x, y, s)].append(("add", x, y, s))
            if multiplicative:
                p = I.mul(x, y)
                checks[max(x, y, p)].append(("mul", x, y, p))
    for r in range(R.n):
        for x in range(n):
            w = source.act_left(r, x)
            checks[max(x, w)].append(("left", r, x, w))
            w = source.act_right(x, r)
            checks[max(x, w)].append(("right", r, x, w))
    phi = [0] * n
    out = []

    def holds(c) -> bool:
        kind, u, v, w = c
        if kind == "add":
            return phi[w] == target.add(phi[u], phi[v])
        if kind == "mul":
            return phi[w] == target.mul(phi[u], phi[v])
        if kind == "left":
            return phi[w] == target.act_left(u, phi[v])
        return phi[w] == target.act_right(phi[v], u)

    def rec(x: int):
        if x == n:
            out.append(tuple(phi))
            return
        for y in range(m):
            phi[x] = y
            if all(holds(c) for c in checks[x]):
                rec(x + 1)

    rec(0)
    return out


# the three types


def hom_to_quotient(M: RRng, Z: ElementSet | None = None, multiplicative: bool = True) -> list[RHom]:
    Z = Z if Z is not None else ann(M)
    return enumerate_rhoms(M, QuotientRRng(M.R, Z), multiplicative)


def rrng_type(M: RRng) -> str:
    """'T1' (I^2 = 0), 'T3' (Hom_R(I, R/ann_R(I)) != 0) or 'T2' (otherwise)."""
    if not is_minimal_rrng(M):
        raise NotMinimal(f"{M!r} is not a minimal R-rng")
    if M.is_square_zero:
        return "T1"
    if has_nonzero_rhom(M, QuotientRRng(M.R, ann(M))):
        return "T3"
    return "T2"
