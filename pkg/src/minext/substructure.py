"""Subrngs, ideals, radicals, centralizers and embeddings inside a finite rng."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .core import AlgebraError, FiniteRing, FiniteRng, backtrack_basis_images, check_cap, element_orders

MODES = ("additive", "subrng", "ideal", "left-ideal", "right-ideal")


class NotAnEmbedding(AlgebraError):
    pass


class ElementSet:
    """A subset of a finite rng's elements, ordered by (cardinality, sorted members)."""

    __slots__ = ("ambient", "members", "kind", "_sorted")

    def __init__(self, ambient: FiniteRng, members: Iterable[int], kind: str | None = None):
        self.ambient = ambient
        self.members = frozenset(int(m) for m in members)
        self.kind = kind
        self._sorted = None

    def __repr__(self):
        shown = self.sorted()[:8]
        more = "..." if len(self) > 8 else ""
        return f"ElementSet({self.kind or 'set'}, |{len(self)}|, {shown}{more})"

    def sorted(self) -> list[int]:
        if self._sorted is None:
            self._sorted = sorted(self.members)
        return self._sorted

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.members), tuple(self.sorted()))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, x):
        return int(x) in self.members

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self.members == other.members and self.ambient is other.ambient
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other: "ElementSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "ElementSet") -> bool:
        return self.members < other.members

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ambient, self.members & other.members)

    def is_zero(self) -> bool:
        return self.members == {0}

    def is_all(self) -> bool:
        return len(self.members) == self.ambient.n

    def mask(self) -> np.ndarray:
        m = np.zeros(self.ambient.n, dtype=bool)
        m[self.sorted()] = True
        return m

    def array(self) -> np.ndarray:
        return np.array(self.sorted(), dtype=np.int64)


def canonical(sets: Iterable[ElementSet]) -> list[ElementSet]:
    return sorted(sets, key=lambda s: s.key)


def whole(S: FiniteRng, kind: str | None = None) -> ElementSet:
    return ElementSet(S, range(S.n), kind)


def zero_set(S: FiniteRng, kind: str | None = None) -> ElementSet:
    return ElementSet(S, [0], kind)


def _chunks(frontier: np.ndarray, width: int) -> Iterator[np.ndarray]:
    step = max(1, 2_000_000 // max(1, width))
    for s in range(0, len(frontier), step):
        yield frontier[s:s + step]


def close(ambient: FiniteRng, seed: Iterable[int] | ElementSet, mode: str = "subrng") -> ElementSet:
    """Smallest set containing ``seed`` (and 0) closed under the operations of ``mode``."""
    if mode not in MODES:
        raise ValueError(f"unknown closure mode {mode!r}")
    n = ambient.n
    check_cap(n, "closure", f"{mode} closure")
    mask = np.zeros(n, dtype=bool)
    mask[0] = True
    seed = np.fromiter((int(s) for s in seed), dtype=np.int64)
    mask[seed] = True
    frontier = np.flatnonzero(mask)
    everything = np.arange(n)
    left = mode in ("ideal", "left-ideal")
    right = mode in ("ideal", "right-ideal")
    while frontier.size:
        members = np.flatnonzero(mask)
        found = []
        for F in _chunks(frontier, max(len(members), n if (left or right) else 1)):
            found.append(ambient.add_many(F[:, None], members[None, :]).ravel())
            if mode == "subrng":
                found.append(ambient.mul_many(F[:, None], members[None, :]).ravel())
                found.append(ambient.mul_many(members[None, :], F[:, None]).ravel())
            if left:
                found.append(ambient.mul_many(everything[None, :], F[:, None]).ravel())
            if right:
                found.append(ambient.mul_many(F[:, None], everything[None, :]).ravel())
        new = np.unique(np.concatenate(found))
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    kind = {"additive": "subgroup", "subrng": "subrng"}.get(mode, mode)
    return ElementSet(ambient, np.flatnonzero(mask).tolist(), kind)


def set_sum(A: ElementSet, B: ElementSet) -> ElementSet:
    S = A.ambient
    out = np.unique(S.add_many(A.array()[:, None], B.array()[None, :]))
    return ElementSet(S, out.tolist(), A.kind if A.kind == B.kind else None)


def set_product(A: ElementSet, B: ElementSet) -> ElementSet:
    """Additive span of all products ab."""
    S = A.ambient
    prods = np.unique(S.mul_many(A.array()[:, None], B.array()[None, :]))
    return close(S, prods.tolist(), "additive")


def is_subrng(S: FiniteRng, X: ElementSet) -> bool:
    x = X.array()
    m = X.mask()
    return bool(m[S.add_many(x[:, None], x[None, :])].all() and m[S.mul_many(x[:, None], x[None, :])].all())


def is_ideal(S: FiniteRng, X: ElementSet) -> bool:
    x = X.array()
    m = X.mask()
    every = np.arange(S.n)
    return bool(
        m[0]
        and m[S.add_many(x[:, None], x[None, :])].all()
        and m[S.mul_many(every[:, None], x[None, :])].all()
        and m[S.mul_many(x[:, None], every[None, :])].all()
    )


def principal_ideal(S: FiniteRng, a: int) -> ElementSet:
    return close(S, [a], "ideal")


def enumerate_ideals(S: FiniteRng) -> list[ElementSet]:
    """All two-sided ideals: sum-closure of the principal ideals, canonically ordered."""
    check_cap(S.n, "closure", "ideal enumeration")
    principal: dict[frozenset, ElementSet] = {}
    for a in range(S.n):
        P = principal_ideal(S, a)
        principal.setdefault(P.members, P)
    found = dict(principal)
    pending = list(found.values())
    while pending:
        fresh = []
        base = list(found.values())
        for A in pending:
            for B in base:
                if A.members <= B.members or B.members <= A.members:
                    continue
                C = set_sum(A, B)
                if C.members not in found:
                    found[C.members] = C
                    fresh.append(C)
        pending = fresh
    return canonical(ElementSet(S, m, "ideal") for m in found)


# primality, elementwise


def _aS(S: FiniteRng, a: int) -> np.ndarray:
    return np.unique(S.mul_table[a])


def is_prime_ideal(S: FiniteRng, P: ElementSet) -> bool:
    """P proper, and a,b not in P imply aSb not inside P."""
    if len(P) == S.n:
        return False
    T = S.mul_table
    inP = P.mask()
    outside = np.flatnonzero(~inP)
    for a in outside:
        U = _aS(S, a)
        killed = inP[T[U]].all(axis=0)
        if (killed & ~inP).any():
            return False
    return True


def is_semiprime_ideal(S: FiniteRng, P: ElementSet) -> bool:
    """a not in P implies aSa not inside P (proper P not required)."""
    T = S.mul_table
    inP = P.mask()
    for a in np.flatnonzero(~inP):
        U = _aS(S, a)
        if inP[T[U, a]].all():
            return False
    return True


def is_prime(S: FiniteRng) -> bool:
    return is_prime_ideal(S, zero_set(S))


def is_semiprime(S: FiniteRng) -> bool:
    return is_semiprime_ideal(S, zero_set(S))


# primality from the ideal lattice (test oracle)


def is_prime_by_ideals(S: FiniteRng, ideals: list[ElementSet] | None = None) -> bool:
    ideals = ideals if ideals is not None else enumerate_ideals(S)
    if S.n == 1:
        return False
    nonzero = [A for A in ideals if not A.is_zero()]
    return all(not set_product(A, B).is_zero() for A in nonzero for B in nonzero)


def is_semiprime_by_ideals(S: FiniteRng, ideals: list[ElementSet] | None = None) -> bool:
    ideals = ideals if ideals is not None else enumerate_ideals(S)
    return all(not set_product(A, A).is_zero() for A in ideals if not A.is_zero())


def prime_ideals(S: FiniteRng, ideals: list[ElementSet] | None = None) -> list[ElementSet]:
    ideals = ideals if ideals is not None else enumerate_ideals(S)
    return [Q for Q in ideals if is_prime_ideal(S, Q)]


def prime_radical(S: FiniteRng) -> ElementSet:
    """Intersection of the prime ideals: the smallest ideal with semiprime quotient."""
    primes = prime_ideals(S)
    members = frozenset(range(S.n))
    for Q in primes:
        members &= Q.members
    return ElementSet(S, members, "ideal")


def minimal_ideals(S: FiniteRng, ideals: list[ElementSet] | None = None) -> list[ElementSet]:
    ideals = ideals if ideals is not None else enumerate_ideals(S)
    nonzero = [A for A in ideals if not A.is_zero()]
    return [A for A in nonzero if not any(B < A for B in nonzero)]


def little_ideal(S: FiniteRng, ideals: list[ElementSet] | None = None) -> ElementSet | None:
    mins = minimal_ideals(S, ideals)
    return mins[0] if len(mins) == 1 else None


def ideals_over(ideals: list[ElementSet], P: ElementSet) -> list[ElementSet]:
    return [A for A in ideals if P <= A]


def is_maximal_ideal(S: FiniteRng, A: ElementSet, ideals: list[ElementSet] | None = None) -> bool:
    if A.is_all():
        return False
    ideals = ideals if ideals is not None else enumerate_ideals(S)
    return not any(A < B and not B.is_all() for B in ideals)


def is_subdirectly_irreducible_ideal(S: FiniteRng, P: ElementSet, ideals: list[ElementSet] | None = None) -> bool:
    """S/P has a least nonzero ideal."""
    ideals = ideals if ideals is not None else enumerate_ideals(S)
    above = [A for A in ideals if P < A]
    if not above:
        return False
    mins = [A for A in above if not any(B < A for B in above)]
    return len(mins) == 1


def is_simple(S: FiniteRng) -> bool:
    return S.n > 1 and len(enumerate_ideals(S)) == 2


# centralizers


def centralizer(S: FiniteRng, X: ElementSet | Iterable[int]) -> ElementSet:
    xs = X.sorted() if isinstance(X, ElementSet) else sorted(set(int(x) for x in X))
    if len(xs) == S.n:
        xs = [0, *S.basis]
    every = np.arange(S.n)
    ok = np.ones(S.n, dtype=bool)
    for x in xs:
        ok &= S.mul_many(every, x) == S.mul_many(x, every)
    return ElementSet(S, np.flatnonzero(ok).tolist(), "subrng")


def center(S: FiniteRng) -> ElementSet:
    return centralizer(S, whole(S))


def idempotents(S: FiniteRng, X: ElementSet | None = None) -> list[int]:
    xs = X.array() if X is not None else np.arange(S.n)
    return [int(x) for x in xs[S.mul_many(xs, xs) == xs]]


# embeddings


@dataclass(eq=False)
class EmbeddedSubring:
    """An injective unital ring map small -> big, stored as an index array."""

    big: FiniteRing
    small: FiniteRing
    map: np.ndarray
    name: str | None = None

    def __post_init__(self):
        self.map = np.asarray(self.map, dtype=np.int64)
        self.map.setflags(write=False)

    def __repr__(self):
        return f"<EmbeddedSubring {self.name or ''} {self.small.n} -> {self.big.n}>"

    @cached_property
    def image(self) -> ElementSet:
        return ElementSet(self.big, self.map.tolist(), "subrng")

    @cached_property
    def preimage(self) -> dict[int, int]:
        return {int(b): a for a, b in enumerate(self.map)}

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def pullback(self, X: ElementSet) -> ElementSet:
        pre = self.preimage
        return ElementSet(self.small, [pre[x] for x in X.members if x in pre])


def embed(small: FiniteRing, big: FiniteRing, mapping, name: str | None = None) -> EmbeddedSubring:
    """Validate and wrap an embedding given by the images of all small elements."""
    m = np.asarray(mapping, dtype=np.int64)
    if m.shape != (small.n,):
        raise NotAnEmbedding(f"map must list {small.n} images")
    if len(set(m.tolist())) != small.n:
        raise NotAnEmbedding("map is not injective")
    every = np.arange(small.n)
    for e in small.basis:
        if not (m[small.add_many(every, e)] == big.add_many(m, m[e])).all():
            raise NotAnEmbedding("map is not additive")
    for e in small.basis:
        for f in small.basis:
            if m[small.mul(e, f)] != big.mul(int(m[e]), int(m[f])):
                raise NotAnEmbedding("map is not multiplicative")
    if m[small.unity] != big.unity:
        raise NotAnEmbedding("map does not send unity to unity")
    return EmbeddedSubring(big, small, m, name)


def embedding_from_basis(small: FiniteRing, big: FiniteRng, images: list[int]) -> np.ndarray:
    """Extend basis images additively to a full index map."""
    C = small.coords
    out = np.zeros(small.n, dtype=np.int64)
    for x in range(small.n):
        acc = 0
        for c, y in zip(C[x], images):
            if c:
                acc = big.add(acc, big.scalar(int(c), y))
        out[x] = acc
    return out


def find_embeddings(small: FiniteRing, big: FiniteRing, first_only: bool = False) -> list[EmbeddedSubring]:
    """All unital ring embeddings small -> big, in canonical search order."""
    big_orders = element_orders(big)
    cands = [[y for y in range(big.n) if d % big_orders[y] == 0] for d in small.orders]
    k = small.k
    constraints = []
    for i in range(k):
        for j in range(k):
            c = small.sc[i, j]
            need = max([i, j] + [t for t in range(k) if c[t]])
            constraints.append((need, _mult_check(big, c, i, j)))
    found = []
    for images in backtrack_basis_images(cands, constraints):
        m = embedding_from_basis(small, big, images)
        if m[small.unity] != big.unity or len(set(m.tolist())) != small.n:
            continue
        found.append(EmbeddedSubring(big, small, m))
        if first_only:
            break
    return found


def _mult_check(big, c, i, j):
    terms = [(t, int(v)) for t, v in enumerate(c) if v]

    def check(ys):
        acc = 0
        for t, v in terms:
            acc = big.add(acc, big.scalar(v, ys[t]))
        return acc == big.mul(ys[i], ys[j])

    return check


def is_maximal_subring(emb: EmbeddedSubring) -> bool:
    big = emb.big
    check_cap(big.n, "closure", "maximality test")
    image = emb.image
    if image.is_all():
        return False
    for s in range(big.n):
        if s in image:
            continue
        if not close(big, [*image.members, s], "subrng").is_all():
            return False
    return True


def subrings_containing(S: FiniteRng, base: ElementSet) -> list[ElementSet]:
    """Every subrng of S containing ``base`` (a subrng), by single-element adjunction."""
    start = close(S, base, "subrng")
    found = {start.members: start}
    queue = [start]
    while queue:
        T = queue.pop()
        for s in range(S.n):
            if s in T:
                continue
            U = close(S, [*T.members, s], "subrng")
            if U.members not in found:
                found[U.members] = U
                queue.append(U)
    return canonical(found.values())
