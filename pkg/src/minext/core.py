"""Finite rngs and rings given by structure constants over a finite abelian group.

Elements are addressed by their canonical mixed-radix index (first coordinate
most significant).  ``elem``/``index`` convert between indices and coordinate
vectors.  Multiplication is the bilinear extension of the basis table ``sc``.
"""
from __future__ import annotations

import contextlib
import itertools
import math
from contextvars import ContextVar
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np


class AlgebraError(Exception):
    pass


class DimensionMismatch(AlgebraError):
    pass


class IllDefinedProduct(AlgebraError):
    pass


class NonAssociative(AlgebraError):
    def __init__(self, i: int, j: int, l: int):
        super().__init__(f"(e_{i} e_{j}) e_{l} != e_{i} (e_{j} e_{l})")
        self.triple = (i, j, l)


class NoUnity(AlgebraError):
    pass


class OrderCapExceeded(AlgebraError):
    pass


@dataclass(frozen=True)
class Caps:
    closure: int = 4096
    enumeration: int = 65536


_CAPS: ContextVar[Caps] = ContextVar("minext_caps", default=Caps())


def current_caps() -> Caps:
    return _CAPS.get()


@contextlib.contextmanager
def using_caps(caps: Caps):
    token = _CAPS.set(caps)
    try:
        yield caps
    finally:
        _CAPS.reset(token)


def check_cap(n: int, kind: str = "closure", what: str = "") -> None:
    cap = getattr(current_caps(), kind)
    if n > cap:
        raise OrderCapExceeded(f"{what or 'operation'} needs order {n} > {kind} cap {cap}")


@dataclass(frozen=True)
class CarrierGroup:
    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.cyclic_orders)
        if any(d < 2 for d in orders):
            raise DimensionMismatch(f"cyclic orders must be >= 2, got {orders}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @cached_property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    @cached_property
    def weights(self) -> np.ndarray:
        w = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            w[i] = w[i + 1] * self.cyclic_orders[i + 1]
        return np.array(w, dtype=np.int64)

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array(self.cyclic_orders, dtype=np.int64)

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return int(sum((int(c) % d) * int(w) for c, d, w in zip(coords, self.cyclic_orders, self.weights)))

    def elem(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.order:
            raise IndexError(idx)
        return tuple(int(idx // w % d) for d, w in zip(self.cyclic_orders, self.weights))

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Indices of an array of coordinate rows (already reduced)."""
        if self.rank == 0:
            return np.zeros(coords.shape[:-1], dtype=np.int64)
        return coords @ self.weights

    @cached_property
    def all_coords(self) -> np.ndarray:
        check_cap(self.order, "enumeration", "coordinate table")
        idx = np.arange(self.order, dtype=np.int64)
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return (idx[:, None] // self.weights[None, :]) % self.moduli[None, :]


def _as_table(sc, carrier: CarrierGroup) -> np.ndarray:
    k = carrier.rank
    arr = np.array(sc, dtype=np.int64)
    if k == 0:
        return np.zeros((0, 0, 0), dtype=np.int64)
    if arr.shape != (k, k, k):
        raise DimensionMismatch(f"structure constants must have shape {(k, k, k)}, got {arr.shape}")
    return arr % carrier.moduli


def _bilinear(a: np.ndarray, b: np.ndarray, table: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    """Coordinates of sum_{i,j} a_i b_j table[i,j] for broadcast coordinate rows a, b."""
    out = np.einsum("...i,...j,ijl->...l", a, b, table)
    return out % moduli


class FiniteRng:
    """A finite associative rng on a cyclic-factor carrier.

    Use :func:`build_rng` for validated construction; the constructor trusts
    its input.
    """

    _TABLE_CAP = 4096
    _ADD_TABLE_CAP = 4096

    def __init__(self, carrier: CarrierGroup, sc, name: str | None = None):
        self.carrier = carrier
        self.sc = _as_table(sc, carrier)
        self.sc.setflags(write=False)
        self.name = name

    def __repr__(self):
        label = self.name or "rng"
        return f"<{type(self).__name__} {label} order={self.n} carrier={self.orders}>"

    @property
    def orders(self) -> tuple[int, ...]:
        return self.carrier.cyclic_orders

    @property
    def n(self) -> int:
        return self.carrier.order

    @property
    def k(self) -> int:
        return self.carrier.rank

    zero = 0

    @cached_property
    def basis(self) -> tuple[int, ...]:
        return tuple(int(w) for w in self.carrier.weights)

    def elem(self, idx: int) -> tuple[int, ...]:
        return self.carrier.elem(int(idx))

    def index(self, coords: Sequence[int]) -> int:
        return self.carrier.index(coords)

    @property
    def coords(self) -> np.ndarray:
        return self.carrier.all_coords

    def elements(self) -> range:
        check_cap(self.n, "enumeration", "element scan")
        return range(self.n)

    # element arithmetic on indices

    def add(self, a: int, b: int) -> int:
        if self.k == 0:
            return 0
        if self.n <= self._ADD_TABLE_CAP:
            return int(self.add_table[a, b])
        ca, cb = self._c(a), self._c(b)
        return int(self.carrier.encode((ca + cb) % self.carrier.moduli))

    def neg(self, a: int) -> int:
        if self.k == 0:
            return 0
        if self.n <= self._ADD_TABLE_CAP:
            return int(self.neg_table[a])
        return int(self.carrier.encode((-self._c(a)) % self.carrier.moduli))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 0:
            return 0
        if self.n <= self._TABLE_CAP:
            return int(self.mul_table[a, b])
        return int(self.carrier.encode(_bilinear(self._c(a), self._c(b), self.sc, self.carrier.moduli)))

    def scalar(self, c: int, a: int) -> int:
        """c*a by a double-and-add chain."""
        if c < 0:
            c, a = -c, self.neg(a)
        acc, base = 0, a
        while c:
            if c & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            c >>= 1
        return acc

    def _c(self, a: int) -> np.ndarray:
        if self.n <= current_caps().enumeration:
            return self.coords[a]
        return np.array(self.elem(a), dtype=np.int64)

    # vectorised arithmetic

    def add_many(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if self.k == 0:
            return np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        if self.n <= self._ADD_TABLE_CAP:
            return self.add_table[a, b]
        C = self.coords
        return self.carrier.encode((C[a] + C[b]) % self.carrier.moduli)

    def mul_many(self, a, b) -> np.ndarray:
        a, b = np.asarray(a), np.asarray(b)
        if self.k == 0:
            return np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        if self.n <= self._TABLE_CAP:
            return self.mul_table[a, b]
        C = self.coords
        a, b = np.broadcast_arrays(a, b)
        return self.carrier.encode(_bilinear(C[a], C[b], self.sc, self.carrier.moduli))

    @cached_property
    def mul_table(self) -> np.ndarray:
        check_cap(self.n, "closure", "multiplication table")
        n, C = self.n, self.coords
        out = np.empty((n, n), dtype=np.int32 if n > 32767 else np.int16)
        if self.k == 0:
            out[:] = 0
            return out
        left = np.einsum("ai,ijl->ajl", C, self.sc)
        step = max(1, 4_000_000 // max(1, n * self.k))
        for s in range(0, n, step):
            block = np.einsum("ajl,bj->abl", left[s:s + step], C) % self.carrier.moduli
            out[s:s + step] = self.carrier.encode(block)
        out.setflags(write=False)
        return out

    @cached_property
    def add_table(self) -> np.ndarray:
        check_cap(self.n, "closure", "addition table")
        n, C = self.n, self.coords
        out = np.empty((n, n), dtype=np.int32 if n > 32767 else np.int16)
        step = max(1, 4_000_000 // max(1, n * max(1, self.k)))
        for s in range(0, n, step):
            out[s:s + step] = self.carrier.encode((C[s:s + step, None, :] + C[None, :, :]) % self.carrier.moduli)
        out.setflags(write=False)
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        if self.k == 0:
            return np.zeros(1, dtype=np.int64)
        return self.carrier.encode((-self.coords) % self.carrier.moduli)

    @cached_property
    def is_zero_product(self) -> bool:
        return not self.sc.any()

    def is_commutative(self) -> bool:
        return bool((self.sc == self.sc.transpose(1, 0, 2)).all())


class FiniteRing(FiniteRng):
    """A FiniteRng together with its (validated) unity."""

    def __init__(self, carrier: CarrierGroup, sc, unity: int, name: str | None = None):
        super().__init__(carrier, sc, name)
        self.unity = int(unity)

    @classmethod
    def from_rng(cls, rng: FiniteRng, unity: int, name: str | None = None) -> "FiniteRing":
        return cls(rng.carrier, rng.sc, unity, name or rng.name)


def _order_of(coords: np.ndarray, moduli: np.ndarray) -> int:
    """Additive order of an element with the given coordinates."""
    out = 1
    for c, m in zip(coords, moduli):
        c, m = int(c), int(m)
        if c:
            out = math.lcm(out, m // math.gcd(c, m))
    return out


def build_rng(carrier: CarrierGroup | Sequence[int], sc, name: str | None = None) -> FiniteRng:
    if not isinstance(carrier, CarrierGroup):
        carrier = CarrierGroup(tuple(carrier))
    k = carrier.rank
    arr = np.array(sc, dtype=np.int64)
    if k and arr.shape != (k, k, k):
        raise DimensionMismatch(f"structure constants must have shape {(k, k, k)}, got {arr.shape}")
    if k and ((arr < 0) | (arr >= carrier.moduli)).any():
        raise DimensionMismatch("structure-constant entries out of range")
    mods = carrier.moduli
    for i, j in itertools.product(range(k), repeat=2):
        g = math.gcd(carrier.cyclic_orders[i], carrier.cyclic_orders[j])
        if g % _order_of(arr[i, j], mods):
            raise IllDefinedProduct(f"order of e_{i} e_{j} does not divide gcd(d_{i}, d_{j}) = {g}")
    S = FiniteRng(carrier, arr, name)
    for i, j, l in itertools.product(range(k), repeat=3):
        lhs = _bilinear(arr[i, j], np.eye(k, dtype=np.int64)[l], arr, mods)
        rhs = _bilinear(np.eye(k, dtype=np.int64)[i], arr[j, l], arr, mods)
        if (lhs != rhs).any():
            raise NonAssociative(i, j, l)
    return S


def find_unity(S: FiniteRng) -> int | None:
    if S.k == 0:
        return 0
    idx = np.arange(S.n)
    check_cap(S.n, "enumeration", "unity search")
    ok = np.ones(S.n, dtype=bool)
    for e in S.basis:
        ok &= (S.mul_many(idx, e) == e) & (S.mul_many(e, idx) == e)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if len(hits) else None


def build_ring(carrier, sc, unity: int | Sequence[int] | None = None, name: str | None = None) -> FiniteRing:
    S = build_rng(carrier, sc, name)
    if unity is None:
        u = find_unity(S)
        if u is None:
            raise NoUnity(f"{name or 'rng'} has no unity")
    else:
        u = S.index(unity) if not isinstance(unity, (int, np.integer)) else int(unity)
        for e in S.basis:
            if S.mul(u, e) != e or S.mul(e, u) != e:
                raise NoUnity(f"given unity {S.elem(u)} fails on basis element {S.elem(e)}")
    return FiniteRing.from_rng(S, u, name)


def as_ring(S: FiniteRng) -> FiniteRing:
    if isinstance(S, FiniteRing):
        return S
    u = find_unity(S)
    if u is None:
        raise NoUnity(f"{S!r} has no unity")
    return FiniteRing.from_rng(S, u)


# finite abelian groups given by an addition function


def additive_order(add: Callable[[int, int], int], x: int, zero: int = 0) -> int:
    k, y = 1, x
    while y != zero:
        y = add(y, x)
        k += 1
    return k


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _span(add, base: set[int], g: int, order: int) -> set[int]:
    out = set(base)
    mult = 0
    for _ in range(order - 1):
        mult = add(mult, g)
        out.update(add(s, mult) for s in base)
    return out


def abelian_basis(members: Iterable[int], add: Callable[[int, int], int], zero: int = 0) -> tuple[list[int], list[int]]:
    """Generators and their orders decomposing a finite abelian group into cyclic factors.

    ``members`` must be closed under ``add``.  Generators are prime-power
    order, grouped by prime (ascending), exponents descending.
    """
    members = sorted(set(members))
    orders = {x: additive_order(add, x, zero) for x in members}
    exponent = math.lcm(*orders.values()) if orders else 1
    gens: list[int] = []
    gorders: list[int] = []
    for p in _prime_factors(exponent):
        part = [x for x in members if _is_power_of(orders[x], p)]
        invariants = _p_invariants([orders[x] for x in part], p)
        chosen = _choose_p_basis(part, orders, invariants, p, add, zero)
        if chosen is None:
            raise AlgebraError("failed to decompose abelian group")  # unreachable for a genuine group
        gens.extend(chosen)
        gorders.extend(p ** a for a in invariants)
    return gens, gorders


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def _p_invariants(orders: list[int], p: int) -> list[int]:
    top = max(orders)
    e = round(math.log(top, p))
    logs = [0]
    for j in range(1, e + 1):
        count = sum(1 for o in orders if (p ** j) % o == 0)
        logs.append(round(math.log(count, p)))
    ge = [logs[j] - logs[j - 1] for j in range(1, e + 1)]  # ge[j-1] = #{a_i >= j}
    inv = []
    for j in range(e, 0, -1):
        have = len(inv)
        inv.extend([j] * (ge[j - 1] - have))
    return inv


def _choose_p_basis(part, orders, invariants, p, add, zero):
    def rec(t: int, span: set[int], acc: list[int]):
        if t == len(invariants):
            return acc
        want = p ** invariants[t]
        for g in part:
            if orders[g] != want or g in span:
                continue
            new = _span(add, span, g, want)
            if len(new) == len(span) * want:
                got = rec(t + 1, new, acc + [g])
                if got is not None:
                    return got
        return None

    return rec(0, {zero}, [])


def rng_from_tables(members: Sequence[int], add: Callable[[int, int], int], mul: Callable[[int, int], int],
                    zero: int = 0, name: str | None = None) -> tuple[FiniteRng, dict[int, int]]:
    """Re-present a finite rng given by operations on labels as a structure-constant rng.

    Returns the rng and a dict from original labels to new indices.
    """
    gens, gorders = abelian_basis(members, add, zero)
    carrier = CarrierGroup(tuple(gorders))
    relabel: dict[int, int] = {}
    multiples = []
    for g, d in zip(gens, gorders):
        row, acc = [zero], zero
        for _ in range(d - 1):
            acc = add(acc, g)
            row.append(acc)
        multiples.append(row)
    for coords in itertools.product(*(range(d) for d in gorders)):
        acc = zero
        for row, c in zip(multiples, coords):
            acc = add(acc, row[c])
        relabel[acc] = carrier.index(coords)
    if len(relabel) != len(set(members)):
        raise AlgebraError("generator decomposition is not a bijection")
    k = len(gens)
    sc = np.zeros((k, k, k), dtype=np.int64)
    for i, j in itertools.product(range(k), repeat=2):
        sc[i, j] = carrier.elem(relabel[mul(gens[i], gens[j])])
    return FiniteRng(carrier, sc, name), relabel


def element_orders(S: FiniteRng) -> np.ndarray:
    """Additive order of every element."""
    C = S.coords
    out = np.ones(S.n, dtype=np.int64)
    for t, d in enumerate(S.orders):
        part = np.array([d // math.gcd(c, d) for c in range(d)], dtype=np.int64)
        out = np.lcm(out, part[C[:, t]])
    return out


def backtrack_basis_images(candidates: Sequence[Sequence[int]], constraints):
    """Yield every tuple of basis images satisfying the constraints.

    ``constraints`` is a list of ``(trigger, check)``: ``check(ys)`` is called
    once images ``ys[0..trigger]`` are assigned and must not look further.
    """
    k = len(candidates)
    by_trigger: list[list] = [[] for _ in range(k)]
    for t, check in constraints:
        by_trigger[t].append(check)
    ys = [0] * k

    def rec(t):
        if t == k:
            yield tuple(ys)
            return
        for y in candidates[t]:
            ys[t] = y
            if all(check(ys) for check in by_trigger[t]):
                yield from rec(t + 1)

    yield from rec(0)
