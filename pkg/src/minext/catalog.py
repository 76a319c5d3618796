"""Named constructors for the rings, R-rngs and embeddings used in examples and tests.

Specs are strings like ``tri_in_mat(2, 2)`` or nested
``ideal_extension(regular_rrng(gf(2)))``; :func:`make` parses and memoizes them.
"""
from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bimodule import QuotientRRng, RRng, regular_rrng as _regular_rrng, rrng_from_subset, rrng_over, validate_rrng
from .core import AlgebraError, CarrierGroup, FiniteRing, FiniteRng, build_ring
from .substructure import EmbeddedSubring, close, embed


class UnknownConstructor(AlgebraError):
    pass


class BadParams(AlgebraError):
    pass


# fields

IRREDUCIBLES = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}  # coefficients low -> high


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class FieldData:
    """F_q as coefficient vectors over F_p in the basis 1, x, ..., x^(m-1)."""

    q: int
    p: int
    m: int
    poly: tuple[int, ...]

    def mul(self, a, b) -> np.ndarray:
        prod = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % self.p
        poly = np.array(self.poly, dtype=np.int64)
        for d in range(len(prod) - 1, self.m - 1, -1):
            c = prod[d]
            if c:
                prod[d - self.m:d + 1] = (prod[d - self.m:d + 1] - c * poly) % self.p
        out = np.zeros(self.m, dtype=np.int64)
        out[:min(self.m, len(prod))] = prod[:self.m]
        return out

    def unit(self, t: int) -> np.ndarray:
        e = np.zeros(self.m, dtype=np.int64)
        e[t] = 1
        return e

    def power(self, a, e: int) -> np.ndarray:
        out = self.unit(0)
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def frobenius(self, a, e: int = 1) -> np.ndarray:
        return self.power(a, self.p**e)


def field_data(q: int) -> FieldData:
    if _is_prime(q):
        return FieldData(q, q, 1, (0, 1))
    if q not in IRREDUCIBLES:
        raise BadParams(f"gf({q}): need a prime or one of {sorted(IRREDUCIBLES)}")
    p, poly = IRREDUCIBLES[q]
    return FieldData(q, p, len(poly) - 1, poly)


def _matrix_units_ring(units: list[tuple[int, int]], F: FieldData, name: str) -> FiniteRing:
    """Span of the given matrix units tensored with F_q; basis is unit-major, field-minor."""
    m = F.m
    pos = {u: t for t, u in enumerate(units)}
    k = len(units) * m
    sc = np.zeros((k, k, k), dtype=np.int64)
    for (i, (r, s)), (j, (u, v)) in itertools.product(enumerate(units), repeat=2):
        if s != u:
            continue
        out = pos[(r, v)]
        for a, b in itertools.product(range(m), repeat=2):
            sc[i * m + a, j * m + b, out * m:(out + 1) * m] = F.mul(F.unit(a), F.unit(b))
    unity = np.zeros(k, dtype=np.int64)
    for (r, s), t in pos.items():
        if r == s:
            unity[t * m] = 1
    return build_ring(CarrierGroup((F.p,) * k), sc, tuple(unity), name=name)


def zmod(n: int) -> FiniteRing:
    if n < 2:
        raise BadParams(f"zmod({n}): modulus must be at least 2")
    return build_ring(CarrierGroup((n,)), [[[1]]], (1,), name=f"Z{n}")


def gf(q: int) -> FiniteRing:
    F = field_data(q)
    return _matrix_units_ring([(0, 0)], F, f"F{q}")


def mat(n: int, q: int) -> FiniteRing:
    if n < 1:
        raise BadParams("matrix size must be positive")
    units = [(r, s) for r in range(n) for s in range(n)]
    return _matrix_units_ring(units, field_data(q), f"M{n}(F{q})")


def tri(n: int, q: int) -> FiniteRing:
    if n < 1:
        raise BadParams("matrix size must be positive")
    units = [(r, s) for r in range(n) for s in range(r, n)]
    return _matrix_units_ring(units, field_data(q), f"T{n}(F{q})")


def product(*rings: FiniteRing) -> FiniteRing:
    if not rings:
        raise BadParams("product needs at least one factor")
    orders, unity = [], []
    k = sum(R.k for R in rings)
    sc = np.zeros((k, k, k), dtype=np.int64)
    o = 0
    for R in rings:
        orders.extend(R.orders)
        unity.extend(R.elem(R.unity))
        sc[o:o + R.k, o:o + R.k, o:o + R.k] = R.sc
        o += R.k
    name = "x".join(R.name or "R" for R in rings)
    return build_ring(CarrierGroup(tuple(orders)), sc, tuple(unity), name=name)


def matrix_to_index(R: FiniteRing, A: np.ndarray) -> int:
    """Index of a matrix over a prime field in mat(n, p) or tri(n, p)."""
    n = A.shape[0]
    if R.k == n * n:
        coords = A.reshape(-1)
    else:
        coords = [A[r, s] for r in range(n) for s in range(r, n)]
    return R.index([int(c) % R.orders[0] for c in coords])


def index_to_matrix(R: FiniteRing, x: int, n: int) -> np.ndarray:
    c = R.elem(x)
    if R.k == n * n:
        return np.array(c, dtype=np.int64).reshape(n, n)
    A = np.zeros((n, n), dtype=np.int64)
    for t, (r, s) in enumerate((r, s) for r in range(n) for s in range(r, n)):
        A[r, s] = c[t]
    return A


# R-rngs


def ideal_as_rrng(R: FiniteRing, gen: int) -> RRng:
    """The ideal of R generated by element ``gen`` with actions by multiplication."""
    _check_elem(R, gen)
    J = close(R, [gen], "ideal")
    M, _ = rrng_from_subset(R, None, J, name=f"{R.name}_ideal{gen}")
    return M


def zero_bimodule(R: FiniteRing, gen: int) -> RRng:
    """R/(gen) as a bimodule with zero internal product."""
    _check_elem(R, gen)
    return QuotientRRng(R, close(R, [gen], "ideal")).as_rrng(square_zero=True, name=f"{R.name}_mod{gen}_zero")


def quotient_rrng(R: FiniteRing, gen: int) -> RRng:
    """R/(gen) with its quotient-ring product."""
    _check_elem(R, gen)
    return QuotientRRng(R, close(R, [gen], "ideal")).as_rrng(name=f"{R.name}_mod{gen}")


def regular_rrng(R: FiniteRing) -> RRng:
    return _regular_rrng(R)


def twisted_field(q: int, e: int) -> RRng:
    """F_q with zero product, a.m = am and m.a = m sigma^e(a), sigma the Frobenius."""
    F = field_data(q)
    R = make(f"gf({q})")
    k = F.m
    lact = np.zeros((k, k, k), dtype=np.int64)
    ract = np.zeros((k, k, k), dtype=np.int64)
    for a, j in itertools.product(range(k), repeat=2):
        lact[a, j] = F.mul(F.unit(a), F.unit(j))
        ract[j, a] = F.mul(F.unit(j), F.frobenius(F.unit(a), e))
    I = FiniteRng(R.carrier, np.zeros_like(R.sc), f"F{q}^s{e}")
    return validate_rrng(R, I, lact, ract, name=f"F{q}_tw{e}")


# embeddings


def regular_embed(q: int) -> EmbeddedSubring:
    """F_q into End_{F_p}(F_q) = M_m(F_p) by left multiplication."""
    F = field_data(q)
    if F.m == 1:
        raise BadParams("regular_embed needs a proper extension of the prime field")
    small, big = make(f"gf({q})"), make(f"mat({F.m},{F.p})")
    images = []
    for x in range(small.n):
        a = np.array(small.elem(x), dtype=np.int64)
        A = np.stack([F.mul(a, F.unit(s)) for s in range(F.m)], axis=1)
        images.append(matrix_to_index(big, A))
    return embed(small, big, images, name=f"F{q} in M{F.m}(F{F.p})")


def tri_in_mat(n: int, q: int) -> EmbeddedSubring:
    small, big = make(f"tri({n},{q})"), make(f"mat({n},{q})")
    m = field_data(q).m
    units = [(r, s) for r in range(n) for s in range(r, n)]
    images = []
    for x in range(small.n):
        c = small.elem(x)
        coords = [0] * big.k
        for t, (r, s) in enumerate(units):
            base = (r * n + s) * m
            coords[base:base + m] = c[t * m:(t + 1) * m]
        images.append(big.index(coords))
    return embed(small, big, images, name=f"T{n} in M{n}(F{q})")


def prime_subfield(q: int) -> EmbeddedSubring:
    F = field_data(q)
    small, big = make(f"gf({F.p})"), make(f"gf({q})")
    return embed(small, big, [big.scalar(c, big.unity) for c in range(F.p)], name=f"F{F.p} in F{q}")


def diagonal(R: FiniteRing) -> EmbeddedSubring:
    big = product(R, R)
    images = [big.index(R.elem(x) + R.elem(x)) for x in range(R.n)]
    return embed(R, big, images, name=f"diag {R.name}")


def as_rrng(emb: EmbeddedSubring) -> RRng:
    return rrng_over(emb)


def ideal_extension(M: RRng):
    from .extensions import ideal_extension as build

    return build(M)


def trivial_extension(M: RRng):
    from .extensions import trivial_extension as build

    return build(M.R, M)


def _check_elem(R: FiniteRing, x: int) -> None:
    if not 0 <= x < R.n:
        raise BadParams(f"element index {x} out of range for {R.name}")


# Bergman levels


@dataclass
class BergmanLevel:
    """The maps f_n, g_n and idempotent E_n at a finite level, as explicit matrices mod p."""

    n: int
    p: int
    E: np.ndarray = field(init=False)

    def __post_init__(self):
        size = 2**self.n
        self.E = np.kron(np.eye(size, dtype=np.int64), np.diag([1, 0]))

    @property
    def size(self) -> int:
        return 2**self.n

    def f(self, A: np.ndarray) -> np.ndarray:
        return np.kron(A, np.eye(2, dtype=np.int64)) % self.p

    def g(self, A: np.ndarray) -> np.ndarray:
        return (self.E @ self.f(A) @ self.E) % self.p

    def mm(self, A, B) -> np.ndarray:
        return (A @ B) % self.p

    def basis(self) -> list[np.ndarray]:
        out = []
        for r, s in itertools.product(range(self.size), repeat=2):
            U = np.zeros((self.size, self.size), dtype=np.int64)
            U[r, s] = 1
            out.append(U)
        return out

    def violations(self) -> list[tuple[str, int, int]]:
        """Every failing identity on basis matrices (pairs indexed row-major)."""
        bad = []
        B = self.basis()
        E, mm, f, g = self.E, self.mm, self.f, self.g
        one = np.eye(self.size, dtype=np.int64)
        if not np.array_equal(f(one), np.eye(2 * self.size, dtype=np.int64)):
            bad.append(("f unital", -1, -1))
        if not np.array_equal(mm(E, E), E):
            bad.append(("E idempotent", -1, -1))
        for a, A in enumerate(B):
            fA = f(A)
            if not (np.array_equal(mm(fA, E), mm(E, fA)) and np.array_equal(mm(E, fA), mm(mm(E, fA), E))):
                bad.append(("f(A)E = Ef(A) = Ef(A)E", a, -1))
            for b, C in enumerate(B):
                fB, gB, gA = f(C), g(C), g(A)
                gAB = g(mm(A, C))
                if not np.array_equal(f(mm(A, C)), mm(fA, fB)):
                    bad.append(("f multiplicative", a, b))
                if not (np.array_equal(gAB, mm(fA, gB)) and np.array_equal(gAB, mm(gA, gB))
                        and np.array_equal(gAB, mm(gA, fB))):
                    bad.append(("g(AB) = f(A)g(B) = g(A)g(B) = g(A)f(B)", a, b))
        return bad


def bergman_level(n: int, q: int) -> BergmanLevel:
    if n < 1:
        raise BadParams("level must be at least 1")
    if not _is_prime(q):
        raise BadParams("bergman_level works over prime fields only")
    return BergmanLevel(n, q)


# spec parsing and the registry


@dataclass(frozen=True)
class CatalogSpec:
    name: str
    params: tuple = ()

    def __str__(self):
        return f"{self.name}({', '.join(str(p) for p in self.params)})"


def _ring(x):
    from .extensions import IdealExtension

    if isinstance(x, IdealExtension):
        return x.E
    if isinstance(x, EmbeddedSubring):
        return x.big
    if isinstance(x, FiniteRing):
        return x
    raise BadParams(f"expected a ring, got {type(x).__name__}")


def _rrng(x):
    if isinstance(x, RRng):
        return x
    raise BadParams(f"expected an R-rng, got {type(x).__name__}")


def _emb(x):
    if isinstance(x, EmbeddedSubring):
        return x
    raise BadParams(f"expected an embedding, got {type(x).__name__}")


def _int(x):
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise BadParams(f"expected an integer, got {x!r}")


# name -> (builder, argument coercions or None for variadic rings, description)
REGISTRY: dict[str, tuple[Callable, tuple | None, str]] = {
    "zmod": (zmod, (_int,), "integers mod n"),
    "gf": (gf, (_int,), "finite field F_q (q prime, 4, 8 or 9)"),
    "mat": (mat, (_int, _int), "matrix ring M_n(F_q)"),
    "tri": (tri, (_int, _int), "upper triangular matrices T_n(F_q)"),
    "product": (product, None, "direct product of rings"),
    "regular_rrng": (regular_rrng, (_ring,), "R as an R-rng over itself"),
    "ideal_as_rrng": (ideal_as_rrng, (_ring, _int), "ideal of R generated by an element"),
    "zero_bimodule": (zero_bimodule, (_ring, _int), "R/(gen) with zero product"),
    "quotient_rrng": (quotient_rrng, (_ring, _int), "R/(gen) with quotient product"),
    "twisted_field": (twisted_field, (_int, _int), "F_q, zero product, right action twisted by Frobenius^e"),
    "as_rrng": (as_rrng, (_emb,), "big ring of an embedding as an R-rng"),
    "regular_embed": (regular_embed, (_int,), "F_q into M_m(F_p) by left multiplication"),
    "tri_in_mat": (tri_in_mat, (_int, _int), "T_n(F_q) inside M_n(F_q)"),
    "prime_subfield": (prime_subfield, (_int,), "F_p inside F_q"),
    "diagonal": (diagonal, (_ring,), "R diagonally inside R x R"),
    "ideal_extension": (ideal_extension, (_rrng,), "E(R, I) of an R-rng"),
    "trivial_extension": (trivial_extension, (_rrng,), "R x M with zero-product bimodule M"),
    "bergman_level": (bergman_level, (_int, _int), "finite level of the Bergman matrix construction"),
}


def parse_spec(text: str) -> CatalogSpec:
    """Parse ``name(arg, ...)`` where args are integers or nested specs."""
    text = text.strip()
    if text.startswith("catalog:"):
        text = text[len("catalog:"):]
    try:
        node = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise BadParams(f"cannot parse catalog spec {text!r}") from exc
    return _to_spec(node, text)


def _to_spec(node, text):
    if isinstance(node, ast.Name):
        return CatalogSpec(node.id)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        return CatalogSpec(node.func.id, tuple(_to_arg(a, text) for a in node.args))
    raise BadParams(f"not a catalog spec: {text!r}")


def _to_arg(node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub) and isinstance(node.operand, ast.Constant):
        return -node.operand.value
    return _to_spec(node, text)


_MEMO: dict[str, object] = {}


def make(spec: CatalogSpec | str, *params):
    """Build a catalog object; ``make("mat", 2, 2)`` and ``make("mat(2,2)")`` agree."""
    if isinstance(spec, str):
        spec = parse_spec(spec) if "(" in spec or not params else CatalogSpec(spec, params)
    key = str(spec)
    if key in _MEMO:
        return _MEMO[key]
    if spec.name not in REGISTRY:
        raise UnknownConstructor(spec.name)
    builder, coerce, _ = REGISTRY[spec.name]
    args = [make(p) if isinstance(p, CatalogSpec) else p for p in spec.params]
    if coerce is None:
        args = [_ring(a) for a in args]
    else:
        if len(args) != len(coerce):
            raise BadParams(f"{spec.name} takes {len(coerce)} parameters, got {len(args)}")
        args = [c(a) for c, a in zip(coerce, args)]
    out = builder(*args)
    _MEMO[key] = out
    return out
