"""Classification of minimal extensions of prime rings into the types P, PI, SR, SI, N."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .bimodule import (
    QuotientRRng,
    RHom,
    RRng,
    ann,
    bimodule_isomorphic,
    r_isomorphic,
    rrng_over,
    rrng_type,
)
from .catalog import product, trivial_extension
from .core import AlgebraError, CarrierGroup, FiniteRing, NoUnity, NonAssociative, build_ring, rng_from_tables
from .extensions import (
    IdealExtension,
    is_central_extension,
    recover_ideal_extension,
    trivial_meet_ideals,
)
from .substructure import (
    ElementSet,
    EmbeddedSubring,
    embed,
    is_maximal_ideal,
    is_maximal_subring,
    is_prime,
    is_semiprime,
)

TAGS = ("P", "PI", "SR", "SI", "N")


class NotPrimeBase(AlgebraError):
    pass


class NotMinimalExtension(AlgebraError):
    pass


class NotCentral(AlgebraError):
    pass


@dataclass(eq=False)
class ExtensionType:
    tag: str
    witnesses: dict = field(default_factory=dict)

    def __repr__(self):
        return f"<type {self.tag}>"

    @property
    def I(self) -> RRng | None:
        return self.witnesses.get("I")

    @property
    def P(self) -> ElementSet | None:
        return self.witnesses.get("P")


def decide_tag(has_trivial_meet: bool, square_zero: bool = False, rtype: str | None = None,
               ann_zero: bool = False) -> str:
    """The decision tree on already-computed predicates."""
    if not has_trivial_meet:
        return "P"
    if square_zero:
        return "N"
    if rtype == "T3":
        return "SI"
    if rtype != "T2":
        raise ValueError(f"an R-rng with nonzero square cannot have type {rtype}")
    return "PI" if ann_zero else "SR"


def as_embedding(obj) -> EmbeddedSubring:
    if isinstance(obj, IdealExtension):
        return obj.R_embed
    if isinstance(obj, EmbeddedSubring):
        return obj
    raise TypeError(f"expected an extension, got {type(obj).__name__}")


def classify_minimal_extension(emb: EmbeddedSubring | IdealExtension, check: bool = True) -> ExtensionType:
    emb = as_embedding(emb)
    if check:
        if not is_prime(emb.small):
            raise NotPrimeBase(f"{emb.small.name} is not prime")
        if not is_maximal_subring(emb):
            raise NotMinimalExtension(f"{emb!r} is not a minimal extension")
    Js = trivial_meet_ideals(emb)
    if not Js:
        return ExtensionType("P")
    rec = recover_ideal_extension(emb, Js[0], check_minimal=False)
    M = rec.source
    annI = ann(M)
    if M.is_square_zero:
        tag = decide_tag(True, square_zero=True)
        return ExtensionType(tag, {"M": M, "J": Js[0], "recovery": rec})
    rtype = rrng_type(M)
    tag = decide_tag(True, False, rtype, annI.is_zero())
    out = {"I": M, "J": Js[0], "recovery": rec}
    if tag == "SI":
        out["P"] = annI
    elif tag == "SR":
        out["ann"] = annI
    return ExtensionType(tag, out)


def tag_side_conditions(emb: EmbeddedSubring, tag: str) -> bool:
    """Prime for P/PI, semiprime but not prime for SR/SI, not semiprime for N."""
    big = emb.big
    prime, semi = is_prime(big), is_semiprime(big)
    if tag in ("P", "PI"):
        return prime
    if tag in ("SR", "SI"):
        return semi and not prime
    return not semi


# central refinement


@dataclass(eq=False)
class CentralType:
    tag: str
    M: ElementSet | None
    model: EmbeddedSubring | None
    iso: RHom | None


def quotient_ring(R: FiniteRing, M: ElementSet) -> tuple[FiniteRing, QuotientRRng, dict[int, int]]:
    Q = QuotientRRng(R, M)
    ring, relabel = Q.as_ring(name=f"{R.name}/M")
    return ring, Q, relabel


def product_model(R: FiniteRing, M: ElementSet) -> EmbeddedSubring:
    """R x R/M with R embedded as r -> (r, r + M)."""
    Qr, Q, relabel = quotient_ring(R, M)
    big = product(R, Qr)
    images = [big.index(R.elem(r) + Qr.elem(relabel[Q.project(r)])) for r in range(R.n)]
    return embed(R, big, images, name=f"{R.name} x {R.name}/M")


def idealization_model(R: FiniteRing, M: ElementSet) -> EmbeddedSubring:
    """R trivially extended by the bimodule R/M."""
    X = trivial_extension(QuotientRRng(R, M).as_rrng(square_zero=True, name=f"{R.name}/M"))
    return X.R_embed


def classify_central(emb: EmbeddedSubring | IdealExtension) -> CentralType:
    emb = as_embedding(emb)
    if not is_central_extension(emb):
        raise NotCentral(f"{emb!r} is not a central extension")
    t = classify_minimal_extension(emb)
    if t.tag == "P":
        return CentralType("P", None, None, None)
    R = emb.small
    source = t.witnesses["I"] if t.tag == "SI" else t.witnesses["M"]
    M = ann(source)
    if not is_maximal_ideal(R, M):
        raise AlgebraError("annihilator of a central extension must be maximal")
    model = product_model(R, M) if t.tag == "SI" else idealization_model(R, M)
    ok, iso = r_isomorphic(rrng_over(emb), rrng_over(model))
    if not ok:
        raise AlgebraError(f"no R-isomorphism to the {t.tag} model")
    return CentralType(t.tag, M, model, iso)


# relabelling


def relabel_extension(emb: EmbeddedSubring, seed: int) -> tuple[EmbeddedSubring, np.ndarray]:
    """An R-isomorphic copy of the extension with scrambled element labels and a new basis.

    Returns the copy and the index map old big -> new big.
    """
    big = emb.big
    rng = np.random.default_rng(seed)
    pi = np.concatenate([[0], 1 + rng.permutation(big.n - 1)])
    inv = np.argsort(pi)
    order = [int(x) for x in rng.permutation(big.n)]
    S, relabel = rng_from_tables(order, lambda a, b: int(pi[big.add(int(inv[a]), int(inv[b]))]),
                                 lambda a, b: int(pi[big.mul(int(inv[a]), int(inv[b]))]), name=big.name)
    to_new = np.array([relabel[int(pi[x])] for x in range(big.n)], dtype=np.int64)
    ring = FiniteRing.from_rng(S, int(to_new[big.unity]))
    return embed(emb.small, ring, to_new[emb.map], name=f"{emb.name} relabelled"), to_new


def witnesses_agree(a: ExtensionType, b: ExtensionType) -> bool:
    """Same tag and R-isomorphic (or bimodule-isomorphic, or equal) witnesses."""
    if a.tag != b.tag:
        return False
    if a.tag == "N":
        return bimodule_isomorphic(a.witnesses["M"], b.witnesses["M"])[0]
    if a.tag in ("PI", "SR", "SI"):
        if not r_isomorphic(a.witnesses["I"], b.witnesses["I"])[0]:
            return False
    if a.tag == "SI":
        return a.P == b.P
    return True


# the order-4 census


def _ring_isomorphic(A: FiniteRing, B: FiniteRing) -> bool:
    """Brute force over all bijections fixing 0."""
    if A.n != B.n:
        return False
    n = A.n
    for perm in itertools.permutations(range(1, n)):
        f = (0, *perm)
        if f[A.unity] != B.unity:
            continue
        if all(f[A.add(x, y)] == B.add(f[x], f[y]) and f[A.mul(x, y)] == B.mul(f[x], f[y])
               for x in range(n) for y in range(n)):
            return True
    return False


def order4_unital_rings() -> list[FiniteRing]:
    """Every structure-constant table on (Z/2)^2 giving a unital associative ring."""
    carrier = CarrierGroup((2, 2))
    out = []
    for prods in itertools.product(range(4), repeat=4):
        sc = np.array([carrier.elem(p) for p in prods]).reshape(2, 2, 2)
        try:
            out.append(build_ring(carrier, sc))
        except (NonAssociative, NoUnity):
            continue
    return out


@dataclass
class CensusClass:
    representative: FiniteRing
    count: int
    label: str | None = None
    minimal_over_prime_field: bool = False


def order4_census() -> list[CensusClass]:
    from .catalog import make

    classes: list[CensusClass] = []
    for S in order4_unital_rings():
        for c in classes:
            if _ring_isomorphic(c.representative, S):
                c.count += 1
                break
        else:
            classes.append(CensusClass(S, 1))
    named = {
        "F4": make("gf(4)"),
        "F2xF2": make("product(gf(2),gf(2))"),
        "F2[x]/(x^2)": make("trivial_extension(zero_bimodule(gf(2),0))").E,
    }
    F2 = make("gf(2)")
    for c in classes:
        S = c.representative
        c.label = next((k for k, T in named.items() if _ring_isomorphic(S, T)), None)
        c.minimal_over_prime_field = is_maximal_subring(embed(F2, S, [0, S.unity]))
    return classes
