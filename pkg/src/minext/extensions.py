"""Ideal extensions E(R, I), trivial extensions, and the structure they carry.

E(R, I) lives on the concatenated carrier of R and I, so the element
(r, i) has index ``r * |I| + i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bimodule import (
    QuotientRRng,
    RHom,
    RRng,
    ann,
    bimodule_isomorphic,
    enumerate_rhoms,
    has_nonzero_rhom,
    is_minimal_rrng,
    is_rhom,
    r_isomorphic,
    regular_rrng,
    rrng_from_subset,
    rrng_over,
    rsubrngs,
)
from .core import AlgebraError, CarrierGroup, FiniteRing, build_ring, check_cap
from .substructure import (
    ElementSet,
    EmbeddedSubring,
    canonical,
    center,
    centralizer,
    embed,
    enumerate_ideals,
    idempotents,
    is_ideal,
    is_maximal_ideal,
    is_maximal_subring,
    minimal_ideals,
    set_product,
    set_sum,
    subrings_containing,
)


class NonzeroSquare(AlgebraError):
    pass


class NotAHom(AlgebraError):
    pass


class PreconditionViolated(AlgebraError):
    pass


class NoSuchIdeal(AlgebraError):
    pass


class CorrespondenceFailure(AlgebraError):
    pass


@dataclass(eq=False)
class IdealExtension:
    E: FiniteRing
    R_embed: EmbeddedSubring
    I_image: ElementSet
    source: RRng
    trivial: bool = False

    def __repr__(self):
        kind = "trivial extension" if self.trivial else "ideal extension"
        return f"<{kind} of {self.R.name} by |I|={self.source.n}, order {self.E.n}>"

    @property
    def R(self) -> FiniteRing:
        return self.source.R

    @property
    def I(self):
        return self.source.I

    def pair(self, r: int, i: int) -> int:
        return int(r) * self.source.n + int(i)

    def split(self, x: int) -> tuple[int, int]:
        return divmod(int(x), self.source.n)

    def from_I(self, members) -> ElementSet:
        return ElementSet(self.E, [self.pair(0, i) for i in members])

    def from_R(self, members) -> ElementSet:
        return ElementSet(self.E, [self.pair(r, 0) for r in members])


def ideal_extension(M: RRng, name: str | None = None) -> IdealExtension:
    R, I = M.R, M.I
    check_cap(R.n * I.n, "enumeration", "ideal extension")
    kR, kI = R.k, I.k
    k = kR + kI
    sc = np.zeros((k, k, k), dtype=np.int64)
    sc[:kR, :kR, :kR] = R.sc
    sc[:kR, kR:, kR:] = M.lact
    sc[kR:, :kR, kR:] = M.ract
    sc[kR:, kR:, kR:] = I.sc
    unity = tuple(R.elem(R.unity)) + (0,) * kI
    E = build_ring(CarrierGroup(R.orders + I.orders), sc, unity, name=name or f"E_{R.name}_{M.name or 'I'}")
    R_embed = embed(R, E, [r * I.n for r in range(R.n)], name=f"{R.name} in {E.name}")
    I_image = ElementSet(E, range(I.n), "ideal")
    return IdealExtension(E, R_embed, I_image, M, trivial=I.is_zero_product)


def trivial_extension(R: FiniteRing, M: RRng, name: str | None = None) -> IdealExtension:
    if M.R is not R and M.R.n != R.n:
        raise AlgebraError("bimodule is over a different ring")
    if not M.is_square_zero:
        raise NonzeroSquare("trivial extension needs a bimodule with zero internal product")
    return ideal_extension(M, name or f"{R.name}x{M.name or 'M'}")


# subrings over R


def subrings_over(X: IdealExtension) -> list[tuple[ElementSet, ElementSet]]:
    """Subrings of E containing R paired with the R-subrngs of I, verified as an order isomorphism."""
    E, M = X.E, X.source
    check_cap(E.n, "closure", "subrings over R")
    over = subrings_containing(E, X.R_embed.image)
    pairs = []
    for S in over:
        K = ElementSet(M.I, [i for i in range(M.n) if X.pair(0, i) in S], "R-subrng")
        expected = {X.pair(r, i) for r in range(X.R.n) for i in K.members}
        if set(S.members) != expected:
            raise CorrespondenceFailure(f"subring {S} is not R + K")
        pairs.append((S, K))
    ks = [K for _, K in pairs]
    if len(set(ks)) != len(ks) or set(ks) != set(rsubrngs(M)):
        raise CorrespondenceFailure("subrings over R do not match the R-subrngs of I")
    for (S1, K1) in pairs:
        for (S2, K2) in pairs:
            if (S1 <= S2) != (K1 <= K2):
                raise CorrespondenceFailure("correspondence is not inclusion preserving")
    return pairs


# ideals


def i_phi(X: IdealExtension, phi: RHom | np.ndarray) -> ElementSet:
    """{(phi(i), -i)} for phi in Hom_R(I, R)."""
    M, R = X.source, X.R
    table = phi.table if isinstance(phi, RHom) else np.asarray(phi)
    if len(table) != M.n or not is_rhom(M, regular_rrng(R), table):
        raise NotAHom("map is not an R-homomorphism I -> R")
    out = ElementSet(X.E, [X.pair(int(table[i]), M.neg(i)) for i in range(M.n)], "ideal")
    return out


def complements_of_R(X: IdealExtension) -> list[ElementSet]:
    """Ideals I' of E with R + I' = E and R meeting I' trivially."""
    Rimg = X.R_embed.image
    out = []
    for K in enumerate_ideals(X.E):
        if len(K) == X.source.n and (K & Rimg).is_zero() and set_sum(K, Rimg).is_all():
            out.append(K)
    return out


@dataclass(eq=False)
class IdealRecord:
    members: ElementSet
    kind: str  # "Type1", "Type2" or "Type3"
    A: ElementSet | None = None
    Z: ElementSet | None = None
    phi: np.ndarray | None = None

    def __repr__(self):
        return f"<{self.kind} ideal of size {len(self.members)}>"


def _require_nonsquare_minimal(M: RRng) -> None:
    if M.n == 1 or not is_minimal_rrng(M):
        raise PreconditionViolated("the R-rng must be minimal")
    if M.is_square_zero:
        raise PreconditionViolated("the R-rng must have nonzero square")


def record_for(X: IdealExtension, K: ElementSet) -> IdealRecord:
    """Assign an ideal of E to one of the three families."""
    M, R = X.source, X.R
    Z = ElementSet(R, [r for r in range(R.n) if X.pair(r, 0) in K], "ideal")
    meet = [i for i in range(M.n) if X.pair(0, i) in K]
    if all(X.split(x)[1] == 0 for x in K):
        if not Z <= ann(M):
            raise CorrespondenceFailure(f"{K} is inside R but not inside ann_R(I)")
        return IdealRecord(K, "Type1", A=Z)
    if len(meet) == M.n:
        return IdealRecord(K, "Type2", A=Z)
    Q = QuotientRRng(R, Z)
    phi = np.full(M.n, -1, dtype=np.int64)
    for x in K:
        a, j = X.split(x)
        phi[M.neg(j)] = Q.project(a)
    if (phi < 0).any() or not phi.any():
        raise CorrespondenceFailure(f"{K} does not determine a nonzero map into R/Z")
    if not Z <= ann(M) or not is_rhom(M, Q, phi):
        raise CorrespondenceFailure(f"{K} does not come from an R-homomorphism into R/Z")
    if type3_ideal(X, Z, phi) != K:
        raise CorrespondenceFailure(f"{K} is not the full set determined by (Z, phi)")
    return IdealRecord(K, "Type3", Z=Z, phi=phi)


def classify_ideals(X: IdealExtension) -> list[IdealRecord]:
    _require_nonsquare_minimal(X.source)
    return [record_for(X, K) for K in enumerate_ideals(X.E)]


def type3_ideal(X: IdealExtension, Z: ElementSet, phi: np.ndarray) -> ElementSet:
    R, M = X.R, X.source
    Q = QuotientRRng(R, Z)
    members = [X.pair(a, M.neg(i)) for i in range(M.n) for a in range(R.n) if Q.project(a) == phi[i]]
    return ElementSet(X.E, members)


def described_ideals(X: IdealExtension) -> dict[str, list[ElementSet]]:
    """The three families built from ideals of R and homomorphisms, without looking at E's ideals."""
    _require_nonsquare_minimal(X.source)
    R, M = X.R, X.source
    annI = ann(M)
    ideals_R = enumerate_ideals(R)
    fam1 = [X.from_R(A.members) for A in ideals_R if A <= annI]
    fam2 = [ElementSet(X.E, [X.pair(a, i) for a in A for i in range(M.n)]) for A in ideals_R]
    fam3 = []
    for Z in ideals_R:
        if not Z <= annI:
            continue
        for h in enumerate_rhoms(M, QuotientRRng(R, Z)):
            if not h.is_zero():
                fam3.append(type3_ideal(X, Z, h.table))
    return {"Type1": canonical(fam1), "Type2": canonical(fam2), "Type3": canonical(fam3)}


def annihilators_in_E(X: IdealExtension) -> tuple[ElementSet, ElementSet]:
    """(ann(I_E), ann(_E I)): elements of E killing I from the right, and from the left."""
    E = X.E
    every = np.arange(E.n)
    gens = [X.pair(0, b) for b in X.I.basis]
    right = np.ones(E.n, dtype=bool)
    left = np.ones(E.n, dtype=bool)
    for g in gens:
        right &= E.mul_many(g, every) == 0
        left &= E.mul_many(every, g) == 0
    return ElementSet(E, np.flatnonzero(right).tolist(), "ideal"), ElementSet(E, np.flatnonzero(left).tolist(), "ideal")


def ann_in_E(X: IdealExtension) -> ElementSet:
    right, left = annihilators_in_E(X)
    return right & left


# centrality


def left_module_closure(emb: EmbeddedSubring, seed) -> ElementSet:
    """Left R-submodule of big generated by ``seed``."""
    big = emb.big
    check_cap(big.n, "closure", "left module closure")
    mask = np.zeros(big.n, dtype=bool)
    mask[0] = True
    mask[np.fromiter((int(s) for s in seed), dtype=np.int64)] = True
    rs = emb.map[np.array(emb.small.basis, dtype=np.int64)] if emb.small.k else np.zeros(0, dtype=np.int64)
    frontier = np.flatnonzero(mask)
    while frontier.size:
        members = np.flatnonzero(mask)
        new = np.unique(np.concatenate([
            big.add_many(frontier[:, None], members[None, :]).ravel(),
            big.mul_many(rs[:, None], frontier[None, :]).ravel(),
        ]))
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return ElementSet(big, np.flatnonzero(mask).tolist())


def is_central_extension(emb: EmbeddedSubring) -> bool:
    C = centralizer(emb.big, emb.image)
    return left_module_closure(emb, C.members).is_all()


def centralizer_in_I(X: IdealExtension) -> ElementSet:
    """C_I(R) = {x in I : xr = rx for all r}, as elements of I."""
    M = X.source
    rb = M.R.basis
    ok = [i for i in range(M.n) if all(M.act_left(r, i) == M.act_right(i, r) for r in rb)]
    return ElementSet(M.I, ok)


@dataclass
class BrauerReport:
    meets_center: bool
    idempotent: int | None
    summand: bool
    complement: ElementSet | None = None

    @property
    def agree(self) -> bool:
        return self.meets_center == (self.idempotent is not None) == self.summand

    @property
    def holds(self) -> bool:
        return self.agree and self.meets_center


def brauer_report(R: FiniteRing, I: ElementSet) -> BrauerReport:
    ideals = enumerate_ideals(R)
    if I not in minimal_ideals(R, ideals):
        raise PreconditionViolated("I must be a minimal ideal")
    if set_product(I, I).is_zero():
        raise PreconditionViolated("I must have nonzero square")
    Z = center(R)
    meets = not (I & Z).is_zero()
    central_idem = [e for e in idempotents(R, I & Z) if e != 0]
    complement = None
    for J in ideals:
        if (I & J).is_zero() and set_sum(I, J).is_all() and set_product(I, J).is_zero() and set_product(J, I).is_zero():
            complement = J
            break
    return BrauerReport(meets, central_idem[0] if central_idem else None, complement is not None, complement)


def maincentral_conditions(M: RRng) -> dict[str, bool]:
    """The six conditions characterizing central ideal extensions by a minimal R-rng."""
    R = M.R
    annI = ann(M)
    Q = QuotientRRng(R, annI)
    I = M.I
    unity_of_I = [u for u in range(I.n) if all(I.mul(u, e) == e and I.mul(e, u) == e for e in I.basis)]
    Zi = center(I) if I.n > 1 else ElementSet(I, [0])
    X = ideal_extension(M)
    return {
        "iso_to_quotient": r_isomorphic(M, Q)[0],
        "is_ring": bool(unity_of_I),
        "central_idempotent": any(e != 0 for e in idempotents(I, Zi)),
        "hom_from_R": has_nonzero_rhom(regular_rrng(R), M),
        "hom_to_quotient_and_maximal": has_nonzero_rhom(M, Q) and is_maximal_ideal(R, annI),
        "central_and_nonsquare": is_central_extension(X.R_embed) and not M.is_square_zero,
    }


def centralchar_holds(M: RRng) -> tuple[bool, bool]:
    """(E(R,I) central, I bimodule-isomorphic to R/ann_R(I))."""
    X = ideal_extension(M)
    return is_central_extension(X.R_embed), bimodule_isomorphic(M, QuotientRRng(M.R, ann(M)))[0]


# recovering E(R, J) from an extension


@dataclass(eq=False)
class Recovery:
    source: RRng
    extension: IdealExtension
    iso: np.ndarray  # big index -> E index, fixing R


def trivial_meet_ideals(emb: EmbeddedSubring) -> list[ElementSet]:
    img = emb.image
    return [J for J in enumerate_ideals(emb.big) if not J.is_zero() and (J & img).is_zero()]


def recover_ideal_extension(emb: EmbeddedSubring, J: ElementSet | None = None, check_minimal: bool = True) -> Recovery:
    """Present a minimal extension with a trivially meeting ideal J as E(R, J)."""
    big, small = emb.big, emb.small
    if check_minimal and not is_maximal_subring(emb):
        raise PreconditionViolated("the extension is not minimal")
    if J is None:
        found = trivial_meet_ideals(emb)
        if not found:
            raise NoSuchIdeal("no nonzero ideal meets the subring trivially")
        J = found[0]
    if J.is_zero() or not is_ideal(big, J) or not (J & emb.image).is_zero():
        raise NoSuchIdeal("J must be a nonzero ideal meeting the subring trivially")
    M, relabel = rrng_from_subset(big, emb, J, name=f"J in {big.name}")
    X = ideal_extension(M)
    iso = np.full(big.n, -1, dtype=np.int64)
    for r in range(small.n):
        base = emb(r)
        for j in J:
            iso[big.add(base, j)] = X.pair(r, relabel[j])
    if (iso < 0).any():
        raise NoSuchIdeal("R + J is not the whole extension")
    E = X.E
    for x in big.basis:
        for y in big.basis:
            if iso[big.mul(x, y)] != E.mul(int(iso[x]), int(iso[y])):
                raise AlgebraError("recovered map is not multiplicative")
    return Recovery(M, X, iso)


def r_isomorphic_extensions(a: EmbeddedSubring, b: EmbeddedSubring) -> tuple[bool, RHom | None]:
    """Whether two extensions of the same R are isomorphic by a ring map fixing R."""
    if a.big.n != b.big.n:
        return False, None
    return r_isomorphic(rrng_over(a), rrng_over(b))
