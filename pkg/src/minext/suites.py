"""Named verification suites: each checks one structural result over a corpus.

A suite is a list of instance ids plus a check returning the failed
assertions for one instance.  Instance ids are catalog spec strings (or
short labels for one-off suites), so workers rebuild instances from ids.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import corpus
from .bimodule import (
    QuotientRRng,
    annihilators,
    bimodule_isomorphic,
    enumerate_rhoms,
    has_nonzero_rhom,
    is_minimal_rrng,
    is_rhom,
    r_isomorphic,
    regular_rrng,
    rrng_from_subset,
    rrng_type,
)
from .catalog import make
from .classify import (
    NotCentral,
    as_embedding,
    classify_central,
    classify_minimal_extension,
    order4_census,
    relabel_extension,
    tag_side_conditions,
    witnesses_agree,
)
from .core import AlgebraError, Caps, using_caps
from .extensions import (
    IdealExtension,
    ann_in_E,
    annihilators_in_E,
    brauer_report,
    centralchar_holds,
    centralizer_in_I,
    classify_ideals,
    complements_of_R,
    described_ideals,
    i_phi,
    ideal_extension,
    is_central_extension,
    maincentral_conditions,
    r_isomorphic_extensions,
    subrings_over,
)
from .substructure import (
    ElementSet,
    center,
    centralizer,
    enumerate_ideals,
    ideals_over,
    is_maximal_subring,
    is_prime,
    is_prime_ideal,
    is_semiprime,
    is_semiprime_ideal,
    is_simple,
    is_subdirectly_irreducible_ideal,
    little_ideal,
    minimal_ideals,
    prime_radical,
    set_product,
)


class UnknownSuite(AlgebraError):
    pass


Failure = tuple[str, str]


@dataclass
class VerificationReport:
    suite_id: str
    instances: int = 0
    passes: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.passes == self.instances

    def summary_line(self) -> str:
        return f"SUITE {self.suite_id}: {self.passes}/{self.instances} PASS"

    def lines(self) -> list[str]:
        out = [f"FAIL {inst}: {what} [{witness}]" for inst, what, witness in self.failures]
        out += [f"NOTE {n}" for n in self.notes]
        out.append(self.summary_line())
        return out


@dataclass(frozen=True)
class Suite:
    instances: Callable[[int | None], list[str]]
    check: Callable[[str], list[Failure]]
    note: Callable[[list[tuple[str, list[Failure]]]], list[str]] | None = None


def _rrng(spec):
    return make(spec)


def _fail(cond: bool, what: str, witness="") -> list[Failure]:
    return [] if cond else [(what, str(witness))]


# per-R-rng suites


def check_minimalann(spec: str) -> list[Failure]:
    M = _rrng(spec)
    R = M.R
    t = annihilators(M)
    out = _fail(is_minimal_rrng(M), "instance is minimal")
    out += _fail(is_prime_ideal(R, t.right), "ann(I_R) is prime", t.right)
    out += _fail(is_prime_ideal(R, t.left), "ann(_R I) is prime", t.left)
    out += _fail(is_semiprime_ideal(R, t.two_sided), "ann_R(I) is semiprime", t.two_sided)
    if not M.is_square_zero:
        out += _fail(t.right == t.left == t.two_sided, "annihilators coincide when I^2 != 0")
        out += _fail(len(enumerate_ideals(M.I)) == 2, "I is simple as a rng")
    return out


def check_produce(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    try:
        pairs = subrings_over(X)
    except AlgebraError as exc:
        return [("subrings over R correspond to R-subrngs", str(exc))]
    out = _fail(len(pairs) >= 2, "at least R and E lie over R", len(pairs))
    out += _fail(is_maximal_subring(X.R_embed) == is_minimal_rrng(M), "E minimal over R iff I minimal")
    return out


def check_posers(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    homs = enumerate_rhoms(M, regular_rrng(M.R))
    from_homs = {i_phi(X, h) for h in homs}
    comps = set(complements_of_R(X))
    out = _fail(len(from_homs) == len(homs), "phi -> I_phi is injective", len(homs))
    out += _fail(from_homs == comps, "I_phi are exactly the ideal complements of R",
                 f"{len(from_homs)} vs {len(comps)}")
    return out


def check_suffiso(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    out = []
    for h in enumerate_rhoms(M, regular_rrng(M.R)):
        if not h.is_injective():
            continue
        K = i_phi(X, h)
        N, relabel = rrng_from_subset(X.E, X.R_embed, K)
        table = np.array([relabel[X.pair(h(i), M.neg(i))] for i in range(M.n)])
        ok = len(set(table.tolist())) == N.n and is_rhom(M, N, table)
        out += _fail(ok, "i -> (phi(i), -i) is an R-isomorphism onto I_phi", h.images)
    return out


def idealcancel_instances(max_order):
    """Pairs of minimal R-rngs over the same ring object with the same order."""
    specs = corpus.select(corpus.MINIMAL_RRNGS, max_order)
    out = []
    for a, b in itertools.combinations(specs, 2):
        Ma, Mb = make(a), make(b)
        if Ma.R is Mb.R and Ma.n == Mb.n:
            out.append(f"{a} | {b}")
    return out


def check_idealcancel(pair: str) -> list[Failure]:
    a, b = pair.split(" | ")
    Ma, Mb = make(a), make(b)
    ext_iso = r_isomorphic_extensions(ideal_extension(Ma).R_embed, ideal_extension(Mb).R_embed)[0]
    iso = r_isomorphic(Ma, Mb)[0]
    return _fail(ext_iso == iso, "E(R,I) ~ E(R,I') iff I ~ I'", f"E iso {ext_iso}, I iso {iso}")


def nonsquare_instances(max_order):
    return [s for s in corpus.select(corpus.MINIMAL_RRNGS, max_order) if not make(s).is_square_zero]


def check_idealdescription(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    try:
        records = classify_ideals(X)
    except AlgebraError as exc:
        return [("every ideal falls into a family", str(exc))]
    fams = described_ideals(X)
    out = []
    for kind in ("Type1", "Type2", "Type3"):
        got = {r.members for r in records if r.kind == kind}
        want = set(fams[kind])
        out += _fail(got == want, f"{kind} ideals match the description", f"{len(got)} vs {len(want)}")
    total = sum(len(v) for v in fams.values())
    out += _fail(total == len(records), "families are disjoint and exhaustive", f"{total} vs {len(records)}")
    hom = has_nonzero_rhom(M, QuotientRRng(M.R, annihilators(M).two_sided))
    out += _fail(bool(fams["Type3"]) == hom, "Type3 nonempty iff Hom_R(I, R/ann) != 0")
    return out


def check_semiprimeoversemiprime(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    lhs = is_semiprime(X.E)
    rhs = is_semiprime(M.R) and not M.is_square_zero
    return _fail(lhs == rhs, "E semiprime iff R semiprime and I^2 != 0", f"{lhs} vs {rhs}")


def check_primeidealext(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    R = M.R
    c1 = is_prime(X.E)
    right, left = annihilators_in_E(X)
    c2 = right.is_zero() and left.is_zero()
    c3 = (not M.is_square_zero) and annihilators(M).two_sided.is_zero() and not has_nonzero_rhom(M, regular_rrng(R))
    out = _fail(c1 == c2 == c3, "E prime iff ann(I_E) = ann(_E I) = 0 iff (I^2 != 0, ann = 0, Hom_R(I,R) = 0)",
                (c1, c2, c3))
    if c1:
        out += _fail(is_prime(R), "E prime implies R prime")
    return out


def check_annideals(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    A = annihilators(M).two_sided
    P = X.from_R(A.members)
    nonsq = not M.is_square_zero
    hom = has_nonzero_rhom(M, QuotientRRng(M.R, A))
    out = _fail(is_semiprime_ideal(X.E, P) == nonsq, "ann_R(I)+0 semiprime iff I^2 != 0")
    out += _fail(is_prime_ideal(X.E, P) == (nonsq and not hom), "ann_R(I)+0 prime iff I^2 != 0 and Hom = 0")
    return out


def check_thethreetypes(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    t = rrng_type(M)
    A = ann_in_E(X)
    Iimg, Rimg = X.I_image, X.R_embed.image
    return _fail(
        (t == "T1") == (Iimg <= A)
        and (t == "T2") == (A <= Rimg)
        and (t == "T3") == ((A & Iimg).is_zero() and not A <= Rimg),
        "type agrees with the annihilator of I in E", t)


def check_subdirectprime(spec: str) -> list[Failure]:
    M = _rrng(spec)
    R = M.R
    A = annihilators(M).two_sided
    hom = has_nonzero_rhom(M, QuotientRRng(R, A))
    ideals = enumerate_ideals(R)
    cond = is_prime_ideal(R, A) and is_subdirectly_irreducible_ideal(R, A, ideals)
    if cond:
        above = [J for J in ideals_over(ideals, A) if J != A]
        L = min(above, key=len)
        cond = r_isomorphic(M, QuotientRRng(R, A, within=L))[0]
    return _fail(hom == cond, "Hom_R(I, R/ann) != 0 iff R/ann is s.i. prime with little ideal ~ I", (hom, cond))


def check_centralstuff(spec: str) -> list[Failure]:
    M = _rrng(spec)
    X = ideal_extension(M)
    C = centralizer_in_I(X)
    central = is_central_extension(X.R_embed)
    out = _fail(central == (not C.is_zero()), "E central iff C_I(R) != 0", (central, len(C)))
    out += _fail(X.from_I(C.members) <= center(X.E), "C_I(R) lies in the center of E")
    return out


def check_maincentral(spec: str) -> list[Failure]:
    conds = maincentral_conditions(_rrng(spec))
    return _fail(len(set(conds.values())) == 1, "the six conditions agree", conds)


def check_centralchar(spec: str) -> list[Failure]:
    M = _rrng(spec)
    central, biso = centralchar_holds(M)
    out = _fail(central == biso, "E central iff I ~ R/ann as bimodules", (central, biso))
    if central:
        from .substructure import is_maximal_ideal

        out += _fail(is_maximal_ideal(M.R, annihilators(M).two_sided), "ann_R(I) is maximal")
    return out


# ring-level suites


def brauer_instances(max_order):
    out = []
    for spec in corpus.RINGS:
        R = make(spec)
        if max_order is not None and R.n > max_order:
            continue
        out.append(spec)
    return out


def check_brauer(spec: str) -> list[Failure]:
    R = make(spec)
    out = []
    for I in minimal_ideals(R):
        if set_product(I, I).is_zero():
            continue
        rep = brauer_report(R, I)
        out += _fail(rep.agree, "I meets Z(R) iff central idempotent in I iff direct summand", (I, rep))
    return out


def check_primecenter(spec: str) -> list[Failure]:
    R = make(spec)
    if not is_prime(R):
        return []
    L = little_ideal(R)
    if L is None:
        return [("prime ring with a minimal ideal is subdirectly irreducible", spec)]
    meets = not (L & center(R)).is_zero()
    return _fail(meets == is_simple(R), "little ideal meets the center iff simple", meets)


# extension-level suites


def all_extensions(max_order):
    return corpus.select(corpus.PRIME_BASE_EXTENSIONS + corpus.OTHER_EXTENSIONS, max_order)


def prime_extensions(max_order):
    return corpus.select(corpus.PRIME_BASE_EXTENSIONS, max_order)


def check_semiprimeovercentral(spec: str) -> list[Failure]:
    emb = as_embedding(make(spec))
    if not is_central_extension(emb):
        return []
    out = []
    if is_prime(emb.big):
        out += _fail(is_prime(emb.small), "central prime extension has prime base")
    if is_semiprime(emb.big):
        out += _fail(is_semiprime(emb.small), "central semiprime extension has semiprime base")
    return out


def partial_reduction_map(emb):
    """The surjection S -> R/Nil(R), s = r + t with t in Nil(S) mapping to r + Nil(R).

    Returns (table on S, quotient, radical of S, radical of R) or None when Nil(S) lies in R.
    """
    big, small = emb.big, emb.small
    NS = prime_radical(big)
    if NS <= emb.image:
        return None
    NR = prime_radical(small)
    Q = QuotientRRng(small, NR)
    table = np.full(big.n, -1, dtype=np.int64)
    for r in range(small.n):
        q = Q.project(r)
        for t in NS:
            s = big.add(emb(r), t)
            if table[s] >= 0 and table[s] != q:
                raise AlgebraError("decomposition s = r + t is not well defined modulo Nil(R)")
            table[s] = q
    return table, Q, NS, NR


def check_partialreduction(spec: str) -> list[Failure]:
    emb = as_embedding(make(spec))
    big = emb.big
    try:
        got = partial_reduction_map(emb)
    except AlgebraError as exc:
        return [("surjection is well defined", str(exc))]
    if got is None:
        return []
    table, Q, NS, NR = got
    out = _fail(NR == emb.pullback(NS & emb.image), "Nil(R) = Nil(S) meets R", (NR, NS))
    out += _fail((table >= 0).all(), "R + Nil(S) = S")
    if out:
        return out
    hom = all(table[big.add(x, y)] == Q.add(int(table[x]), int(table[y]))
              and table[big.mul(x, y)] == Q.mul(int(table[x]), int(table[y]))
              for x in range(big.n) for y in big.basis)
    hom = hom and all(table[big.mul(y, x)] == Q.mul(int(table[y]), int(table[x]))
                      for x in range(big.n) for y in big.basis)
    out += _fail(hom, "the map is a ring homomorphism")
    out += _fail(set(table.tolist()) == set(range(Q.n)), "the map is onto R/Nil(R)")
    out += _fail(ElementSet(big, np.flatnonzero(table == 0).tolist()) == NS, "kernel is Nil(S)")
    return out


def partialreduction_instances(max_order):
    extra = ["ideal_extension(zero_bimodule(gf(2),0))"]
    specs = corpus.select(corpus.PRIME_BASE_EXTENSIONS + corpus.OTHER_EXTENSIONS, max_order)
    return extra + [s for s in specs if s not in extra]


def check_primeext(spec: str) -> list[Failure]:
    emb = as_embedding(make(spec))
    t = classify_minimal_extension(emb)
    out = _fail(t.tag in ("P", "PI", "SR", "SI", "N"), "a tag is assigned", t.tag)
    out += _fail(tag_side_conditions(emb, t.tag), "prime/semiprime side conditions", t.tag)
    if t.tag == "SI":
        P = t.P
        out += _fail(is_prime_ideal(emb.small, P) and is_subdirectly_irreducible_ideal(emb.small, P),
                     "P is a subdirectly irreducible prime ideal", P)
    for seed in (1, 2):
        copy, _ = relabel_extension(emb, seed)
        out += _fail(witnesses_agree(t, classify_minimal_extension(copy)), "witnesses stable under relabelling",
                     seed)
    return out


def simple_extensions(max_order):
    return [s for s in prime_extensions(max_order) if is_simple(as_embedding(make(s)).small)]


def check_simplechar(spec: str) -> list[Failure]:
    emb = as_embedding(make(spec))
    R = emb.small
    t = classify_minimal_extension(emb)
    central = is_central_extension(emb)
    out = _fail(t.tag in ("P", "PI", "SI", "N"), "one of the four forms", t.tag)
    if t.tag == "P":
        out += _fail(is_simple(emb.big), "type P over a simple ring is simple")
    elif t.tag == "PI":
        out += _fail(not central, "PI is never central")
        out += _fail(len(enumerate_ideals(emb.big)) == 3, "PI has a unique proper nonzero ideal")
    elif t.tag == "SI":
        out += _fail(central, "SI is central")
        model = classify_central(emb).model
        out += _fail(model.big.n == R.n * R.n, "SI is R x R", model.big.n)
    elif t.tag == "N":
        biso = bimodule_isomorphic(t.witnesses["M"], regular_rrng(R))[0]
        out += _fail(biso == central, "M ~ R as bimodules iff central", (biso, central))
    return out


def succinct_instances(max_order):
    return [s for s in prime_extensions(max_order) if is_central_extension(as_embedding(make(s)))]


def check_succinctcentral(spec: str) -> list[Failure]:
    emb = as_embedding(make(spec))
    try:
        c = classify_central(emb)
    except AlgebraError as exc:
        return [("central refinement succeeds", str(exc))]
    out = _fail(c.tag in ("P", "SI", "N"), "one of the three central forms", c.tag)
    if c.tag != "P":
        out += _fail(c.iso is not None and c.iso.is_bijective(), "R-isomorphism to the model", c.tag)
    return out


def check_noncentral_refusal(spec: str) -> list[Failure]:
    try:
        classify_central(as_embedding(make(spec)))
    except NotCentral:
        return []
    return [("non-central extension is refused", spec)]


def no_t2_instances(max_order):
    return corpus.select(corpus.MINIMAL_RRNGS, max_order) + prime_extensions(max_order)


def check_no_t2(spec: str) -> list[Failure]:
    obj = make(spec)
    if isinstance(obj, IdealExtension) or not hasattr(obj, "lact"):
        t = classify_minimal_extension(as_embedding(obj)).tag
        return _fail(t not in ("PI", "SR"), "no finite PI or SR extension (finding if violated)", t)
    return _fail(rrng_type(obj) != "T2", "no finite T2 R-rng (finding if violated)")


def tag_census_note(results) -> list[str]:
    tags: dict[str, int] = {}
    for inst, _ in results:
        obj = make(inst)
        if isinstance(obj, IdealExtension) or not hasattr(obj, "lact"):
            t = classify_minimal_extension(as_embedding(obj)).tag
            tags[t] = tags.get(t, 0) + 1
    line = " ".join(f"{t}={tags.get(t, 0)}" for t in ("P", "PI", "SR", "SI", "N"))
    return [f"tag census {line}", f"PI and SR empty: {not tags.get('PI') and not tags.get('SR')}"]


# one-off suites


def check_order4(_: str) -> list[Failure]:
    classes = order4_census()
    labels = sorted(c.label or "?" for c in classes)
    out = _fail(labels == sorted(["F4", "F2xF2", "F2[x]/(x^2)"]), "three classes F4, F2xF2, F2[x]/(x^2)", labels)
    out += _fail(all(c.minimal_over_prime_field for c in classes), "each is minimal over F2")
    return out


def check_finiteindex(_: str) -> list[Failure]:
    emb = make("regular_embed(4)")
    S = emb.big
    out = _fail(is_maximal_subring(emb), "F4 is a maximal subring of M2(F2)")
    out += _fail(is_prime(S), "M2(F2) is prime")
    out += _fail(not S.is_commutative(), "M2(F2) is noncommutative")
    zero_divisor = any(S.mul(a, b) == 0 for a in range(1, S.n) for b in range(1, S.n))
    out += _fail(zero_divisor, "M2(F2) is not a division ring")
    out += _fail(centralizer(S, emb.image) == emb.image, "the image is its own centralizer")
    return out


def check_bergman(inst: str) -> list[Failure]:
    n = int(inst.split("=")[1])
    bad = make(f"bergman_level({n},2)").violations()
    return _fail(not bad, "Bergman identities on all basis pairs", bad[:3])


SUITES: dict[str, Suite] = {
    "minimalann": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_minimalann),
    "produce": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS + corpus.NON_MINIMAL_RRNGS, m), check_produce),
    "posers": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_posers),
    "suffiso": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_suffiso),
    "idealcancel": Suite(idealcancel_instances, check_idealcancel),
    "idealdescription": Suite(nonsquare_instances, check_idealdescription),
    "semiprimeoversemiprime": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_semiprimeoversemiprime),
    "primeidealext": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_primeidealext),
    "annideals": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_annideals),
    "thethreetypes": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_thethreetypes),
    "subdirectprime": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_subdirectprime),
    "centralstuff": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_centralstuff),
    "brauer": Suite(brauer_instances, check_brauer),
    "primecenter": Suite(brauer_instances, check_primecenter),
    "maincentral": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_maincentral),
    "centralchar": Suite(lambda m: corpus.select(corpus.MINIMAL_RRNGS, m), check_centralchar),
    "semiprimeovercentral": Suite(all_extensions, check_semiprimeovercentral),
    "partialreduction": Suite(partialreduction_instances, check_partialreduction),
    "primeext": Suite(prime_extensions, check_primeext, tag_census_note),
    "simplechar": Suite(simple_extensions, check_simplechar),
    "succinctcentral": Suite(succinct_instances, check_succinctcentral),
    "no-finite-T2": Suite(no_t2_instances, check_no_t2, tag_census_note),
    "order4-census": Suite(lambda m: ["order4"], check_order4),
    "finiteindex-witness": Suite(lambda m: ["F4 in M2(F2)"], check_finiteindex),
    "bergman-levels": Suite(lambda m: ["n=1", "n=2"], check_bergman),
}


def _run_one(suite_id: str, inst: str, caps: Caps | None) -> list[Failure]:
    with using_caps(caps or Caps()):
        try:
            return SUITES[suite_id].check(inst)
        except AlgebraError as exc:
            return [("instance raised", f"{type(exc).__name__}: {exc}")]


def run_suite(suite_id: str, max_order: int | None = None, jobs: int = 1, caps: Caps | None = None,
              instances: list[str] | None = None) -> VerificationReport:
    if suite_id not in SUITES:
        raise UnknownSuite(suite_id)
    suite = SUITES[suite_id]
    with using_caps(caps or Caps()):
        ids = list(instances) if instances is not None else suite.instances(max_order)
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, [suite_id] * len(ids), ids, [caps] * len(ids)))
    else:
        results = [_run_one(suite_id, inst, caps) for inst in ids]
    report = VerificationReport(suite_id, instances=len(ids))
    for inst, fails in zip(ids, results):
        if fails:
            report.failures.extend((inst, what, witness) for what, witness in fails)
        else:
            report.passes += 1
    if suite.note is not None:
        report.notes.extend(suite.note(list(zip(ids, results))))
    return report
