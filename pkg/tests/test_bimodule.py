import numpy as np
import pytest

from minext.bimodule import (
    AxiomViolation,
    NotMinimal,
    QuotientRRng,
    ZeroRng,
    ann,
    annihilators,
    bimodule_isomorphic,
    brute_force_rhoms,
    enumerate_rhoms,
    has_nonzero_rhom,
    is_minimal_rrng,
    is_rhom,
    r_isomorphic,
    rrng_type,
    rsubrngs,
    validate_rrng,
)
from minext.catalog import make
from minext.core import FiniteRng
from minext.corpus import MINIMAL_RRNGS, NON_MINIMAL_RRNGS
from oracles import literal_hom_scan


def test_twisted_field_validates_and_corruption_is_named():
    M = make("twisted_field(4,1)")
    assert M.n == 4
    R = M.R
    bad = M.ract.copy()
    bad[0, 1] = (bad[0, 1] + [1, 0]) % 2
    with pytest.raises(AxiomViolation) as err:
        validate_rrng(R, M.I, M.lact, bad)
    assert err.value.axiom in {"unital-right", "right-module", "bimodule", "well-defined-right"}


def test_non_unital_left_action_rejected():
    R = make("gf(2)")
    I = FiniteRng(R.carrier, np.zeros_like(R.sc))
    with pytest.raises(AxiomViolation) as err:
        validate_rrng(R, I, [[[0]]], [[[1]]])
    assert err.value.axiom == "unital-left"


def test_compatibility_violation():
    # F2 acting by zero on the right but I has identity product
    R = make("gf(2)")
    I = FiniteRng(R.carrier, R.sc)
    with pytest.raises(AxiomViolation):
        validate_rrng(R, I, [[[1]]], [[[0]]])


def test_annihilator_examples():
    assert ann(make("ideal_as_rrng(zmod(4),2)")).sorted() == [0, 2]
    assert ann(make("regular_rrng(gf(4))")).is_zero()
    M = make("zero_bimodule(tri(2,2),1)")
    A = annihilators(M)
    assert A.two_sided == A.left & A.right
    assert len(A.two_sided) == 4


@pytest.mark.parametrize("spec", MINIMAL_RRNGS)
def test_corpus_minimal(spec):
    assert is_minimal_rrng(make(spec))


@pytest.mark.parametrize("spec", NON_MINIMAL_RRNGS)
def test_corpus_not_minimal(spec):
    assert not is_minimal_rrng(make(spec))


def test_f4_over_f2_is_not_minimal_and_zero_rng_raises():
    assert not is_minimal_rrng(make("as_rrng(prime_subfield(4))"))
    with pytest.raises(ZeroRng):
        is_minimal_rrng(make("zero_bimodule(gf(2),1)"))


def test_rsubrngs_of_f4_over_f2():
    # R-subrngs of F4 over F2: 0, F2 and F4
    assert [len(K) for K in rsubrngs(make("as_rrng(prime_subfield(4))"))] == [1, 2, 4]


def test_hom_examples():
    F4 = make("regular_rrng(gf(4))")
    homs = enumerate_rhoms(F4, F4)
    assert len(homs) == 2  # zero and identity
    assert sum(h.is_bijective() for h in homs) == 1
    assert len(enumerate_rhoms(F4, F4, multiplicative=False)) == 4  # F4-linear maps F4 -> F4
    Z4 = make("ideal_as_rrng(zmod(4),2)")
    incl = [h for h in enumerate_rhoms(Z4, make("regular_rrng(zmod(4))")) if not h.is_zero()]
    assert [h.table.tolist() for h in incl] == [[0, 2]]
    assert has_nonzero_rhom(Z4, QuotientRRng(Z4.R, ann(Z4)), multiplicative=False)


def test_isomorphism_examples():
    tw = make("twisted_field(4,1)")
    assert not bimodule_isomorphic(tw, make("zero_bimodule(gf(4),0)"))[0]
    assert bimodule_isomorphic(tw, tw)[0]
    ok, h = r_isomorphic(make("regular_rrng(gf(9))"), make("regular_rrng(gf(9))"))
    assert ok and h.is_bijective()
    assert not r_isomorphic(make("twisted_field(8,1)"), make("twisted_field(8,2)"))[0]


@pytest.mark.parametrize("spec,expected", [
    ("regular_rrng(gf(2))", "T3"), ("zero_bimodule(gf(3),0)", "T1"), ("twisted_field(4,1)", "T1"),
    ("ideal_as_rrng(zmod(4),2)", "T1"), ("quotient_rrng(zmod(4),2)", "T3"),
    ("regular_rrng(mat(2,2))", "T3"), ("quotient_rrng(tri(2,2),1)", "T3"),
])
def test_rrng_type_examples(spec, expected):
    assert rrng_type(make(spec)) == expected


def test_rrng_type_needs_minimal():
    with pytest.raises(NotMinimal):
        rrng_type(make("regular_rrng(zmod(4))"))


SMALL_PAIRS = [(a, b) for a in MINIMAL_RRNGS + NON_MINIMAL_RRNGS for b in MINIMAL_RRNGS + NON_MINIMAL_RRNGS
               if make(a).R is make(b).R and make(a).n <= 9 and make(b).n <= 9]


@pytest.mark.parametrize("a,b", SMALL_PAIRS)
@pytest.mark.parametrize("mult", [True, False])
def test_hom_engine_matches_oracles(a, b, mult):
    A, B = make(a), make(b)
    engine = sorted(tuple(h.table.tolist()) for h in enumerate_rhoms(A, B, mult))
    assert engine == sorted(brute_force_rhoms(A, B, mult))
    if A.n <= 4 or B.n ** A.n <= 20000:
        assert engine == sorted(literal_hom_scan(A, B, mult))
    assert all(is_rhom(A, B, t, mult) for t in engine)
