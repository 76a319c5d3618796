import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from minext.catalog import make, matrix_to_index
from minext.substructure import (
    ElementSet,
    NotAnEmbedding,
    center,
    centralizer,
    close,
    embed,
    enumerate_ideals,
    find_embeddings,
    idempotents,
    is_maximal_ideal,
    is_maximal_subring,
    is_prime,
    is_semiprime,
    is_simple,
    little_ideal,
    minimal_ideals,
    prime_radical,
    subrings_containing,
)
from oracles import brute_ideals, brute_subrngs, prime_by_definition, semiprime_by_definition

SMALL = ["gf(2)", "gf(4)", "gf(8)", "zmod(4)", "zmod(6)", "zmod(8)", "zmod(9)", "zmod(12)", "tri(2,2)",
         "product(gf(2),gf(2))", "product(gf(2),gf(3))", "product(zmod(4),gf(2))", "mat(2,2)"]


def M2(entries):
    return matrix_to_index(make("mat(2,2)"), np.array(entries).reshape(2, 2))


E11, E12, E21, E22 = M2([1, 0, 0, 0]), M2([0, 1, 0, 0]), M2([0, 0, 1, 0]), M2([0, 0, 0, 1])


def test_close_generates_the_matrix_ring():
    S = make("mat(2,2)")
    upper = close(S, [E11, E12, E22])
    assert len(upper) == 8
    assert close(S, upper.sorted() + [E21]).is_all()


def test_close_single_idempotent():
    S = make("mat(2,2)")
    assert close(S, [E11]).sorted() == sorted([0, E11])


def test_close_ideal_of_a_matrix_unit_is_everything():
    assert close(make("mat(2,2)"), [E12], mode="ideal").is_all()


@settings(max_examples=30)
@given(st.sampled_from(SMALL), st.data())
def test_close_is_monotone_and_idempotent(spec, data):
    S = make(spec)
    a = data.draw(st.sets(st.integers(0, S.n - 1), max_size=3))
    b = a | data.draw(st.sets(st.integers(0, S.n - 1), max_size=2))
    for mode in ("subrng", "ideal"):
        A, B = close(S, a, mode), close(S, b, mode)
        assert A <= B
        assert close(S, A, mode) == A


@pytest.mark.parametrize("spec", SMALL)
def test_ideals_match_power_set_scan(spec):
    S = make(spec)
    assert {X.members for X in enumerate_ideals(S)} == brute_ideals(S)


def test_matrix_ring_ideals():
    assert len(enumerate_ideals(make("mat(2,2)"))) == 2
    assert len(enumerate_ideals(make("tri(2,2)"))) == 5


@pytest.mark.parametrize("spec", ["gf(4)", "zmod(6)", "tri(2,2)", "product(gf(2),gf(2))"])
def test_subrings_over_zero_match_power_set_scan(spec):
    S = make(spec)
    found = {X.members for X in subrings_containing(S, ElementSet(S, [0]))}
    assert found == brute_subrngs(S)


@pytest.mark.parametrize("spec", SMALL + ["mat(2,3)", "product(mat(2,2),gf(2))"])
def test_prime_and_semiprime_match_definitions(spec):
    S = make(spec)
    if S.n > 16:
        ideals = [X.members for X in enumerate_ideals(S)]
    else:
        ideals = brute_ideals(S)
    assert is_prime(S) == prime_by_definition(S, ideals)
    assert is_semiprime(S) == semiprime_by_definition(S, ideals)


@pytest.mark.parametrize("spec,prime,semi", [
    ("gf(2)", True, True), ("mat(2,2)", True, True), ("zmod(4)", False, False),
    ("product(gf(2),gf(2))", False, True), ("tri(2,2)", False, False), ("zmod(6)", False, True),
])
def test_prime_examples(spec, prime, semi):
    S = make(spec)
    assert (is_prime(S), is_semiprime(S)) == (prime, semi)


def test_prime_radical_examples():
    Z4 = make("zmod(4)")
    assert prime_radical(Z4).sorted() == [0, 2]
    assert prime_radical(make("gf(4)")).is_zero()
    T = make("tri(2,2)")
    rad = prime_radical(T)
    assert len(rad) == 2
    assert all(T.mul(x, y) == 0 for x in rad for y in rad)


@pytest.mark.parametrize("spec", SMALL)
def test_prime_radical_is_nil_ideal_with_semiprime_quotient(spec):
    S = make(spec)
    rad = prime_radical(S)
    assert rad in enumerate_ideals(S)
    for x in rad:
        y, k = x, 0
        while y != 0 and k < S.n:
            y, k = S.mul(y, x), k + 1
        assert y == 0
    assert rad.is_zero() == is_semiprime(S)


def test_little_ideal_examples():
    T = make("tri(2,2)")
    L = little_ideal(T)
    assert L is not None and len(L) == 2
    assert little_ideal(make("product(gf(2),gf(2))")) is None
    assert little_ideal(make("zmod(8)")).sorted() == [0, 4]
    assert len(minimal_ideals(make("product(gf(2),gf(2))"))) == 2


def test_centralizer_examples():
    S = make("mat(2,2)")
    assert center(S).sorted() == sorted([0, M2([1, 0, 0, 1])])
    assert centralizer(S, [E11]).sorted() == sorted([0, E11, E22, M2([1, 0, 0, 1])])
    assert center(make("gf(8)")).is_all()


def test_idempotents_and_simplicity():
    S = make("mat(2,2)")
    assert len(idempotents(S)) == 8
    assert is_simple(S) and is_simple(make("gf(9)"))
    assert not is_simple(make("tri(2,2)"))
    assert is_maximal_ideal(make("zmod(4)"), ElementSet(make("zmod(4)"), [0, 2]))


def test_maximal_subring_examples():
    assert is_maximal_subring(make("tri_in_mat(2,2)"))
    S = make("mat(2,2)")
    F2 = make("gf(2)")
    assert not is_maximal_subring(embed(F2, S, [0, S.unity]))
    assert is_maximal_subring(make("regular_embed(4)"))
    assert is_maximal_subring(make("prime_subfield(4)"))


def test_prime_subfield_of_f8_is_maximal():
    # F8 has no intermediate field, so F2 is maximal in it
    assert is_maximal_subring(make("prime_subfield(8)"))
    F2 = make("gf(2)")
    G = make("product(gf(2),gf(2),gf(2))")
    assert not is_maximal_subring(embed(F2, G, [0, G.unity]))


def test_embed_rejects_bad_maps():
    F2, F4 = make("gf(2)"), make("gf(4)")
    with pytest.raises(NotAnEmbedding):
        embed(F2, F4, [0, next(x for x in range(1, 4) if x != F4.unity)])
    with pytest.raises(NotAnEmbedding):
        embed(F2, F4, [0, 0])


def test_find_embeddings_counts():
    found = find_embeddings(make("gf(4)"), make("mat(2,2)"))
    assert len(found) > 0
    assert all(is_maximal_subring(e) for e in found)
    assert len(find_embeddings(make("gf(4)"), make("gf(4)"))) == 2
    assert find_embeddings(make("gf(4)"), make("zmod(4)")) == []
