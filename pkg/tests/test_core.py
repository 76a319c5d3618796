import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from minext.catalog import make
from minext.core import (
    Caps,
    CarrierGroup,
    DimensionMismatch,
    IllDefinedProduct,
    NonAssociative,
    NoUnity,
    OrderCapExceeded,
    abelian_basis,
    build_ring,
    build_rng,
    element_orders,
    find_unity,
    rng_from_tables,
    using_caps,
)
from oracles import is_field

SMALL_RINGS = ["zmod(4)", "zmod(6)", "gf(4)", "gf(8)", "gf(9)", "mat(2,2)", "tri(2,2)",
               "product(gf(2),gf(2))", "product(zmod(4),gf(3))", "tri(2,3)", "zmod(12)"]


def test_zmod4_from_table():
    Z4 = build_rng(CarrierGroup((4,)), [[[1]]])
    assert Z4.n == 4
    assert Z4.mul(2, 2) == 0
    assert Z4.mul(3, 3) == 1
    assert find_unity(Z4) == 1


def test_f4_is_a_field():
    F4 = build_rng(CarrierGroup((2, 2)), [[[1, 0], [0, 1]], [[0, 1], [1, 1]]])
    assert is_field(F4)


def test_f4_product_x_squared():
    F4 = make("gf(4)")
    x = F4.index((0, 1))
    assert F4.elem(F4.mul(x, x)) == (1, 1)
    # x generates the multiplicative group of order 3
    assert F4.mul(x, F4.mul(x, x)) == F4.unity


def test_corrupted_table_is_nonassociative():
    sc = np.zeros((3, 3, 3), dtype=int)
    sc[0, 0, 0] = 1
    sc[0, 1, 1] = 1
    sc[1, 2, 2] = 1  # (e0 e1) e2 = e1 e2 = e2 but e0 (e1 e2) = e0 e2 = 0
    with pytest.raises(NonAssociative) as err:
        build_rng(CarrierGroup((2, 2, 2)), sc)
    assert err.value.triple == (0, 1, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        build_rng(CarrierGroup((2, 2)), [[[1]]])


def test_ill_defined_product():
    # e0 has order 2 so e0*e0 cannot be an element of order 4
    with pytest.raises(IllDefinedProduct):
        build_rng(CarrierGroup((2, 4)), [[[0, 1], [0, 0]], [[0, 0], [0, 0]]])


def test_find_unity_examples():
    assert find_unity(build_rng(CarrierGroup((2,)), [[[0]]])) is None
    M = make("mat(2,2)")
    assert M.elem(find_unity(M)) == (1, 0, 0, 1)
    with pytest.raises(NoUnity):
        build_ring(CarrierGroup((2,)), [[[0]]])


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_full_associativity_and_unity(spec):
    S = make(spec)
    if S.n > 64:
        pytest.skip("full n^3 check only up to order 64")
    M = np.array([[S.mul(x, y) for y in range(S.n)] for x in range(S.n)])
    assert (M[M, :] == M[:, M].transpose(0, 2, 1).swapaxes(1, 2)).all() or all(
        M[M[x, y], z] == M[x, M[y, z]] for x, y, z in itertools.product(range(S.n), repeat=3))
    u = find_unity(S)
    assert all(S.mul(u, a) == a == S.mul(a, u) for a in range(S.n))


@pytest.mark.parametrize("spec", SMALL_RINGS)
def test_associativity_elementwise(spec):
    S = make(spec)
    n = min(S.n, 40)
    for x, y, z in itertools.product(range(n), repeat=3):
        assert S.mul(S.mul(x, y), z) == S.mul(x, S.mul(y, z))


def test_product_with_zero():
    S = make("tri(2,3)")
    assert all(S.mul(a, 0) == 0 == S.mul(0, a) for a in range(S.n))


@given(st.lists(st.integers(2, 6), min_size=1, max_size=4), st.data())
def test_index_round_trip(orders, data):
    C = CarrierGroup(tuple(orders))
    i = data.draw(st.integers(0, C.order - 1))
    assert C.index(C.elem(i)) == i


@given(st.sampled_from(SMALL_RINGS), st.integers(-40, 40), st.data())
def test_scalar_matches_repeated_addition(spec, c, data):
    S = make(spec)
    a = data.draw(st.integers(0, S.n - 1))
    acc = 0
    for _ in range(abs(c)):
        acc = S.add(acc, a)
    if c < 0:
        acc = S.neg(acc)
    assert S.scalar(c, a) == acc


@given(st.sampled_from(SMALL_RINGS), st.data())
def test_add_sub_inverse(spec, data):
    S = make(spec)
    a, b = data.draw(st.integers(0, S.n - 1)), data.draw(st.integers(0, S.n - 1))
    assert S.sub(S.add(a, b), b) == a
    assert S.add(a, S.neg(a)) == 0


def test_caps_are_enforced():
    S = make("mat(2,2)")
    with using_caps(Caps(closure=8, enumeration=8)):
        with pytest.raises(OrderCapExceeded):
            S.elements()


@pytest.mark.parametrize("spec", ["zmod(12)", "product(zmod(4),gf(2))", "gf(9)", "tri(2,2)"])
def test_rng_from_tables_reproduces_the_ring(spec):
    S = make(spec)
    T, relabel = rng_from_tables(list(range(S.n)), S.add, S.mul)
    assert sorted(relabel.values()) == list(range(S.n))
    for x, y in itertools.product(range(S.n), repeat=2):
        assert relabel[S.add(x, y)] == T.add(relabel[x], relabel[y])
        assert relabel[S.mul(x, y)] == T.mul(relabel[x], relabel[y])


def test_abelian_basis_invariants():
    S = make("product(zmod(4),zmod(4))")
    gens, orders = abelian_basis(range(S.n), S.add)
    assert sorted(orders) == [4, 4]
    assert int(np.prod(orders)) == S.n
    assert max(element_orders(S)) == 4
