from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from intgrr.chow import (
    ChowClass,
    factor_projection,
    generic_pushforward,
    linear_embedding,
    point,
    product_model,
    projective_bundle,
    projective_space,
    pullback,
    ring,
    todd_tangent,
)
from intgrr.ktheory import (
    KClass,
    chern_character_by_twists,
    chern_character_map,
    euler_characteristic,
    euler_characteristic_class,
    koszul_lambda,
    koszul_pushforward_zero_section,
    pushforward_linear_embedding_k,
    pushforward_projection_k,
    structure_sheaf_linear_subspace,
)
from oracles import exp_series, projective_poly_oracle, td_series

h = sp.Symbol("h")


@lru_cache(maxsize=None)
def _td_power(n):
    return sp.expand(td_series(h, n) ** (n + 1))


def P(n):
    return projective_space(n)


def O(model, *deg):
    return KClass.line_bundle(model, deg)


def test_line_bundle_products():
    X = P(1)
    assert O(X, 1) * O(X, 1) == O(X, 2)
    assert O(X, 1) * O(X, -1) == KClass.one(X)
    # on P1, O(2) = 2 O(1) - O
    assert O(X, 2) == O(X, 1) * 2 - KClass.one(X)
    assert str(O(X, 1) * O(X, 1)) == "-[O] + 2[O(1)]"
    assert str(KClass.one(product_model(X, X))) == "[O]"
    assert O(point()) == KClass.one(point())


def test_from_t_roundtrip():
    X = P(3)
    x = KClass.from_t(X, {(0,): 2, (2,): -1, (3,): 5})
    assert x.t_coeffs() == {(0,): 2, (2,): -1, (3,): 5}
    assert x.rank() == 6


def test_euler_characteristic_examples():
    assert euler_characteristic(2, 3) == 10
    assert euler_characteristic(1, -2) == -1
    assert euler_characteristic(0, 7) == 1
    for n in range(1, 5):
        for k in range(-n, 0):
            assert euler_characteristic(n, k) == 0
    with pytest.raises(ValueError):
        euler_characteristic(-1, 0)


@pytest.mark.parametrize("n", range(0, 5))
@pytest.mark.parametrize("k", range(-5, 6))
def test_euler_characteristic_via_pushforward(n, k):
    if n == 0:
        assert euler_characteristic_class(O(P(0))) == 1
        return
    chi = euler_characteristic_class(O(P(n), k))
    assert chi == euler_characteristic(n, k)
    if k >= 0:
        assert chi == math.comb(n + k, n)


@pytest.mark.parametrize("n", range(0, 6))
@pytest.mark.parametrize("k", range(-5, 6))
def test_hrr_against_sympy(n, k):
    """chi(P^n, O(k)) equals the degree of exp(k h) td(h)^(n+1)."""
    poly = projective_poly_oracle(exp_series(k * h, n) * _td_power(n), h, n)
    assert poly.get(n, Fraction(0)) == euler_characteristic(n, k)


def test_projection_pushforward_examples():
    X = P(2)
    W = product_model(X, P(1))
    f = factor_projection(W, [0])
    # chi(P1, O(-1)) = 0
    assert pushforward_projection_k(O(W, 1, -1), f).is_zero()
    # chi(P2, O(2)) = 6: pushing E (x) O(2) from P2 x P2 to the first factor
    W2 = product_model(X, P(2))
    f2 = factor_projection(W2, [0])
    E = O(X, 1) + O(X, -1) * 3
    assert pushforward_projection_k(pullback(E, f2) * O(W2, 0, 2), f2) == E * 6


def test_projection_pushforward_bundle():
    # P(O(a) + O) over P1: p_* O(1) = V^dual = O(-a) + O
    for a in (-2, 0, 3):
        B = projective_bundle(P(1), [a])
        z = O(B.model, 0, 1)
        assert pushforward_projection_k(z, B.projection) == O(B.base, -a) + KClass.one(B.base)
        assert pushforward_projection_k(KClass.one(B.model), B.projection) == KClass.one(B.base)


def _basis(model, kind):
    cls = ChowClass if kind == "chow" else KClass
    return [cls(model, {b: 1}, reduced=True) for b in ring(model, kind).basis()]


PROJ = [
    lambda: factor_projection(product_model(P(1), P(2)), [0]),
    lambda: projective_bundle(P(1), [2]).projection,
    lambda: projective_bundle(P(2), [-1, 1]).projection,
    lambda: projective_bundle(product_model(P(1), P(1)), [(1, 1)]).projection,
]


@pytest.mark.parametrize("make", PROJ)
def test_k_projection_agrees_with_duality(make):
    f = make()
    for x in _basis(f.source, "k"):
        assert pushforward_projection_k(x, f) == generic_pushforward(x, f)


@pytest.mark.parametrize("make", PROJ)
def test_k_projection_formula(make):
    f = make()
    for x in _basis(f.source, "k"):
        px = pushforward_projection_k(x, f)
        for y in _basis(f.target, "k"):
            assert pushforward_projection_k(pullback(y, f) * x, f) == y * px


def test_koszul_examples():
    # rank 0: nothing to resolve
    B0 = projective_bundle(P(2), [])
    lam = koszul_lambda(B0)
    assert lam[0] == KClass.one(B0.model)
    # P(O + O) over a point is P1; the zero section is a point
    B = projective_bundle(point(), [0])
    pushed = koszul_pushforward_zero_section(KClass.one(point()), B)
    assert pushed == structure_sheaf_linear_subspace(0, 1)
    assert euler_characteristic_class(pushed) == 1
    # Lambda^0 = O and Lambda^{r+1} Q^dual vanishes
    for twists in ([1], [2, -1], [0, 0, 1]):
        Bt = projective_bundle(P(1), twists)
        lam = koszul_lambda(Bt)
        assert lam[0] == KClass.one(Bt.model)
        assert lam[-1].is_zero()
        assert lam[1].rank() == len(twists)


@pytest.mark.parametrize(
    "base,twists",
    [(P(1), [1]), (P(1), [-2, 1]), (P(2), [3]), (product_model(P(1), P(1)), [(1, -1)])],
)
def test_koszul_agrees_with_duality(base, twists):
    B = projective_bundle(base, twists)
    for x in _basis(base, "k"):
        assert koszul_pushforward_zero_section(x, B) == generic_pushforward(x, B.zero_section)
        # s_* then p_* is the identity
        assert pushforward_projection_k(koszul_pushforward_zero_section(x, B), B.projection) == x


def test_structure_sheaf_examples():
    # a hyperplane: O - O(-1)
    assert structure_sheaf_linear_subspace(1, 2) == KClass.one(P(2)) - O(P(2), -1)
    assert structure_sheaf_linear_subspace(2, 2) == KClass.one(P(2))
    assert structure_sheaf_linear_subspace(0, 0) == KClass.one(P(0))
    for n in range(1, 5):
        for k in range(n + 1):
            s = structure_sheaf_linear_subspace(k, n)
            assert euler_characteristic_class(s) == 1
            # ch of [O_{P^k}] starts with the class h^(n-k)
            ch = chern_character_map(s)
            assert ch.part(n - k) == ChowClass.generator(P(n), 0) ** (n - k)
            for i in range(n - k):
                assert ch.part(i).is_zero()
    with pytest.raises(ValueError):
        structure_sheaf_linear_subspace(3, 2)


def test_linear_embedding_k_agrees_with_duality():
    for k in range(4):
        for n in range(k, 5):
            f = linear_embedding(k, n)
            for x in _basis(P(k), "k"):
                assert pushforward_linear_embedding_k(x, n) == generic_pushforward(x, f)


def test_chern_character_examples():
    X = P(1)
    hh = ChowClass.generator(X, 0)
    assert chern_character_map(O(X, 1)) == ChowClass.one(X) + hh
    X2 = P(2)
    h2 = ChowClass.generator(X2, 0)
    assert chern_character_map(O(X2, -1)) == ChowClass.one(X2) - h2 + h2 * h2 / 2
    assert chern_character_map(O(X2, 1)) == ChowClass.one(X2) + h2 + h2 * h2 / 2
    # ch(O - O(-1)) = h - h^2/2
    assert chern_character_map(KClass.one(X2) - O(X2, -1)) == h2 - h2 * h2 / 2


@pytest.mark.parametrize("n", range(0, 5))
def test_ch_ring_homomorphism_on_basis(n):
    X = P(n)
    basis = _basis(X, "k")
    for a in basis:
        for b in basis:
            assert chern_character_map(a * b) == chern_character_map(a) * chern_character_map(b)
            assert chern_character_map(a) == chern_character_by_twists(a)


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("k", range(-4, 5))
def test_ch_of_line_bundle_against_sympy(n, k):
    expected = projective_poly_oracle(exp_series(k * h, n), h, n)
    got = chern_character_map(O(P(n), k))
    assert got.coeffs == {(i,): c for i, c in expected.items()}


@st.composite
def k_classes(draw, model):
    basis = ring(model, "k").basis()
    return KClass(model, draw(st.dictionaries(st.sampled_from(basis), st.integers(-3, 3), max_size=len(basis))))


BUNDLE = projective_bundle(P(1), [1, -1])


@settings(max_examples=30, deadline=None)
@given(k_classes(BUNDLE.model), k_classes(BUNDLE.model))
def test_ch_is_multiplicative(a, b):
    assert chern_character_map(a * b) == chern_character_map(a) * chern_character_map(b)
    assert chern_character_map(a + b) == chern_character_map(a) + chern_character_map(b)


@settings(max_examples=30, deadline=None)
@given(k_classes(BUNDLE.model))
def test_hrr_on_bundle(x):
    """chi(x) = deg ch(x) Td(X), for the K pushforward to a point."""
    from intgrr.chow import degree0

    assert euler_characteristic_class(x) == degree0(chern_character_map(x) * todd_tangent(BUNDLE.model))


@settings(max_examples=30, deadline=None)
@given(k_classes(BUNDLE.model), k_classes(BUNDLE.base))
def test_k_projection_formula_property(x, y):
    f = BUNDLE.projection
    assert pushforward_projection_k(pullback(y, f) * x, f) == y * pushforward_projection_k(x, f)


def test_integral_classes():
    x = KClass.from_t(P(2), {(1,): 3, (-2,): -1})
    assert x.is_integral()
    assert all(isinstance(c, (int, Fraction)) and Fraction(c).denominator == 1 for c in x.t_coeffs().values())


def test_errors():
    with pytest.raises(ValueError):
        KClass.line_bundle(P(2), [1, 1])
    with pytest.raises(ValueError):
        koszul_pushforward_zero_section(KClass.one(P(1)), projective_bundle(P(2), [1]))
    with pytest.raises(ValueError):
        pushforward_linear_embedding_k(KClass.one(product_model(P(1), P(1))), 3)
