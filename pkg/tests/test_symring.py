from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from intgrr.arith import factorial, jam_constant
from intgrr.report import PreconditionError
from intgrr.symring import (
    ChernBasisClass,
    SplitRingElement,
    chern_character,
    dual_chern,
    exp_truncated,
    expand_roots,
    express_in_elementary,
    exterior_chern,
    power_sums,
    tensor_chern_character,
    todd_class,
    todd_inverse,
    total_chern_class,
    verify_additivity,
    verify_exp_product_rule,
    verify_exterior_identity,
    verify_multiplicativity,
    verify_todd_inverse,
    whitney_product,
    whitney_pullback,
)
from oracles import chern_basis_oracle, exp_series, roots, series_in, td_series


def C(ranks, d, coeffs):
    return ChernBasisClass(ranks, d, coeffs)


def root_poly(ranks, d, coeffs):
    return SplitRingElement(ranks, d, coeffs)


# --- express_in_elementary ----------------------------------------------------


def test_express_power_sum_example():
    s = root_poly((2,), 2, {(2, 0): 1, (0, 2): 1})
    assert express_in_elementary(s) == C((2,), 2, {(2, 0): 1, (0, 1): -2})


def test_express_sigma1():
    s = root_poly((2,), 1, {(1, 0): 1, (0, 1): 1})
    assert express_in_elementary(s) == ChernBasisClass.chern((2,), 1, 1)


def test_express_mixed_example_against_sympy():
    a = roots(2)
    frozen = {(1, 1): Fraction(1)}
    assert chern_basis_oracle(a[0] ** 2 * a[1] + a[0] * a[1] ** 2, [a], 3) == frozen
    s = root_poly((2,), 3, {(2, 1): 1, (1, 2): 1})
    assert express_in_elementary(s).coeffs == frozen


def test_express_rejects_non_symmetric():
    with pytest.raises(ValueError):
        express_in_elementary(root_poly((2,), 2, {(1, 0): 1}))
    with pytest.raises(ValueError):
        express_in_elementary(root_poly((2, 1), 2, {(1, 0, 0): 1}))


def test_two_block_product_basis():
    s = root_poly((2, 1), 2, {(1, 0, 1): 1, (0, 1, 1): 1})
    assert express_in_elementary(s) == C((2, 1), 2, {(1, 0, 1): 1})


@st.composite
def chern_classes(draw, max_rank=3, max_d=6):
    r = draw(st.integers(0, max_rank))
    d = draw(st.integers(0, max_d))
    weights = list(range(1, r + 1))
    monos = []

    def rec(i, acc, deg):
        if i == r:
            monos.append(tuple(acc))
            return
        e = 0
        while deg + e * weights[i] <= d:
            rec(i + 1, acc + [e], deg + e * weights[i])
            e += 1

    rec(0, [], 0)
    coeffs = draw(st.dictionaries(st.sampled_from(monos), st.integers(-5, 5), max_size=6))
    return ChernBasisClass((r,), d, coeffs)


@settings(max_examples=60, deadline=None)
@given(chern_classes())
def test_expression_roundtrip(c):
    assert express_in_elementary(expand_roots(c)) == c


@settings(max_examples=40, deadline=None)
@given(chern_classes(max_rank=3, max_d=4), st.integers(0, 2))
def test_roundtrip_is_left_inverse_on_symmetric_inputs(c, k):
    # symmetric root polynomials built by symmetrizing a random monomial
    s = expand_roots(c)
    r = c.rank
    if r:
        sym = SplitRingElement((r,), c.trunc_degree)
        base = [0] * r
        base[0] = k
        for perm in set(itertools.permutations(base)):
            sym = sym + SplitRingElement((r,), c.trunc_degree, {perm: 1})
        s = s + sym
    assert expand_roots(express_in_elementary(s)) == s


# --- ch / Td ---------------------------------------------------------------


def test_chern_character_rank1():
    assert chern_character(1, 2) == C((1,), 2, {(0,): 1, (1,): 1, (2,): Fraction(1, 2)})


def test_chern_character_rank2_d0():
    assert chern_character(2, 0) == C((2,), 0, {(0, 0): 2})


def test_chern_character_rank2_splitting_oracle():
    a = roots(2)
    frozen = {(0, 0): Fraction(2), (1, 0): Fraction(1), (2, 0): Fraction(1, 2), (0, 1): Fraction(-1)}
    assert chern_basis_oracle(sum(exp_series(r, 2) for r in a), [a], 2) == frozen
    assert chern_character(2, 2).coeffs == frozen


def test_todd_examples():
    assert todd_class(1, 2) == C((1,), 2, {(0,): 1, (1,): Fraction(1, 2), (2,): Fraction(1, 12)})
    for d in range(4):
        assert todd_class(0, d) == ChernBasisClass.constant((0,), d, 1)
    assert todd_class(1, 2) * jam_constant(2) == C((1,), 2, {(0,): 12, (1,): 6, (2,): 1})


def test_rank_zero_character_is_zero():
    assert chern_character(0, 3).is_zero()


@pytest.mark.parametrize("r,d", [(1, 4), (2, 4), (3, 3), (2, 6), (4, 4)])
def test_classes_match_sympy_root_oracle(r, d):
    a = roots(r)
    assert chern_character(r, d).coeffs == chern_basis_oracle(sum(exp_series(x, d) for x in a), [a], d)
    assert todd_class(r, d).coeffs == chern_basis_oracle(sp.prod([td_series(x, d) for x in a]), [a], d)
    inverse = sp.prod([series_in(lambda t: (1 - sp.exp(-t)) / t, x, d) for x in a])
    assert todd_inverse(r, d).coeffs == chern_basis_oracle(inverse, [a], d)


def test_power_sums_newton():
    p = power_sums(2, 2)
    assert p[2] == C((2,), 2, {(2, 0): 1, (0, 1): -2})


@pytest.mark.parametrize("r", range(0, 5))
@pytest.mark.parametrize("d", range(0, 7))
def test_integrality_and_inverse(r, d):
    for l in (d, d + 1, d + 3):
        t = jam_constant(l)
        assert (chern_character(r, d) * factorial(l)).is_integral()
        assert (todd_class(r, d) * t).is_integral()
        assert (todd_inverse(r, d) * t).is_integral()
    assert todd_class(r, d) * todd_inverse(r, d) == ChernBasisClass.constant((r,), d, 1)


# --- exp ---------------------------------------------------------------------


def test_exp_truncated_examples():
    c1 = ChernBasisClass.chern((1,), 2, 1)
    assert exp_truncated(ChernBasisClass((1,), 2), 3) == ChernBasisClass.constant((1,), 2, 1)
    assert exp_truncated(c1, 2) == C((1,), 2, {(0,): 1, (1,): 1, (2,): Fraction(1, 2)})
    assert exp_truncated(c1, 1) == C((1,), 2, {(0,): 1, (1,): 1})


def test_exp_truncated_rejects_constant_term():
    with pytest.raises(ValueError):
        exp_truncated(ChernBasisClass.constant((1,), 2, 1), 2)


def test_exp_product_rule_l1_d3():
    rep = verify_exp_product_rule(1, 3)
    assert rep.passed
    # exp1(a) exp1(b) - exp1(a+b) = ab, computed by hand from (1+a)(1+b)-(1+a+b)
    assert rep.details["error_degrees"] == [2]
    assert rep.details["error"].coeffs == {(1, 1): 1}


def test_exp_product_rule_l0():
    # with l = 0 both sides are 1, so the error term vanishes identically
    rep = verify_exp_product_rule(0, 1)
    assert rep.passed
    assert rep.details["error"].is_zero()


def test_exp_product_rule_l4_d4():
    rep = verify_exp_product_rule(4, 4)
    assert rep.passed and rep.details["error"].is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 6), st.integers(0, 7))
def test_exp_product_rule_bound(l, d):
    rep = verify_exp_product_rule(l, d)
    assert rep.passed
    assert all(k >= l + 1 for k in rep.details["error_degrees"])


# --- Whitney / tensor / exterior ---------------------------------------------


def test_whitney_examples():
    c = C((1,), 2, {(0,): 1, (1,): 1})
    one = ChernBasisClass.constant((0,), 2, 1)
    assert whitney_product(c, one) == C((1, 0), 2, {(0,): 1, (1,): 1})
    ab = whitney_product(c, c)
    assert ab == C((1, 1), 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    e2 = total_chern_class(2, 2)
    mixed = whitney_product(c, e2)
    expected = C((1, 2), 2, {(0, 0, 0): 1, (1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1, (1, 1, 0): 1})
    assert mixed == expected


def test_whitney_rejects_mismatch():
    with pytest.raises(ValueError):
        whitney_product(total_chern_class(1, 2), total_chern_class(1, 3))


def test_whitney_pullback_of_total_class():
    pulled = whitney_pullback(total_chern_class(3, 3), (2, 1))
    assert pulled == whitney_product(total_chern_class(2, 3), total_chern_class(1, 3))


def test_tensor_examples():
    assert tensor_chern_character(1, 1, 2, 2).passed
    assert tensor_chern_character(1, 0, 3, 3).passed
    assert tensor_chern_character(2, 2, 4, 4).passed
    with pytest.raises(PreconditionError):
        tensor_chern_character(1, 1, 3, 2)


def test_tensor_line_bundles_is_exp_of_sum():
    from intgrr.symring import tensor_ch

    a, b = roots(1), roots(1, "b")
    assert tensor_ch(1, 1, 3, 3).coeffs == chern_basis_oracle(exp_series(a[0] + b[0], 3), [a, b], 3)


def test_exterior_chern_examples():
    assert exterior_chern(0, 2, 2) == ChernBasisClass.constant((2,), 2, 1)
    assert exterior_chern(2, 2, 2) == C((2,), 2, {(0, 0): 1, (1, 0): 1})
    assert exterior_chern(1, 3, 3) == total_chern_class(3, 3)
    with pytest.raises(ValueError):
        exterior_chern(3, 2, 2)


def test_exterior_chern_rank3_against_sympy():
    a = roots(3)
    expr = sp.prod([1 + a[i] + a[j] for i in range(3) for j in range(i + 1, 3)])
    assert exterior_chern(2, 3, 3).coeffs == chern_basis_oracle(expr, [a], 3)


def test_dual_chern():
    assert dual_chern(C((1,), 1, {(0,): 1, (1,): 1})) == C((1,), 1, {(0,): 1, (1,): -1})
    assert dual_chern(total_chern_class(2, 2)) == C((2,), 2, {(0, 0): 1, (1, 0): -1, (0, 1): 1})


@settings(max_examples=40, deadline=None)
@given(chern_classes())
def test_dual_is_involution(c):
    assert dual_chern(dual_chern(c)) == c


def test_exterior_identity_examples():
    rep = verify_exterior_identity(1, 1, 1)
    assert rep.passed
    assert rep.left == C((1,), 1, {(1,): 2})
    r0 = verify_exterior_identity(0, 0, 0)
    assert r0.passed and r0.left == ChernBasisClass.constant((0,), 0, 1)
    assert verify_exterior_identity(2, 2, 3).passed


@pytest.mark.parametrize("r", range(0, 4))
@pytest.mark.parametrize("l", range(0, 7))
def test_exterior_identity_r_equals_d(r, l):
    if l < r:
        with pytest.raises(PreconditionError):
            verify_exterior_identity(r, r, l)
    else:
        assert verify_exterior_identity(r, r, l).passed


@pytest.mark.parametrize("r1,r2,d", [(1, 1, 3), (2, 1, 4), (3, 2, 5), (0, 2, 3)])
def test_additivity_multiplicativity(r1, r2, d):
    for l in (d, d + 2):
        assert verify_additivity(r1, r2, d, l).passed
        assert verify_multiplicativity(r1, r2, d, l).passed


def test_todd_inverse_report():
    rep = verify_todd_inverse(4, 6, 6)
    assert rep.passed


def test_string_format():
    assert str(todd_class(1, 2) * 12) == "12 + 6·c1 + c1^2"
    assert str(chern_character(2, 0)) == "2"
    assert str(ChernBasisClass((1,), 2)) == "0"
