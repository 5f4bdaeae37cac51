from fractions import Fraction

import pytest

from qloop.coprod import lt_dual_bases
from qloop.omodule import OModule
from qloop.pairing import LoopWeight, twisted_functional
from qloop.rmatrix import (R_p, R_window, evaluate_in_modules,
                           defining_property_check, intertwine_check,
                           slope_P, tensor_product, tensors_equal)
from qloop.scalars import Q, RATQ_ONE, ratq
from qloop.ualg import UElt, ckey_one, pair_u
from qloop.urat import URat
from qloop.zetadata import sl2

P0 = (Fraction(0),)
P1 = (Fraction(1),)


def unit(d):
    return ((), ckey_one(d.ncolors), ())


def test_trivial_window_is_unit():
    d = sl2()
    R = R_window(d, P0, P0, 2)
    assert R.pieces() == [((0,), 0)]
    (a, b), = R.comps[((0,), 0)]
    assert dict(a) == dict(UElt.one(d)) and dict(b) == dict(UElt.one(d))


def test_slope_zero_first_term():
    d = sl2()
    P = slope_P(d, P0, 1)
    pairs = P.comps[((1,), 0)]
    assert len(pairs) == 1
    (a, b) = pairs[0]
    # a is proportional to e_{1,0}, b to its dual f-element
    assert list(a)[0][0] == ((0, 0),)
    assert pair_u(d, a, b) == RATQ_ONE


def test_slope_one_first_term():
    d = sl2()
    P = slope_P(d, P1, 1)
    pairs = P.comps[((1,), 1)]
    (a, b) = pairs[0]
    assert list(a)[0][0] == ((0, 1),)


def test_loop_cartan_degree_one_factor():
    # exp-coordinates: p_{1,1} x p_{1,-1} / (q^2 - q^-2)
    d = sl2()
    pp = ((0,), (0,), ((0, 1),), ())
    pm = ((0,), (0,), (), ((0, 1),))
    from qloop.rmatrix import _dual_pairs
    pairs = _dual_pairs(d, [UElt({((), pp, ()): RATQ_ONE})],
                        [UElt({((), pm, ()): RATQ_ONE})],
                        lambda a, b: pair_u(d, a, b))
    (a, dual) = pairs[0]
    coeff = list(dual.values())[0]
    assert coeff == (Q ** 2 - Q ** -2).inv()


def test_defining_property():
    d = sl2()
    assert defining_property_check(d, slope_P(d, P0, 2), None)
    assert defining_property_check(d, R_window(d, P0, P1, 2), None)


def test_window_factorization():
    d = sl2()
    RW = R_window(d, P0, P1, 2)
    prod = slope_P(d, P0, 2, swap=True)
    for s in [Fraction(1, 2), Fraction(2, 3)]:
        prod = tensor_product(d, prod, slope_P(d, (s,), 2, swap=True), 2, 6)
    assert tensors_equal(d, RW, prod, 2, 4)
    # the degree (-1, 0) component is the slope-0 contribution alone
    from qloop.rmatrix import _component_canonical
    P0op = slope_P(d, P0, 2, swap=True)
    assert _component_canonical(d, RW.comps[((-1,), 0)]) == \
        _component_canonical(d, P0op.comps[((-1,), 0)])


def test_intertwining_generators():
    d = sl2()
    Rp = R_p(d, P0, 2, 4)
    one = ckey_one(1)
    E = (((0, 0),), one, ())
    ok, _w = intertwine_check(d, Rp, [(E, unit(d), RATQ_ONE)], P0, None,
                              2, 2, side="plus", flavor="drinfeld")
    assert ok
    F = ((), one, ((0, 1),))
    ok, _w = intertwine_check(d, Rp, [(unit(d), F, RATQ_ONE)], P0, None,
                              2, 2, side="plus", flavor="drinfeld")
    assert ok


def test_evaluate_identity_component():
    d = sl2()
    psiV = LoopWeight(d, [URat({0: ratq(-1), 1: RATQ_ONE}, {1: RATQ_ONE})])
    psiW = LoopWeight(d, [URat({0: ratq(-4), 1: RATQ_ONE}, {1: RATQ_ONE})])
    V = OModule(d, psiV, P1, 1)
    W = OModule(d, psiW, P0, 1)
    R = R_window(d, P0, P1, 1)
    ev = evaluate_in_modules(R, V, W, (0,), (1,))
    # the unit part acts as the identity, with u-exponent 0 only
    key = (((0,), 0), ((1,), 0), ((0,), 0), ((1,), 0))
    assert ev[key] == {0: RATQ_ONE}
    # the nontrivial slot matches the direct pairing data
    (Felt, Eelt), = R.comps[((-1,), 0)]
    wrep = W.piece((1,)).basis_elements()[0]
    acc = None
    for t, c in Eelt.items():
        val = c * twisted_functional(d, t[0], psiW, wrep)
        acc = val if acc is None else acc + val
    key = (((1,), 0), ((0,), 0), ((0,), 0), ((1,), 0))
    assert ev[key] == {0: acc}


def test_window_intertwining_mixed_presentations():
    from qloop.rmatrix import intertwine_window_check
    d = sl2()
    one = ckey_one(1)
    F0 = ((), one, ((0, 0),))
    ok, _w = intertwine_window_check(
        d, P0, P1, [(unit(d), F0, RATQ_ONE)], "plus",
        [(F0, unit(d), RATQ_ONE)], "minus", 2, 2)
    assert ok


def test_coassociativity_matrix_elements():
    from qloop.rmatrix import coassociativity_check
    d = sl2()
    ok, _w = coassociativity_check(d, P0, P1, 2, 2)
    assert ok
