from fractions import Fraction

import pytest

from qloop.lpoly import LPoly
from qloop.pairing import (LoopWeight, pair, pair_fword, pair_residue,
                           pair_via_words, pair_word, shifted_functional,
                           twisted_functional, two_contour_functional)
from qloop.scalars import Q, RATQ_ONE, RATQ_ZERO, RatQ, ratq
from qloop.shuffle import (MINUS, PLUS, ShuffleElement, eword_to_shuffle)
from qloop.urat import URat
from qloop.zetadata import sl2, sl3


def test_single_letter_pairing():
    d = sl2()
    for k in range(-2, 3):
        F = ShuffleElement.generator(d, MINUS, 0, -k)
        assert pair_word(d, ((0, k),), F) == RATQ_ONE


def test_degree_mismatch_vanishes():
    d = sl2()
    F = ShuffleElement.generator(d, MINUS, 0, -1)
    assert pair_word(d, ((0, 0),), F) == RATQ_ZERO


def test_two_letter_series_coefficients():
    # <e_1 e_-1, z1 z2^-1 + z2 z1^-1> picks the x^0 and x^2 coefficients of
    # the inverse zeta expansion
    d = sl2()
    F = ShuffleElement(d, MINUS, (2,), LPoly(2, {(1, -1): RATQ_ONE,
                                                 (-1, 1): RATQ_ONE}))
    inv = d.zeta[0, 0].inv().series0(2)[1]
    assert pair_word(d, ((0, 1), (0, -1)), F) == inv[0] + inv[2]


def test_unit_pairing():
    d = sl2()
    E = ShuffleElement.unit(d, PLUS)
    F = ShuffleElement.unit(d, MINUS)
    assert pair(E, F) == RATQ_ONE


def test_cross_route_agreement():
    d2, d3 = sl2(), sl3()
    cases = [
        (d2, ((0, 1), (0, 0)), ((0, -1), (0, 0))),
        (d2, ((0, 0), (0, 0)), ((0, 0), (0, 0))),
        (d3, ((0, 0), (1, 0)), ((1, 0), (0, 0))),
        (d3, ((0, 1), (1, -1)), ((0, 0), (1, 0))),
    ]
    for datum, w, fw in cases:
        E = eword_to_shuffle(datum, PLUS, w)
        F = eword_to_shuffle(datum, MINUS, fw)
        v1 = pair_word(datum, w, F)
        v2 = pair_fword(datum, E, fw)
        v3 = pair(E, F)
        v4 = pair_via_words(E, F)
        v5 = pair_residue(datum, E, F)
        assert v1 == v2 == v3 == v4 == v5


def test_residue_single_variable_reduces_to_ct():
    d = sl2()
    E = ShuffleElement.generator(d, PLUS, 0, 2)
    F = ShuffleElement.generator(d, MINUS, 0, -2)
    assert pair_residue(d, E, F) == RATQ_ONE


def test_residue_zero_factor():
    d = sl2()
    E = ShuffleElement(d, PLUS, (1,), LPoly.zero(1))
    F = ShuffleElement.generator(d, MINUS, 0, 0)
    assert pair_residue(d, E, F) == RATQ_ZERO


def test_normalized_pairing():
    d = sl2(normalized=True)
    F = ShuffleElement.generator(d, MINUS, 0, -1)
    assert pair_word(d, ((0, 1),), F) == (Q ** -1 - Q).inv()
    E = eword_to_shuffle(d, PLUS, ((0, 1), (0, 0)))
    Fw = eword_to_shuffle(d, MINUS, ((0, -1), (0, 0)))
    assert pair_word(d, ((0, 1), (0, 0)), Fw) == pair_residue(d, E, Fw)


def test_loop_weight_orders():
    d = sl2()
    # (z - a)/(z - b) style with rational parameters: regular nonzero at 0
    psi = LoopWeight(d, [URat({0: ratq(-1), 1: RATQ_ONE},
                              {0: ratq(-2), 1: RATQ_ONE})])
    assert psi.ord == (0,) and psi.is_regular_nonzero()
    psi2 = LoopWeight(d, [URat({0: ratq(-1), 1: RATQ_ONE}, {1: RATQ_ONE})])
    assert psi2.ord == (1,) and not psi2.is_regular_nonzero()
    mono = LoopWeight.monomial(d, (2,))
    assert mono.ord == (2,)


def test_twisted_functional_trivial_weight():
    # psi = 1: single letter integrand z^{d+e} anchored above unit scale
    d = sl2()
    one = LoopWeight.one(d)
    for e in range(-2, 3):
        F = ShuffleElement.generator(d, MINUS, 0, e)
        for k in range(-2, 3):
            v = twisted_functional(d, ((0, k),), one, F)
            assert v == (RATQ_ONE if k + e == 0 else RATQ_ZERO)


def test_twisted_functional_monomial_shift():
    # psi(z) = 1/z shifts the pairing degree by one
    d = sl2()
    psi = LoopWeight(d, [URat({-1: RATQ_ONE})])
    for e in range(-2, 3):
        F = ShuffleElement.generator(d, MINUS, 0, e)
        for k in range(-2, 3):
            v = twisted_functional(d, ((0, k),), psi, F)
            assert v == (RATQ_ONE if k + e == 1 else RATQ_ZERO)


def test_two_contour_functional_laurent_vanishes():
    d = sl2()
    one = LoopWeight.one(d)
    for e in range(-1, 2):
        F = ShuffleElement.generator(d, MINUS, 0, e)
        for k in range(-1, 2):
            assert two_contour_functional(d, ((0, k),), one, F) == RATQ_ZERO


def test_shifted_equals_two_contour_single_variable():
    d = sl2()
    psi = LoopWeight(d, [URat({0: ratq(-3), 1: RATQ_ONE},
                              {0: ratq(-2), 1: RATQ_ONE})])
    F = ShuffleElement.generator(d, MINUS, 0, 0)
    for k in range(-1, 2):
        a = shifted_functional(d, ((0, k),), psi, F)
        b = two_contour_functional(d, ((0, k),), psi, F)
        assert a == b


def test_zero_input_functionals():
    d = sl2()
    psi = LoopWeight.one(d)
    Z = ShuffleElement(d, MINUS, (1,), LPoly.zero(1))
    assert twisted_functional(d, ((0, 0),), psi, Z) == RATQ_ZERO
    assert two_contour_functional(d, ((0, 0),), psi, Z) == RATQ_ZERO


def test_gram_matrices_invertible_on_windows():
    # perfectness of the window pairing on sl2 pieces with |n| <= 3
    from fractions import Fraction
    from qloop.linalg import invert
    from qloop.shuffle import SlopeWindow, basis_window
    d = sl2()
    win = SlopeWindow((Fraction(0),), (Fraction(1),))
    for n in range(1, 4):
        for dd in range(0, n + 1):
            plus = basis_window(d, PLUS, (n,), dd, win)
            minus = basis_window(d, MINUS, (n,), -dd, win)
            assert len(plus) == len(minus)
            if not plus:
                continue
            gram = [[pair(a, b) for b in minus] for a in plus]
            assert invert(gram) is not None


def test_slope_orthogonality():
    # opposite open/closed slope halves pair through the counit
    from fractions import Fraction
    from qloop.scalars import RATQ_ZERO
    d = sl2()
    # E in [0, inf], F in (-inf, 0): counit kills both unless scalars
    E = eword_to_shuffle(d, PLUS, ((0, 1), (0, 0)))
    F = eword_to_shuffle(d, MINUS, ((0, 1), (0, 2)))   # slope < 0 side
    assert pair(E, F) == RATQ_ZERO
    # E in (-inf, 0), F in [0, inf]
    E2 = eword_to_shuffle(d, PLUS, ((0, -1), (0, -2)))
    F2 = eword_to_shuffle(d, MINUS, ((0, 0), (0, -1)))
    assert pair(E2, F2) == RATQ_ZERO
