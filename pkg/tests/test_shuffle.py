import random
from fractions import Fraction

import pytest

from qloop.lpoly import LPoly
from qloop.scalars import Q, RATQ_ONE, RatQ
from qloop.shuffle import (MINUS, PLUS, ShuffleElement, SlopeWindow,
                           as_words, basis_window, eword_to_shuffle,
                           in_window, orbit_monomials, orbit_poly,
                           shuffle_mul, slope_test, wheel_check, word_span)
from qloop.zetadata import sl2, sl3


def rand_elt(rng, datum, side, n, lo=-2, hi=2):
    cands = []
    for d in range(lo * sum(n), hi * sum(n) + 1):
        cands.extend(orbit_monomials(n, d, [lo] * datum.ncolors,
                                     [hi] * datum.ncolors))
    combo = cands[rng.randrange(len(cands))]
    return ShuffleElement(datum, side, n, orbit_poly(n, combo))


def test_unit_multiplication():
    d = sl2()
    e = ShuffleElement.generator(d, PLUS, 0, 3)
    u = ShuffleElement.unit(d, PLUS)
    assert shuffle_mul(u, e).poly == e.poly
    assert shuffle_mul(e, u).poly == e.poly


def test_two_variable_constant():
    d = sl2()
    e0 = ShuffleElement.generator(d, PLUS, 0, 0)
    prod = shuffle_mul(e0, e0)
    assert prod.poly.terms == {(0, 0): RATQ_ONE + Q ** -2}


def test_symmetrization_oracle():
    # z^1 * z^0 + q^-2 z^0 * z^1 against the direct symmetrization
    d = sl2()
    e1 = ShuffleElement.generator(d, PLUS, 0, 1)
    e0 = ShuffleElement.generator(d, PLUS, 0, 0)
    lhs = shuffle_mul(e1, e0).poly + shuffle_mul(e0, e1).poly.scale(Q ** -2)

    def sym_term(expon):
        total = LPoly.zero(2)
        for (a, b), sign in [((0, 1), 1), ((1, 0), -1)]:
            znum = LPoly.monomial(2, _unit2(b), Q ** -2)
            znum.addmul(LPoly.monomial(2, _unit2(a), -RATQ_ONE))
            mono = [0, 0]
            mono[a], mono[b] = expon
            t = LPoly.monomial(2, tuple(mono), RATQ_ONE) * znum
            total.addmul(t if sign > 0 else -t)
        return total.divexact_binom(1, RATQ_ONE, 0, -RATQ_ONE)

    rhs = sym_term((1, 0)) + sym_term((0, 1)).scale(Q ** -2)
    assert lhs == rhs


def _unit2(i):
    out = [0, 0]
    out[i] = 1
    return tuple(out)


def test_minus_side_is_opposite():
    d = sl2()
    a = ShuffleElement.generator(d, MINUS, 0, 1)
    b = ShuffleElement.generator(d, MINUS, 0, -2)
    ab = shuffle_mul(a, b)
    ab_plus = shuffle_mul(ShuffleElement(d, PLUS, b.n, b.poly),
                          ShuffleElement(d, PLUS, a.n, a.poly))
    assert ab.poly == ab_plus.poly


def test_eword_single_letter():
    d = sl2()
    w = eword_to_shuffle(d, PLUS, ((0, 5),))
    assert w.poly.terms == {(5,): RATQ_ONE}


def test_eword_two_letters_constant():
    d = sl2()
    w = eword_to_shuffle(d, PLUS, ((0, 0), (0, 0)))
    assert w.poly.terms == {(0, 0): RATQ_ONE + Q ** -2}


def test_eword_mixed_colors():
    d = sl3()
    w = eword_to_shuffle(d, PLUS, ((0, 0), (1, 0)))
    assert w.poly.terms == {(0, 0): Q, (1, -1): -RATQ_ONE}


def test_associativity_randomized():
    rng = random.Random(42)
    d2, d3 = sl2(), sl3()
    for _ in range(20):
        datum = d2 if rng.random() < 0.5 else d3
        side = PLUS if rng.random() < 0.5 else MINUS
        if datum is d2:
            shapes = [(1,), (1,), (1,)]
        else:
            shapes = [(1, 0), (0, 1), (1, 0)]
        a, b, c = (rand_elt(rng, datum, side, tuple(s)) for s in shapes)
        lhs = shuffle_mul(shuffle_mul(a, b), c)
        rhs = shuffle_mul(a, shuffle_mul(b, c))
        assert lhs.poly == rhs.poly


def test_products_stay_color_symmetric():
    rng = random.Random(9)
    d = sl3()
    a = rand_elt(rng, d, PLUS, (1, 1))
    b = rand_elt(rng, d, PLUS, (1, 0))
    assert shuffle_mul(a, b).is_color_symmetric()


def test_wheel_vacuous_on_single_color():
    d = sl2()
    e = eword_to_shuffle(d, PLUS, ((0, 1), (0, 0)))
    assert wheel_check(e)


def test_wheel_on_word_images():
    d = sl3()
    for word in [((0, 0), (0, 0), (1, 0)), ((0, 1), (1, 0), (0, -1))]:
        assert wheel_check(eword_to_shuffle(d, PLUS, word))


def test_wheel_rejects_constant():
    d = sl3()
    c = ShuffleElement(d, PLUS, (2, 1), LPoly.const(3, RATQ_ONE))
    assert not wheel_check(c)


def test_single_variable_slope():
    d = sl2()
    for k in range(-2, 3):
        e = ShuffleElement.generator(d, PLUS, 0, k)
        for p in [-1, 0, 1, Fraction(1, 2)]:
            assert slope_test(e, (p,), "geq")[0] == (k >= p)
            assert slope_test(e, (p,), "leq")[0] == (k <= p)


def test_slope_both_sides_forces_vdeg():
    d = sl2()
    for el in basis_window(d, PLUS, (2,), 2, SlopeWindow.at((1,))):
        assert el.vdeg() == 2


def test_zero_passes_every_slope():
    d = sl2()
    z = ShuffleElement(d, PLUS, (1,), LPoly.zero(1))
    assert slope_test(z, (5,), "geq")[0]
    assert in_window(z, SlopeWindow((0,), (0,)))


def test_slope_multiplicative():
    rng = random.Random(4)
    d = sl2()
    win = SlopeWindow.ge((Fraction(1, 2),))
    picked = 0
    while picked < 6:
        a = rand_elt(rng, d, PLUS, (1,), lo=-1, hi=2)
        b = rand_elt(rng, d, PLUS, (1,), lo=-1, hi=2)
        if in_window(a, win) and in_window(b, win):
            picked += 1
            assert in_window(shuffle_mul(a, b), win)


def test_basis_window_single_variable():
    d = sl2()
    for k, expect in [(0, 1), (1, 1), (-1, 0)]:
        assert len(basis_window(d, PLUS, (1,), k, SlopeWindow.ge((0,)))) \
            == expect


def test_basis_window_unit_piece():
    d = sl2()
    assert len(basis_window(d, PLUS, (0,), 0, SlopeWindow.ge((0,)))) == 1
    assert len(basis_window(d, PLUS, (0,), 1, SlopeWindow.ge((0,)))) == 0


def test_slope_subalgebra_dims():
    d = sl2()
    assert len(basis_window(d, PLUS, (2,), 0, SlopeWindow.at((0,)))) == 1
    assert len(basis_window(d, PLUS, (2,), 1,
                            SlopeWindow.at((Fraction(1, 2),)))) == 0


def test_word_span_expresses_members():
    d = sl2()
    el = ShuffleElement(d, PLUS, (2,),
                        LPoly.const(2, RATQ_ONE + Q ** -2))
    combo = as_words(el)
    assert combo == [(RATQ_ONE, ((0, 0), (0, 0)))]
    # rebuild and compare
    acc = LPoly.zero(2)
    for c, w in combo:
        acc.addmul(eword_to_shuffle(d, PLUS, w).poly, c)
    assert acc == el.poly


def test_images_satisfy_wheels_sl3():
    d = sl3()
    span = word_span(d, PLUS, (1, 1), 0)
    for img in span.images:
        if not img.is_zero():
            assert wheel_check(img)
