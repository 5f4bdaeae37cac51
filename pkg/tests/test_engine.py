import pytest

from qloop.engine import Regime, RegimeError, constant_term, two_contour_ct
from qloop.lpoly import LPoly
from qloop.scalars import Q, RATQ_ONE, RATQ_ZERO, RatQ, ratq
from qloop.urat import URat
from qloop.zetadata import sl2

GEOM = URat({0: RATQ_ONE}, {0: RATQ_ONE, 1: -RATQ_ONE})  # 1/(1-x)


def zeta11():
    return sl2().zeta[0, 0]


def test_geometric_series():
    assert GEOM.series0(2) == (0, [RATQ_ONE, RATQ_ONE, RATQ_ONE])


def test_zeta_expansion():
    # long-division oracle: (q^-2 - x)(1 + x + x^2 + ...)
    val, coeffs = zeta11().series0(1)
    assert val == 0
    assert coeffs == [Q ** -2, Q ** -2 - 1]


def test_inverse_zeta_expansion():
    # reciprocal-series oracle: both routes give q^2 + (q^4 - q^2) x
    val, coeffs = zeta11().inv().series0(1)
    assert (val, coeffs) == (0, [Q ** 2, Q ** 4 - Q ** 2])
    # multiply the two truncations: 1 + O(x^2)
    a = zeta11().series0(3)[1]
    b = zeta11().inv().series0(3)[1]
    prod = [sum((a[i] * b[k - i] for i in range(k + 1)), RATQ_ZERO)
            for k in range(4)]
    assert prod[0] == RATQ_ONE and not any(prod[1:])


def test_ct_exponent_cancel():
    poly = LPoly.monomial(1, (0,), RATQ_ONE)
    assert constant_term(1, poly, [], Regime.chain_up_from_one([0])) \
        == RATQ_ONE


def test_ct_chain_example():
    # z1 z2^-1 / zeta(z2/z1) in |z1| >> |z2| picks the x^1 coefficient
    poly = LPoly.monomial(2, (1, -1), RATQ_ONE)
    val = constant_term(2, poly, [(zeta11().inv(), (-1, 1))],
                        Regime.chain_down([0, 1]))
    assert val == Q ** 4 - Q ** 2


def test_ct_no_constant_term():
    poly = LPoly.monomial(2, (1, -1), RATQ_ONE)
    assert constant_term(2, poly, [], Regime.chain_down([0, 1])) == RATQ_ZERO


def test_ct_empty_product_is_one():
    poly = LPoly.const(1, RATQ_ONE)
    assert constant_term(1, poly, [], Regime.chain_down([0])) == RATQ_ONE


def test_ct_truncation_stability():
    # recompute with all factor series padded: same engine answer
    poly = LPoly.monomial(3, (2, -1, -1), RATQ_ONE)
    factors = [(zeta11().inv(), (-1, 1, 0)), (zeta11().inv(), (0, -1, 1))]
    reg = Regime.chain_down([0, 1, 2])
    v1 = constant_term(3, poly, factors, reg)
    # pre-extend the series caches beyond the engine's own bound
    for f, _m in factors:
        f.series0(30)
    assert constant_term(3, poly, factors, reg) == v1


def test_two_contour_laurent_vanishes():
    mono = LPoly.monomial(1, (3,), RATQ_ONE)
    assert two_contour_ct(1, mono, [], 0) == RATQ_ZERO
    mono = LPoly.monomial(1, (-2,), RATQ_ONE)
    assert two_contour_ct(1, mono, [], 0) == RATQ_ZERO


def test_two_contour_simple_pole():
    # G(w) = 1/(w - a) with a = 2: near-infinity CT 0, near-zero CT -1/2
    g = URat({0: RATQ_ONE}, {1: RATQ_ONE, 0: ratq(-2)})
    one = LPoly.const(1, RATQ_ONE)
    assert two_contour_ct(1, one, [(g, (1,))], 0) == ratq("1/2")
    # a/(w-a) - 1 integrates to 1
    g2 = URat({0: ratq(2)}, {1: RATQ_ONE, 0: ratq(-2)})
    v = two_contour_ct(1, one, [(g2, (1,))], 0) - two_contour_ct(
        1, one, [], 0)
    assert v == RATQ_ONE


def test_unanchored_scale_factor_rejected():
    poly = LPoly.const(1, RATQ_ONE)
    with pytest.raises(RegimeError):
        constant_term(1, poly, [(GEOM, (1,))], Regime.chain_down([0]))
