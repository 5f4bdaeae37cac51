import pytest

from qloop.lpoly import LPoly
from qloop.rexpr import (GenericityError, NonSimplePoleError, RExpr,
                         iterated_residue, radius_integrate, residue)
from qloop.scalars import Q, RATQ_ONE, RatQ


def test_unit_residue_of_simple_pole():
    # 1/(z1 - z2 q^2): residue at z1 = q^2 z2 is 1
    e = RExpr.from_poly(LPoly.const(2, RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 2), -1)
    out = residue(e, 0, 1, Q ** 2, simple_only=True)
    assert len(out) == 1
    t = out[0]
    assert not t.bins and t.poly.terms == {(0, 0): RATQ_ONE}


def test_residue_evaluates_numerator():
    # z1/(z1 - z2 q^2) -> z2 q^2
    e = RExpr.from_poly(LPoly.monomial(2, (1, 0), RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 2), -1)
    (t,) = residue(e, 0, 1, Q ** 2, simple_only=True)
    assert not t.bins and t.poly.terms == {(0, 1): Q ** 2}


def test_residue_keeps_other_factor():
    # 1/((z1 - z2 q^2)(z1 - z2 q^4)) -> 1/(z2 q^2 - z2 q^4)
    e = RExpr.from_poly(LPoly.const(2, RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 2), -1)
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 4), -1)
    (t,) = residue(e, 0, 1, Q ** 2, simple_only=True)
    assert not t.bins
    expect = (Q ** 2 - Q ** 4).inv()
    assert t.poly.terms == {(0, -1): expect}


def test_non_simple_pole_rejected():
    e = RExpr.from_poly(LPoly.const(2, RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 2), -2)
    with pytest.raises(NonSimplePoleError):
        residue(e, 0, 1, Q ** 2, simple_only=True)


def test_regular_point_gives_zero():
    e = RExpr.from_poly(LPoly.const(2, RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 2), -1)
    assert residue(e, 0, 1, Q ** 4) == []


def test_iterated_residue_chain():
    # 1/((z1 - q^2 z2)(z2 - q^2 z3)) along the chain, relabeled to w q^-2
    e = RExpr.from_poly(LPoly.const(4, RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -(Q ** 2), -1)
    e = e.mul_bin(1, RATQ_ONE, 2, -(Q ** 2), -1)
    terms = iterated_residue(e, [0, 1, 2], [Q ** 2, Q ** 2],
                             relabel=(3, Q ** -2))
    assert len(terms) == 1 and not terms[0].bins


def test_on_contour_pole_raises():
    # 1/(w1 - w2) at equal radii is non-generic
    e = RExpr.from_poly(LPoly.const(2, RATQ_ONE))
    e = e.mul_bin(0, RATQ_ONE, 1, -RATQ_ONE, -1)
    with pytest.raises(GenericityError):
        radius_integrate([e], [0, 1])


def test_radius_integration_constant():
    e = RExpr.from_poly(LPoly.const(2, RATQ_ONE))
    assert radius_integrate([e], [0, 1]) == RATQ_ONE
