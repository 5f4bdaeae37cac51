import pytest
from hypothesis import given, settings, strategies as st

from qloop.scalars import Q, QQ, RATQ_ONE, RatQ
from qloop.urat import URat
from qloop.zetadata import (AlgebraDatum, DatumError, constant_datum,
                            datum_from_json, datum_to_json,
                            preset_quantum_affine, sl2, sl3)


def test_sl2_preset_zeta():
    d = sl2()
    z = d.zeta[0, 0]
    assert z.num == {0: Q ** -2, 1: -RATQ_ONE}
    assert z.den == {0: RATQ_ONE, 1: -RATQ_ONE}


def test_sl2_derived_constants():
    dc = sl2().derived
    assert dc.sharp[0, 0] == 0
    assert dc.lead[0, 0] == RATQ_ONE
    assert dc.trail[0, 0] == -(Q ** -2)
    assert dc.gamma_ss[0, 0] == Q ** 2
    assert dc.generic


def test_sl3_preset_zeta():
    d = sl3()
    assert d.zeta[0, 1].num == {0: Q, 1: -RATQ_ONE}
    assert d.zeta[0, 1].den == {0: RATQ_ONE}
    assert d.zeta[1, 0].num == {-1: -Q, 0: RATQ_ONE}


def test_denominator_power_rejected():
    bad = URat({0: RATQ_ONE},
               {0: RATQ_ONE, 1: RatQ.from_rational(-2), 2: RATQ_ONE})
    with pytest.raises(DatumError):
        AlgebraDatum(("1",), {(0, 0): bad})


def test_assumption_violation_rejected():
    # zeta_11 = (1 - x)/(1) has trailing exponent 0 but leading sharp -...
    bad = URat({0: RATQ_ONE, 2: RATQ_ONE})
    with pytest.raises(DatumError):
        AlgebraDatum(("1",), {(0, 0): bad})


def test_constant_datum_constants():
    # zeta = 1 in magnitude form has numerator (x - 1): the (-1)^delta sign
    # cancels against the trailing coefficient, so gamma is 1 and the datum
    # is flagged non-generic
    c = constant_datum(2)
    assert c.derived.gamma_ss[0, 0] == RATQ_ONE
    assert c.derived.gamma_ss[0, 1] == RATQ_ONE
    assert not c.derived.generic


def test_cartan_pairing_values():
    d = sl2()
    assert d.p_pairing(0, 0, 1) == Q ** 2 - Q ** -2
    assert d.kappa_pair_matrix()[(0, 0)] == Q ** 2


def test_pairing_degree_mismatch_is_structural():
    # mixed-degree loop-Cartan pairings vanish by construction: the pairing
    # tables are diagonal in the mode degree
    d = sl3()
    m = d.p_pair_matrix(2)
    assert set(m) == {(i, j) for i in range(2) for j in range(2)}


def test_gamma_multiplicative():
    d = sl3()
    for m1, m2, n in [((1, 0), (0, 2), (1, 1)), ((2, 1), (1, 0), (0, 1))]:
        lhs = d.gamma(tuple(a + b for a, b in zip(m1, m2)), n)
        assert lhs == d.gamma(m1, n) * d.gamma(m2, n)
        lhs = d.gamma(n, tuple(a + b for a, b in zip(m1, m2)))
        assert lhs == d.gamma(n, m1) * d.gamma(n, m2)


def test_generic_exponent_condition():
    # quantum-affine presets: the q-exponent of gamma^n is a nonzero integer
    assert sl2().derived.generic
    assert sl3().derived.generic


def test_validate_idempotent():
    d = sl2()
    from qloop.zetadata import validate
    dc1 = validate(d)
    dc2 = validate(d)
    assert dc1.sharp == dc2.sharp and dc1.gamma_ss == dc2.gamma_ss


def test_json_roundtrip_bit_exact():
    from qloop.serialize import canonical_json
    for d in [sl2(), sl3(), constant_datum(2)]:
        obj = datum_to_json(d)
        d2 = datum_from_json(obj)
        assert canonical_json(datum_to_json(d2)) == canonical_json(obj)


def test_preset_shortcuts():
    d = datum_from_json({"preset": "sl2"})
    assert d.cartan == [[2]]
    d = datum_from_json({"cartan": [[2, -1], [-1, 2]], "colors": ["1", "2"]})
    assert d.ncolors == 2


def test_non_symmetrizable_rejected():
    with pytest.raises(DatumError):
        preset_quantum_affine([[2, -1], [-2, 2]])
    with pytest.raises(DatumError):
        preset_quantum_affine([[3]])


def test_normalizers():
    d = sl2(normalized=True)
    assert d.normalizer(0) == Q ** -1 - Q
    assert sl2().normalizer(0) == RATQ_ONE
