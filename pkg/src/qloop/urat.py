"""Univariate rational functions f(x) over an exact coefficient ring.

Numerator and denominator are Laurent polynomials in x stored as
{exponent: coeff} dicts.  The two expansions used throughout are cached:
around x = 0 (powers of x) and around x = infinity (powers of 1/x).  Both
are honest Laurent series with a finite principal part, so poles at the
expansion point are fine as long as their order is determined by the data.
"""

from __future__ import annotations

from .scalars import RATQ_ONE, RATQ_ZERO, RatQ


def _inv_coeff(c):
    if isinstance(c, RatQ):
        return c.inv()
    return c.inv()  # duck-typed (SymPoly monomials)


class URat:
    __slots__ = ("num", "den", "_s0", "_sinf")

    def __init__(self, num, den=None):
        self.num = {e: c for e, c in num.items() if c}
        den = den if den is not None else {0: RATQ_ONE}
        self.den = {e: c for e, c in den.items() if c}
        if not self.den:
            raise ZeroDivisionError("zero denominator")
        self._s0 = None
        self._sinf = None

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def const(c):
        return URat({0: c} if c else {})

    @staticmethod
    def from_coeffs(num_list, den_list=None):
        """Coefficient lists, constant term first."""
        num = {e: c for e, c in enumerate(num_list)}
        den = {e: c for e, c in enumerate(den_list)} if den_list else None
        return URat(num, den)

    def is_zero(self):
        return not self.num

    # -- algebra ---------------------------------------------------------------

    def __mul__(self, other):
        return URat(_ldmul(self.num, other.num), _ldmul(self.den, other.den))

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of the zero function")
        return URat(self.den, self.num)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = URat.const(RATQ_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def subs_recip(self):
        """f(1/x)."""
        return URat({-e: c for e, c in self.num.items()},
                    {-e: c for e, c in self.den.items()})

    def shift(self, k):
        """x**k * f(x)."""
        return URat({e + k: c for e, c in self.num.items()}, dict(self.den))

    def evaluate(self, c):
        """f(c) for an invertible scalar c; denominator must not vanish."""
        num = _ld_eval(self.num, c)
        den = _ld_eval(self.den, c)
        if not den:
            raise ZeroDivisionError("pole at evaluation point")
        return num * _inv_coeff(den)

    # -- series ----------------------------------------------------------------

    def series0(self, order):
        """Laurent expansion around 0: returns (val, coeffs) with
        f = sum coeffs[k] * x**(val+k), coeffs covering exponents up to order."""
        if not self.num:
            return 0, [RATQ_ZERO] * (order + 1)
        if self._s0 is None:
            nv, dv = min(self.num), min(self.den)
            self._s0 = _SeriesState(self.num, nv, self.den, dv)
        return self._s0.upto(order)

    def seriesInf(self, order):
        """Expansion around infinity in powers of 1/x: returns (val, coeffs)
        with f = sum coeffs[k] * x**(val-k) and val the leading exponent."""
        if not self.num:
            return 0, [RATQ_ZERO] * (order + 1)
        if self._sinf is None:
            g = self.subs_recip()
            nv, dv = min(g.num), min(g.den)
            self._sinf = _SeriesState(g.num, nv, g.den, dv)
        v, coeffs = self._sinf.upto(order)
        return -v, coeffs

    def val0(self):
        """Valuation at 0 (negative for a pole)."""
        return min(self.num) - min(self.den)

    def valInf(self):
        """Leading exponent at infinity."""
        return max(self.num) - max(self.den)

    def __repr__(self):
        return "URat(%r / %r)" % (self.num, self.den)


class _SeriesState:
    """Incrementally extended series division num/den around 0."""

    __slots__ = ("ncoef", "dcoef", "val", "d0inv", "out")

    def __init__(self, num, nv, den, dv):
        deg_n = max(num)
        self.ncoef = [num.get(e, RATQ_ZERO) for e in range(nv, deg_n + 1)]
        deg_d = max(den)
        self.dcoef = [den.get(e, RATQ_ZERO) for e in range(dv, deg_d + 1)]
        self.val = nv - dv
        self.d0inv = _inv_coeff(self.dcoef[0])
        self.out = []

    def upto(self, order):
        """Coefficients for exponents val .. order (possibly empty)."""
        need = order - self.val + 1
        while len(self.out) < max(need, 1):
            k = len(self.out)
            acc = self.ncoef[k] if k < len(self.ncoef) else RATQ_ZERO
            for j in range(1, min(k, len(self.dcoef) - 1) + 1):
                c = self.out[k - j]
                d = self.dcoef[j]
                if c and d:
                    acc = acc - d * c
            self.out.append(acc * self.d0inv)
        return self.val, self.out[:max(need, 0)]


def _ldmul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            c = ca * cb
            if not c:
                continue
            e = ea + eb
            old = out.get(e)
            if old is None:
                out[e] = c
            else:
                old = old + c
                if old:
                    out[e] = old
                else:
                    del out[e]
    return out


def _ld_eval(d, c):
    acc = RATQ_ZERO
    for e, coeff in d.items():
        acc = acc + coeff * c ** e
    return acc
