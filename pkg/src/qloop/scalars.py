"""Exact arithmetic over the ground field K = Q(q).

A field element is a reduced ratio of two univariate polynomials in q with
exact rational coefficients.  Polynomials are plain tuples of rationals,
constant term first, no trailing zeros; the zero polynomial is ().  The
denominator is monic and coprime to the numerator, and zero is always
(num=(), den=(1,)), so equal values have equal representations.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

from . import _backend

_Q0 = QQ(0)
_Q1 = QQ(1)

PZERO = ()
PONE = (_Q1,)


def pnorm(coeffs):
    """Strip trailing zeros off a coefficient list."""
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return pnorm(out)


def pneg(a):
    return tuple(-c for c in a)


def psub(a, b):
    out = list(a) + [_Q0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return pnorm(out)


def pmul(a, b):
    if not a or not b:
        return PZERO
    return pnorm(_backend.conv(a, b, _Q0))


def pmulc(a, c):
    if not c:
        return PZERO
    return tuple(x * c for x in a)


def pshift(a, k):
    """Multiply by q**k (k >= 0)."""
    if not a:
        return PZERO
    return (_Q0,) * k + tuple(a)


def pdivmod(a, b):
    """Euclidean division over Q[q]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [_Q0] * max(0, len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = c / lb
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return pnorm(q), pnorm(r)


def pgcd(a, b):
    """Monic gcd over Q[q]."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    if not a:
        return PZERO
    la = a[-1]
    if la == _Q1:
        return a
    return tuple(c / la for c in a)


def peval(a, x):
    acc = _Q0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pval(a):
    """Index of the lowest nonzero coefficient (valuation at q = 0)."""
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("zero polynomial has no valuation")


class RatQ:
    """An element of Q(q) in reduced normal form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=PONE, _normal=False):
        if _normal:
            self.num, self.den = num, den
        else:
            self.num, self.den = _reduce(tuple(num), tuple(den))
        self._hash = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_rational(c):
        c = QQ(c)
        if not c:
            return RATQ_ZERO
        return RatQ((c,), PONE, _normal=True)

    @staticmethod
    def q_power(k):
        """q**k for any integer k."""
        if k >= 0:
            return RatQ(pshift(PONE, k), PONE, _normal=True)
        return RatQ(PONE, pshift(PONE, -k), _normal=True)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == PONE and self.den == PONE

    def q_monomial(self):
        """Return (coefficient, exponent) if self = c * q**k, else None."""
        if not self.num:
            return None
        nv = pval(self.num)
        if any(self.num[nv + 1:]):
            return None
        dv = pval(self.den)
        if any(self.den[dv + 1:]):
            return None
        return self.num[nv] / self.den[dv], nv - dv

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatQ):
            return other
        if isinstance(other, int):
            return RatQ.from_rational(other)
        if isinstance(other, type(_Q1)):
            return RatQ.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            num = padd(self.num, other.num)
            if self.den == PONE:
                return RatQ(num, PONE, _normal=True)
            return RatQ(num, self.den)
        num = padd(pmul(self.num, other.den), pmul(other.num, self.den))
        return RatQ(num, pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatQ(pneg(self.num), self.den, _normal=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return RATQ_ZERO
        if self.den == PONE and other.den == PONE:
            return RatQ(pmul(self.num, other.num), PONE, _normal=True)
        return RatQ(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RatQ(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out, base = RATQ_ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing --------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- formatting ------------------------------------------------------------

    def __str__(self):
        ns = _poly_str(self.num)
        if self.den == PONE:
            return ns
        return "(%s)/(%s)" % (ns, _poly_str(self.den))

    __repr__ = __str__


def _reduce(num, den):
    num, den = pnorm(num), pnorm(den)
    if not den:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not num:
        return PZERO, PONE
    # cancel common powers of q first (cheap and very common)
    nv, dv = pval(num), pval(den)
    s = min(nv, dv)
    if s:
        num, den = num[s:], den[s:]
    # monomial denominator or numerator: no gcd beyond the q-power strip
    if len(den) - dv + s == 1 or len(num) - nv + s == 1:
        lc = den[-1]
        if lc != _Q1:
            num = tuple(c / lc for c in num)
            den = tuple(c / lc for c in den)
        return num, den
    g = pgcd(num, den)
    if len(g) > 1:
        num = pdivmod(num, g)[0]
        den = pdivmod(den, g)[0]
    lc = den[-1]
    if lc != _Q1:
        num = tuple(c / lc for c in num)
        den = tuple(c / lc for c in den)
    return num, den


def _poly_str(p):
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append("%s*q" % c)
        else:
            parts.append("%s*q^%d" % (c, k))
    return " + ".join(parts)


def parse_ratq(text):
    """Parse the canonical textual form back into a RatQ (inverse of str)."""
    text = text.strip()
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        ns, ds = text[1:-1].split(")/(", 1)
        return RatQ(_parse_poly(ns), _parse_poly(ds))
    return RatQ(_parse_poly(text), PONE)


def _parse_poly(text):
    text = text.strip()
    if text == "0":
        return PZERO
    coeffs = {}
    for part in text.replace("- ", "+ -").split(" + "):
        part = part.strip()
        if not part:
            continue
        if "*q" in part:
            cs, qs = part.split("*q", 1)
            k = int(qs[1:]) if qs.startswith("^") else 1
        elif part == "q":
            cs, k = "1", 1
        else:
            cs, k = part, 0
        coeffs[k] = coeffs.get(k, _Q0) + QQ(cs)
    out = [_Q0] * (max(coeffs) + 1 if coeffs else 0)
    for k, c in coeffs.items():
        out[k] = c
    return pnorm(out)


RATQ_ZERO = RatQ(PZERO, PONE, _normal=True)
RATQ_ONE = RatQ(PONE, PONE, _normal=True)
Q = RatQ.q_power(1)


def ratq(x):
    """Coerce ints/rationals/strings/RatQ into RatQ."""
    if isinstance(x, RatQ):
        return x
    if isinstance(x, str):
        return parse_ratq(x)
    return RatQ.from_rational(x)
