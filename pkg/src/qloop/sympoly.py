"""Laurent polynomials in adjoined transcendental symbols over Q(q).

Loop-weight parameters (the a, b in a symbolic rational weight) live here.
Only ring operations plus exact division are provided: kernels and ranks
with symbolic entries are decided fraction-free (Bareiss), so no
multivariate gcd is ever needed.  Inverses exist for monomials only, which
is all that series expansion of symbolic weights requires.
"""

from __future__ import annotations

from .scalars import RATQ_ONE, RATQ_ZERO, RatQ


class SymPoly:
    __slots__ = ("syms", "terms")

    def __init__(self, syms, terms=None):
        self.syms = syms
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def const(syms, c):
        c = _to_ratq(c)
        if not c:
            return SymPoly(syms, {})
        return SymPoly(syms, {(0,) * len(syms): c})

    @staticmethod
    def gen(syms, name, power=1):
        e = [0] * len(syms)
        e[syms.index(name)] = power
        return SymPoly(syms, {tuple(e): RATQ_ONE})

    def zero(self):
        return SymPoly(self.syms, {})

    def one(self):
        return SymPoly.const(self.syms, RATQ_ONE)

    # -- predicates ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SymPoly):
            return self.syms == other.syms and self.terms == other.terms
        other = _lift(self, other)
        return NotImplemented if other is NotImplemented \
            else self.terms == other.terms

    def __hash__(self):
        return hash((self.syms, frozenset(self.terms.items())))

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        other = _lift(self, other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            old = out.get(k)
            if old is None:
                out[k] = c
            else:
                old = old + c
                if old:
                    out[k] = old
                else:
                    del out[k]
        return SymPoly(self.syms, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.syms, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _lift(self, other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(self, other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                c = ca * cb
                if not c:
                    continue
                k = tuple(x + y for x, y in zip(ka, kb))
                old = out.get(k)
                if old is None:
                    out[k] = c
                else:
                    old = old + c
                    if old:
                        out[k] = old
                    else:
                        del out[k]
        return SymPoly(self.syms, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self):
        """Inverse, defined for single-term elements only."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only symbol monomials are invertible")
        (k, c), = self.terms.items()
        return SymPoly(self.syms, {tuple(-e for e in k): c.inv()})

    def __truediv__(self, other):
        other = _lift(self, other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def divexact(self, other):
        """Exact division by another SymPoly; raises if not divisible."""
        other = _lift(self, other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if not self.terms:
            return self.zero()
        ns = len(self.syms)
        shift_r = [min(k[i] for k in self.terms) for i in range(ns)]
        shift_d = [min(k[i] for k in other.terms) for i in range(ns)]
        rem = {tuple(e - s for e, s in zip(k, shift_r)): c
               for k, c in self.terms.items()}
        div = {tuple(e - s for e, s in zip(k, shift_d)): c
               for k, c in other.terms.items()}
        lead_d = max(div, key=_glex)
        inv_ld = div[lead_d].inv()
        quot = {}
        while rem:
            lead_r = max(rem, key=_glex)
            t = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(e < 0 for e in t):
                raise ArithmeticError("inexact symbolic division")
            c = rem[lead_r] * inv_ld
            quot[t] = quot.get(t, RATQ_ZERO) + c
            for kd, cd in div.items():
                k = tuple(a + b for a, b in zip(t, kd))
                old = rem.get(k)
                sub = c * cd
                if old is None:
                    rem[k] = -sub
                else:
                    old = old - sub
                    if old:
                        rem[k] = old
                    else:
                        del rem[k]
        back = tuple(r - d for r, d in zip(shift_r, shift_d))
        return SymPoly(self.syms,
                       {tuple(e + b for e, b in zip(k, back)): c
                        for k, c in quot.items() if c})

    # -- formatting ------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            mono = "*".join("%s^%d" % (s, e) if e != 1 else s
                            for s, e in zip(self.syms, k) if e)
            parts.append("(%s)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)


def _glex(k):
    return (sum(k),) + k


def _to_ratq(c):
    if isinstance(c, RatQ):
        return c
    return RatQ.from_rational(c)


def _lift(template, other):
    if isinstance(other, SymPoly):
        if other.syms != template.syms:
            return NotImplemented
        return other
    if isinstance(other, (int, RatQ)):
        return SymPoly.const(template.syms, other)
    try:
        return SymPoly.const(template.syms, RatQ.from_rational(other))
    except (TypeError, ValueError):
        return NotImplemented


def sym_ring(*names):
    """Convenience: returns (gen_1, ..., gen_k, lift) for a symbol ring."""
    syms = tuple(names)
    gens = tuple(SymPoly.gen(syms, n) for n in names)
    def lift(c):
        return SymPoly.const(syms, c)
    return gens + (lift,)
