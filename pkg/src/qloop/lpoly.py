"""Sparse multivariate Laurent polynomials with positional variables.

Terms map exponent tuples (one slot per variable, integers of either sign)
to nonzero coefficients.  Coefficients are duck-typed: anything with ring
arithmetic and a truthiness test works (RatQ, SymPoly).  Variable naming
is owned by the callers; this layer is purely positional.
"""

from __future__ import annotations

from . import _backend
from .scalars import RATQ_ONE, RATQ_ZERO

class LPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(nvars):
        return LPoly(nvars, {})

    @staticmethod
    def const(nvars, coeff):
        if not coeff:
            return LPoly(nvars, {})
        return LPoly(nvars, {(0,) * nvars: coeff})

    @staticmethod
    def monomial(nvars, exps, coeff):
        if not coeff:
            return LPoly(nvars, {})
        return LPoly(nvars, {tuple(exps): coeff})

    @staticmethod
    def var(nvars, i, power=1, coeff=RATQ_ONE):
        exps = [0] * nvars
        exps[i] = power
        return LPoly.monomial(nvars, exps, coeff)

    def copy(self):
        return LPoly(self.nvars, dict(self.terms))

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, LPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        assert self.nvars == other.nvars
        out = dict(self.terms)
        _backend.dict_addmul(out, other.terms, None, None)
        return LPoly(self.nvars, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LPoly(self.nvars, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LPoly):
            assert self.nvars == other.nvars
            if len(self.terms) > len(other.terms):
                a, b = other.terms, self.terms
            else:
                a, b = self.terms, other.terms
            return LPoly(self.nvars, _backend.dict_mul(a, b))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, coeff):
        if not coeff:
            return LPoly(self.nvars, {})
        return LPoly(self.nvars, {k: c * coeff for k, c in self.terms.items()})

    def addmul(self, other, coeff=None, shift=None):
        """self += coeff * z^shift * other, in place."""
        _backend.dict_addmul(self.terms, other.terms, coeff, shift)
        return self

    def __pow__(self, k):
        assert k >= 0
        out = LPoly.const(self.nvars, RATQ_ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- structure -----------------------------------------------------------

    def coeff_of(self, exps):
        return self.terms.get(tuple(exps), RATQ_ZERO)

    def total_degrees(self, weights=None):
        """(min, max) of the weighted exponent sums over all terms."""
        lo = hi = None
        for k in self.terms:
            s = sum(e * w for e, w in zip(k, weights)) if weights else sum(k)
            if lo is None or s < lo:
                lo = s
            if hi is None or s > hi:
                hi = s
        return lo, hi

    def var_degrees(self, i):
        lo = hi = None
        for k in self.terms:
            e = k[i]
            if lo is None or e < lo:
                lo = e
            if hi is None or e > hi:
                hi = e
        return lo, hi

    def homogeneous_parts(self):
        """Split by total degree; returns {degree: LPoly}."""
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(sum(k), {})[k] = c
        return {d: LPoly(self.nvars, t) for d, t in sorted(parts.items())}

    def map_exponents(self, fn, nvars_out):
        """Rebuild with exponent tuples transformed by fn (must be injective-safe)."""
        out = {}
        for k, c in self.terms.items():
            nk = fn(k)
            old = out.get(nk)
            if old is None:
                out[nk] = c
            else:
                old = old + c
                if old:
                    out[nk] = old
                else:
                    del out[nk]
        return LPoly(nvars_out, out)

    def permute_vars(self, perm):
        """perm[i] = new position of variable i."""
        n = self.nvars
        out = {}
        for k, c in self.terms.items():
            nk = [0] * n
            for i, e in enumerate(k):
                nk[perm[i]] = e
            out[tuple(nk)] = c
        return LPoly(n, out)

    def subs_scaled_var(self, i, target, scalar):
        """Substitute z_i -> scalar * z_target (target may equal i)."""
        out = {}
        for k, c in self.terms.items():
            e = k[i]
            if e:
                c = c * scalar ** e
                if not c:
                    continue
                nk = list(k)
                nk[i] = 0
                nk[target] += e
                nk = tuple(nk)
            else:
                nk = k
            old = out.get(nk)
            if old is None:
                out[nk] = c
            else:
                old = old + c
                if old:
                    out[nk] = old
                else:
                    del out[nk]
        return LPoly(self.nvars, out)

    def scale_var(self, i, scalar):
        """Substitute z_i -> scalar * z_i."""
        return self.subs_scaled_var(i, i, scalar)

    def drop_var(self, i):
        """Remove a variable that no longer occurs."""
        out = {}
        for k, c in self.terms.items():
            assert k[i] == 0, "variable still occurs"
            out[k[:i] + k[i + 1:]] = c
        return LPoly(self.nvars - 1, out)

    def shift_all(self, shift):
        return LPoly(self.nvars,
                     {tuple(e + s for e, s in zip(k, shift)): c
                      for k, c in self.terms.items()})

    def divexact_binom(self, ia, ca, ib, cb):
        """Exact division by (ca*z_ia + cb*z_ib); raises if not divisible."""
        lo_a = self.var_degrees(ia)[0]
        if lo_a is None:
            if not self.terms:
                return self
            raise ArithmeticError("not divisible")
        rem = self.shift_all(tuple(-lo_a if j == ia else 0
                                   for j in range(self.nvars))).terms
        ca_inv = RATQ_ONE / ca
        quot = {}
        while rem:
            # peel the highest z_ia-exponent term; it must come from ca*z_ia * Q
            k = max(rem, key=lambda t: (t[ia],) + t)
            c = rem.pop(k)
            if k[ia] == 0:
                raise ArithmeticError("binomial division leaves a remainder")
            qk = list(k)
            qk[ia] -= 1
            qc = c * ca_inv
            qk = tuple(qk)
            old = quot.get(qk)
            quot[qk] = old + qc if old is not None else qc
            if old is not None and not quot[qk]:
                del quot[qk]
            # subtract qc * cb * z_ib * z^qk from the remainder
            rk = list(qk)
            rk[ib] += 1
            rk = tuple(rk)
            rc = qc * cb
            old = rem.get(rk)
            if old is None:
                if rc:
                    rem[rk] = -rc
            else:
                old = old - rc
                if old:
                    rem[rk] = old
                else:
                    del rem[rk]
        out = LPoly(self.nvars, quot)
        back = tuple(lo_a if j == ia else 0 for j in range(self.nvars))
        return out.shift_all(back)

    # -- formatting ------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_str(self, names=None):
        if not self.terms:
            return "0"
        names = names or ["z%d" % i for i in range(self.nvars)]
        parts = []
        for k, c in self.sorted_terms():
            mono = "*".join("%s^%d" % (names[i], e) if e != 1 else names[i]
                            for i, e in enumerate(k) if e)
            parts.append("(%s)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return self.to_str()
