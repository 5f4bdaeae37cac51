"""Rational expressions whose denominators are products of linear binomials.

An RExpr is poly * prod (z_a + c*z_b)**power over a fixed positional
variable space, with exact scalar coefficients.  This is the shape of every
integrand in the residue formula for the pairing: specializing variables
onto geometric strings keeps the shape, so iterated residues and
equal-radius contour integrals stay exact.  Contour integrals over |w| = r
are evaluated as sums of residues strictly inside the circle, poles being
classified by the magnitude rule |q| > 1.
"""

from __future__ import annotations

from math import comb

from .lpoly import LPoly
from .scalars import RATQ_ONE, RATQ_ZERO


class NonSimplePoleError(ArithmeticError):
    pass


class GenericityError(ArithmeticError):
    pass


def _unit(nvars, i, e):
    out = [0] * nvars
    out[i] = e
    return tuple(out)


def _binom_int(e, j):
    """Binomial coefficient C(e, j) for integer e of any sign, j >= 0."""
    if j == 0:
        return 1
    if e >= 0:
        return comb(e, j) if j <= e else 0
    return (-1) ** j * comb(-e + j - 1, j)


class RExpr:
    """poly * prod over bins (z_ia + c * z_ib)**power, with ia != ib and the
    z_ia coefficient normalized to one."""

    __slots__ = ("nvars", "poly", "bins")

    def __init__(self, nvars, poly, bins=None):
        self.nvars = nvars
        self.poly = poly
        self.bins = bins if bins is not None else {}

    @staticmethod
    def from_poly(poly):
        return RExpr(poly.nvars, poly)

    def copy(self):
        return RExpr(self.nvars, self.poly, dict(self.bins))

    def is_zero(self):
        return self.poly.is_zero()

    def mul_poly(self, poly):
        return RExpr(self.nvars, self.poly * poly, dict(self.bins))

    def mul_scalar(self, c):
        return RExpr(self.nvars, self.poly.scale(c), dict(self.bins))

    def mul_monomial(self, exps, coeff=RATQ_ONE):
        return RExpr(self.nvars,
                     self.poly.shift_all(exps).scale(coeff), dict(self.bins))

    def mul_bin(self, ia, ca, ib, cb, power=1):
        """Multiply by (ca*z_ia + cb*z_ib)**power."""
        if not ca:
            return self.mul_monomial(_unit(self.nvars, ib, power), cb ** power)
        if not cb:
            return self.mul_monomial(_unit(self.nvars, ia, power), ca ** power)
        out = self.copy()
        key = (ia, ib, cb / ca)
        out.poly = out.poly.scale(ca ** power)
        out.bins[key] = out.bins.get(key, 0) + power
        if out.bins[key] == 0:
            del out.bins[key]
        return out

    def mul_expr(self, other):
        out = RExpr(self.nvars, self.poly * other.poly, dict(self.bins))
        for key, p in other.bins.items():
            out.bins[key] = out.bins.get(key, 0) + p
            if out.bins[key] == 0:
                del out.bins[key]
        return out

    # -- specialization --------------------------------------------------------

    def subs(self, var, target, scalar):
        """Substitute z_var -> scalar * z_target; no bin may vanish there."""
        expr = RExpr(self.nvars, self.poly.subs_scaled_var(var, target, scalar))
        for (ia, ib, c), p in self.bins.items():
            if ia == var:
                na, ca2, nb, cb2 = target, scalar, ib, c
            elif ib == var:
                na, ca2, nb, cb2 = ia, RATQ_ONE, target, c * scalar
            else:
                expr.bins[(ia, ib, c)] = expr.bins.get((ia, ib, c), 0) + p
                continue
            if na == nb:
                tot = ca2 + cb2
                if not tot:
                    raise NonSimplePoleError("bin vanishes under substitution")
                expr = expr.mul_monomial(_unit(self.nvars, na, p), tot ** p)
            else:
                expr = expr.mul_bin(na, ca2, nb, cb2, p)
        return expr

    def __repr__(self):
        return "RExpr(%r * %r)" % (self.poly, dict(self.bins))


def _vanishing_coeff(key, var, target, scalar):
    """If the bin vanishes identically at z_var = scalar*z_target, return the
    z_var coefficient of the bin, else None."""
    ia, ib, c = key
    if ia == var and ib == target:
        if c + scalar == 0:
            return RATQ_ONE
    elif ia == target and ib == var:
        if RATQ_ONE + c * scalar == 0:
            return c
    return None


def pole_order(expr, var, target, scalar):
    return -sum(p for key, p in expr.bins.items()
                if _vanishing_coeff(key, var, target, scalar) is not None)


def residue(expr, var, target, scalar, simple_only=False):
    """Residue of expr at z_var = scalar * z_target.

    Returns a list of RExpr terms in the remaining variables (empty when the
    point is regular).  With simple_only, a pole of order > 1 raises."""
    vanish = []
    others = []
    for key, p in expr.bins.items():
        c1 = _vanishing_coeff(key, var, target, scalar)
        if c1 is not None:
            vanish.append((key, p, c1))
        else:
            others.append((key, p))
    net = sum(p for _, p, _ in vanish)
    if net >= 0:
        return []
    if simple_only and net < -1:
        raise NonSimplePoleError(
            "pole of order %d at z%d = (%s)*z%d" % (-net, var, scalar, target))
    J = -1 - net  # needed Taylor order in t, where z_var = scalar*z_target*(1+t)
    n = expr.nvars

    # series[j] = list of RExpr pieces multiplying t**j
    series = [[RExpr(n, LPoly.const(n, RATQ_ONE))]] + [[] for _ in range(J)]

    def mul_series(orders):
        nonlocal series
        new = [[] for _ in range(J + 1)]
        for j1, terms in enumerate(series):
            if not terms:
                continue
            for j2 in range(0, J + 1 - j1):
                fac = orders[j2] if j2 < len(orders) else None
                if fac is None:
                    continue
                for t1 in terms:
                    new[j1 + j2].append(t1.mul_expr(fac))
        series = new

    def mul_all(fn):
        nonlocal series
        series = [[fn(t) for t in terms] for terms in series]

    # polynomial part under z_var -> scalar*z_target*(1+t)
    pol_orders = []
    for j in range(J + 1):
        acc = LPoly.zero(n)
        for k, c in expr.poly.terms.items():
            e = k[var]
            bj = _binom_int(e, j)
            if not bj:
                continue
            nk = list(k)
            nk[var] = 0
            nk[target] += e
            acc.addmul(LPoly.monomial(n, tuple(nk), c), RATQ_ONE * bj * scalar ** e)
        pol_orders.append(None if acc.is_zero() else RExpr(n, acc))
    mul_series(pol_orders)

    # non-vanishing bins
    for (ia, ib, c), p in others:
        if ia == var:
            base = (target, scalar, ib, c)
            s_coef = scalar
        elif ib == var:
            base = (ia, RATQ_ONE, target, c * scalar)
            s_coef = c * scalar
        else:
            series_bin = (ia, RATQ_ONE, ib, c, p)
            mul_all(lambda t, b=series_bin: t.mul_bin(*b))
            continue
        orders = []
        for j in range(J + 1):
            scal = RATQ_ONE * _binom_int(p, j)
            if not scal:
                orders.append(None)
                continue
            piece = RExpr(n, LPoly.monomial(n, _unit(n, target, j),
                                            scal * s_coef ** j))
            if base[0] == base[2]:
                # the bin collapses onto the target variable
                tot = base[1] + base[3]
                piece = piece.mul_monomial(_unit(n, base[0], p - j),
                                           tot ** (p - j))
            else:
                piece = piece.mul_bin(base[0], base[1], base[2], base[3],
                                      p - j)
            orders.append(piece)
        mul_series(orders)

    # vanishing bins contribute (c1*scalar*z_target*t)**p each; the residue is
    # scalar*z_target times the t**(-1) coefficient
    prefac = scalar
    shift = 1
    for _key, p, c1 in vanish:
        prefac = prefac * (c1 * scalar) ** p
        shift += p
    mono = _unit(n, target, shift)
    return [piece.mul_monomial(mono, prefac) for piece in series[J]
            if not piece.is_zero()]


def ct_at_zero(expr, var):
    """[z_var**0] of the expansion of expr around z_var = 0, as RExpr terms
    in the remaining variables."""
    n = expr.nvars
    lo, _hi = expr.poly.var_degrees(var)
    if lo is None:
        return []
    need = max(0, -lo)
    ser = LPoly.const(n, RATQ_ONE)
    rest_bins = {}
    for (ia, ib, c), p in expr.bins.items():
        if ia == var:
            # (z_var + c z_ib)^p around z_var = 0
            part = LPoly.zero(n)
            for j in range(need + 1):
                bj = _binom_int(p, j)
                if not bj:
                    continue
                mono = [0] * n
                mono[var] = j
                mono[ib] = p - j
                part.addmul(LPoly.monomial(n, mono, RATQ_ONE * bj * c ** (p - j)))
        elif ib == var:
            # (z_ia + c z_var)^p around z_var = 0
            part = LPoly.zero(n)
            for j in range(need + 1):
                bj = _binom_int(p, j)
                if not bj:
                    continue
                mono = [0] * n
                mono[var] = j
                mono[ia] = p - j
                part.addmul(LPoly.monomial(n, mono, RATQ_ONE * bj * c ** j))
        else:
            rest_bins[(ia, ib, c)] = p
            continue
        ser = ser * part
    prod = expr.poly * ser
    kept = {}
    for k, c in prod.terms.items():
        if k[var] != 0:
            continue
        old = kept.get(k)
        kept[k] = old + c if old is not None else c
    kept = {k: c for k, c in kept.items() if c}
    if not kept:
        return []
    return [RExpr(n, LPoly(n, kept), rest_bins)]


def _q_magnitude(c):
    """Sign of log|c| under |q| >> 1 for a nonzero q-monomial scalar c;
    |c| = 1 exactly raises (pole on the contour)."""
    m = c.q_monomial()
    if m is None:
        raise GenericityError("pole position %s is not a q-monomial" % c)
    coef, k = m
    if k:
        return -1 if k < 0 else 1
    if abs(coef) == 1:
        raise GenericityError("pole exactly on the unit-ratio contour")
    return -1 if abs(coef) < 1 else 1


def _bin_poly(n, key, power):
    ia, ib, c = key
    out = LPoly.monomial(n, _unit(n, ia, 1), RATQ_ONE)
    out.addmul(LPoly.monomial(n, _unit(n, ib, 1), c))
    return out ** power


def combine_terms(terms):
    """Sum of RExpr over a common denominator, cancelling bins that divide
    the combined numerator.  Needed because single residues can produce
    on-contour poles that only cancel in the total."""
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        return None
    n = terms[0].nvars
    norm = []
    for t in terms:
        poly = t.poly
        dens = {}
        for key, p in t.bins.items():
            if p > 0:
                poly = poly * _bin_poly(n, key, p)
            else:
                dens[key] = -p
        norm.append((poly, dens))
    alld = {}
    for _poly, dens in norm:
        for key, p in dens.items():
            alld[key] = max(alld.get(key, 0), p)
    num = LPoly.zero(n)
    for poly, dens in norm:
        for key, p in alld.items():
            need = p - dens.get(key, 0)
            if need:
                poly = poly * _bin_poly(n, key, need)
        num.addmul(poly)
    out_bins = {}
    for key, p in alld.items():
        ia, ib, c = key
        while p > 0 and num:
            try:
                num = num.divexact_binom(ia, RATQ_ONE, ib, c)
            except ArithmeticError:
                break
            p -= 1
        if p and num:
            out_bins[key] = -p
    if not num:
        return None
    return RExpr(n, num, out_bins)


def radius_integrate(terms, wvars):
    """Iterated contour integral (d w / 2 pi i w) over |w| = r of a sum of
    RExpr, for each w in wvars in order."""
    for w in wvars:
        expr = combine_terms(terms)
        if expr is None:
            return RATQ_ZERO
        new_terms = []
        locs = {}
        for (ia, ib, c), p in expr.bins.items():
            if p >= 0:
                continue
            if ia == w and ib in wvars:
                locs[(ib, -c)] = True
            elif ib == w and ia in wvars:
                locs[(ia, (-RATQ_ONE) / c)] = True
        shifted = expr.mul_monomial(_unit(expr.nvars, w, -1))
        for (u, gamma) in locs:
            if _q_magnitude(gamma) < 0:
                new_terms.extend(residue(shifted, w, u, gamma))
        new_terms.extend(ct_at_zero(expr, w))
        terms = new_terms
    acc = RATQ_ZERO
    for expr in terms:
        if expr.is_zero():
            continue
        assert not expr.bins, "unresolved binomials after integration"
        for k, c in expr.poly.terms.items():
            assert all(e == 0 for e in k), "unintegrated variables remain"
            acc = acc + c
    return acc

def iterated_residue(expr, chain, scalars, relabel=None):
    """Iterated simple-pole residues along a variable chain.

    chain = [v_0, ..., v_k]: take the residue in v_0 at scalars[0]*v_1, then
    in v_1 at scalars[1]*v_2, and so on; optionally relabel the final
    variable onto (target, scalar).  Non-simple poles raise."""
    terms = [expr]
    for idx in range(len(chain) - 1):
        var, target = chain[idx], chain[idx + 1]
        new_terms = []
        for t in terms:
            new_terms.extend(residue(t, var, target, scalars[idx],
                                     simple_only=True))
        terms = new_terms
    if relabel is not None:
        target, scalar = relabel
        terms = [t.subs(chain[-1], target, scalar) for t in terms]
    return terms
