"""Iterated-series constant-term extraction.

Everything here works in a fixed positional variable space.  A *regime*
fixes a total magnitude ordering of the variables, optionally anchored at
the constant 1 (variables strictly above and/or below unit scale).  An
expression is a Laurent polynomial times rational factors, each factor
evaluated at a monomial in the variables; the regime decides the expansion
direction of every factor, and the constant term is extracted with a
certified truncation bound (no series term above the bound can reach total
exponent zero in every scale coordinate).
"""

from __future__ import annotations

from .scalars import RATQ_ZERO


class RegimeError(ValueError):
    pass


class Regime:
    """Magnitude ordering |z_{order[0]}| > |z_{order[1]}| > ...; if anchor is
    not None, variables order[:anchor] are > 1 and order[anchor:] are < 1."""

    __slots__ = ("order", "anchor")

    def __init__(self, order, anchor=None):
        self.order = tuple(order)
        self.anchor = anchor

    @staticmethod
    def chain_down(vars_desc):
        """|v0| >> |v1| >> ... (no absolute scale)."""
        return Regime(vars_desc, None)

    @staticmethod
    def chain_up_from_one(vars_asc):
        """1 << |v0| << |v1| << ... (all near infinity)."""
        v = tuple(vars_asc)
        return Regime(tuple(reversed(v)), len(v))

    @staticmethod
    def chain_down_to_zero(vars_desc):
        """1 >> |v0| >> |v1| >> ... (all near zero)."""
        return Regime(tuple(vars_desc), 0)

    @staticmethod
    def split(large_asc, small_desc):
        """|small...| << 1 << |large...|, large_asc ascending away from 1,
        small_desc descending away from 1."""
        large = tuple(reversed(tuple(large_asc)))
        return Regime(large + tuple(small_desc), len(large))

    def __repr__(self):
        return "Regime(order=%r, anchor=%r)" % (self.order, self.anchor)


def _coord_rows(nvars, regime):
    """Row vectors expressing each variable as a monomial in scale coords.

    Without an anchor, coordinate 0 is the free overall scale and the rest
    are consecutive small ratios; with an anchor every coordinate is small.
    """
    order, anchor = regime.order, regime.anchor
    if len(order) != nvars or sorted(order) != list(range(nvars)):
        raise RegimeError("regime must place every variable exactly once")
    rows = [[0] * nvars for _ in range(nvars)]
    if anchor is None:
        for pos, v in enumerate(order):
            for c in range(pos + 1):
                rows[v][c] = 1
        free_scale = 0
    else:
        for pos, v in enumerate(order):
            if pos < anchor:
                for c in range(pos, anchor):
                    rows[v][c] = -1
            else:
                for c in range(anchor, pos + 1):
                    rows[v][c] = 1
        free_scale = None
    return rows, free_scale


def constant_term(nvars, poly, factors, regime):
    """Constant term of poly * prod f_k(z^mono_k) in the given regime.

    factors: iterable of (URat, exponent-tuple); the factor is evaluated at
    the monomial z^mono.  Exact; raises RegimeError when an expansion
    direction is not determined by the regime.
    """
    if not poly.terms:
        return RATQ_ZERO
    rows, free_scale = _coord_rows(nvars, regime)

    def to_coords(exps):
        out = [0] * nvars
        for v, e in enumerate(exps):
            if e:
                row = rows[v]
                for c in range(nvars):
                    if row[c]:
                        out[c] += e * row[c]
        return tuple(out)

    base = {}
    for exps, coeff in poly.terms.items():
        k = to_coords(exps)
        old = base.get(k)
        base[k] = old + coeff if old is not None else coeff

    # orient every factor so its series variable is a nonnegative coordinate
    # monomial: side "0" expands f at 0, side "inf" at infinity
    oriented = []
    for f, mono in factors:
        if f.is_zero():
            return RATQ_ZERO
        m = to_coords(mono)
        if all(e == 0 for e in m):
            raise RegimeError("factor argument has no scale in this regime")
        if free_scale is not None and m[free_scale] != 0:
            raise RegimeError("absolute-scale factor in an unanchored regime")
        if all(e >= 0 for e in m):
            oriented.append([f, m, "0", f.val0(), 0])
        elif all(e <= 0 for e in m):
            oriented.append([f, tuple(-e for e in m), "inf", -f.valInf(), 0])
        else:
            raise RegimeError("factor argument not monotone in this regime")

    tmin = [min(k[c] for k in base) for c in range(nvars)]

    # certified truncation index per factor: a series term s*m can only help
    # reach exponent zero if s stays at or below this cap in some coordinate
    for idx, fac in enumerate(oriented):
        m = fac[1]
        cap = None
        for c in range(nvars):
            if m[c] <= 0:
                continue
            rest = sum(o[3] * o[1][c] for j, o in enumerate(oriented) if j != idx)
            bound = (-tmin[c] - rest) // m[c]
            cap = bound if cap is None else min(cap, bound)
        assert cap is not None
        if cap < fac[3]:
            return RATQ_ZERO
        fac[4] = cap

    acc = base
    nfac = len(oriented)
    for idx, (f, m, side, val, cap) in enumerate(oriented):
        minadd = [0] * nvars
        maxadd = [0] * nvars
        for j in range(idx + 1, nfac):
            mj, vj, cj = oriented[j][1], oriented[j][3], oriented[j][4]
            for c in range(nvars):
                if mj[c]:
                    minadd[c] += vj * mj[c]
                    maxadd[c] += cj * mj[c]
        if side == "0":
            sval, coeffs = f.series0(cap)
        else:
            lead, coeffs = f.seriesInf(cap)
            sval = -lead
        assert sval == val
        new = {}
        for off, cs in enumerate(coeffs):
            if not cs:
                continue
            s = val + off
            for key, cv in acc.items():
                nk = tuple(key[c] + s * m[c] for c in range(nvars))
                ok = True
                for c in range(nvars):
                    t = nk[c]
                    if t + minadd[c] > 0 or t + maxadd[c] < 0:
                        ok = False
                        break
                if not ok:
                    continue
                c0 = cv * cs
                if not c0:
                    continue
                old = new.get(nk)
                if old is None:
                    new[nk] = c0
                else:
                    old = old + c0
                    if old:
                        new[nk] = old
                    else:
                        del new[nk]
        acc = new
        if not acc:
            return RATQ_ZERO
    return acc.get((0,) * nvars, RATQ_ZERO)


def two_contour_ct(nvars, poly, factors, var):
    """CT near infinity minus CT near 0 in a single-variable expression."""
    up = Regime.chain_up_from_one([var])
    down = Regime.chain_down_to_zero([var])
    return (constant_term(nvars, poly, factors, up)
            - constant_term(nvars, poly, factors, down))


def expand_ratio(f, nvars, uv, order):
    """Truncated expansion of f(z_u/z_v) in powers of z_u/z_v as a Laurent
    polynomial in the ambient variable space."""
    from .lpoly import LPoly
    u, v = uv
    val, coeffs = f.series0(order)
    out = LPoly.zero(nvars)
    for k, c in enumerate(coeffs):
        if not c:
            continue
        e = [0] * nvars
        e[u] = val + k
        e[v] = -(val + k)
        out.addmul(LPoly.monomial(nvars, e, c))
    return out
