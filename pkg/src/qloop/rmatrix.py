"""Canonical tensors of perfect pairings on graded truncations: slope
R-matrix factors, window R-matrices, intertwining checks and evaluation in
category-O module pieces.

A canonical tensor is stored per graded piece of its first slot as a list
of dual pairs (a_k, b_k) of U-elements with the defining property
<a_j-side, b_k-side> = delta.  All verification is componentwise exact
inside a stated truncation window.
"""

from __future__ import annotations

from .coprod import (lt_dual_bases, newnew_component_minus,
                     newnew_component_plus, u_canonical, _vec_range)
from .linalg import invert
from .scalars import QQ, RATQ_ONE, RATQ_ZERO
from .shuffle import MINUS, PLUS, SlopeWindow, basis_window
from .ualg import (UElt, delta_term_components, pair_u, u_mul,
                   uterm_degree)
from .coprod import ext_from_shuffle


class CanonicalTensor:
    """Sum over graded pieces of dual-basis tensors; provenance records the
    pairing and window it came from."""

    def __init__(self, datum, comps, provenance=""):
        self.datum = datum
        self.comps = comps  # dict (h1, v1) -> list of (UElt, UElt)
        self.provenance = provenance

    def pieces(self):
        return sorted(self.comps)

    def swap(self):
        out = {}
        for (h, v), pairs in self.comps.items():
            nh = tuple(-c for c in h)
            out.setdefault((nh, -v), []).extend(
                (b, a) for (a, b) in pairs)
        return CanonicalTensor(self.datum, out,
                               "swap(%s)" % self.provenance)

    def terms_at(self, h, v):
        return self.comps.get((tuple(h), v), [])

    def unit_included(self):
        return ((0,) * self.datum.ncolors, 0) in self.comps


def _dual_pairs(datum, first_basis, second_basis, pair_fn):
    """Turn bases into dual pairs (first_k, dual_second^k)."""
    if not first_basis:
        return []
    gram = [[pair_fn(a, b) for b in second_basis] for a in first_basis]
    inv = invert(gram)
    if inv is None:
        raise ArithmeticError("singular Gram piece in canonical tensor")
    out = []
    for k, a in enumerate(first_basis):
        dual = UElt()
        for l, b in enumerate(second_basis):
            if inv[l][k]:
                dual.add_elt(b, inv[l][k])
        out.append((a, dual))
    return out


def slope_P(datum, p, hmax, swap=False):
    """Canonical tensor of the slope-subalgebra pairing, pieces up to
    |hdeg| <= hmax; empty slope pieces contribute only the unit."""
    p = tuple(QQ(x) for x in p)
    ncol = datum.ncolors
    comps = {((0,) * ncol, 0): [(UElt.one(datum), UElt.one(datum))]}
    for n in _vec_range((0,) * ncol, (hmax,) * ncol):
        if not any(n) or sum(n) > hmax:
            continue
        vq = sum(QQ(x) * c for x, c in zip(p, n))
        if vq != int(vq):
            continue
        d = int(vq)
        plus = [ext_from_shuffle(e)
                for e in basis_window(datum, PLUS, n, d, SlopeWindow.at(p))]
        minus = [ext_from_shuffle(e)
                 for e in basis_window(datum, MINUS, n, -d, SlopeWindow.at(p))]
        if not plus:
            continue
        pairs = _dual_pairs(datum, plus, minus,
                            lambda a, b: pair_u(datum, a, b))
        comps[(tuple(n), d)] = pairs
    out = CanonicalTensor(datum, comps, "slope_P(%s)" % (p,))
    return out.swap() if swap else out


def _window_slopes(datum, p2, p1, hmax):
    """Rational slopes in [p2, p1) that can carry lattice points with
    |hdeg| <= hmax (single-color version uses all denominators <= hmax)."""
    if datum.ncolors != 1:
        raise NotImplementedError("slope paths beyond one color are "
                                  "caller-supplied")
    lo, hi = QQ(p2[0]), QQ(p1[0])
    slopes = set()
    for den in range(1, hmax + 1):
        num = int(lo * den)
        while QQ(num, den) < lo:
            num += 1
        while QQ(num, den) < hi:
            slopes.add(QQ(num, den))
            num += 1
    return [(s,) for s in sorted(slopes)]


def R_window(datum, p2, p1, hmax):
    """Canonical tensor of the window pairing between the minus and plus
    wedge subalgebras on [p2, p1); finite in every graded piece."""
    p2 = tuple(QQ(x) for x in p2)
    p1 = tuple(QQ(x) for x in p1)
    ncol = datum.ncolors
    comps = {((0,) * ncol, 0): [(UElt.one(datum), UElt.one(datum))]}
    win = SlopeWindow(p2, p1, lo_strict=False, hi_strict=True)
    for n in _vec_range((0,) * ncol, (hmax,) * ncol):
        if not any(n) or sum(n) > hmax:
            continue
        # vdeg range of the window piece
        vlo = _ceil(sum(QQ(x) * c for x, c in zip(p2, n)))
        vhi = _floor(sum(QQ(x) * c for x, c in zip(p1, n)))
        for d in range(vlo, vhi + 1):
            minus = [ext_from_shuffle(e)
                     for e in basis_window(datum, MINUS, n, -d, win)]
            plus = [ext_from_shuffle(e)
                    for e in basis_window(datum, PLUS, n, d, win)]
            if not minus:
                continue
            pairs = _dual_pairs(datum, minus, plus,
                                lambda b, a: pair_u(datum, a, b))
            comps[(tuple(-c for c in n), -d)] = pairs
    return CanonicalTensor(datum, comps, "R_window[%s,%s)" % (p2, p1))


def _ceil(x):
    import math
    return math.ceil(x)


def _floor(x):
    import math
    return math.floor(x)


def R_p(datum, p, hmax, vmax):
    """Truncation of the partial universal R-matrix: canonical tensor of
    the pairing between the strictly-below wedges, first slot minus."""
    p = tuple(QQ(x) for x in p)
    ncol = datum.ncolors
    comps = {((0,) * ncol, 0): [(UElt.one(datum), UElt.one(datum))]}
    for n in _vec_range((0,) * ncol, (hmax,) * ncol):
        if not any(n) or sum(n) > hmax:
            continue
        vhi = _floor(sum(QQ(x) * c for x, c in zip(p, n)))
        for d in range(-vmax, vhi + 1):
            plus, duals = lt_dual_bases(datum, p, n, d)
            if not plus:
                continue
            # first slot minus: pairs (dual_k, plus_k)
            comps[(tuple(-c for c in n), -d)] = list(zip(duals, plus))
    return CanonicalTensor(datum, comps, "R_p(%s)" % (p,))


def tensor_product(datum, R1, R2, hmax, vmax):
    """Componentwise product of canonical tensors inside a truncation."""
    ncol = datum.ncolors
    comps = {}
    for (h1, v1), pairs1 in R1.comps.items():
        for (h2, v2), pairs2 in R2.comps.items():
            h = tuple(a + b for a, b in zip(h1, h2))
            v = v1 + v2
            if sum(abs(c) for c in h) > hmax or abs(v) > vmax:
                continue
            slot = comps.setdefault((h, v), [])
            for (a1, b1) in pairs1:
                for (a2, b2) in pairs2:
                    slot.append((u_mul(datum, a1, a2), u_mul(datum, b1, b2)))
    return CanonicalTensor(datum, comps,
                           "%s * %s" % (R1.provenance, R2.provenance))


def tensors_equal(datum, R1, R2, hmax, vmax):
    """Exact equality of tensor components inside the truncation, after
    canonicalization of both slots."""
    keys = set(R1.comps) | set(R2.comps)
    for (h, v) in keys:
        if sum(abs(c) for c in h) > hmax or abs(v) > vmax:
            continue
        c1 = _component_canonical(datum, R1.comps.get((h, v), []))
        c2 = _component_canonical(datum, R2.comps.get((h, v), []))
        if c1 != c2:
            return False
    return True


def _component_canonical(datum, pairs):
    out = {}
    for (a, b) in pairs:
        ca = u_canonical(datum, a)
        cb = u_canonical(datum, b)
        for ka, va in ca.items():
            for kb, vb in cb.items():
                k = (ka, kb)
                old = out.get(k)
                val = old + va * vb if old is not None else va * vb
                if val:
                    out[k] = val
                elif old is not None:
                    del out[k]
    return out


def defining_property_check(datum, R, test_pairs):
    """<a_j, dual_k> = delta on the supplied (basis, dual) lists."""
    for (h, v), pairs in R.comps.items():
        for j, (a1, b1) in enumerate(pairs):
            for k, (a2, b2) in enumerate(pairs):
                val = pair_u(datum, *_orient(datum, a1, b2))
                want = RATQ_ONE if j == k else RATQ_ZERO
                if val != want:
                    return False
    return True


def _orient(datum, x, y):
    """Order a (plus-side, minus-side) argument pair for the pairing."""
    for t in x:
        if t[2]:
            return y, x
    return x, y


# -- intertwining ---------------------------------------------------------------


def intertwine_check(datum, R, x_pairs, p1, p2, hmax, vmax, side="plus",
                     flavor="window"):
    """R * Delta_{p1}(x) = Delta_{p2}(x) * R componentwise inside the
    truncation (flavor "window"), or R * Delta_p(x) = Delta(x) * R with the
    Drinfeld coproduct on the right (flavor "drinfeld")."""
    solver = newnew_component_plus if side == "plus" \
        else newnew_component_minus
    ncol = datum.ncolors

    dp1 = {}

    def delta_p1(h, v):
        if (h, v) not in dp1:
            dp1[(h, v)] = solver(datum, x_pairs, p1, h, v)
        return dp1[(h, v)]

    dp2 = {}

    def delta_p2(h, v):
        if (h, v) not in dp2:
            if flavor == "window":
                dp2[(h, v)] = solver(datum, x_pairs, p2, h, v)
            else:
                comp = {}
                for (xa, xb, cx) in x_pairs:
                    prod = u_mul(datum, UElt({xa: RATQ_ONE}),
                                 UElt({xb: RATQ_ONE}))
                    for t, c in prod.items():
                        for (cc, lt, rt) in delta_term_components(
                                datum, t, h, v):
                            k = (lt, rt)
                            comp[k] = comp.get(k, RATQ_ZERO) + c * cc * cx
                dp2[(h, v)] = {k: v2 for k, v2 in comp.items() if v2}
        return dp2[(h, v)]

    deg = None
    for (xa, xb, cx) in x_pairs:
        da = uterm_degree(ncol, xa)
        db = uterm_degree(ncol, xb)
        deg = (tuple(a + b for a, b in zip(da[0], db[0])), da[1] + db[1])

    for hL in _vec_range(tuple(-hmax for _ in range(ncol)),
                         (hmax,) * ncol):
        for vL in range(-vmax, vmax + 1):
            lhs_pairs = []
            rhs_pairs = []
            for (hR, vR), rpairs in R.comps.items():
                dh = tuple(a - b for a, b in zip(hL, hR))
                dv = vL - vR
                comp1 = delta_p1(dh, dv)
                if comp1:
                    for (a, b) in rpairs:
                        for key, c in comp1.items():
                            lt = _mul_all(datum, [a] + _terms_of(key[0]))
                            rt = _mul_all(datum, [b] + _terms_of(key[1]))
                            for t1, c1 in lt.items():
                                for t2, c2 in rt.items():
                                    lhs_pairs.append(((t1, t2), c * c1 * c2))
                comp2 = delta_p2(dh, dv)
                if comp2:
                    for (a, b) in rpairs:
                        for key, c in comp2.items():
                            lt = _mul_all(datum, _terms_of(key[0]) + [a])
                            rt = _mul_all(datum, _terms_of(key[1]) + [b])
                            for t1, c1 in lt.items():
                                for t2, c2 in rt.items():
                                    rhs_pairs.append(((t1, t2), c * c1 * c2))
            if not _tensor_terms_equal(datum, lhs_pairs, rhs_pairs):
                return False, (hL, vL)
    return True, None


def _terms_of(key):
    """A component slot is either a split pair of terms or a bare term."""
    if isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], tuple) \
            and len(key[0]) == 3 and isinstance(key[0][0], tuple):
        return [UElt({key[0]: RATQ_ONE}), UElt({key[1]: RATQ_ONE})]
    return [UElt({key: RATQ_ONE})]


def _mul_all(datum, elts):
    acc = UElt.one(datum)
    for e in elts:
        acc = u_mul(datum, acc, e)
    return acc


def _tensor_terms_equal(datum, pairs1, pairs2):
    def canon(pairs):
        out = {}
        for ((t1, t2), c) in pairs:
            c1 = u_canonical(datum, UElt({t1: RATQ_ONE}))
            c2 = u_canonical(datum, UElt({t2: RATQ_ONE}))
            for k1, v1 in c1.items():
                for k2, v2 in c2.items():
                    k = (k1, k2)
                    old = out.get(k)
                    val = old + c * v1 * v2 if old is not None else c * v1 * v2
                    if val:
                        out[k] = val
                    elif old is not None:
                        del out[k]
        return out
    return canon(pairs1) == canon(pairs2)

def evaluate_in_modules(R, V, W, nV, nW, hcap=2):
    """Evaluate a canonical tensor on module weight pieces with a spectral
    twist: each first-slot component acts on V multiplied by u^vdeg, the
    second slot acts on W.

    Returns {((nV', bV'), (nW', bW'), (nV, bV), (nW, bW)): {u-exponent: K}}
    over the source basis pairs of the chosen pieces."""
    from .tensormod import term_action_matrix, _mat_mul_rect
    datum = R.datum
    out = {}
    pv, pw = V.piece(nV), W.piece(nW)
    if pv is None or pw is None or pv.dim == 0 or pw.dim == 0:
        return out
    for (h1, v1), pairs in R.comps.items():
        if sum(abs(c) for c in h1) > hcap:
            continue
        for (aelt, belt) in pairs:
            for ta, ca in aelt.items():
                mA, nV2 = term_action_matrix(V, nV, ta)
                if mA is None:
                    continue
                for tb, cb in belt.items():
                    mB, nW2 = term_action_matrix(W, nW, tb)
                    if mB is None:
                        continue
                    for r1 in range(len(mA)):
                        for c1 in range(pv.dim):
                            if not mA[r1][c1]:
                                continue
                            for r2 in range(len(mB)):
                                for c2 in range(pw.dim):
                                    if not mB[r2][c2]:
                                        continue
                                    key = ((nV2, r1), (nW2, r2),
                                           (nV, c1), (nW, c2))
                                    slot = out.setdefault(key, {})
                                    val = ca * cb * mA[r1][c1] * mB[r2][c2]
                                    slot[v1] = slot.get(v1, RATQ_ZERO) + val
    for key in list(out):
        out[key] = {e: v for e, v in out[key].items() if v}
        if not out[key]:
            del out[key]
    return out


def canonical_tensor(datum, first_basis, second_basis, first_minus=False):
    """Dual-pair tensor of explicit graded bases under the extended Hopf
    pairing; raises on a singular Gram piece."""
    if first_minus:
        return _dual_pairs(datum, first_basis, second_basis,
                           lambda b, a: pair_u(datum, a, b))
    return _dual_pairs(datum, first_basis, second_basis,
                       lambda a, b: pair_u(datum, a, b))


def coassociativity_check(datum, p2, p1, hmax, vmax):
    """Matrix elements of the coassociativity identity for the window
    R-matrix: against all window-basis test vectors (b', b'', a) inside the
    truncation,

        sum_k <b' (x) b'', Delta_{p2}(F_k)> <E'_k, a>
      = sum_{k,k'} <b', F_k> <b'', F_k'> <E'_k E'_k', a>

    where the inner pairings are the slope pairing of the double at the
    window's lower slope."""
    from .coprod import newnew_component_minus, _pair_p_split
    ncol = datum.ncolors
    one = ((0,) * ncol, (0,) * ncol, (), ())
    unit = ((), one, ())
    R = R_window(datum, p2, p1, hmax)

    # window bases for the tests, with representatives as U-elements
    plus_tests = []
    minus_tests = []
    win = SlopeWindow(tuple(QQ(x) for x in p2), tuple(QQ(x) for x in p1),
                      lo_strict=False, hi_strict=True)
    for (h, v), pairs in R.comps.items():
        n = tuple(-c for c in h)
        for el in basis_window(datum, PLUS, n, -v, win):
            plus_tests.append(ext_from_shuffle(el))
        for el in basis_window(datum, MINUS, n, v, win):
            minus_tests.append(ext_from_shuffle(el))
    plus_tests.append(UElt.one(datum))
    minus_tests.append(UElt.one(datum))

    rpairs = [(a, b) for pairs in R.comps.values() for (a, b) in pairs]

    def pair_slope(plus_elt, minus_elt):
        acc = RATQ_ZERO
        for tp, cp in plus_elt.items():
            for tm, cm in minus_elt.items():
                v = _pair_p_split(datum, (_plus_split(tp)),
                                  (_minus_split(tm)))
                if v:
                    acc = acc + cp * cm * v
        return acc

    for bp in plus_tests:
        for bpp in plus_tests:
            for a in minus_tests:
                lhs = RATQ_ZERO
                for (Fk, Ek) in rpairs:
                    outer = pair_slope(Ek, a)
                    if not outer:
                        continue
                    # sum over coproduct components of F_k paired with
                    # (b', b'') at the matching bidegrees
                    inner = RATQ_ZERO
                    for tF, cF in Fk.items():
                        pairs_in = [(tF, unit, cF)]
                        for tb, cb in bp.items():
                            db = uterm_degree(ncol, tb)
                            h1 = tuple(-c for c in db[0])
                            comps = newnew_component_minus(
                                datum, pairs_in, tuple(QQ(x) for x in p2),
                                h1, -db[1])
                            for ((lA, lB), (rA, rB)), cc in comps.items():
                                v1 = _pair_p_terms4(datum, tb, (lA, lB))
                                if not v1:
                                    continue
                                for tbb, cbb in bpp.items():
                                    v2 = _pair_p_terms4(datum, tbb,
                                                        (rA, rB))
                                    if v2:
                                        inner = inner + cc * cb * cbb *                                             v1 * v2
                    lhs = lhs + outer * inner
                rhs = RATQ_ZERO
                for (Fk, Ek) in rpairs:
                    v1 = pair_slope(bp, Fk)
                    if not v1:
                        continue
                    for (Fk2, Ek2) in rpairs:
                        v2 = pair_slope(bpp, Fk2)
                        if not v2:
                            continue
                        prod = u_mul(datum, Ek, Ek2)
                        v3 = pair_slope(prod, a)
                        if v3:
                            rhs = rhs + v1 * v2 * v3
                if lhs != rhs:
                    return False, None
    return True, None


def _plus_split(term):
    ew, ck, fw = term
    return ((ew, ck, ()), ((), _one_of(ck), fw))


def _minus_split(term):
    ew, ck, fw = term
    return (((), ck, fw), (ew, _one_of(ck), ()))


def _one_of(ck):
    z = tuple(0 for _ in ck[0])
    return (z, z, (), ())


def _pair_p_terms4(datum, plus_term, minus_pair):
    from .coprod import _pair_p_split
    return _pair_p_split(datum, _plus_split(plus_term), minus_pair)


def intertwine_window_check(datum, p2, p1, x1_pairs, side1, x2_pairs, side2,
                            hmax, vmax):
    """Window R-matrix intertwining: R * Delta_{p1}(x) = Delta_{p2}(x) * R
    componentwise inside the truncation; x may sit in different half
    presentations at the two slopes."""
    from .coprod import newnew_component_plus, newnew_component_minus
    ncol = datum.ncolors
    R = R_window(datum, p2, p1, hmax)
    solver1 = newnew_component_plus if side1 == "plus" \
        else newnew_component_minus
    solver2 = newnew_component_plus if side2 == "plus" \
        else newnew_component_minus
    d1 = {}
    d2 = {}

    def delta1(h, v):
        if (h, v) not in d1:
            d1[(h, v)] = solver1(datum, x1_pairs, p1, h, v)
        return d1[(h, v)]

    def delta2(h, v):
        if (h, v) not in d2:
            d2[(h, v)] = solver2(datum, x2_pairs, p2, h, v)
        return d2[(h, v)]

    for hL in _vec_range(tuple(-hmax for _ in range(ncol)), (hmax,) * ncol):
        for vL in range(-vmax, vmax + 1):
            lhs_pairs = []
            rhs_pairs = []
            for (hR, vR), rpairs in R.comps.items():
                dh = tuple(a - b for a, b in zip(hL, hR))
                dv = vL - vR
                comp1 = delta1(dh, dv)
                for (a, b) in rpairs:
                    for key, c in comp1.items():
                        lt = _mul_all(datum, [a] + _terms_of(key[0]))
                        rt = _mul_all(datum, [b] + _terms_of(key[1]))
                        for t1, c1 in lt.items():
                            for t2, c2 in rt.items():
                                lhs_pairs.append(((t1, t2), c * c1 * c2))
                comp2 = delta2(dh, dv)
                for (a, b) in rpairs:
                    for key, c in comp2.items():
                        lt = _mul_all(datum, _terms_of(key[0]) + [a])
                        rt = _mul_all(datum, _terms_of(key[1]) + [b])
                        for t1, c1 in lt.items():
                            for t2, c2 in rt.items():
                                rhs_pairs.append(((t1, t2), c * c1 * c2))
            if not _tensor_terms_equal(datum, lhs_pairs, rhs_pairs):
                return False, (hL, vL)
    return True, None
