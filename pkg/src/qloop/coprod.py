"""Slope projections, the slope-indexed coproduct on the half subalgebras,
its bilinear pairing, and the Drinfeld-double verification.

Elements of the half subalgebras are normal-ordered U-elements: a plus-half
element is a sum of (e-word) * (plus Cartan) * (f-word) terms whose e/Cartan
part lies in the closed upper slope wedge and whose f-part has slope
strictly below; the minus half mirrors this.  The coproduct components are
solved from the defining functional equations through dual bases of the
strictly-below wedges, exactly as the construction prescribes.
"""

from __future__ import annotations

import itertools

from .linalg import invert, solve
from .lpoly import LPoly
from .scalars import RATQ_ONE, RATQ_ZERO
from .shuffle import (MINUS, PLUS, ShuffleElement, SlopeWindow, as_words,
                      basis_window, slope_limit_split, _sub_degrees,
                      window_box)
from .ualg import (UElt, ckey_mul, ckey_one, delta_term_components,
                   pair_u, pair_u_terms, u_mul, uterm_degree)


class TruncationError(ArithmeticError):
    pass


# -- degree helpers --------------------------------------------------------------


def wedge_vdeg_min_plus(datum, p, n):
    """Lowest vertical degree of the plus [p, inf] wedge at hdeg n (the
    shuffle part; loop Cartan modes only raise it)."""
    if not any(n):
        return 0
    lo, _hi = window_box(datum, PLUS, n, SlopeWindow.ge(p))
    return sum(l * c for l, c in zip(lo, n))


def wedge_vdeg_max_plus_lt(datum, p, n):
    """Highest vertical degree of the plus strictly-below wedge at hdeg n."""
    if not any(n):
        return 0
    _lo, hi = window_box(datum, PLUS, n, SlopeWindow.lt(p))
    return sum(h * c for h, c in zip(hi, n))


def wedge_vdeg_max_minus_lt(datum, p, n):
    """Highest vertical degree of the minus strictly-below wedge at
    hdeg -n (vdeg of the polynomial part is bounded above? below?)."""
    _lo, hi = window_box(datum, MINUS, n, SlopeWindow.lt(p))
    return sum(h * c for h, c in zip(hi, n))


def wedge_vdeg_min_minus_lt(datum, p, n):
    lo, _hi = window_box(datum, MINUS, n, SlopeWindow.lt(p))
    return sum(l * c for l, c in zip(lo, n))


# -- extended wedge bases ----------------------------------------------------------


def _p_monomials(ncol, v, minus=False):
    """Loop-Cartan monomials of total mode degree v >= 0 as Cartan keys."""
    out = []
    def rec(color, rest, acc):
        if color == ncol:
            if rest == 0:
                pp = tuple(sorted(acc))
                zero = (0,) * ncol
                out.append((zero, zero, (), pp) if minus
                           else (zero, zero, pp, ()))
            return
        for part in _partitions_upto(rest):
            rec(color + 1, rest - sum(part),
                acc + [(color, d) for d in part])
    rec(0, v, [])
    return out


def _partitions_upto(v):
    """All partitions (including the empty one) of every total <= v."""
    out = [()]
    def rec(rest, maxpart, acc):
        for p in range(min(rest, maxpart), 0, -1):
            out.append(tuple(acc + [p]))
            rec(rest - p, p, acc + [p])
    rec(v, v, [])
    return out


def ext_from_shuffle(E, ckey=None):
    """UElt of a shuffle element (word-decomposed), optionally with a
    Cartan key attached on the normal-order side."""
    datum = E.datum
    out = UElt()
    if E.is_zero():
        return out
    for d, part in E.poly.homogeneous_parts().items():
        piece = ShuffleElement(datum, E.side, E.n, part)
        for coeff, word in as_words(piece, d):
            if E.side == PLUS:
                term = (word, ckey if ckey else ckey_one(datum.ncolors), ())
            else:
                term = ((), ckey if ckey else ckey_one(datum.ncolors), word)
            out.add_term(term, coeff)
    return out


def plus_wedge_ext_basis(datum, p, n, d):
    """Basis of the (kappa-stripped) plus [p, inf] wedge piece at (n, d):
    shuffle window bases dressed with plus loop-Cartan monomials."""
    key = ("plus_wedge_ext", tuple(p), tuple(n), d)
    if key in datum.cache:
        return datum.cache[key]
    out = []
    if not any(n):
        for ck in _p_monomials(datum.ncolors, d) if d >= 0 else []:
            if sum(dd for (_i, dd) in ck[2]) == d:
                out.append(UElt({((), ck, ()): RATQ_ONE}))
        datum.cache[key] = out
        return out
    vmin = wedge_vdeg_min_plus(datum, p, n)
    for v in range(0, d - vmin + 1):
        shuffle_basis = basis_window(datum, PLUS, n, d - v,
                                     SlopeWindow.ge(p))
        if not shuffle_basis:
            continue
        for ck in _p_monomials(datum.ncolors, v):
            if sum(dd for (_i, dd) in ck[2]) != v:
                continue
            for el in shuffle_basis:
                out.append(ext_from_shuffle(el, ck))
    datum.cache[key] = out
    return out


def minus_wedge_ext_basis(datum, p, n, d):
    """Basis of the minus [p, inf] wedge piece at (-n, d): minus shuffle
    window bases dressed with minus loop-Cartan monomials (vdeg -v)."""
    key = ("minus_wedge_ext", tuple(p), tuple(n), d)
    if key in datum.cache:
        return datum.cache[key]
    out = []
    if not any(n):
        v = -d
        for ck in _p_monomials(datum.ncolors, v, minus=True) if v >= 0 else []:
            if sum(dd for (_i, dd) in ck[3]) == v:
                out.append(UElt({((), ck, ()): RATQ_ONE}))
        datum.cache[key] = out
        return out
    # polynomial part vdeg d + v, Cartan part vdeg -v
    out = []
    v = 0
    while True:
        shuffle_basis = basis_window(datum, MINUS, n, d + v,
                                     SlopeWindow.ge(p))
        if not shuffle_basis and v > _minus_ge_vspan(datum, p, n, d):
            break
        for ck in _p_monomials(datum.ncolors, v, minus=True):
            if sum(dd for (_i, dd) in ck[3]) != v:
                continue
            for el in shuffle_basis:
                out.append(ext_from_shuffle(el, ck))
        v += 1
    datum.cache[key] = out
    return out


def _minus_ge_vspan(datum, p, n, d):
    """Crude stop bound: minus [p, inf] pieces vanish once the polynomial
    vdeg exceeds the box ceiling."""
    _lo, hi = window_box(datum, MINUS, n, SlopeWindow.ge(p))
    return max(0, sum(h * c for h, c in zip(hi, n)) - d)


def plus_lt_basis(datum, p, n, d):
    if not any(n):
        return [UElt.one(datum)] if d == 0 else []
    return [ext_from_shuffle(el)
            for el in basis_window(datum, PLUS, n, d, SlopeWindow.lt(p))]


def minus_lt_basis(datum, p, n, d):
    """Basis of the minus strictly-below wedge at hdeg -n, vdeg d."""
    if not any(n):
        return [UElt.one(datum)] if d == 0 else []
    return [ext_from_shuffle(el)
            for el in basis_window(datum, MINUS, n, d, SlopeWindow.lt(p))]


def lt_dual_bases(datum, p, n, d):
    """Dual bases of the perfect pairing between the plus and minus
    strictly-below wedges at opposite degrees (n, d) vs (-n, -d).

    Returns (plus_basis, dual_minus_basis)."""
    key = ("lt_duals", tuple(p), tuple(n), d)
    if key in datum.cache:
        return datum.cache[key]
    plus = plus_lt_basis(datum, p, n, d)
    minus = minus_lt_basis(datum, p, n, -d)
    if len(plus) != len(minus):
        raise ArithmeticError(
            "strict wedge pieces have mismatched dimensions at %s %s" % (n, d))
    if not plus:
        datum.cache[key] = ([], [])
        return [], []
    gram = [[pair_u(datum, u, v) for v in minus] for u in plus]
    inv = invert(gram)
    if inv is None:
        raise ArithmeticError("Gram matrix singular on a strict wedge piece")
    duals = []
    for col in range(len(plus)):
        acc = UElt()
        for row in range(len(minus)):
            acc.add_elt(minus[row], inv[row][col])
        duals.append(acc)
    datum.cache[key] = (plus, duals)
    return plus, duals


# -- projections -----------------------------------------------------------------


def _strip_kappa(term):
    ew, ck, fw = term
    kp, km, pp, pm = ck
    ncol = len(kp)
    zero = (0,) * ncol
    return (ew, (zero, zero, pp, pm), fw), (kp, km)


def project_plus(datum, x, p, part):
    """[x]_{>= p} or [x]_{< p} for a plus-side element (no f letters).

    Kappa factors pass through the upper projection and are dropped by the
    strictly-below one (whose wedge carries no Cartan)."""
    groups = {}
    for term, c in x.items():
        assert not term[2], "projection needs a plus-side element"
        stripped, (kp, km) = _strip_kappa(term)
        groups.setdefault((kp, km), UElt()).add_term(stripped, c)
    out = UElt()
    for (kp, km), elt in groups.items():
        proj = _project_plus_stripped(datum, elt, p, part)
        kap = (kp, km, (), ()) if part == "ge" else None
        for term, c in proj.items():
            ew, ck, fw = term
            if kap is not None:
                out.add_term((ew, ckey_mul(ck, kap), fw), c)
            else:
                out.add_term((ew, ck, fw), c)
    return out


def _project_plus_stripped(datum, x, p, part):
    bydeg = {}
    for term, c in x.items():
        bydeg.setdefault(uterm_degree(datum.ncolors, term),
                         UElt()).add_term(term, c)
    out = UElt()
    for (h, v), elt in bydeg.items():
        n = tuple(h)
        assert all(c >= 0 for c in n)
        if part == "ge":
            basis = plus_wedge_ext_basis(datum, p, n, v)
            tests = minus_wedge_ext_basis(datum, p, n, -v)
        else:
            basis = plus_lt_basis(datum, p, n, v)
            tests = minus_lt_basis(datum, p, n, -v)
        if not basis:
            continue
        if len(basis) != len(tests):
            raise ArithmeticError("wedge piece dimensions disagree")
        gram = [[pair_u(datum, u, t) for u in basis] for t in tests]
        rhs = [pair_u(datum, elt, t) for t in tests]
        coeffs = solve(gram, rhs)
        if coeffs is None:
            raise ArithmeticError("Gram matrix singular in projection")
        for cc, u in zip(coeffs, basis):
            if cc:
                out.add_elt(u, cc)
    return out


def project_minus(datum, x, p, part):
    """[x]_{>= p} or [x]_{< p} for a minus-side element (no e letters)."""
    groups = {}
    for term, c in x.items():
        assert not term[0], "projection needs a minus-side element"
        stripped, (kp, km) = _strip_kappa(term)
        groups.setdefault((kp, km), UElt()).add_term(stripped, c)
    out = UElt()
    for (kp, km), elt in groups.items():
        proj = _project_minus_stripped(datum, elt, p, part)
        kap = (kp, km, (), ()) if part == "ge" else None
        for term, c in proj.items():
            ew, ck, fw = term
            if kap is not None:
                out.add_term((ew, ckey_mul(kap, ck), fw), c)
            else:
                out.add_term((ew, ck, fw), c)
    return out


def _project_minus_stripped(datum, x, p, part):
    bydeg = {}
    for term, c in x.items():
        bydeg.setdefault(uterm_degree(datum.ncolors, term),
                         UElt()).add_term(term, c)
    out = UElt()
    for (h, v), elt in bydeg.items():
        n = tuple(-c for c in h)
        assert all(c >= 0 for c in n)
        if part == "ge":
            basis = minus_wedge_ext_basis(datum, p, n, v)
            tests = plus_wedge_ext_basis(datum, p, n, -v)
        else:
            basis = minus_lt_basis(datum, p, n, v)
            tests = plus_lt_basis(datum, p, n, -v)
        if not basis:
            continue
        if len(basis) != len(tests):
            raise ArithmeticError("wedge piece dimensions disagree")
        gram = [[pair_u(datum, t, u) for u in basis] for t in tests]
        rhs = [pair_u(datum, t, elt) for t in tests]
        coeffs = solve(gram, rhs)
        if coeffs is None:
            raise ArithmeticError("Gram matrix singular in projection")
        for cc, u in zip(coeffs, basis):
            if cc:
                out.add_elt(u, cc)
    return out

# -- the slope-indexed coproduct ---------------------------------------------------


def _term_vmin_left(term):
    """Lower bound for the left vdeg of any coproduct component of a term."""
    ew, ck, fw = term
    v = sum(min(d, 0) for (_i, d) in ew) + sum(min(e, 0) for (_i, e) in fw)
    v -= sum(d for (_i, d) in ck[3])
    return v


def _word_min_subset(word):
    return sum(min(d, 0) for (_i, d) in word)


def _word_max_subset(word):
    return sum(max(d, 0) for (_i, d) in word)


def _vec_range(lo, hi):
    """Iterate integer vectors componentwise between lo and hi."""
    if any(l > h for l, h in zip(lo, hi)):
        return
    yield from itertools.product(*[range(l, h + 1) for l, h in zip(lo, hi)])


def newnew_component_plus(datum, EF_pairs, p, left_h, left_v):
    """One bidegree component of the slope coproduct of a plus-half element
    given as a list of (E, F, coeff): E a plus-side UElt term in the closed
    upper wedge (with Cartan), F a minus-side UElt term of slope < p.

    Returns {((lA, lB), (rA, rB)): coeff} with each slot kept in its
    half-factored presentation: the left slot is lA * lB and the right slot
    rA * rB, ordered as the half subalgebra factors.  Exact."""
    ncol = datum.ncolors
    out = {}

    def add(lt, rt, c):
        k = (lt, rt)
        old = out.get(k)
        val = old + c if old is not None else c
        if val:
            out[k] = val
        elif old is not None:
            del out[k]

    for (Eterm, Fterm, cx) in EF_pairs:
        nE, dE = uterm_degree(ncol, Eterm)
        nF_neg, dF = uterm_degree(ncol, Fterm)
        nF = tuple(-c for c in nF_neg)
        fword = Fterm[2]
        Fmax = _word_max_subset(fword)
        Emin = _term_vmin_left(Eterm)
        # alpha ranges: n_a = hE1 - left_h with 0 <= hE1 <= nE
        lo = tuple(max(0, -h) for h in left_h)
        hi = tuple(ne - h for ne, h in zip(nE, left_h))
        for n_a in _vec_range(lo, hi):
            hE1 = tuple(h + a for h, a in zip(left_h, n_a))
            d_lo = Emin - left_v
            d_hi = wedge_vdeg_max_plus_lt(datum, p, n_a) if any(n_a) else 0
            if not any(n_a):
                d_lo = max(d_lo, 0)
            for d_a in range(d_lo, d_hi + 1):
                v1 = left_v + d_a
                Ecomps = delta_term_components(datum, Eterm, hE1, v1)
                if not Ecomps:
                    continue
                alphas, duals = lt_dual_bases(datum, p, n_a, d_a)
                if not alphas:
                    continue
                for a_idx, (alpha, dual) in enumerate(zip(alphas, duals)):
                    xa = _solve_X(datum, p, alpha, Ecomps, Fterm,
                                  n_a, d_a, nF, dF, Fmax)
                    if not xa:
                        continue
                    # xa: dict (E1term, F1term) -> UElt piece of X
                    for (E1t, F1t), xelt in xa.items():
                        for yt, yc in dual.items():
                            for xt, xc in xelt.items():
                                add((E1t, yt), (xt, F1t), cx * yc * xc)
    return out


def _solve_X(datum, p, alpha, Ecomps, Fterm, n_a, d_a, nF, dF, Fmax):
    """X contribution for one dual-basis index: sum over splits of alpha and
    of F of [E2 * alpha_1]_{>=p} <alpha_2, F_2>, grouped by (E1, F1)."""
    ncol = datum.ncolors
    out = {}
    for aterm, ac in alpha.items():
        Amin = _word_min_subset(aterm[0])
        for m2 in _vec_range((0,) * ncol,
                             tuple(min(a, b) for a, b in zip(n_a, nF))):
            hA1 = tuple(a - m for a, m in zip(n_a, m2))
            for w1 in range(Amin, d_a + Fmax + 1):
                Acomps = delta_term_components(datum, aterm, hA1, w1)
                if not Acomps:
                    continue
                # F components with F2 at degree (-m2, w1 - d_a)
                hF1 = tuple(-(f - m) for f, m in zip(nF, m2))
                vF1 = dF - (w1 - d_a)
                Fcomps = delta_term_components(datum, Fterm, hF1, vF1)
                if not Fcomps:
                    continue
                for (cE, E1t, E2t) in Ecomps:
                    E2elt = UElt({E2t: RATQ_ONE})
                    for (cA, A1t, A2t) in Acomps:
                        prod = u_mul(datum, E2elt, UElt({A1t: RATQ_ONE}))
                        proj = project_plus(datum, prod, p, "ge")
                        if not proj:
                            continue
                        for (cF, F1t, F2t) in Fcomps:
                            inner = pair_u_terms(datum, A2t, F2t)
                            if not inner:
                                continue
                            coeff = ac * cE * cA * cF * inner
                            key = (E1t, F1t)
                            acc = out.get(key)
                            if acc is None:
                                acc = UElt()
                                out[key] = acc
                            acc.add_elt(proj, coeff)
    return {k: v for k, v in out.items() if v}


def newnew_component_minus(datum, FE_pairs, p, left_h, left_v):
    """Mirror component solver for the minus half: input (F', E', coeff)
    with F' in the closed upper minus wedge (with Cartan) and E' a plus
    word of slope < p."""
    ncol = datum.ncolors
    out = {}

    def add(lt, rt, c):
        k = (lt, rt)
        old = out.get(k)
        val = old + c if old is not None else c
        if val:
            out[k] = val
        elif old is not None:
            del out[k]

    for (Fterm, Eterm, cx) in FE_pairs:
        nFneg, dFp = uterm_degree(ncol, Fterm)
        nF = tuple(-c for c in nFneg)
        nE, dE = uterm_degree(ncol, Eterm)
        eword = Eterm[0]
        fword = Fterm[2]
        minsubE = _word_min_subset(eword)
        minsubF = _term_vmin_left(Fterm)
        # phi1 = -hdeg(F'_1)
        for phi1 in _vec_range((0,) * ncol, nF):
            n_b = tuple(e - h - f for e, h, f in zip(nE, left_h, phi1))
            if any(c < 0 for c in n_b):
                continue
            # m1 = hdeg of the paired E'_1 piece
            m1_hi = tuple(min(a, b) for a, b in zip(nE, n_b))
            for m1 in _vec_range((0,) * ncol, m1_hi):
                d_lo = minsubF - left_v + dE
                if any(n_b):
                    d_hi = min(wedge_vdeg_max_plus_lt(datum, p, n_b),
                               -wedge_vdeg_min_minus_lt(datum, p, n_b))
                else:
                    d_hi = 0
                    d_lo = max(d_lo, 0)
                for d_b in range(d_lo, d_hi + 1):
                    xs, ftildes = lt_dual_bases(datum, p, n_b, d_b)
                    if not xs:
                        continue
                    vF1 = left_v - dE + d_b
                    hF1 = tuple(-c for c in phi1)
                    Fcomps = delta_term_components(datum, Fterm, hF1, vF1)
                    if not Fcomps:
                        continue
                    for beta in range(len(xs)):
                        xb = xs[beta]
                        ftil = ftildes[beta]
                        for ft_term, ft_c in ftil.items():
                            w_lo = _term_vmin_left(ft_term)
                            for w1 in range(w_lo, -minsubE + 1):
                                lh = tuple(-c for c in m1)
                                Tcomps = delta_term_components(
                                    datum, ft_term, lh, w1)
                                if not Tcomps:
                                    continue
                                Ecomps = delta_term_components(
                                    datum, Eterm, m1, -w1)
                                if not Ecomps:
                                    continue
                                for (cT, T1, T2) in Tcomps:
                                    for (cE, E1t, E2t) in Ecomps:
                                        inner = pair_u_terms(datum, E1t, T1)
                                        if not inner:
                                            continue
                                        for (cF, F1t, F2t) in Fcomps:
                                            prod = u_mul(
                                                datum, UElt({F1t: RATQ_ONE}),
                                                UElt({T2: RATQ_ONE}))
                                            proj = project_minus(
                                                datum, prod, p, "ge")
                                            if not proj:
                                                continue
                                            coeff = (cx * ft_c * cT * cE *
                                                     cF * inner)
                                            for pt, pc in proj.items():
                                                for xbt, xbc in xb.items():
                                                    add((pt, E2t), (F2t, xbt),
                                                        coeff * pc * xbc)
    return out

def newnew_window(datum, pairs, p, hbox, vrange, side=PLUS):
    """All coproduct components with left bidegree inside a box; exact per
    component.  hbox is a componentwise (lo, hi) pair of vectors, vrange a
    (lo, hi) pair of vertical degrees."""
    comps = {}
    solver = newnew_component_plus if side == PLUS else newnew_component_minus
    for h in _vec_range(hbox[0], hbox[1]):
        for v in range(vrange[0], vrange[1] + 1):
            c = solver(datum, pairs, p, h, v)
            if c:
                comps[(h, v)] = c
    return comps


# -- slope-subalgebra coproduct (independent route) --------------------------------


def slope_coproduct(E, p):
    """Coproduct of a slope-p shuffle element from the scaling limits,
    kappa-dressed on the left factor."""
    datum = E.datum
    ncol = datum.ncolors
    if E.side == PLUS:
        ok = slope_in_subalgebra(E, p)
        if not ok:
            raise ValueError("element is not in the slope subalgebra")
    out = {}
    n = E.n
    for m in list(_sub_degrees(n)) + [(0,) * ncol]:
        nm = tuple(a - b for a, b in zip(n, m))
        if m == (0,) * ncol:
            splits = [(LPoly.const(0, RATQ_ONE), E.poly)]
            splits = [(ShuffleElement(datum, E.side, m, l),
                       ShuffleElement(datum, E.side, nm, r))
                      for (l, r) in splits]
        else:
            splits = [(ShuffleElement(datum, E.side, m, l),
                       ShuffleElement(datum, E.side, nm, r))
                      for (l, r) in slope_limit_split(E, p, m)]
        for (L, R) in splits:
            if L.is_zero() or R.is_zero():
                continue
            lelt = ext_from_shuffle(L)
            relt = ext_from_shuffle(R)
            if E.side == PLUS:
                # (kappa^+_{n-m} tensor 1) * (L tensor R)
                kap = (tuple(nm), (0,) * ncol, (), ())
                lelt = u_mul(datum, UElt({((), kap, ()): RATQ_ONE}), lelt)
            else:
                # (L tensor R) * (1 tensor kappa^-_{m})
                kap = ((0,) * ncol, tuple(m), (), ())
                relt = u_mul(datum, relt, UElt({((), kap, ()): RATQ_ONE}))
            for lt, lc in lelt.items():
                for rt, rc in relt.items():
                    deg = uterm_degree(ncol, lt)
                    key = (lt, rt)
                    slot = out.setdefault(deg, {})
                    old = slot.get(key)
                    val = old + lc * rc if old is not None else lc * rc
                    if val:
                        slot[key] = val
                    elif old is not None:
                        del slot[key]
    return {k: v for k, v in out.items() if v}


def slope_in_subalgebra(E, p):
    from .shuffle import slope_test
    return slope_test(E, p, "geq")[0] and slope_test(E, p, "leq")[0]


# -- the slope pairing and the double relation --------------------------------------


def pair_p(datum, a_pairs, b_pairs):
    """<EF, F'E'>_p = <E, F'> <E', F> on (E, F, coeff) presentations."""
    acc = RATQ_ZERO
    for (Et, Ft, ca) in a_pairs:
        for (Fpt, Ept, cb) in b_pairs:
            v1 = pair_u_terms(datum, Et, Fpt)
            if not v1:
                continue
            ep_plus = (Ept[0], Ept[1], ())
            f_minus = ((), ckey_one(datum.ncolors), Ft[2])
            if Ept[2] or Ft[0]:
                raise ValueError("inputs must be normal-ordered halves")
            v2 = pair_u_terms(datum, ep_plus, f_minus)
            if not v2:
                continue
            acc = acc + ca * cb * v1 * v2
    return acc


def _tensor_degrees(datum, pairs):
    """Total (hdeg, vdeg) of a sum of (x, y, coeff) presentations."""
    degs = set()
    ncol = datum.ncolors
    for (x, y, _c) in pairs:
        dx = uterm_degree(ncol, x)
        dy = uterm_degree(ncol, y)
        degs.add((tuple(a + b for a, b in zip(dx[0], dy[0])), dx[1] + dy[1]))
    if len(degs) != 1:
        raise ValueError("inhomogeneous input")
    return degs.pop()


def double_check(datum, a_pairs, b_pairs, p, hwidth=2, vmargin=3):
    """Verify a1 b1 <a2, b2>_p = <a1, b1>_p b2 a2 for a in the plus half and
    b in the minus half.

    The two sides couple different coproduct legs, so each side sweeps its
    own grid of leg bidegrees; sweeps run outward until `vmargin`
    consecutive empty bands certify the tail, every retained component being
    exact."""
    ncol = datum.ncolors
    deg_a = _tensor_degrees(datum, a_pairs)
    deg_b = _tensor_degrees(datum, b_pairs)

    acomps, bcomps = {}, {}

    def acomp(h, v):
        if (h, v) not in acomps:
            acomps[(h, v)] = newnew_component_plus(datum, a_pairs, p, h, v)
        return acomps[(h, v)]

    def bcomp(h, v):
        if (h, v) not in bcomps:
            bcomps[(h, v)] = newnew_component_minus(datum, b_pairs, p, h, v)
        return bcomps[(h, v)]

    fa = [0] * ncol
    for (Et, Ft, _c) in a_pairs:
        for k, cnt in enumerate(uterm_degree(ncol, Ft)[0]):
            fa[k] = min(fa[k], cnt)
    eb = [0] * ncol
    for (Fpt, Ept, _c) in b_pairs:
        for k, cnt in enumerate(uterm_degree(ncol, Ept)[0]):
            eb[k] = max(eb[k], cnt)

    lhs = UElt()
    rhs = UElt()

    # LHS: couple the second legs; enumerate deg(a2) = (h2, v2)
    h_lo = tuple(f - hwidth for f in fa)
    h_hi = tuple(e + hwidth for e in eb)
    for h2 in _vec_range(h_lo, h_hi):
        a1_h = tuple(x - y for x, y in zip(deg_a[0], h2))
        b1_h = tuple(x + y for x, y in zip(deg_b[0], h2))
        def band_l(v2):
            hit = False
            ac = acomp(a1_h, deg_a[1] - v2)
            if not ac:
                return False
            bc = bcomp(b1_h, deg_b[1] + v2)
            if not bc:
                return False
            for ((a1A, a1B), (a2A, a2B)), caa in ac.items():
                for ((b1A, b1B), (b2A, b2B)), cbb in bc.items():
                    val2 = _pair_p_split(datum, (a2A, a2B), (b2A, b2B))
                    if val2:
                        hit = True
                        prod = _mul_terms4(datum, [a1A, a1B, b1A, b1B])
                        lhs.add_elt(prod, caa * cbb * val2)
            return hit
        _sweep_bands(band_l, vmargin)

    # RHS: couple the first legs; enumerate deg(a1) = (h1, v1)
    h1_lo = tuple(-e - hwidth for e in eb)
    h1_hi = tuple(x + hwidth for x in deg_a[0])
    for h1 in _vec_range(h1_lo, h1_hi):
        b1_h = tuple(-x for x in h1)
        def band_r(v1):
            hit = False
            ac = acomp(h1, v1)
            if not ac:
                return False
            bc = bcomp(b1_h, -v1)
            if not bc:
                return False
            for ((a1A, a1B), (a2A, a2B)), caa in ac.items():
                for ((b1A, b1B), (b2A, b2B)), cbb in bc.items():
                    val1 = _pair_p_split(datum, (a1A, a1B), (b1A, b1B))
                    if val1:
                        hit = True
                        prod = _mul_terms4(datum, [b2A, b2B, a2A, a2B])
                        rhs.add_elt(prod, caa * cbb * val1)
            return hit
        _sweep_bands(band_r, vmargin)

    return u_equal(datum, lhs, rhs), lhs, rhs


def _sweep_bands(band, margin, center=0, cap=24):
    """Evaluate band(v) outward from the center until `margin` consecutive
    quiet bands on each side."""
    quiet = 0
    v = center
    while quiet < margin and v < center + cap:
        if band(v):
            quiet = 0
        else:
            quiet += 1
        v += 1
    quiet = 0
    v = center - 1
    while quiet < margin and v > center - cap:
        if band(v):
            quiet = 0
        else:
            quiet += 1
        v -= 1


def _pair_p_split(datum, a_split, b_split):
    """Slope pairing on half-factored slots: <(E)(F), (F')(E')>_p
    = <E, F'> <E', F>."""
    (Et, Ft) = a_split
    (Fpt, Ept) = b_split
    one = ckey_one(datum.ncolors)
    if Et[2] or Ft[0] or Fpt[0] or Ept[2]:
        raise ValueError("slots are not half-factored")
    v1 = pair_u_terms(datum, (Et[0], Et[1], ()), ((), Fpt[1], Fpt[2]))
    if not v1:
        return RATQ_ZERO
    v2 = pair_u_terms(datum, (Ept[0], Ept[1], ()), ((), Ft[1], Ft[2]))
    return v1 * v2


def _mul_terms4(datum, terms):
    acc = UElt.one(datum)
    for t in terms:
        acc = u_mul(datum, acc, UElt({t: RATQ_ONE}))
    return acc

def flatten_component(datum, comps):
    """Collapse split component keys into normal-ordered tensor terms."""
    out = {}
    for ((lA, lB), (rA, rB)), c in comps.items():
        left = u_mul(datum, UElt({lA: RATQ_ONE}), UElt({lB: RATQ_ONE}))
        right = u_mul(datum, UElt({rA: RATQ_ONE}), UElt({rB: RATQ_ONE}))
        for lt, lc in left.items():
            for rt, rc in right.items():
                k = (lt, rt)
                old = out.get(k)
                val = old + c * lc * rc if old is not None else c * lc * rc
                if val:
                    out[k] = val
                elif old is not None:
                    del out[k]
    return out

def u_canonical(datum, elt):
    """Canonical form of a U-element: e- and f-parts are expanded through
    their shuffle images, so the kernel of the word-to-shuffle map is
    quotiented out.  Keys are (hdeg_e, e-monomial, Cartan key, hdeg_f,
    f-monomial)."""
    from .shuffle import eword_to_shuffle
    out = {}
    for (ew, ck, fw), c in elt.items():
        Ei = eword_to_shuffle(datum, PLUS, ew)
        Fi = eword_to_shuffle(datum, MINUS, fw)
        for ke, ce in (Ei.poly.terms or {(): None}).items():
            if ce is None and Ei.poly.terms:
                continue
            for kf, cf in (Fi.poly.terms or {(): None}).items():
                if cf is None and Fi.poly.terms:
                    continue
                coeff = c
                if ce is not None:
                    coeff = coeff * ce
                if cf is not None:
                    coeff = coeff * cf
                key = (Ei.n, ke, ck, Fi.n, kf)
                old = out.get(key)
                val = old + coeff if old is not None else coeff
                if val:
                    out[key] = val
                elif old is not None:
                    del out[key]
    return out


def u_equal(datum, a, b):
    ca, cb = u_canonical(datum, a), u_canonical(datum, b)
    return ca == cb
