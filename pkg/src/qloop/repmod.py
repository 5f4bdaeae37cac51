"""Category-O module machinery over the upper half subalgebra: functional
kernels, graded dimensions of simple lowest-pieces, q-characters and the
refined character product formula.

A simple module piece at horizontal degree -n is the quotient of the
strictly-below minus wedge by the kernel of the twisted functionals; the
quotient is coordinatized by the functional values themselves, so class
equality and dimensions are exact rank computations.
"""

from __future__ import annotations

from .linalg import bareiss_rank, kernel_basis, rank
from .scalars import QQ, RATQ_ZERO
from .shuffle import (MINUS, PLUS, SlopeWindow, as_words, basis_window)
from .sympoly import SymPoly
from .pairing import LoopWeight, twisted_functional, two_contour_functional
from .zetadata import DatumError


def _is_sym(x):
    return isinstance(x, SymPoly)


def _lift_matrix(rows):
    """Promote a mixed RatQ/SymPoly matrix to a single ring."""
    syms = None
    for row in rows:
        for x in row:
            if _is_sym(x):
                syms = x.syms
                break
    if syms is None:
        return rows, False
    out = []
    for row in rows:
        out.append([x if _is_sym(x) else SymPoly.const(syms, x) for x in row])
    return out, True


def matrix_rank(rows):
    if not rows or not rows[0]:
        return 0
    rows, symbolic = _lift_matrix(rows)
    if symbolic:
        return bareiss_rank(rows)
    return rank(rows)


# -- functional matrices ------------------------------------------------------------


def wedge_words(datum, p, n, d):
    """The slope->=p wedge piece at (n, d) expressed as word combinations."""
    key = ("wedge_words", tuple(p), tuple(n), d)
    if key in datum.cache:
        return datum.cache[key]
    out = []
    for el in basis_window(datum, PLUS, n, d, SlopeWindow.ge(p)):
        out.append(as_words(el))
    datum.cache[key] = out
    return out


def functional_rows(datum, psi, p, n, dprimes):
    """Row functionals F -> <E psi, antipode(F)> for wedge elements E at the
    listed vertical degrees; each row is returned as a function evaluator
    over minus elements."""
    rows = []
    for dp in dprimes:
        for combo in wedge_words(datum, p, n, dp):
            rows.append(combo)
    def evaluate(combo, F):
        acc = RATQ_ZERO
        for c, w in combo:
            acc = acc + c * twisted_functional(datum, w, psi, F)
        return acc
    return rows, evaluate


def monomial_weight_dims(datum, r, p, nmax, dmax):
    """Graded dimensions of the simple lowest-weight quotient attached to
    the monomial loop weight z^-r: exact per (n, d) piece.

    Returns {(|n|, d): dim} for one color, or {(n, d): dim} in general."""
    psi = LoopWeight.monomial(datum, r)
    out = {}
    ncol = datum.ncolors
    from .coprod import _vec_range
    for n in _vec_range((0,) * ncol, (nmax,) * ncol):
        if not any(n) or sum(n) > nmax:
            continue
        for d in range(0, dmax + 1):
            cols = basis_window(datum, MINUS, n, d, SlopeWindow.lt(p))
            if not cols:
                continue
            dp = sum(ri * ni for ri, ni in zip(r, n)) - d
            rows, evaluate = functional_rows(datum, psi, p, n, [dp])
            mat = [[evaluate(row, F) for F in cols] for row in rows]
            dim = matrix_rank(mat) if mat else 0
            if dim:
                out[(tuple(n), d)] = dim
    return out


def simple_weight_dims(datum, psi, p, depth, vcap=10, sweeps=2):
    """Dimensions of the weight spaces of the simple quotient at horizontal
    degrees -n, |n| <= depth: rank of the twisted-functional matrix over a
    stabilized vertical box and wedge sweep."""
    ncol = datum.ncolors
    out = {}
    from .coprod import _vec_range
    for n in _vec_range((0,) * ncol, (depth,) * ncol):
        if not any(n) or sum(n) > depth:
            continue
        out[tuple(n)] = _weight_dim(datum, psi, p, n, vcap, sweeps)
    zero = (0,) * ncol
    out[zero] = 1
    return out


def _weight_dim(datum, psi, p, n, vcap, sweeps):
    from .shuffle import window_box
    lo, _hi = window_box(datum, MINUS, n, SlopeWindow.lt(p))
    vmin = sum(l * c for l, c in zip(lo, n))
    stable = 0
    prev = None
    vhi = vmin + 1
    while True:
        cols = []
        for d in range(vmin, vhi + 1):
            cols.extend(basis_window(datum, MINUS, n, d, SlopeWindow.lt(p)))
        dim = _stable_rank(datum, psi, p, n, cols, (vmin, vhi))
        if prev is not None and dim == prev:
            stable += 1
            if stable >= sweeps:
                return dim
        else:
            stable = 0
        prev = dim
        vhi += 1
        if vhi - vmin > vcap:
            raise ArithmeticError("weight-space sweep failed to stabilize")


def _stable_rank(datum, psi, p, n, cols, vbox):
    """Rank of the functional matrix with the wedge side swept until the
    rank is unchanged twice."""
    if not cols:
        return 0
    # relevant wedge degrees: pair nontrivially with column vdeg range
    lo = min(F.vdeg() for F in cols)
    hi = max(F.vdeg() for F in cols)
    rmax = max(psi.ord) if any(psi.ord) else 0
    base = -hi - 1
    cap = -lo + rmax * sum(n) + 1
    dps = list(range(base, cap + 1))
    stable = 0
    prev = None
    while True:
        rows, evaluate = functional_rows(datum, psi, p, n, dps)
        mat = [[evaluate(row, F) for F in cols] for row in rows]
        dim = matrix_rank(mat) if mat else 0
        if prev is not None and dim == prev:
            stable += 1
            if stable >= 2:
                return dim
        else:
            stable = 0
        prev = dim
        base -= 1
        cap += 1
        dps = list(range(base, cap + 1))
        if cap - base > 18:
            raise ArithmeticError("wedge sweep failed to stabilize")


# -- refined character: product formula route ---------------------------------------


def refined_char_product(datum, r, p, depth):
    """Truncated refined character of the monomial-weight module from the
    slope-subalgebra dimension product; single color only (the slope path
    is auto-generated from bounded denominators).

    Returns {(n, d): multiplicity} with n the weight drop and d the grade."""
    if datum.ncolors != 1:
        raise DatumError("auto-generated slope paths need a single color")
    r0 = r[0]
    p0 = QQ(p[0])
    out = {(0, 0): 1}
    for m in range(1, depth + 1):
        for dd in range(1, depth + 1):
            if _gcd(dd, m) != 1:
                continue
            t = -QQ(dd, m)
            # admissibility: -p*m < d <= (-p + r)*m
            if not (-p0 * m < QQ(dd) <= (-p0 + r0) * m):
                continue
            # factor: sum_k dim(B^-_{t | -km}) [gamma^{-km}] v^{k d}
            factor = {(0, 0): 1}
            k = 1
            while k * m <= depth:
                n = k * m
                dim = len(basis_window(datum, MINUS, (n,), k * dd,
                                       SlopeWindow.at((t,))))
                if dim:
                    factor[(n, k * dd)] = dim
                k += 1
            out = _char_mul(out, factor, depth)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _char_mul(a, b, depth):
    out = {}
    for (n1, d1), m1 in a.items():
        for (n2, d2), m2 in b.items():
            if n1 + n2 > depth:
                continue
            k = (n1 + n2, d1 + d2)
            out[k] = out.get(k, 0) + m1 * m2
    return out


# -- kernel comparison (shifted vs two-contour) --------------------------------------


def _minus_word_basis(datum, n, lo, hi):
    """Linearly independent f-word images spanning the minus piece over a
    letter-exponent box."""
    from .shuffle import words_for, eword_to_shuffle
    seen = set()
    polys = []
    for d in range(lo * sum(n), hi * sum(n) + 1):
        for w in words_for(n, d, lo, hi):
            img = eword_to_shuffle(datum, MINUS, w)
            if img.is_zero():
                continue
            key = tuple(sorted((k, str(c)) for k, c in img.poly.terms.items()))
            if key in seen:
                continue
            seen.add(key)
            polys.append(img)
    monoms = {}
    rows = []
    for img in polys:
        vec = {}
        for k, c in img.poly.terms.items():
            vec[monoms.setdefault(k, len(monoms))] = c
        rows.append(vec)
    mat = [[row.get(j, RATQ_ZERO) for j in range(len(monoms))]
           for row in rows]
    keep = _independent_rows(mat)
    return [polys[i] for i in keep]


def _functional_matrix(datum, psi, n, functional, cols, dlo, dhi):
    from .shuffle import words_for
    rows = []
    for d in range(dlo * sum(n), dhi * sum(n) + 1):
        for w in words_for(n, d, dlo, dhi):
            rows.append([functional(datum, w, psi, F) for F in cols])
    return rows


def _independent_rows(mat):
    if not mat:
        return []
    keep = []
    work = []
    ncols = len(mat[0])
    pivots = []
    for idx, row in enumerate(mat):
        r = list(row)
        for (prow, pc) in zip(work, pivots):
            f = r[pc]
            if f:
                r = [a - f * b for a, b in zip(r, prow)]
        pc = None
        for c in range(ncols):
            if r[c]:
                pc = c
                break
        if pc is None:
            continue
        inv = r[pc].inv()
        r = [a * inv for a in r]
        work.append(r)
        pivots.append(pc)
        keep.append(idx)
    return keep


def _stable_rank_sweep(ranks, margin=2, cap=10):
    """Evaluate ranks(k) for k = 0, 1, ... until unchanged `margin` times."""
    prev = None
    stable = 0
    for k in range(cap):
        r = ranks(k)
        if prev is not None and r == prev:
            stable += 1
            if stable >= margin:
                return r
        else:
            stable = 0
        prev = r
    raise ArithmeticError("kernel sweep failed to stabilize")


def kernels_equal(datum, psi, n, col_box=(-2, 2), row_width=3):
    """Exact equality, as subspaces of one minus piece, of the kernel of the
    plain near-infinity functionals with exponents swept upward and the
    kernel of the two-contour functionals over a symmetric window.

    Returns (equal, diagnostics)."""
    cols = _minus_word_basis(datum, n, col_box[0], col_box[1])
    if not cols:
        return True, (0, 0, 0, 0)

    # plain functionals: base exponent M swept up (the kernel grows, then
    # stabilizes); for each M the width is fixed by row_width
    mats_a = {}

    def rank_a(M):
        if M not in mats_a:
            mats_a[M] = _functional_matrix(datum, psi, n, twisted_functional,
                                           cols, M, M + row_width)
        return matrix_rank(mats_a[M])

    # ranks decrease as constraints weaken; stabilize over M
    prev = None
    stable = 0
    M = 0
    while True:
        r = rank_a(M)
        if prev is not None and r == prev:
            stable += 1
            if stable >= 2:
                break
        else:
            stable = 0
        prev = r
        M += 1
        if M > 8:
            raise ArithmeticError("plain-functional sweep failed to stabilize")
    mat_a = mats_a[M]
    ra = prev

    # two-contour functionals: symmetric window swept outward (the kernel
    # shrinks, then stabilizes)
    mats_b = {}

    def rank_b(W):
        if W not in mats_b:
            mats_b[W] = _functional_matrix(
                datum, psi, n, two_contour_functional, cols, -1 - W,
                row_width - 1 + W)
        return matrix_rank(mats_b[W])

    rb = _stable_rank_sweep(rank_b, margin=2, cap=6)
    wmax = max(mats_b)
    mat_b = mats_b[wmax]
    stacked = matrix_rank(mat_a + mat_b)
    return ra == rb == stacked, (ra, rb, stacked, len(cols))

def neq0_weight_dims(datum, psi, depth, col_box=(-2, 2), row_width=3):
    """Weight-space dimensions of the quotient by the large-exponent kernel
    (the shifted-module underlying space), by stabilized ranks."""
    from .coprod import _vec_range
    ncol = datum.ncolors
    out = {(0,) * ncol: 1}
    for n in _vec_range((0,) * ncol, (depth,) * ncol):
        if not any(n) or sum(n) > depth:
            continue
        cols = _minus_word_basis(datum, n, col_box[0], col_box[1])
        if not cols:
            out[tuple(n)] = 0
            continue
        prev, stable, M = None, 0, 0
        while True:
            mat = _functional_matrix(datum, psi, n, twisted_functional,
                                     cols, M, M + row_width)
            r = matrix_rank(mat)
            if prev is not None and r == prev:
                stable += 1
                if stable >= 2:
                    break
            else:
                stable = 0
            prev = r
            M += 1
            if M > 8:
                raise ArithmeticError("rank sweep failed to stabilize")
        out[tuple(n)] = prev
    return out


def decomposition_check(datum, psi, p, depth):
    """Weight-level decomposition: the simple-quotient dimensions factor
    through the monomial-weight module and the large-exponent quotient."""
    from .coprod import _vec_range
    ncol = datum.ncolors
    r = tuple(max(ri, 0) for ri in psi.ord)
    dims_full = simple_weight_dims(datum, psi, p, depth)
    mono = monomial_weight_dims(datum, r, p, depth, depth + sum(r) + 2)
    dims_mono = {(0,) * ncol: 1}
    for (n, _d), dim in mono.items():
        dims_mono[n] = dims_mono.get(n, 0) + dim
    dims_neq = neq0_weight_dims(datum, psi, depth)
    for n in dims_full:
        want = 0
        for n1 in _vec_range((0,) * ncol, tuple(n)):
            n2 = tuple(a - b for a, b in zip(n, n1))
            want += dims_mono.get(tuple(n1), 0) * dims_neq.get(n2, 0)
        if want != dims_full[n]:
            return False, (n, dims_full[n], want)
    return True, None


def j_kernel(datum, psi, p, n, d):
    """Basis of the kernel of the twisted functionals on the graded piece at
    horizontal drop n and vertical degree d, as coefficient vectors over the
    piece basis; the wedge side is swept until the kernel stabilizes twice.

    Returns (kernel vectors, piece basis)."""
    cols = basis_window(datum, MINUS, n, d, SlopeWindow.lt(p))
    if not cols:
        return [], []
    rmax = max(abs(r) for r in psi.ord) if any(psi.ord) else 0
    base, cap = -d - 1, -d + rmax * sum(n) + 1
    prev, stable = None, 0
    while True:
        rows, evaluate = functional_rows(datum, psi, p, n,
                                         list(range(base, cap + 1)))
        mat = [[evaluate(row, F) for F in cols] for row in rows]
        mat, symbolic = _lift_matrix(mat)
        if symbolic:
            raise ArithmeticError("kernel bases need concrete weights; use "
                                  "ranks for symbolic data")
        ker = kernel_basis(mat, len(cols))
        if prev is not None and len(ker) == prev:
            stable += 1
            if stable >= 2:
                return ker, cols
        else:
            stable = 0
        prev = len(ker)
        base -= 1
        cap += 1
        if cap - base > 20:
            raise ArithmeticError("kernel sweep failed to stabilize")
