"""Concrete category-O module pieces with exact class coordinates.

A module is presented by its weight pieces: each piece keeps a spanning
family of minus-wedge representatives, the stabilized twisted-functional
matrix whose values coordinatize classes (two representatives are equal in
the quotient iff all functionals agree), and a chosen class basis.  The
loop-Cartan action is computed by commuting modes past representatives;
e-parts of upper-half elements act through the lowest-weight functional
formula.  Joint generalized eigenspaces are extracted against candidate
eigenvalue series generated from shifted zeros and poles of the weight,
and flagged if the candidates fail to exhaust a piece.
"""

from __future__ import annotations

import itertools

from .linalg import kernel_basis, solve
from .lpoly import LPoly
from .scalars import QQ, RATQ_ONE, RATQ_ZERO, RatQ
from .shuffle import (MINUS, ShuffleElement, SlopeWindow,
                      basis_window, nvars_of, window_box)
from .pairing import twisted_functional
from .repmod import functional_rows, matrix_rank
from .urat import URat


class OModule:
    """Truncation of the simple quotient attached to a rational weight."""

    def __init__(self, datum, psi, p, depth, vsweep=8):
        self.datum = datum
        self.psi = psi
        self.p = tuple(QQ(x) for x in p)
        self.depth = depth
        self.pieces = {}
        ncol = datum.ncolors
        from .coprod import _vec_range
        for n in _vec_range((0,) * ncol, (depth,) * ncol):
            if sum(n) > depth:
                continue
            self.pieces[tuple(n)] = _Piece(self, tuple(n), vsweep)

    def piece(self, n):
        return self.pieces.get(tuple(n))

    def dims(self):
        return {n: pc.dim for n, pc in self.pieces.items()}


class _Piece:
    def __init__(self, module, n, vsweep):
        self.module = module
        self.n = n
        datum, psi, p = module.datum, module.psi, module.p
        if not any(n):
            self.cols = [ShuffleElement.unit(datum, MINUS)]
            self.rows = [[]]
            self.dim = 1
            self._basis_idx = [0]
            self._basis_mat = [[RATQ_ONE]]
            self._coord_rows = None
            return
        lo, _hi = window_box(datum, MINUS, n, SlopeWindow.lt(p))
        vmin = sum(l * c for l, c in zip(lo, n))
        # sweep the representative box and the functional rows jointly
        stable, prev, vhi = 0, None, vmin + 1
        while True:
            cols = []
            for d in range(vmin, vhi + 1):
                cols.extend(basis_window(datum, MINUS, n, d,
                                         SlopeWindow.lt(p)))
            data = self._build(cols)
            if prev is not None and data[0] == prev:
                stable += 1
                if stable >= 2:
                    break
            else:
                stable = 0
            prev = data[0]
            vhi += 1
            if vhi - vmin > vsweep:
                raise ArithmeticError("module piece failed to stabilize")
        self.dim, self.cols, self.rows, mat = data
        # class basis: columns whose coordinate vectors are independent
        idx = _pivot_columns(mat)
        self._basis_idx = idx
        self._basis_mat = [[mat[r][c] for c in idx] for r in range(len(mat))]

    def _build(self, cols):
        datum, psi, p = self.module.datum, self.module.psi, self.module.p
        if not cols:
            return 0, [], [], []
        lo = min(F.vdeg() for F in cols)
        hi = max(F.vdeg() for F in cols)
        rmax = max(abs(r) for r in psi.ord) if any(psi.ord) else 0
        base, cap = -hi - 1, -lo + rmax * sum(self.n) + 1
        stable, prev = 0, None
        while True:
            rows, evaluate = functional_rows(datum, psi, p, self.n,
                                             list(range(base, cap + 1)))
            mat = [[evaluate(row, F) for F in cols] for row in rows]
            r = matrix_rank(mat) if mat else 0
            if prev is not None and r == prev:
                stable += 1
                if stable >= 2:
                    return r, cols, rows, mat
            else:
                stable = 0
            prev = r
            base -= 1
            cap += 1
            if cap - base > 20:
                raise ArithmeticError("functional sweep failed to stabilize")

    # -- class coordinates ---------------------------------------------------

    def coords(self, F):
        """Functional coordinates of a representative (any vdeg)."""
        datum, psi = self.module.datum, self.module.psi
        out = []
        for row in self.rows:
            acc = RATQ_ZERO
            for c, w in row:
                acc = acc + c * twisted_functional(datum, w, psi, F)
            out.append(acc)
        return out

    def express(self, F):
        """Coefficients of the class of F in the chosen class basis."""
        if not any(self.n):
            c = F.poly.terms.get((), RATQ_ZERO)
            return [c]
        vec = self.coords(F)
        out = solve(self._basis_mat, vec)
        if out is None:
            raise ArithmeticError("class not resolved: functional rows "
                                  "insufficient")
        return out

    def basis_elements(self):
        return [self.cols[i] for i in self._basis_idx]


# -- loop Cartan action --------------------------------------------------------


def _hinv_series_poly(datum, n, i, order):
    """Coefficient polys H_t of prod_a h_{i,c(a)}(y/z_a)^{-1} at y^{-t}."""
    key = ("hinv_series", tuple(n), i, order)
    if key in datum.cache:
        return datum.cache[key]
    nv = nvars_of(n)
    out = [LPoly.const(nv, RATQ_ONE)]
    for t in range(1, order + 1):
        out.append(LPoly.zero(nv))
    from .shuffle import offsets_of
    offs = offsets_of(n)
    for j, cnt in enumerate(n):
        for a in range(cnt):
            var = offs[j] + a
            h = datum.h_ratio(i, j).inv()
            lead, coeffs = h.seriesInf(order)
            assert lead == 0
            # factor series: sum_k coeffs[k] z_var^k y^-k
            new = [LPoly.zero(nv) for _ in range(order + 1)]
            for t in range(order + 1):
                if out[t].is_zero():
                    continue
                for k in range(0, order + 1 - t):
                    if not coeffs[k]:
                        continue
                    shift = [0] * nv
                    shift[var] = k
                    new[t + k].addmul(out[t], coeffs[k], tuple(shift))
            out = new
    datum.cache[key] = out
    return out


def phi_matrix(module, n, i, d):
    """Matrix of phi^+_{i,d} on the class basis of one piece."""
    pc = module.piece(n)
    key = ("phi_mat", module.psi.key, module.p, tuple(n), i, d)
    datum = module.datum
    if key in datum.cache:
        return datum.cache[key]
    H = _hinv_series_poly(datum, n, i, d) if any(n) else None
    cols = []
    for F in pc.basis_elements():
        acc = None
        for t in range(0, d + 1):
            psival = module.psi.series_coeff(i, d - t)
            if not psival:
                continue
            if any(n):
                ft = ShuffleElement(datum, MINUS, n, F.poly * H[t])
            else:
                ft = F if t == 0 else None
            if ft is None or ft.is_zero():
                continue
            vec = pc.express(ft)
            vec = [v * psival for v in vec]
            acc = vec if acc is None else [a + b for a, b in zip(acc, vec)]
        cols.append(acc if acc is not None else [RATQ_ZERO] * pc.dim)
    mat = [[cols[c][r] for c in range(pc.dim)] for r in range(pc.dim)]
    datum.cache[key] = mat
    return mat


# -- eigenvalue extraction -------------------------------------------------------


def candidate_positions(datum, psi, depth):
    """Shift candidates: zeros and poles of the weight moved by even powers
    of q_i (quantum-affine presets)."""
    roots = set()
    for i, f in enumerate(psi.components):
        for poly in (f.num, f.den):
            mono = _linear_roots(poly)
            roots.update(mono)
    out = set()
    qexps = range(-2 * depth, 2 * depth + 1)
    for i in range(datum.ncolors):
        # None stands for the degenerate position at 0: the h-ratio factor
        # collapses to the constant conjugation scalar
        out.add((i, None))
        di = datum.cartan[i][i] // 2 if datum.is_preset() else 1
        for r in roots:
            for k in qexps:
                out.add((i, r * RatQ.q_power(di * k)))
    return sorted(out, key=str)


def _linear_roots(poly_dict):
    """Roots of a Laurent polynomial that factors into monomial shifts;
    only degree-one factors are extracted (enough for product weights)."""
    exps = sorted(poly_dict)
    if len(exps) == 1:
        return []
    if len(exps) == 2 and exps[1] - exps[0] == 1:
        a, b = poly_dict[exps[0]], poly_dict[exps[1]]
        return [-a / b]
    return []


def loop_weight_candidates(module, n, depth):
    """Candidate eigenvalue series on a piece: the weight times inverse
    h-ratios at position multisets."""
    datum, psi = module.datum, module.psi
    pos = candidate_positions(datum, psi, depth)
    bycolor = {}
    for (j, x) in pos:
        bycolor.setdefault(j, []).append(x)
    chooseable = []
    for j, cnt in enumerate(n):
        opts = bycolor.get(j, [])
        chooseable.append(list(
            itertools.combinations_with_replacement(opts, cnt)))
    out = []
    seen = set()
    for pick in itertools.product(*chooseable):
        series = []
        for i in range(datum.ncolors):
            f = psi.components[i]
            for j, xs in enumerate(pick):
                for x in xs:
                    if x is None:
                        e_i = tuple(1 if k == i else 0
                                    for k in range(datum.ncolors))
                        e_j = tuple(1 if k == j else 0
                                    for k in range(datum.ncolors))
                        f = f * URat.const(datum.gamma(e_i, e_j).inv())
                    else:
                        hinv = datum.h_ratio(i, j).inv()
                        f = f * _scale_arg(hinv, x)
            series.append(f)
        key = tuple(_series_key(f, depth) for f in series)
        if key in seen:
            continue
        seen.add(key)
        out.append(series)
    return out


def _scale_arg(f, x):
    """f(y/x) as a rational function of y."""
    num = {e: c * x ** (-e) for e, c in f.num.items()}
    den = {e: c * x ** (-e) for e, c in f.den.items()}
    return URat(num, den)


def _series_key(f, depth):
    lead, coeffs = f.seriesInf(depth)
    return (lead, tuple(str(c) for c in coeffs))


def eigen_split(module, n, depth):
    """Joint generalized eigenspace dimensions of the loop-Cartan action on
    a piece.  Returns (list of (series_key, dim), certified_flag)."""
    pc = module.piece(n)
    if pc.dim == 0:
        return [], True
    datum = module.datum
    mats = {}
    for i in range(datum.ncolors):
        for d in range(1, depth + 1):
            mats[(i, d)] = phi_matrix(module, n, i, d)
    k0 = {}
    for i in range(datum.ncolors):
        k0[i] = phi_matrix(module, n, i, 0)
    out = []
    total = 0
    for series in loop_weight_candidates(module, tuple(n), depth):
        # candidate eigenvalue sequence lambda_{i,d}
        dim = pc.dim
        space = _identity(dim)
        ok = True
        for i in range(datum.ncolors):
            lead, coeffs = series[i].seriesInf(depth)
            if lead != 0:
                ok = False
                break
            lam = coeffs
            for d in range(0, depth + 1):
                M = k0[i] if d == 0 else mats[(i, d)]
                space = _gen_kernel_within(M, lam[d], space)
                if not space:
                    break
            if not space:
                break
        if not ok or not space:
            continue
        key = tuple(_series_key(f, depth) for f in series)
        out.append((key, len(space)))
        total += len(space)
    return out, total == pc.dim


def _identity(dim):
    return [[RATQ_ONE if i == j else RATQ_ZERO for j in range(dim)]
            for i in range(dim)]


def _gen_kernel_within(M, lam, space_vecs):
    """Basis of the generalized lambda-kernel of M restricted to the span
    of space_vecs."""
    dim = len(M)
    k = len(space_vecs)
    # matrix of (M - lam) acting on the subspace, in subspace coordinates:
    # solve (M - lam) v_j = sum_i c_ij v_i
    A = []
    for v in space_vecs:
        w = [sum((M[r][c] * v[c] for c in range(dim)), RATQ_ZERO)
             - lam * v[r] for r in range(dim)]
        A.append(w)
    # express each w in terms of the basis of the subspace; the subspace is
    # M-stable for commuting families restricted correctly, but to stay safe
    # work with the full ambient kernel intersected with the span
    # ambient generalized kernel:
    N = [[M[r][c] - (lam if r == c else RATQ_ZERO) for c in range(dim)]
         for r in range(dim)]
    P = _mat_pow(N, dim)
    # rows of the constraint: P * v = 0 for v = sum x_j space_vecs[j]
    rows = []
    for r in range(dim):
        rows.append([sum((P[r][c] * space_vecs[j][c] for c in range(dim)),
                         RATQ_ZERO) for j in range(k)])
    ker = kernel_basis(rows, k)
    out = []
    for coeffs in ker:
        v = [sum((coeffs[j] * space_vecs[j][c] for j in range(k)), RATQ_ZERO)
             for c in range(dim)]
        out.append(v)
    return out


def _mat_pow(M, k):
    dim = len(M)
    out = _identity(dim)
    base = M
    while k:
        if k & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        k >>= 1
    return out


def _mat_mul(A, B):
    dim = len(A)
    return [[sum((A[r][k] * B[k][c] for k in range(dim)), RATQ_ZERO)
             for c in range(dim)] for r in range(dim)]


def qchar(module, depth):
    """Truncated q-character: {eigenvalue-series key: multiplicity} plus a
    certification flag; falls back to weight-level blocks when flagged."""
    out = {}
    certified = True
    for n, pc in module.pieces.items():
        if pc.dim == 0:
            continue
        split, ok = eigen_split(module, n, depth)
        if not ok:
            certified = False
            out[("block", n)] = pc.dim
            continue
        for key, dim in split:
            out[key] = out.get(key, 0) + dim
    return out, certified

def _pivot_columns(mat):
    """Indices of a maximal set of linearly independent columns."""
    if not mat:
        return []
    rows = len(mat)
    ncols = len(mat[0])
    work = []
    pivots = []
    keep = []
    for c in range(ncols):
        col = [mat[r][c] for r in range(rows)]
        for (prow, pr) in zip(work, pivots):
            f = col[pr]
            if f:
                col = [a - f * b for a, b in zip(col, prow)]
        pr = None
        for r in range(rows):
            if col[r]:
                pr = r
                break
        if pr is None:
            continue
        inv = col[pr].inv()
        col = [a * inv for a in col]
        work.append(col)
        pivots.append(pr)
        keep.append(c)
    return keep

def qchar_by_piece(module, depth):
    """Per-weight-piece q-character: {n: {series key: mult}}, with flag."""
    out = {}
    certified = True
    for n, pc in module.pieces.items():
        if pc.dim == 0:
            continue
        split, ok = eigen_split(module, n, depth)
        slot = {}
        if not ok:
            certified = False
            slot[("block", n)] = pc.dim
        else:
            for key, dim in split:
                slot[key] = slot.get(key, 0) + dim
        out[tuple(n)] = slot
    return out, certified
