"""Tensor products of category-O modules under the slope coproduct, and the
multiplicativity check for q-characters.

The action of a loop-Cartan mode on a tensor product runs through the
coproduct components: the left slot acts on the first factor by minus-word
multiplication and Cartan modes, the right slot acts on the second factor
by minus-word multiplication, Cartan modes and wedge e-words (through the
lowest-weight functional formula).
"""

from __future__ import annotations

from .omodule import _mat_mul, _identity, phi_matrix
from .pairing import twisted_functional
from .scalars import RATQ_ONE, RATQ_ZERO, RatQ
from .shuffle import MINUS, as_words, eword_to_shuffle, shuffle_mul
from .ualg import UElt, ckey_eps, delta_term_components, phi_mode


def kappa_scalar(module, n, i):
    """Scalar of kappa_i^+ on the weight piece at drop n."""
    datum, psi = module.datum, module.psi
    e_i = tuple(1 if k == i else 0 for k in range(datum.ncolors))
    return datum.gamma(e_i, n).inv() * psi.series_coeff(i, 0)


def p_matrix(module, n, i, d):
    """Matrix of the primitive mode p_{i,d} on a piece, from the phi modes
    by the power-sum recursion."""
    datum = module.datum
    key = ("p_mat", module.psi.key, module.p, tuple(n), i, d)
    if key in datum.cache:
        return datum.cache[key]
    pc = module.piece(n)
    dim = pc.dim
    kinv = kappa_scalar(module, n, i).inv()
    cs = [None]
    for k in range(1, d + 1):
        M = phi_matrix(module, n, i, k)
        cs.append([[x * kinv for x in row] for row in M])
    # p_d = d*c_d - sum_{k<d} p_k c_{d-k}
    pmats = {}
    for dd in range(1, d + 1):
        acc = [[x * RatQ.from_rational(dd) for x in row] for row in cs[dd]]
        for k in range(1, dd):
            sub = _mat_mul(pmats[k], cs[dd - k])
            acc = [[a - b for a, b in zip(r1, r2)]
                   for r1, r2 in zip(acc, sub)]
        pmats[dd] = acc
    datum.cache[key] = pmats[d]
    return pmats[d]


def cartan_key_matrix(module, n, key):
    """Matrix of a plus-side Cartan key on a piece."""
    kp, km, pp, pm = key
    if any(km) or pm:
        raise ValueError("minus Cartan modes do not act on these modules")
    pc = module.piece(n)
    dim = pc.dim
    scal = RATQ_ONE
    for i, a in enumerate(kp):
        if a:
            scal = scal * kappa_scalar(module, n, i) ** a
    out = [[scal if i == j else RATQ_ZERO for j in range(dim)]
           for i in range(dim)]
    for (i, d) in pp:
        out = _mat_mul(out, p_matrix(module, n, i, d))
    return out


def fword_mult_matrix(module, n_from, fword):
    """Matrix of left multiplication by a minus word: piece n_from ->
    n_from + hdeg drop."""
    datum = module.datum
    img = eword_to_shuffle(datum, MINUS, fword)
    n_to = tuple(a + b for a, b in zip(n_from, img.n))
    src = module.piece(n_from)
    dst = module.piece(n_to)
    if dst is None:
        return None, None
    cols = []
    for F in src.basis_elements():
        prod = shuffle_mul(img, F)
        cols.append(dst.express(prod))
    mat = [[cols[c][r] for c in range(src.dim)] for r in range(dst.dim)]
    return mat, n_to


def eword_action_matrix(module, n_from, eword, vmargin=4):
    """Matrix of a wedge e-word acting through the lowest-weight functional
    formula: piece n_from -> n_from - hdeg."""
    datum, psi = module.datum, module.psi
    ncol = datum.ncolors
    m = [0] * ncol
    dE = 0
    for (i, d) in eword:
        m[i] += 1
        dE += d
    n_to = tuple(a - b for a, b in zip(n_from, m))
    if any(c < 0 for c in n_to):
        return None, None
    src = module.piece(n_from)
    dst = module.piece(tuple(n_to))
    if dst is None:
        return None, None
    cols = []
    for F in src.basis_elements():
        acc = [RATQ_ZERO] * dst.dim
        for coeff, fw in as_words(F):
            fterm = ((), _ckey_one(ncol), tuple(fw))
            left_h = tuple(-c for c in n_to)
            # sweep the left vertical degree over a quiet-band window
            vlo = sum(min(e, 0) for (_i, e) in fw) - vmargin
            vhi = sum(max(e, 0) for (_i, e) in fw) + vmargin
            for v1 in range(vlo, vhi + 1):
                comps = delta_term_components(datum, fterm, left_h, v1)
                for (cc, F1t, F2t) in comps:
                    eps = ckey_eps(F2t[1])
                    if not eps:
                        continue
                    F2img = eword_to_shuffle(datum, MINUS, F2t[2])
                    val = twisted_functional(datum, eword, psi, F2img)
                    if not val:
                        continue
                    F1img = eword_to_shuffle(datum, MINUS, F1t[2])
                    if F1img.is_zero():
                        continue
                    vec = dst.express(F1img)
                    for r in range(dst.dim):
                        if vec[r]:
                            acc[r] = acc[r] + coeff * cc * eps * val * vec[r]
        cols.append(acc)
    mat = [[cols[c][r] for c in range(src.dim)] for r in range(dst.dim)]
    return mat, tuple(n_to)


def _ckey_one(ncol):
    z = (0,) * ncol
    return (z, z, (), ())


def term_action_matrix(module, n_from, term):
    """Matrix of a normal-ordered upper-half term on a piece; None when the
    target drops out of the truncation."""
    ew, ck, fw = term
    cur = n_from
    mat = _identity(module.piece(n_from).dim)
    if fw:
        m2, cur2 = fword_mult_matrix(module, cur, fw)
        if m2 is None:
            return None, None
        mat, cur = _mat_mul_rect(m2, mat), cur2
    ckm = cartan_key_matrix(module, cur, ck)
    mat = _mat_mul_rect(ckm, mat)
    if ew:
        m2, cur2 = eword_action_matrix(module, cur, ew)
        if m2 is None:
            return None, None
        mat, cur = _mat_mul_rect(m2, mat), cur2
    return mat, cur


def _mat_mul_rect(A, B):
    rows = len(A)
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum((A[r][k] * B[k][c] for k in range(inner)), RATQ_ZERO)
             for c in range(cols)] for r in range(rows)]


class TensorModule:
    """V tensor W under the slope coproduct at the modules' common slope."""

    def __init__(self, V, W, depth):
        assert V.datum is W.datum and V.p == W.p
        self.V, self.W = V, W
        self.datum = V.datum
        self.p = V.p
        self.depth = depth
        ncol = self.datum.ncolors
        from .coprod import _vec_range
        self.pieces = {}
        for n in _vec_range((0,) * ncol, (depth,) * ncol):
            if sum(n) > depth:
                continue
            basis = []
            for n1 in _vec_range((0,) * ncol, tuple(n)):
                n2 = tuple(a - b for a, b in zip(n, n1))
                pv, pw = V.piece(n1), W.piece(n2)
                if pv is None or pw is None:
                    continue
                for b1 in range(pv.dim):
                    for b2 in range(pw.dim):
                        basis.append((tuple(n1), b1, n2, b2))
            self.pieces[tuple(n)] = basis

    def phi_tensor_matrix(self, n, i, d, vmargin=4):
        """Matrix of phi^+_{i,d} on the tensor piece at total drop n."""
        datum = self.datum
        basis = self.pieces[tuple(n)]
        index = {b: k for k, b in enumerate(basis)}
        dim = len(basis)
        out = [[RATQ_ZERO] * dim for _ in range(dim)]
        from .coprod import newnew_component_plus, _vec_range
        ncol = datum.ncolors
        unit = ((), _ckey_one(ncol), ())
        phi = phi_mode(datum, i, d, minus=False)
        pairs = [(((), k, ()), unit, c) for k, c in phi.items()]
        # left slots have hdeg -k <= 0
        for kvec in _vec_range((0,) * ncol, tuple(n)):
            lh = tuple(-c for c in kvec)
            for v1 in range(-d - vmargin, d + vmargin + 1):
                comps = newnew_component_plus(datum, pairs, self.p, lh, v1)
                for ((lA, lB), (rA, rB)), cc in comps.items():
                    for (n1, b1, n2, b2) in basis:
                        # left slot on V: lA*lB with lB a minus word
                        mA, zz = self._slot_action(self.V, n1, lB, lA)
                        if mA is None:
                            continue
                        mB, z2 = self._slot_action(self.W, n2, rB, rA)
                        if mB is None:
                            continue
                        src = index[(n1, b1, n2, b2)]
                        for r1 in range(len(mA)):
                            if not mA[r1][b1]:
                                continue
                            for r2 in range(len(mB)):
                                if not mB[r2][b2]:
                                    continue
                                tgt = index.get((zz, r1, z2, r2))
                                if tgt is None:
                                    continue
                                out[tgt][src] = out[tgt][src] + \
                                    cc * mA[r1][b1] * mB[r2][b2]
        return out

    def _slot_action(self, module, n_from, first_term, second_term):
        """Action of second_term * first_term on a module piece."""
        m1, cur = term_action_matrix(module, n_from, first_term)
        if m1 is None:
            return None, None
        m2, cur2 = term_action_matrix(module, cur, second_term)
        if m2 is None:
            return None, None
        return _mat_mul_rect(m2, m1), cur2


def tensor_qchar(tm, depth):
    """q-character of the tensor module via joint generalized eigenspaces
    against product candidates."""
    datum = tm.datum
    out = {}
    certified = True
    candidates = None
    for n, basis in tm.pieces.items():
        dim = len(basis)
        if dim == 0:
            continue
        mats = {}
        for i in range(datum.ncolors):
            for d in range(0, depth + 1):
                mats[(i, d)] = tm.phi_tensor_matrix(n, i, d)
        cands = _product_candidates(tm, n, depth)
        split, total = _joint_split(datum, mats, cands, depth, dim)
        if total != dim:
            certified = False
            out[("block", n)] = dim
            continue
        for key, dd in split:
            out[key] = out.get(key, 0) + dd
    return out, certified


def _product_candidates(tm, n, depth):
    from .omodule import loop_weight_candidates
    from .coprod import _vec_range
    ncol = tm.datum.ncolors
    seen = set()
    out = []
    for n1 in _vec_range((0,) * ncol, tuple(n)):
        n2 = tuple(a - b for a, b in zip(n, n1))
        for s1 in loop_weight_candidates(tm.V, tuple(n1), depth):
            for s2 in loop_weight_candidates(tm.W, n2, depth):
                series = [a * b for a, b in zip(s1, s2)]
                key = tuple(_skey(f, depth) for f in series)
                if key in seen:
                    continue
                seen.add(key)
                out.append(series)
    return out


def _skey(f, depth):
    lead, coeffs = f.seriesInf(depth)
    return (lead, tuple(str(c) for c in coeffs))


def _joint_split(datum, mats, candidates, depth, dim):
    from .omodule import _gen_kernel_within, _identity
    out = []
    total = 0
    for series in candidates:
        space = _identity(dim)
        alive = True
        for i in range(datum.ncolors):
            lead, lam = series[i].seriesInf(depth)
            if lead != 0:
                alive = False
                break
            for d in range(0, depth + 1):
                space = _gen_kernel_within(mats[(i, d)], lam[d], space)
                if not space:
                    break
            if not space:
                break
        if alive and space:
            key = tuple(_skey(f, depth) for f in series)
            out.append((key, len(space)))
            total += len(space)
    return out, total


def qchar_product(chi1, chi2, depth):
    """Product of truncated q-characters on series keys."""
    out = {}
    for k1, m1 in chi1.items():
        for k2, m2 in chi2.items():
            if k1 and k1[0] == "block" or k2 and k2[0] == "block":
                raise ArithmeticError("cannot multiply flagged characters")
            k = tuple(_key_mul(a, b, depth) for a, b in zip(k1, k2))
            out[k] = out.get(k, 0) + m1 * m2
    return out


def _key_mul(k1, k2, depth):
    from .scalars import parse_ratq
    l1, c1 = k1
    l2, c2 = k2
    c1 = [parse_ratq(s) for s in c1]
    c2 = [parse_ratq(s) for s in c2]
    lead = l1 + l2
    coeffs = [RATQ_ZERO] * (depth + 1)
    for a in range(min(len(c1), depth + 1)):
        for b in range(0, depth + 1 - a):
            if b < len(c2):
                coeffs[a + b] = coeffs[a + b] + c1[a] * c2[b]
    return (lead, tuple(str(c) for c in coeffs))

def tensor_qchar_by_piece(tm, depth):
    datum = tm.datum
    out = {}
    certified = True
    for n, basis in tm.pieces.items():
        dim = len(basis)
        if dim == 0:
            continue
        mats = {}
        for i in range(datum.ncolors):
            for d in range(0, depth + 1):
                mats[(i, d)] = tm.phi_tensor_matrix(n, i, d)
        cands = _product_candidates(tm, n, depth)
        split, total = _joint_split(datum, mats, cands, depth, dim)
        slot = {}
        if total != dim:
            certified = False
            slot[("block", n)] = dim
        else:
            for key, dd in split:
                slot[key] = slot.get(key, 0) + dd
        out[tuple(n)] = slot
    return out, certified


def multiplicativity_check(V, W, depth):
    """chi_q(V tensor W) against chi_q(V) chi_q(W) at matched truncation
    (total weight drop <= depth).  Returns (ok, certified)."""
    from .omodule import qchar_by_piece
    from .coprod import _vec_range
    chiV, c1 = qchar_by_piece(V, depth)
    chiW, c2 = qchar_by_piece(W, depth)
    tm = TensorModule(V, W, depth)
    chiT, c3 = tensor_qchar_by_piece(tm, depth)
    certified = c1 and c2 and c3
    ncol = V.datum.ncolors
    ok = True
    for n in chiT:
        want = {}
        for n1 in _vec_range((0,) * ncol, tuple(n)):
            n2 = tuple(a - b for a, b in zip(n, n1))
            s1 = chiV.get(tuple(n1), {})
            s2 = chiW.get(n2, {})
            for k1, m1 in s1.items():
                for k2, m2 in s2.items():
                    k = tuple(_key_mul(a, b, depth) for a, b in zip(k1, k2))
                    want[k] = want.get(k, 0) + m1 * m2
        if want != chiT[n]:
            ok = False
    return ok, certified
