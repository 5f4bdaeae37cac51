"""Shuffle algebras: color-symmetric Laurent polynomials with the twisted
symmetrized product, e/f-word images, wheel conditions, slope tests and
graded bases of slope windows.

Variables for horizontal degree n are ordered color-major, slot-minor.
Plus-side elements sit in degree +n, minus-side in -n; the minus product is
the opposite of the plus product.
"""

from __future__ import annotations

import itertools
import math

from .linalg import kernel_basis
from .lpoly import LPoly
from .scalars import QQ, RATQ_ONE, RATQ_ZERO, RatQ
from .zetadata import DatumError

PLUS, MINUS = 1, -1


def nvars_of(n):
    return sum(n)


def offsets_of(n):
    out = []
    acc = 0
    for c in n:
        out.append(acc)
        acc += c
    return tuple(out)


class ShuffleElement:
    """A (not necessarily homogeneous) element of the big shuffle algebra."""

    __slots__ = ("datum", "side", "n", "poly")

    def __init__(self, datum, side, n, poly):
        self.datum = datum
        self.side = side
        self.n = tuple(n)
        self.poly = poly

    @staticmethod
    def unit(datum, side):
        z = (0,) * datum.ncolors
        return ShuffleElement(datum, side, z, LPoly.const(0, RATQ_ONE))

    @staticmethod
    def generator(datum, side, color, d, coeff=RATQ_ONE):
        """Image of a single e/f letter: z^d in one variable of the color."""
        n = tuple(1 if k == color else 0 for k in range(datum.ncolors))
        return ShuffleElement(datum, side, n, LPoly.monomial(1, (d,), coeff))

    def is_zero(self):
        return self.poly.is_zero()

    def hdeg(self):
        if self.side == PLUS:
            return self.n
        return tuple(-c for c in self.n)

    def vdeg(self):
        """Vertical degree if homogeneous, else raises."""
        lo, hi = self.poly.total_degrees()
        if lo != hi:
            raise ValueError("inhomogeneous shuffle element")
        return lo

    def key(self):
        return (self.side, self.n,
                tuple(sorted((k, str(c)) for k, c in self.poly.terms.items())))

    def scale(self, c):
        return ShuffleElement(self.datum, self.side, self.n, self.poly.scale(c))

    def __add__(self, other):
        assert self.n == other.n and self.side == other.side
        return ShuffleElement(self.datum, self.side, self.n,
                              self.poly + other.poly)

    def __neg__(self):
        return ShuffleElement(self.datum, self.side, self.n, -self.poly)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return shuffle_mul(self, other)

    def is_color_symmetric(self):
        offs = offsets_of(self.n)
        for ci, cnt in enumerate(self.n):
            base = offs[ci]
            for a in range(cnt - 1):
                perm = list(range(nvars_of(self.n)))
                perm[base + a], perm[base + a + 1] = perm[base + a + 1], perm[base + a]
                if self.poly.permute_vars(perm) != self.poly:
                    return False
        return True

    def __repr__(self):
        names = []
        for ci, cnt in enumerate(self.n):
            for a in range(cnt):
                names.append("z%s_%d" % (self.datum.colors[ci], a + 1))
        s = "+" if self.side == PLUS else "-"
        return "Shuffle[%s, n=%s, %s]" % (s, self.n, self.poly.to_str(names))


def _zeta_parts(datum, i, j):
    """zeta_ij(z_u/z_v) as (numerator pairs [(e_u, e_v, coeff)], delta) with
    denominator (z_v - z_u)**delta."""
    key = ("zeta_parts", i, j)
    if key in datum.cache:
        return datum.cache[key]
    z = datum.zeta[i, j]
    den = dict(z.den)
    num = dict(z.num)
    dv = min(den)
    if dv:
        den = {e - dv: c for e, c in den.items()}
        num = {e - dv: c for e, c in num.items()}
    c0 = den[0]
    num = {e: c / c0 for e, c in num.items()}
    den = {e: c / c0 for e, c in den.items()}
    if den == {0: RATQ_ONE}:
        delta = 0
    else:
        if den != {0: RATQ_ONE, 1: -RATQ_ONE}:
            raise DatumError("zeta denominator must be a power of (1-x)")
        delta = 1
    pairs = tuple((e, delta - e, c) for e, c in sorted(num.items()))
    datum.cache[key] = (pairs, delta)
    return pairs, delta


def shuffle_mul(E, F):
    """Shuffle product; for the minus side the factors multiply in the
    opposite order."""
    assert E.datum is F.datum and E.side == F.side
    if E.side == MINUS:
        return _shuffle_mul_plus(F, E, MINUS)
    return _shuffle_mul_plus(E, F, PLUS)


def _shuffle_mul_plus(E, F, side):
    datum = E.datum
    ncol = datum.ncolors
    n, m = E.n, F.n
    if nvars_of(n) == 0:
        c = E.poly.terms.get(())
        poly = F.poly.scale(c) if c is not None else LPoly.zero(nvars_of(m))
        return ShuffleElement(datum, side, m, poly)
    if nvars_of(m) == 0:
        c = F.poly.terms.get(())
        poly = E.poly.scale(c) if c is not None else LPoly.zero(nvars_of(n))
        return ShuffleElement(datum, side, n, poly)
    if E.is_zero() or F.is_zero():
        total = tuple(a + b for a, b in zip(n, m))
        return ShuffleElement(datum, side, total, LPoly.zero(nvars_of(total)))
    total = tuple(a + b for a, b in zip(n, m))
    N = nvars_of(total)
    offs = offsets_of(total)
    acc = LPoly.zero(N)

    choices = []
    for ci in range(ncol):
        slots = range(total[ci])
        choices.append(list(itertools.combinations(slots, n[ci])))

    for pick in itertools.product(*choices):
        e_map, f_map = {}, {}
        sign_pairs = []
        for ci in range(ncol):
            chosen = pick[ci]
            rest = [s for s in range(total[ci]) if s not in chosen]
            for a, s in enumerate(chosen):
                e_map[(ci, a)] = offs[ci] + s
            for b, s in enumerate(rest):
                f_map[(ci, b)] = offs[ci] + s
        # embed both polynomials into the common variable space
        ep = _embed(E.poly, E.n, e_map, N)
        fp = _embed(F.poly, F.n, f_map, N)
        term = ep * fp
        # cross zeta factors: E-variable (ci) against F-variable (cj)
        denom_pairs = []
        for ci in range(ncol):
            for a in range(n[ci]):
                u = e_map[(ci, a)]
                for cj in range(ncol):
                    for b in range(m[cj]):
                        v = f_map[(cj, b)]
                        pairs, delta = _zeta_parts(datum, ci, cj)
                        znum = LPoly.zero(N)
                        for eu, ev, c in pairs:
                            ex = [0] * N
                            ex[u] += eu
                            ex[v] += ev
                            znum.addmul(LPoly.monomial(N, ex, c))
                        term = term * znum
                        if delta:
                            denom_pairs.append((u, v))
        # bring the term onto the common denominator (all same-color pairs of
        # the colors shared by both factors), tracking orientation signs
        common = _common_pairs(total, offs, n, m)
        have = set()
        sign = 1
        for (u, v) in denom_pairs:
            a, b = (u, v) if u < v else (v, u)
            if v < u:
                sign = -sign
            have.add((a, b))
        for (a, b) in common:
            if (a, b) not in have:
                diff = LPoly.monomial(N, _unit_exp(N, b, 1), RATQ_ONE)
                diff.addmul(LPoly.monomial(N, _unit_exp(N, a, 1), -RATQ_ONE))
                term = term * diff
        if sign < 0:
            term = -term
        acc.addmul(term)

    # divide out the common denominator (z_b - z_a) over shared-color pairs
    for (a, b) in _common_pairs(total, offs, n, m):
        acc = acc.divexact_binom(b, RATQ_ONE, a, -RATQ_ONE)
    return ShuffleElement(datum, side, total, acc)


def _unit_exp(N, i, e):
    out = [0] * N
    out[i] = e
    return tuple(out)


def _embed(poly, n, vmap, N):
    offs = offsets_of(n)
    table = [0] * nvars_of(n)
    for ci, cnt in enumerate(n):
        for a in range(cnt):
            table[offs[ci] + a] = vmap[(ci, a)]
    def fn(k):
        out = [0] * N
        for idx, e in enumerate(k):
            if e:
                out[table[idx]] += e
        return tuple(out)
    return poly.map_exponents(fn, N)


def _common_pairs(total, offs, n, m):
    """All same-color position pairs (a < b) for colors occupied by both
    factors; every such pair is crossed in some shuffle."""
    out = []
    for ci, cnt in enumerate(total):
        if not n[ci] or not m[ci]:
            continue
        base = offs[ci]
        for a in range(cnt):
            for b in range(a + 1, cnt):
                out.append((base + a, base + b))
    return out


# -- words ---------------------------------------------------------------------


def eword_to_shuffle(datum, side, word):
    """Image of a product of e- (plus) or f- (minus) letters; word is a
    tuple of (color_index, exponent)."""
    word = tuple(word)
    key = ("eword", side, word)
    if key in datum.cache:
        return datum.cache[key]
    acc = ShuffleElement.unit(datum, side)
    if word:
        # build by peeling the last letter so prefixes are shared in cache
        head = eword_to_shuffle(datum, side, word[:-1])
        i, d = word[-1]
        acc = shuffle_mul(head, ShuffleElement.generator(datum, side, i, d))
    datum.cache[key] = acc
    return acc


def color_sequences(n):
    """All distinct arrangements of the color multiset n."""
    letters = []
    for ci, cnt in enumerate(n):
        letters.extend([ci] * cnt)
    return sorted(set(itertools.permutations(letters)))


def words_for(n, d, lo, hi):
    """All words with color multiset n, letter exponents in [lo, hi] and
    total exponent d."""
    out = []
    k = nvars_of(n)
    for seq in color_sequences(n):
        for exps in _compositions(d, k, lo, hi):
            out.append(tuple(zip(seq, exps)))
    return out


def _compositions(d, k, lo, hi):
    if k == 0:
        if d == 0:
            yield ()
        return
    for e in range(lo, hi + 1):
        rest = d - e
        if rest < lo * (k - 1) or rest > hi * (k - 1):
            continue
        for tail in _compositions(rest, k - 1, lo, hi):
            yield (e,) + tail


# -- wheel conditions -------------------------------------------------------------


def wheel_check(E):
    """True iff every applicable string specialization kills E; only defined
    for quantum-affine presets."""
    datum = E.datum
    if not datum.is_preset():
        raise DatumError("wheel conditions need a quantum-affine preset")
    for poly in _wheel_specializations(datum, E.n, E.poly):
        if not poly.is_zero():
            return False
    return True


def _wheel_specializations(datum, n, poly):
    cart = datum.cartan
    ncol = datum.ncolors
    offs = offsets_of(n)
    for i in range(ncol):
        for j in range(ncol):
            if i == j or n[j] < 1:
                continue
            dij, dii = cart[i][j], cart[i][i]
            count = 1 - (2 * dij) // dii
            if n[i] < count:
                continue
            out = poly
            target = offs[j]  # z_{j,1}
            for a in range(count):
                power = dij + a * dii
                out = out.subs_scaled_var(offs[i] + a, target,
                                          RatQ.q_power(power))
            yield out


# -- slopes -----------------------------------------------------------------------


class SlopeWindow:
    """Closed/open slope interval; None endpoints mean +-infinity."""

    __slots__ = ("lo", "hi", "lo_strict", "hi_strict")

    def __init__(self, lo=None, hi=None, lo_strict=False, hi_strict=False):
        self.lo = None if lo is None else tuple(QQ(x) for x in lo)
        self.hi = None if hi is None else tuple(QQ(x) for x in hi)
        self.lo_strict = lo_strict
        self.hi_strict = hi_strict

    @staticmethod
    def at(p):
        return SlopeWindow(p, p)

    @staticmethod
    def ge(p, strict=False):
        return SlopeWindow(lo=p, lo_strict=strict)

    @staticmethod
    def lt(p):
        return SlopeWindow(hi=p, hi_strict=True)

    @staticmethod
    def le(p):
        return SlopeWindow(hi=p)

    def key(self):
        return (self.lo, self.hi, self.lo_strict, self.hi_strict)

    def __repr__(self):
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        lb = "(" if self.lo_strict else "["
        rb = ")" if self.hi_strict else "]"
        return "%s%s, %s%s" % (lb, lo, hi, rb)


def _scaled_stats(poly, n, m):
    """(min, max) of the exponent sum over the first m_i slots per color."""
    offs = offsets_of(n)
    weights = [0] * nvars_of(n)
    for ci, cnt in enumerate(m):
        for a in range(cnt):
            weights[offs[ci] + a] = 1
    return poly.total_degrees(weights)


def _sub_degrees(n):
    """All 0 < m <= n componentwise."""
    ranges = [range(0, c + 1) for c in n]
    for m in itertools.product(*ranges):
        if any(m):
            yield m


def slope_test(E, p, kind, strict=False):
    """Exact slope test; kind in {"geq", "leq"}.  Returns (ok, limits) where
    limits[m] is the limit value of the scaling at threshold (a pair of
    split tensors) for tests at the boundary."""
    p = tuple(QQ(x) for x in p)
    datum, n = E.datum, E.n
    if not any(n):
        return True, {}
    sgn = 1 if E.side == PLUS else -1
    ok = True
    limits = {}
    to_zero = (kind == "geq") if E.side == PLUS else (kind == "leq")
    for m in _sub_degrees(n):
        nm = tuple(a - b for a, b in zip(n, m))
        if to_zero:
            # scaling to 0 with threshold sgn*p.m - <n-m, m>
            thr = sum(pi * mi for pi, mi in zip(p, m)) * sgn - E.datum.euler(nm, m)
            lo, _ = _scaled_stats(E.poly, n, m)
            if lo is None:
                continue
            if lo < thr or (strict and lo == thr):
                ok = False
            limits[m] = ("0", thr, lo)
        else:
            # scaling to infinity with threshold sgn*p.m + <m, n-m>
            thr = sum(pi * mi for pi, mi in zip(p, m)) * sgn + E.datum.euler(m, nm)
            _, hi = _scaled_stats(E.poly, n, m)
            if hi is None:
                continue
            if hi > thr or (strict and hi == thr):
                ok = False
            limits[m] = ("inf", thr, hi)
    return ok, limits


def in_window(E, window):
    if E.is_zero():
        return True
    ok = True
    if window.lo is not None:
        ok = ok and slope_test(E, window.lo, "geq", window.lo_strict)[0]
    if window.hi is not None:
        ok = ok and slope_test(E, window.hi, "leq", window.hi_strict)[0]
    return ok


def slope_limit_split(E, p, m):
    """Terms of E at the critical scaled degree for the scaling-to-zero slope
    test, split as pairs (first m_i slots, remaining slots); empty when the
    limit is 0."""
    p = tuple(QQ(x) for x in p)
    datum, n = E.datum, E.n
    sgn = 1 if E.side == PLUS else -1
    nm = tuple(a - b for a, b in zip(n, m))
    thr = sum(pi * mi for pi, mi in zip(p, m)) * sgn - datum.euler(nm, m)
    offs = offsets_of(n)
    scaled = []
    for ci, cnt in enumerate(m):
        for a in range(cnt):
            scaled.append(offs[ci] + a)
    scaled_set = set(scaled)
    rest = [v for v in range(nvars_of(n)) if v not in scaled_set]
    nL, nR = nvars_of(m), nvars_of(nm)
    groups = {}
    for k, c in E.poly.terms.items():
        s = sum(k[v] for v in scaled)
        if QQ(s) != thr:
            continue
        kl = tuple(k[v] for v in scaled)
        kr = tuple(k[v] for v in rest)
        groups.setdefault(kl, {})[kr] = c
    out = []
    for kl, rterms in sorted(groups.items()):
        out.append((LPoly.monomial(nL, kl, RATQ_ONE),
                    LPoly(nR, rterms)))
    return out


# -- graded bases -------------------------------------------------------------


def _int_lower(thr, strict):
    f = math.floor(thr)
    if QQ(f) == thr:
        return f + 1 if strict else f
    return f + 1


def _int_upper(thr, strict):
    c = math.ceil(thr)
    if QQ(c) == thr:
        return c - 1 if strict else c
    return c - 1


def window_box(datum, side, n, window):
    """Per-color exponent bounds implied by the single-variable slope tests;
    None bounds mean unconstrained."""
    ncol = datum.ncolors
    lo = [None] * ncol
    hi = [None] * ncol
    for i in range(ncol):
        if not n[i]:
            continue
        e_i = tuple(1 if k == i else 0 for k in range(ncol))
        nm = tuple(a - b for a, b in zip(n, e_i))
        if side == PLUS:
            if window.lo is not None:
                thr = window.lo[i] - datum.euler(nm, e_i)
                lo[i] = _int_lower(thr, window.lo_strict)
            if window.hi is not None:
                thr = window.hi[i] + datum.euler(e_i, nm)
                hi[i] = _int_upper(thr, window.hi_strict)
        else:
            if window.hi is not None:
                thr = -window.hi[i] - datum.euler(nm, e_i)
                lo[i] = _int_lower(thr, window.hi_strict)
            if window.lo is not None:
                thr = -window.lo[i] + datum.euler(e_i, nm)
                hi[i] = _int_upper(thr, window.lo_strict)
    return lo, hi


def orbit_monomials(n, d, lo, hi):
    """Canonical color-symmetric monomial basis: per color a sorted multiset
    of exponents inside the box, total degree d."""
    percolor = []
    for ci, cnt in enumerate(n):
        if cnt == 0:
            percolor.append([()])
            continue
        opts = [tuple(sorted(c, reverse=True))
                for c in itertools.combinations_with_replacement(
                    range(hi[ci], lo[ci] - 1, -1), cnt)]
        percolor.append(sorted(set(opts), reverse=True))
    out = []
    for combo in itertools.product(*percolor):
        if sum(sum(c) for c in combo) == d:
            out.append(combo)
    return out


def orbit_poly(n, combo):
    """Orbit sum (coefficient 1 on each distinct permutation image)."""
    N = nvars_of(n)
    terms = {}
    per = []
    for ci, cnt in enumerate(n):
        per.append(sorted(set(itertools.permutations(combo[ci]))))
    for pieces in itertools.product(*per):
        k = tuple(e for piece in pieces for e in piece)
        terms[k] = RATQ_ONE
    return LPoly(N, terms)


def basis_window(datum, side, n, d, window, use_wheel=None):
    """Basis of the graded (n, d) piece of the slope-window subalgebra.

    For quantum-affine presets the ambient space is cut out by wheel
    conditions; otherwise membership uses the stabilized word span."""
    n = tuple(n)
    key = ("basis_window", side, n, d, window.key())
    if key in datum.cache:
        return datum.cache[key]
    if not any(n):
        out = [ShuffleElement.unit(datum, side)] if d == 0 else []
        datum.cache[key] = out
        return out
    if use_wheel is None:
        use_wheel = datum.is_preset()
    lo, hi = window_box(datum, side, n, window)
    for ci in range(datum.ncolors):
        if not n[ci]:
            continue
        if lo[ci] is None and hi[ci] is None:
            raise DatumError("unbounded window: need a finite slope bound")
    lo, hi = _complete_box(n, d, lo, hi)
    combos = orbit_monomials(n, d, lo, hi)
    if not combos:
        datum.cache[key] = []
        return []
    polys = [orbit_poly(n, cb) for cb in combos]
    rows = _slope_rows(datum, side, n, polys, window)
    if use_wheel:
        rows.extend(_wheel_rows(datum, n, polys))
    vecs = kernel_basis(rows, len(polys)) if rows else \
        [[RATQ_ONE if i == j else RATQ_ZERO for j in range(len(polys))]
         for i in range(len(polys))]
    basis = [_combine(datum, side, n, polys, v) for v in vecs]
    if not use_wheel:
        # intersect the cut-out space with the stabilized word span
        span = word_span(datum, side, n, d)
        combos2 = span.intersection([el.poly for el in basis])
        new_basis = []
        for vec in combos2:
            acc = LPoly.zero(nvars_of(n))
            for c, el in zip(vec, basis):
                if c:
                    acc.addmul(el.poly, c)
            if acc:
                new_basis.append(ShuffleElement(datum, side, n, acc))
        basis = new_basis
    datum.cache[key] = basis
    return basis


def _complete_box(n, d, lo, hi):
    lo, hi = list(lo), list(hi)
    active = [ci for ci, c in enumerate(n) if c]
    for ci in active:
        if lo[ci] is None:
            rest = sum(hi[cj] * n[cj] for cj in active if cj != ci)
            rest += hi[ci] * (n[ci] - 1)
            lo[ci] = d - rest
        if hi[ci] is None:
            rest = sum(lo[cj] * n[cj] for cj in active if cj != ci)
            rest += lo[ci] * (n[ci] - 1)
            hi[ci] = d - rest
    for ci in active:
        if lo[ci] > hi[ci]:
            hi[ci] = lo[ci] - 1  # empty box
    return lo, hi


def _slope_rows(datum, side, n, polys, window):
    """Linear conditions killing scaled-degree-violating homogeneous parts."""
    rows = []
    sgn = 1 if side == PLUS else -1
    offs = offsets_of(n)
    for m in _sub_degrees(n):
        nm = tuple(a - b for a, b in zip(n, m))
        scaled = []
        for ci, cnt in enumerate(m):
            for a in range(cnt):
                scaled.append(offs[ci] + a)
        conds = []
        if side == PLUS:
            if window.lo is not None:
                thr = sum(p * c for p, c in zip(window.lo, m)) * sgn \
                    - datum.euler(nm, m)
                conds.append(("lt", thr, window.lo_strict))
            if window.hi is not None:
                thr = sum(p * c for p, c in zip(window.hi, m)) * sgn \
                    + datum.euler(m, nm)
                conds.append(("gt", thr, window.hi_strict))
        else:
            if window.hi is not None:
                thr = sum(p * c for p, c in zip(window.hi, m)) * sgn \
                    - datum.euler(nm, m)
                conds.append(("lt", thr, window.hi_strict))
            if window.lo is not None:
                thr = sum(p * c for p, c in zip(window.lo, m)) * sgn \
                    + datum.euler(m, nm)
                conds.append(("gt", thr, window.lo_strict))
        for op, thr, strict in conds:
            # collect, per violating scaled degree + monomial, one row
            seen = {}
            for col, poly in enumerate(polys):
                for k, c in poly.terms.items():
                    s = sum(k[v] for v in scaled)
                    bad = (QQ(s) < thr or (strict and QQ(s) == thr)) \
                        if op == "lt" else \
                        (QQ(s) > thr or (strict and QQ(s) == thr))
                    if bad:
                        seen.setdefault(k, {})[col] = c
            for k in sorted(seen):
                row = [seen[k].get(col, RatQ.from_rational(0))
                       for col in range(len(polys))]
                rows.append(row)
    return rows


def _wheel_rows(datum, n, polys):
    rows = []
    spec_lists = [list(_wheel_specializations(datum, n, poly))
                  for poly in polys]
    if not spec_lists or not spec_lists[0]:
        return rows
    nspec = len(spec_lists[0])
    for s in range(nspec):
        seen = {}
        for col, spec in enumerate(spec_lists):
            for k, c in spec[s].terms.items():
                seen.setdefault(k, {})[col] = c
        for k in sorted(seen):
            rows.append([seen[k].get(col, RatQ.from_rational(0))
                         for col in range(len(polys))])
    return rows


def _combine(datum, side, n, polys, vec):
    acc = LPoly.zero(nvars_of(n))
    for c, p in zip(vec, polys):
        if c:
            acc.addmul(p, c)
    return ShuffleElement(datum, side, n, acc)


def graded_dim(datum, side, n, d, window):
    return len(basis_window(datum, side, n, d, window))


# -- word spans -----------------------------------------------------------------


WORD_WINDOW_CAP = 30


class WordSpan:
    """Lazily grown span of word images in one graded piece, able to expand
    members of the algebra as word combinations.

    The graded piece itself is infinite-dimensional; only results are
    certified: a successful expansion is exact, and intersection dimensions
    are accepted after two consecutive window widenings agree."""

    def __init__(self, datum, side, n, d):
        self.datum = datum
        self.side = side
        self.n = tuple(n)
        self.d = d
        self.words = []
        self.images = []
        self._seen = set()
        self._monomials = {}
        self._matrix = []   # echelon rows over monomial coordinates
        self._pivots = []
        self._combos = []   # word combination producing each echelon row
        self.dim = 0
        k = nvars_of(self.n)
        if k:
            center = self.d // k
            w = max(2, abs(self.d) + 2)
            self._lo, self._hi = center - w, center + w
            self._extend(self._lo, self._hi)
        else:
            self._lo = self._hi = 0
            self.dim = 1 if d == 0 else 0

    def widen(self):
        if self._hi - self._lo > 2 * WORD_WINDOW_CAP:
            return False
        self._lo -= 1
        self._hi += 1
        self._extend(self._lo, self._hi)
        return True

    def _extend(self, lo, hi):
        for word in words_for(self.n, self.d, lo, hi):
            if word in self._seen:
                continue
            self._seen.add(word)
            img = eword_to_shuffle(self.datum, self.side, word)
            self._insert(word, img)

    def _mono_index(self, key):
        if key not in self._monomials:
            self._monomials[key] = len(self._monomials)
        return self._monomials[key]

    def _vector(self, poly):
        vec = {}
        for k, c in poly.terms.items():
            vec[self._mono_index(k)] = c
        return vec

    def _insert(self, word, img):
        self.words.append(word)
        self.images.append(img)
        if img.is_zero():
            return
        vec = self._vector(img.poly)
        combo = {word: RATQ_ONE}
        # reduce against existing rows
        for row, piv, cmb in zip(self._matrix, self._pivots, self._combos):
            c = vec.get(piv)
            if c:
                for idx, rc in row.items():
                    old = vec.get(idx)
                    nv = (old - c * rc) if old is not None else -c * rc
                    if nv:
                        vec[idx] = nv
                    else:
                        vec.pop(idx, None)
                for wname, rc in cmb.items():
                    old = combo.get(wname)
                    nv = (old - c * rc) if old is not None else -c * rc
                    if nv:
                        combo[wname] = nv
                    else:
                        combo.pop(wname, None)
        if not vec:
            return
        piv = min(vec)
        inv = vec[piv].inv()
        vec = {idx: c * inv for idx, c in vec.items()}
        combo = {wname: c * inv for wname, c in combo.items()}
        self._matrix.append(vec)
        self._pivots.append(piv)
        self._combos.append(combo)
        self.dim += 1

    def _reduce(self, poly):
        vec = self._vector(poly)
        combo = {}
        for row, piv, cmb in zip(self._matrix, self._pivots, self._combos):
            c = vec.get(piv)
            if c:
                for idx, rc in row.items():
                    old = vec.get(idx)
                    nv = (old - c * rc) if old is not None else -c * rc
                    if nv:
                        vec[idx] = nv
                    else:
                        vec.pop(idx, None)
                for wname, rc in cmb.items():
                    old = combo.get(wname)
                    nv = (old + c * rc) if old is not None else c * rc
                    if nv:
                        combo[wname] = nv
                    else:
                        combo.pop(wname, None)
        return vec, combo

    def express(self, poly):
        """Word combination with image equal to poly, or None if the element
        cannot be certified inside the window cap."""
        if poly.is_zero():
            return []
        while True:
            vec, combo = self._reduce(poly)
            if not vec:
                return sorted(combo.items())
            if not self.widen():
                return None

    def intersection(self, polys):
        """Coefficient vectors c with sum c_k polys_k inside the span,
        certified by two stable widenings."""
        stable = 0
        prev = None
        while True:
            residuals = [self._reduce(p)[0] for p in polys]
            cols = sorted({idx for r in residuals for idx in r})
            mat = [[r.get(c, RATQ_ZERO) for r in residuals] for c in cols]
            vecs = kernel_basis(mat, len(polys)) if mat else \
                [[RATQ_ONE if i == j else RATQ_ZERO for j in range(len(polys))]
                 for i in range(len(polys))]
            if prev is not None and len(vecs) == prev:
                stable += 1
                if stable >= 2:
                    return vecs
            else:
                stable = 0
            prev = len(vecs)
            if not self.widen():
                raise ArithmeticError("basis not certified: word span window "
                                      "cap reached")


def word_span(datum, side, n, d):
    key = ("word_span", side, tuple(n), d)
    if key not in datum.cache:
        datum.cache[key] = WordSpan(datum, side, n, d)
    return datum.cache[key]


def as_words(E, d=None):
    """Certified word decomposition of a homogeneous shuffle element."""
    if E.is_zero():
        return []
    d = E.vdeg() if d is None else d
    span = word_span(E.datum, E.side, E.n, d)
    combo = span.express(E.poly)
    if combo is None:
        raise ArithmeticError("element not resolved in the stabilized "
                              "word span (not certified)")
    return [(c, w) for w, c in combo]
