"""The quantum loop algebra at the level of generator words.

Elements are sums of normal-ordered terms (e-word) * (Cartan monomial) *
(f-word).  Cartan monomials are written in the coordinates kappa^{+-}
(group-like, with formal inverses) and p_{i,+-d} (primitive), which makes
coproducts, counits and pairings of the loop Cartan explicit.  All
reordering rules are finite and exact: moving Cartan generators past e/f
letters produces mode shifts weighted by the log-series coefficients of
the zeta ratios, and the e-f commutator inserts a single phi mode.
"""

from __future__ import annotations

import itertools

from .scalars import QQ, RATQ_ONE, RATQ_ZERO, RatQ

# Cartan keys: (kplus, kminus, pplus, pminus); kappa exponents are integer
# vectors, p parts are sorted tuples of (color, d) with multiplicity.

def ckey_one(ncol):
    z = (0,) * ncol
    return (z, z, (), ())


def ckey_mul(a, b):
    return (tuple(x + y for x, y in zip(a[0], b[0])),
            tuple(x + y for x, y in zip(a[1], b[1])),
            tuple(sorted(a[2] + b[2])),
            tuple(sorted(a[3] + b[3])))


def ckey_kappa(ncol, i, power=1, minus=False):
    z = [0] * ncol
    z[i] = power
    z = tuple(z)
    zero = (0,) * ncol
    return (zero, z, (), ()) if minus else (z, zero, (), ())


def ckey_is_one(key):
    return (not any(key[0]) and not any(key[1]) and not key[2]
            and not key[3])


def ckey_vdeg(key):
    return sum(d for (_i, d) in key[2]) - sum(d for (_i, d) in key[3])


def ckey_eps(key):
    """Counit: kills p parts, sends every kappa to 1."""
    return RATQ_ONE if not key[2] and not key[3] else RATQ_ZERO


class CartanElt(dict):
    """Finite K-linear combination of Cartan keys."""

    @staticmethod
    def one(ncol):
        return CartanElt({ckey_one(ncol): RATQ_ONE})

    @staticmethod
    def from_key(key, coeff=RATQ_ONE):
        return CartanElt({key: coeff} if coeff else {})

    def add_term(self, key, coeff):
        old = self.get(key)
        if old is None:
            if coeff:
                self[key] = coeff
        else:
            old = old + coeff
            if old:
                self[key] = old
            else:
                del self[key]

    def mul(self, other):
        out = CartanElt()
        for ka, ca in self.items():
            for kb, cb in other.items():
                out.add_term(ckey_mul(ka, kb), ca * cb)
        return out

    def scale(self, c):
        return CartanElt({k: v * c for k, v in self.items()}) if c \
            else CartanElt()


def phi_mode(datum, i, d, minus=False):
    """phi^{+-}_{i,d} as a CartanElt: kappa_i times the complete-homogeneous
    polynomial of degree d in the power modes p_{i,+-k}."""
    key = ("phi_mode", i, d, minus)
    if key in datum.cache:
        return datum.cache[key]
    ncol = datum.ncolors
    # h_0 = 1, d*h_d = sum_{k=1}^{d} p_k h_{d-k}
    hs = [CartanElt.one(ncol)]
    for dd in range(1, d + 1):
        acc = CartanElt()
        for k in range(1, dd + 1):
            pk = _p_key(ncol, i, k, minus)
            for kk, cc in hs[dd - k].items():
                acc.add_term(ckey_mul(pk, kk), cc)
        inv = RatQ.from_rational(QQ(1, dd))
        hs.append(CartanElt({k: c * inv for k, c in acc.items()}))
    kap = ckey_kappa(ncol, i, 1, minus)
    out = CartanElt()
    for kk, cc in hs[d].items():
        out.add_term(ckey_mul(kap, kk), cc)
    datum.cache[key] = out
    return out


def _p_key(ncol, i, d, minus):
    zero = (0,) * ncol
    if minus:
        return (zero, zero, (), ((i, d),))
    return (zero, zero, ((i, d),), ())


def cartan_pair(datum, a_key, b_key):
    """Pairing of a plus-side Cartan key with a minus-side one."""
    if a_key[1] != (0,) * datum.ncolors or a_key[3]:
        raise ValueError("first slot must be a plus-side Cartan monomial")
    if b_key[0] != (0,) * datum.ncolors or b_key[2]:
        raise ValueError("second slot must be a minus-side Cartan monomial")
    kp, pp = a_key[0], a_key[2]
    km, pm = b_key[1], b_key[3]
    out = datum.gamma(kp, km)
    if len(pp) != len(pm):
        return RATQ_ZERO
    if not pp:
        return out
    val = _p_matching(datum, pp, pm)
    return out * val


def _p_matching(datum, pp, pm):
    key = ("p_matching", pp, pm)
    if key in datum.cache:
        return datum.cache[key]
    if not pp:
        val = RATQ_ONE if not pm else RATQ_ZERO
    else:
        (i, d) = pp[0]
        rest = pp[1:]
        val = RATQ_ZERO
        seen = set()
        for t, (j, e) in enumerate(pm):
            if (j, e) in seen:
                continue
            seen.add((j, e))
            if e != d:
                continue
            sub = pm[:t] + pm[t + 1:]
            mult = pm.count((j, e))
            val = val + datum.p_pairing(i, j, d) * mult * \
                _p_matching(datum, rest, sub)
    datum.cache[key] = val
    return val


def ckey_delta(key):
    """Coproduct components of a Cartan key: kappa group-like, p primitive.
    Yields (coeff, left_key, right_key)."""
    kp, km, pp, pm = key
    plus_splits = _multiset_splits(pp)
    minus_splits = _multiset_splits(pm)
    for (l1, r1, c1) in plus_splits:
        for (l2, r2, c2) in minus_splits:
            yield (c1 * c2, (kp, km, l1, l2), (kp, km, r1, r2))


def _multiset_splits(ms):
    """All splits of a sorted multiset with multinomial multiplicities."""
    items = sorted(set(ms))
    counts = [ms.count(x) for x in items]
    out = []
    for choice in itertools.product(*[range(c + 1) for c in counts]):
        left, right = [], []
        mult = 1
        for x, c, k in zip(items, counts, choice):
            left.extend([x] * k)
            right.extend([x] * (c - k))
            mult *= _comb(c, k)
        out.append((tuple(left), tuple(right), mult))
    return out


def _comb(n, k):
    from math import comb
    return comb(n, k)


# -- U-element normal form --------------------------------------------------------

# a term is (eword, ckey, fword); elements are dicts term -> coeff


class UElt(dict):
    """Normal-ordered element of the quantum loop algebra."""

    @staticmethod
    def one(datum):
        return UElt({((), ckey_one(datum.ncolors), ()): RATQ_ONE})

    @staticmethod
    def from_eword(datum, word, coeff=RATQ_ONE):
        return UElt({(tuple(word), ckey_one(datum.ncolors), ()): coeff})

    @staticmethod
    def from_fword(datum, word, coeff=RATQ_ONE):
        return UElt({((), ckey_one(datum.ncolors), tuple(word)): coeff})

    @staticmethod
    def from_cartan(cart, coeff=RATQ_ONE):
        out = UElt()
        for k, c in cart.items():
            out.add_term(((), k, ()), c * coeff)
        return out

    def add_term(self, term, coeff):
        old = self.get(term)
        if old is None:
            if coeff:
                self[term] = coeff
        else:
            old = old + coeff
            if old:
                self[term] = old
            else:
                del self[term]

    def add_elt(self, other, coeff=None):
        for t, c in other.items():
            self.add_term(t, c * coeff if coeff is not None else c)
        return self

    def scale(self, c):
        out = UElt()
        for t, cc in self.items():
            out.add_term(t, cc * c)
        return out


def uterm_degree(ncol, term):
    eword, ckey, fword = term
    h = [0] * ncol
    v = 0
    for (i, d) in eword:
        h[i] += 1
        v += d
    for (i, d) in fword:
        h[i] -= 1
        v += d
    v += ckey_vdeg(ckey)
    return tuple(h), v


def u_degree_split(datum, elt):
    out = {}
    for term, c in elt.items():
        deg = uterm_degree(datum.ncolors, term)
        out.setdefault(deg, UElt()).add_term(term, c)
    return out


def u_mul(datum, a, b):
    """Product of two normal-ordered elements."""
    out = UElt()
    for ta, ca in a.items():
        for tb, cb in b.items():
            prod = _mul_terms(datum, ta, tb)
            out.add_elt(prod, ca * cb)
    return out


def _mul_terms(datum, ta, tb):
    key = ("u_mul_terms", ta, tb)
    if key in datum.cache:
        return datum.cache[key]
    ew1, c1, fw1 = ta
    ew2, c2, fw2 = tb
    items = [("e", i, d) for (i, d) in ew1] + [("C", c1)] + \
        [("f", i, d) for (i, d) in fw1] + \
        [("e", i, d) for (i, d) in ew2] + [("C", c2)] + \
        [("f", i, d) for (i, d) in fw2]
    val = normal_form(datum, items)
    datum.cache[key] = val
    return val


def normal_form(datum, items, coeff=RATQ_ONE):
    """Normal-order a product of letters ('e', i, d), ('f', i, d) and
    ('C', CartanElt-or-key)."""
    # state: list of items; rewrite leftmost violation
    out = UElt()
    stack = [(list(items), coeff)]
    while stack:
        seq, c = stack.pop()
        idx = _first_violation(seq)
        if idx is None:
            term = _collect(datum, seq)
            for t2, c2 in term.items():
                out.add_term(t2, c2 * c)
            continue
        a, b = seq[idx], seq[idx + 1]
        for (repl, c2) in _rewrite(datum, a, b):
            stack.append((seq[:idx] + repl + seq[idx + 2:], c * c2))
    return out


def _rank(item):
    return {"e": 0, "C": 1, "f": 2}[item[0]]


def _first_violation(seq):
    for k in range(len(seq) - 1):
        if _rank(seq[k]) > _rank(seq[k + 1]):
            return k
    return None


def _collect(datum, seq):
    """Collect an already-ordered sequence into a UElt."""
    eword, fword = [], []
    cart = CartanElt.one(datum.ncolors)
    for item in seq:
        if item[0] == "e":
            eword.append((item[1], item[2]))
        elif item[0] == "f":
            fword.append((item[1], item[2]))
        else:
            other = item[1] if isinstance(item[1], CartanElt) else \
                CartanElt.from_key(item[1])
            cart = cart.mul(other)
    out = UElt()
    for kk, cc in cart.items():
        out.add_term((tuple(eword), kk, tuple(fword)), cc)
    return out


def _rewrite(datum, a, b):
    """Rewrite a*b (a of higher rank) as a sum of sequences."""
    if a[0] == "C" and b[0] == "e":
        return _cartan_past_e(datum, a[1], b[1], b[2])
    if a[0] == "f" and b[0] == "C":
        return _f_past_cartan(datum, a[1], a[2], b[1])
    if a[0] == "f" and b[0] == "e":
        return _f_past_e(datum, a[1], a[2], b[1], b[2])
    raise AssertionError("unexpected rewrite")


def _as_cartan(c):
    return c if isinstance(c, CartanElt) else CartanElt.from_key(c)


def _cartan_past_e(datum, cart, j, c):
    """C * e_{j,c} -> sum e_{j,c+s} * C'."""
    out = []
    cart = _as_cartan(cart)
    for key, coeff in cart.items():
        kp, km, pp, pm = key
        e_j = _unit_vec(datum.ncolors, j)
        scal = coeff * datum.gamma(kp, e_j) * datum.gamma(e_j, km).inv()
        for (ppl, shift1, c1) in _p_moves(datum, pp, j, plus=True):
            for (pml, shift2, c2) in _p_moves(datum, pm, j, plus=False):
                newkey = (kp, km, ppl, pml)
                out.append(([("e", j, c + shift1 + shift2),
                             ("C", newkey)], scal * c1 * c2))
    return out


def _f_past_cartan(datum, j, c, cart):
    """f_{j,c} * C -> sum C' * f_{j,c+s}."""
    out = []
    cart = _as_cartan(cart)
    for key, coeff in cart.items():
        kp, km, pp, pm = key
        e_j = _unit_vec(datum.ncolors, j)
        scal = coeff * datum.gamma(kp, e_j) * datum.gamma(e_j, km).inv()
        for (ppl, shift1, c1) in _p_moves(datum, pp, j, plus=True):
            for (pml, shift2, c2) in _p_moves(datum, pm, j, plus=False):
                newkey = (kp, km, ppl, pml)
                out.append(([("C", newkey),
                             ("f", j, c + shift1 + shift2)], scal * c1 * c2))
    return out


def _p_moves(datum, pmods, j, plus):
    """Ways to move a p-multiset past a color-j letter: each generator either
    survives or converts into a mode shift with its log-series weight.

    Yields (surviving multiset, total shift, coefficient)."""
    items = sorted(set(pmods))
    counts = [pmods.count(x) for x in items]
    out = []
    for choice in itertools.product(*[range(c + 1) for c in counts]):
        survive = []
        shift = 0
        coeff = RATQ_ONE
        for (x, ctot, k) in zip(items, counts, choice):
            (i, d) = x
            conv = ctot - k
            survive.extend([x] * k)
            if conv:
                if plus:
                    w = datum.p_pairing(i, j, d) / d
                    shift += d * conv
                else:
                    w = datum.p_pairing_zero(i, j, d) / d
                    shift -= d * conv
                coeff = coeff * (w ** conv) * _comb(ctot, k)
        out.append((tuple(survive), shift, coeff))
    return out


def _f_past_e(datum, jf, cf, je, ce):
    """f_{jf,cf} e_{je,ce} = e f - delta (phi^-  - phi^+) insertion."""
    out = [([("e", je, ce), ("f", jf, cf)], RATQ_ONE)]
    if jf == je:
        s = ce + cf
        if s >= 0:
            out.append(([("C", _phi_item(datum, je, s, minus=False))],
                        RATQ_ONE))
        if s <= 0:
            out.append(([("C", _phi_item(datum, jf, -s, minus=True))],
                        -RATQ_ONE))
    return out


def _phi_item(datum, i, d, minus):
    return phi_mode(datum, i, d, minus)


def _unit_vec(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def u_eps(datum, elt):
    acc = RATQ_ZERO
    for (eword, ckey, fword), c in elt.items():
        if eword or fword:
            continue
        acc = acc + c * ckey_eps(ckey)
    return acc


# -- word-level coproduct ------------------------------------------------------

def delta_term_components(datum, term, left_h, left_v):
    """Components of the Drinfeld coproduct of a normal-ordered term whose
    left factor sits in the requested bidegree.

    Returns a list of (coeff, left_term, right_term); exact and finite."""
    key = ("delta_term", term, tuple(left_h), left_v)
    if key in datum.cache:
        return datum.cache[key]
    ncol = datum.ncolors
    eword, ckey, fword = term
    letters = [("e", i, d) for (i, d) in eword] + [("k", ckey)] + \
        [("f", i, d) for (i, d) in fword]
    # suffix bounds for pruning: min possible left vdeg and per-color
    # [min, max] left hdeg contributions of the remaining letters
    n_let = len(letters)
    suf_vmin = [0] * (n_let + 1)
    suf_hmin = [[0] * ncol for _ in range(n_let + 1)]
    suf_hmax = [[0] * ncol for _ in range(n_let + 1)]
    for k in range(n_let - 1, -1, -1):
        let = letters[k]
        if let[0] == "e":
            vopts_min = min(let[2], 0)
            hlo = [0] * ncol
            hhi = [0] * ncol
            hhi[let[1]] = 1
        elif let[0] == "f":
            vopts_min = min(0, let[2])
            hlo = [0] * ncol
            hlo[let[1]] = -1
            hhi = [0] * ncol
        else:
            vmin = 0
            for (_i, dd) in let[1][3]:
                vmin -= dd
            vopts_min = vmin
            hlo = [0] * ncol
            hhi = [0] * ncol
        suf_vmin[k] = suf_vmin[k + 1] + vopts_min
        for c in range(ncol):
            suf_hmin[k][c] = suf_hmin[k + 1][c] + hlo[c]
            suf_hmax[k][c] = suf_hmax[k + 1][c] + hhi[c]

    results = []

    def rec(k, acc_h, acc_v, coeff, litems, ritems):
        if k == n_let:
            if acc_v == left_v and tuple(acc_h) == tuple(left_h):
                results.append((coeff, list(litems), list(ritems)))
            return
        # prune
        for c in range(ncol):
            lo = acc_h[c] + suf_hmin[k][c]
            hi = acc_h[c] + suf_hmax[k][c]
            if not (lo <= left_h[c] <= hi):
                return
        if acc_v + suf_vmin[k] > left_v:
            return
        let = letters[k]
        if let[0] == "e":
            i, d = let[1], let[2]
            # left branch: e goes left
            acc_h[i] += 1
            rec(k + 1, acc_h, acc_v + d, coeff,
                litems + [("e", i, d)], ritems)
            acc_h[i] -= 1
            # right branch: phi_t left, e_{d-t} right
            tmax = left_v - acc_v - suf_vmin[k + 1]
            for t in range(0, tmax + 1):
                rec(k + 1, acc_h, acc_v + t, coeff,
                    litems + [("C", phi_mode(datum, i, t, minus=False))],
                    ritems + [("e", i, d - t)])
        elif let[0] == "f":
            j, e = let[1], let[2]
            # right branch: f goes right
            rec(k + 1, acc_h, acc_v, coeff, litems,
                ritems + [("f", j, e)])
            # left branch: f_{e+t} left, phi^-_t right
            tmax = left_v - acc_v - suf_vmin[k + 1] - e
            acc_h[j] -= 1
            for t in range(0, tmax + 1):
                rec(k + 1, acc_h, acc_v + e + t, coeff,
                    litems + [("f", j, e + t)],
                    ritems + [("C", phi_mode(datum, j, t, minus=True))])
            acc_h[j] += 1
        else:
            for (cc, lkey, rkey) in ckey_delta(let[1]):
                rec(k + 1, acc_h, acc_v + ckey_vdeg(lkey), coeff * cc,
                    litems + [("C", CartanElt.from_key(lkey))],
                    ritems + [("C", CartanElt.from_key(rkey))])

    rec(0, [0] * ncol, 0, RATQ_ONE, [], [])

    out = []
    for coeff, litems, ritems in results:
        left = normal_form(datum, litems)
        right = normal_form(datum, ritems)
        for lt, lc in left.items():
            for rt, rc in right.items():
                out.append((coeff * lc * rc, lt, rt))
    datum.cache[key] = out
    return out


def delta_components(datum, elt, left_h, left_v):
    """Coproduct components of a UElt at a fixed left bidegree, as a dict
    (left_term, right_term) -> coeff."""
    out = {}
    for term, c in elt.items():
        for (cc, lt, rt) in delta_term_components(datum, term, left_h, left_v):
            k = (lt, rt)
            old = out.get(k)
            val = (old + c * cc) if old is not None else c * cc
            if val:
                out[k] = val
            elif old is not None:
                del out[k]
    return out


# -- extended pairing ----------------------------------------------------------


def _base_pair(datum, i):
    """<e_{i,c}, f_{i,-c}>, fixed by the normalizer convention."""
    return _normalizer_inv(datum, i)


def _normalizer_inv(datum, i):
    if datum.normalized and datum.normalizers:
        return datum.normalizers[i].inv()
    return RATQ_ONE


def pair_u_terms(datum, aterm, bterm):
    """Extended Hopf pairing of a plus-side term (e-word times plus Cartan)
    with a minus-side term (minus Cartan times f-word)."""
    key = ("pair_u", aterm, bterm)
    if key in datum.cache:
        return datum.cache[key]
    eword, ck, fw0 = aterm
    assert not fw0, "plus-side term cannot carry an f-part"
    ew0, ck2, fword = bterm
    assert not ew0, "minus-side term cannot carry an e-part"
    ncol = datum.ncolors
    if not eword:
        if fword:
            val = RATQ_ZERO
        else:
            val = cartan_pair(datum, ck, ck2)
        datum.cache[key] = val
        return val
    (i, d) = eword[0]
    rest = (eword[1:], ck, ())
    # <e_{i,d} * rest, b> = sum <e_{i,d}, b_2> <rest, b_1>
    tot_h, tot_v = uterm_degree(ncol, bterm)
    want_h = [0] * ncol
    want_h[i] = -1
    left_h = tuple(th - wh for th, wh in zip(tot_h, want_h))
    left_v = tot_v + d
    acc = RATQ_ZERO
    for (cc, lt, rt) in delta_term_components(datum, bterm, left_h, left_v):
        # rt must be a single f letter with Cartan dressing
        ewr, ckr, fwr = rt
        if ewr or len(fwr) != 1:
            continue
        (j, e) = fwr[0]
        if j != i or d + e < 0:
            continue
        phi = phi_mode(datum, i, d + e, minus=False)
        inner = RATQ_ZERO
        for pk, pc in phi.items():
            inner = inner + pc * cartan_pair(datum, pk, ckr)
        if not inner:
            continue
        inner = inner * _base_pair(datum, i)
        sub = pair_u_terms(datum, rest, lt)
        acc = acc + cc * inner * sub
    datum.cache[key] = acc
    return acc


def pair_u(datum, a, b):
    acc = RATQ_ZERO
    for ta, ca in a.items():
        for tb, cb in b.items():
            if not ca or not cb:
                continue
            da = uterm_degree(datum.ncolors, ta)
            db = uterm_degree(datum.ncolors, tb)
            if any(x + y for x, y in zip(da[0], db[0])) or da[1] + db[1]:
                continue
            acc = acc + ca * cb * pair_u_terms(datum, ta, tb)
    return acc
