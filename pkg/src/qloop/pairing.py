"""Bilinear pairings between the two shuffle halves.

All pairings reduce to exact constant terms of rational expressions in
explicit magnitude regimes:

* the word/shuffle pairing integrates over a descending (or ascending)
  chain of variable magnitudes;
* the residue formula for quantum-affine presets specializes variables
  onto geometric q-strings and integrates the survivors over equal radii;
* the twisted functionals insert a loop weight and anchor all variables
  above (or split around) unit scale, which is how antipode-twisted
  quantities are evaluated without an antipode formula.
"""

from __future__ import annotations

import itertools

from .engine import Regime, constant_term
from .lpoly import LPoly
from .rexpr import GenericityError, RExpr, radius_integrate, residue
from .scalars import RATQ_ONE, RATQ_ZERO, RatQ
from .shuffle import (MINUS, PLUS, ShuffleElement, as_words, nvars_of,
                      offsets_of)
from .urat import URat
from .zetadata import DatumError


def word_degree(datum, word):
    n = [0] * datum.ncolors
    d = 0
    for (i, e) in word:
        n[i] += 1
        d += e
    return tuple(n), d


def _word_var_map(datum, word, n):
    """Position a of the word <-> variable slot of color i_a (the slot order
    follows first occurrence, matching the relabeling convention)."""
    offs = offsets_of(n)
    used = [0] * datum.ncolors
    out = []
    for (i, _e) in word:
        out.append(offs[i] + used[i])
        used[i] += 1
    return out


def _normalizer(datum, n):
    out = RATQ_ONE
    if datum.normalized and datum.normalizers:
        for i, cnt in enumerate(n):
            if cnt:
                out = out * datum.normalizers[i] ** cnt
    return out


def _chain_kernel(datum, colors, exps, opposite):
    """Constant term of z^exps / prod zeta factors along a magnitude chain.

    With opposite=False this is the descending-chain kernel of the e-word
    pairing (factors zeta_{i_b i_a}(z_b/z_a) for a < b); with opposite=True
    the ascending-chain kernel (factors zeta_{i_a i_b}(z_a/z_b))."""
    key = ("chain_kernel", colors, tuple(exps), opposite)
    if key in datum.cache:
        return datum.cache[key]
    k = len(colors)
    poly = LPoly.monomial(k, exps, RATQ_ONE)
    factors = []
    for a in range(k):
        for b in range(a + 1, k):
            mono = [0] * k
            if opposite:
                f = datum.zeta[colors[a], colors[b]].inv()
                mono[a], mono[b] = 1, -1
            else:
                f = datum.zeta[colors[b], colors[a]].inv()
                mono[b], mono[a] = 1, -1
            factors.append((f, tuple(mono)))
    if opposite:
        regime = Regime.chain_down(list(reversed(range(k))))
    else:
        regime = Regime.chain_down(list(range(k)))
    val = constant_term(k, poly, factors, regime)
    datum.cache[key] = val
    return val


def pair_word(datum, word, F):
    """<e-word, F> by the descending-chain constant term."""
    word = tuple(word)
    n, d = word_degree(datum, word)
    if F.side != MINUS or F.is_zero():
        if F.side != MINUS:
            raise ValueError("second argument must be a minus element")
        return RATQ_ZERO
    if tuple(n) != F.n:
        return RATQ_ZERO
    vmap = _word_var_map(datum, word, n)
    colors = tuple(i for (i, _e) in word)
    base = [e for (_i, e) in word]
    acc = RATQ_ZERO
    for mono, coeff in F.poly.terms.items():
        exps = list(base)
        for pos in range(len(word)):
            exps[pos] += mono[vmap[pos]]
        acc = acc + coeff * _chain_kernel(datum, colors, tuple(exps), False)
    return acc / _normalizer(datum, n)


def pair_fword(datum, E, word):
    """<E, f-word> by the ascending-chain constant term; E may be any
    Laurent polynomial in the variables of its degree."""
    word = tuple(word)
    n, d = word_degree(datum, word)
    if E.side != PLUS:
        raise ValueError("first argument must be a plus element")
    if tuple(n) != E.n or E.is_zero():
        return RATQ_ZERO
    vmap = _word_var_map(datum, word, n)
    colors = tuple(i for (i, _e) in word)
    base = [e for (_i, e) in word]
    acc = RATQ_ZERO
    for mono, coeff in E.poly.terms.items():
        exps = list(base)
        for pos in range(len(word)):
            exps[pos] += mono[vmap[pos]]
        acc = acc + coeff * _chain_kernel(datum, colors, tuple(exps), True)
    return acc / _normalizer(datum, n)


def pair(E, F):
    """Hopf pairing of shuffle halves; decomposes the minus side into
    f-words (certified) and integrates against the plus polynomial."""
    datum = E.datum
    assert E.side == PLUS and F.side == MINUS
    if E.is_zero() or F.is_zero():
        return RATQ_ZERO
    if E.n != F.n:
        return RATQ_ZERO
    acc = RATQ_ZERO
    for dE, partE in E.poly.homogeneous_parts().items():
        for dF, partF in F.poly.homogeneous_parts().items():
            if dE + dF != 0:
                continue
            Fh = ShuffleElement(datum, MINUS, F.n, partF)
            Eh = ShuffleElement(datum, PLUS, E.n, partE)
            for coeff, word in as_words(Fh, dF):
                acc = acc + coeff * pair_fword(datum, Eh, word)
    return acc


def pair_via_words(E, F):
    """Same pairing through the opposite route (decompose the plus side)."""
    datum = E.datum
    if E.is_zero() or F.is_zero() or E.n != F.n:
        return RATQ_ZERO
    acc = RATQ_ZERO
    for dE, partE in E.poly.homogeneous_parts().items():
        Eh = ShuffleElement(datum, PLUS, E.n, partE)
        for dF, partF in F.poly.homogeneous_parts().items():
            if dE + dF != 0:
                continue
            Fh = ShuffleElement(datum, MINUS, F.n, partF)
            for coeff, word in as_words(Eh, dE):
                acc = acc + coeff * pair_word(datum, word, Fh)
    return acc


# -- residue formula -------------------------------------------------------------


def _partitions_of(k):
    if k == 0:
        yield ()
        return
    def rec(rest, maxpart):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, maxpart), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail
    yield from rec(k, k)


def _zeta_mul_rexpr(datum, expr, i, j, u, v, power):
    """Multiply an RExpr by zeta_ij(z_u/z_v)**power for a preset datum."""
    cart = datum.cartan
    dij = cart[i][j]
    n = expr.nvars
    # zeta = -(z_u - q^{-dij} z_v)/z_v * (-z_u/z_v)^{-d>} * (z_v/(z_v-z_u))^{d=}
    expr = expr.mul_bin(u, RATQ_ONE, v, -RatQ.q_power(-dij), power)
    mono = [0] * n
    mono[v] -= power
    sign = -1 if power % 2 else 1
    scal = RATQ_ONE * sign
    if i > j:
        mono[u] -= power
        mono[v] += power
        scal = scal * sign
    if i == j:
        mono[v] += power
        expr = expr.mul_bin(v, RATQ_ONE, u, -RATQ_ONE, -power)
    return expr.mul_monomial(tuple(mono), scal)


def pair_residue(datum, E, F):
    """The pairing evaluated by the string-residue formula (presets only):
    sum over color-indexed partitions of iterated residues onto q-strings,
    then equal-radius contour integrals.

    Monomial kernels are cached and reused across pairs; when an
    equal-radius pole lands on the contour, the cancellation requires the
    wheel-condition zeros of the full product, so the computation falls
    back to the whole numerator at once."""
    if not datum.is_preset():
        raise DatumError("residue pairing needs a quantum-affine preset")
    if E.n != F.n or E.is_zero() or F.is_zero():
        return RATQ_ZERO
    n = E.n
    prod = E.poly * F.poly
    try:
        acc = RATQ_ZERO
        for mono, coeff in prod.terms.items():
            acc = acc + coeff * _residue_kernel(datum, n, mono)
    except GenericityError:
        acc = RATQ_ZERO
        per_color = [list(_partitions_of(c)) for c in n]
        for partition in itertools.product(*per_color):
            val = _residue_partition_value(datum, n, prod, partition)
            acc = acc + val / _partition_aut(partition)
    return acc / _normalizer(datum, n)


def _partition_aut(partition):
    aut = 1
    for parts in partition:
        for size in set(parts):
            aut *= _factorial(parts.count(size))
    return aut


def _residue_kernel(datum, n, mono):
    key = ("residue_kernel", n, tuple(mono))
    if key in datum.cache:
        return datum.cache[key]
    acc = RATQ_ZERO
    per_color = [list(_partitions_of(c)) for c in n]
    for partition in itertools.product(*per_color):
        val = _residue_partition_kernel(datum, n, tuple(mono), partition)
        # strings of equal size are interchangeable under the equal-radius
        # integral; divide by the automorphism count of the partition
        acc = acc + val / _partition_aut(partition)
    datum.cache[key] = acc
    return acc


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _residue_partition_kernel(datum, n, mono, partition):
    key = ("residue_pkernel", n, mono, partition)
    if key in datum.cache:
        return datum.cache[key]
    poly = LPoly.monomial(nvars_of(n), mono, RATQ_ONE)
    val = _residue_partition_value(datum, n, poly, partition)
    datum.cache[key] = val
    return val


def _residue_partition_value(datum, n, numerator, partition):
    offs = offsets_of(n)
    nz = nvars_of(n)
    strings = []  # (color, [variable slots]) in order
    for i, parts in enumerate(partition):
        at = offs[i]
        for size in parts:
            strings.append((i, list(range(at, at + size))))
            at += size
    nw = len(strings)
    N = nz + nw
    # each residued variable carries its own dz/(2 pi i z) measure factor
    shift = [0] * N
    for (_i, slots) in strings:
        for a in slots[:-1]:
            shift[a] -= 1
    big = numerator.map_exponents(lambda k: tuple(k) + (0,) * nw, N)
    expr = RExpr(N, big.shift_all(tuple(shift)))
    # 1 / prod_{(i,a) != (j,b)} zeta_ij(z_ia / z_jb)
    for i in range(datum.ncolors):
        for a in range(n[i]):
            u = offs[i] + a
            for j in range(datum.ncolors):
                for b in range(n[j]):
                    v = offs[j] + b
                    if u == v:
                        continue
                    expr = _zeta_mul_rexpr(datum, expr, i, j, u, v, -1)
    # iterated residues onto geometric strings
    terms = [expr]
    for s_idx, (i, slots) in enumerate(strings):
        qi = datum.cartan[i][i] // 2
        size = len(slots)
        for a in range(size - 2, -1, -1):
            # residue in slots[a] at q_i^2 * (current slots[a+1] position)
            scalar = RatQ.q_power(2 * qi * (size - 1 - a))
            new_terms = []
            for t in terms:
                new_terms.extend(residue(t, slots[a], slots[size - 1],
                                         scalar, simple_only=True))
            terms = new_terms
            if not terms:
                break
        # relabel the last string variable onto w = z_last * q_i^{size-1}
        w = nz + s_idx
        scalar = RatQ.q_power(qi * (1 - size))
        terms = [t.subs(slots[size - 1], w, scalar) for t in terms]
    return radius_integrate(terms, list(range(nz, N)))


# -- loop weights and twisted functionals -----------------------------------------


class LoopWeight:
    """I-tuple of nonzero rational functions psi_i(z); ord is the tuple of
    pole orders at zero (negative entries for zeros).

    Monomial weights z^-r are allowed even though they vanish at infinity;
    regularity there is a queryable property, not an invariant, so the
    graded monomial modules fit the same interface."""

    _counter = [0]

    def __init__(self, datum, components):
        self.datum = datum
        self.components = list(components)
        if len(self.components) != datum.ncolors:
            raise ValueError("one component per color required")
        for f in self.components:
            if f.is_zero():
                raise ValueError("loop weight components must be nonzero")
        self.ord = tuple(-f.val0() for f in self.components)
        LoopWeight._counter[0] += 1
        self.key = ("psi", LoopWeight._counter[0])

    @staticmethod
    def one(datum):
        return LoopWeight(datum, [URat({0: RATQ_ONE})
                                  for _ in range(datum.ncolors)])

    @staticmethod
    def monomial(datum, r):
        """psi_i = z^{-r_i}."""
        return LoopWeight(datum, [URat({-ri: RATQ_ONE}) for ri in r])

    def eigen0(self):
        """The finite weight psi_i(infinity) per color (may be zero for
        weights that vanish at infinity)."""
        return tuple(self.series_coeff(i, 0)
                     for i in range(len(self.components)))

    def series_coeff(self, i, d):
        """Coefficient psi_{i,d} of z^-d in the expansion at infinity."""
        f = self.components[i]
        lead = f.valInf()
        if -lead > d:
            return RATQ_ZERO
        _lead, coeffs = f.seriesInf(d + lead)
        return coeffs[d + lead]

    def is_unit_at_inf(self):
        return all(f.valInf() == 0 for f in self.components)

    def is_regular_nonzero(self):
        return self.is_unit_at_inf() and all(r == 0 for r in self.ord)

    def __repr__(self):
        return "LoopWeight(ord=%r)" % (self.ord,)


def twisted_functional(datum, word, psi, F):
    """<(e-word) psi, antipode of F> realized as the ascending chain
    integral anchored above unit scale."""
    word = tuple(word)
    n, d = word_degree(datum, word)
    if tuple(n) != F.n or F.is_zero():
        return RATQ_ZERO
    k = len(word)
    vmap = _word_var_map(datum, word, n)
    colors = tuple(i for (i, _e) in word)
    base = [e for (_i, e) in word]
    acc = RATQ_ZERO
    regime = Regime.chain_up_from_one(list(range(k)))
    for mono, coeff in F.poly.terms.items():
        exps = list(base)
        for pos in range(k):
            exps[pos] += mono[vmap[pos]]
        key = ("psi_kernel", psi.key, colors, tuple(exps))
        if key not in datum.cache:
            poly = LPoly.monomial(k, tuple(exps), RATQ_ONE)
            factors = _chain_factors(datum, colors, k) + \
                [(psi.components[colors[pos]], _unit(k, pos))
                 for pos in range(k)]
            datum.cache[key] = constant_term(k, poly, factors, regime)
        acc = acc + coeff * datum.cache[key]
    return acc * _normalizer(datum, n).inv()


def _unit(k, pos):
    out = [0] * k
    out[pos] = 1
    return tuple(out)


def _chain_factors(datum, colors, k):
    factors = []
    for a in range(k):
        for b in range(a + 1, k):
            mono = [0] * k
            mono[b], mono[a] = 1, -1
            factors.append((datum.zeta[colors[b], colors[a]].inv(),
                            tuple(mono)))
    return factors


def two_contour_functional(datum, word, psi, F):
    """The all-variables two-contour integral: alternating-sign sum over
    splittings of the variables into a block below and a block above unit
    scale."""
    word = tuple(word)
    n, d = word_degree(datum, word)
    if tuple(n) != F.n or F.is_zero():
        return RATQ_ZERO
    k = len(word)
    vmap = _word_var_map(datum, word, n)
    colors = tuple(i for (i, _e) in word)
    base = [e for (_i, e) in word]
    acc = RATQ_ZERO
    for mono, coeff in F.poly.terms.items():
        exps = list(base)
        for pos in range(k):
            exps[pos] += mono[vmap[pos]]
        key = ("tc_kernel", psi.key, colors, tuple(exps))
        if key not in datum.cache:
            datum.cache[key] = _two_contour_kernel(datum, colors,
                                                   tuple(exps), psi)
        acc = acc + coeff * datum.cache[key]
    return acc * _normalizer(datum, n).inv()


def _two_contour_kernel(datum, colors, exps, psi):
    k = len(colors)
    total = RATQ_ZERO
    poly = LPoly.monomial(k, exps, RATQ_ONE)
    base_factors = _chain_factors(datum, colors, k) + \
        [(psi.components[colors[pos]], _unit(k, pos)) for pos in range(k)]
    for small in itertools.chain.from_iterable(
            itertools.combinations(range(k), m) for m in range(k + 1)):
        small = list(small)
        large = [p for p in range(k) if p not in small]
        # regime: |z_{s_m}| << ... << |z_{s_1}| << 1 << |z_{b_1}| << ...
        regime = Regime.split(large, small)
        val = constant_term(k, poly, base_factors, regime)
        if len(small) % 2:
            total = total - val
        else:
            total = total + val
    return total


def shifted_functional(datum, word, psi, F):
    """Split-regime realization of the shifted-kernel functional; by the
    contour-splitting identity it coincides with the two-contour
    functional term by term."""
    return two_contour_functional(datum, word, psi, F)
