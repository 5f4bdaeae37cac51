"""Input data for a quantum loop algebra: colors and the zeta matrix.

A datum is a finite color set I together with rational functions
zeta_ij(x) whose denominators divide (1-x)^{delta_ij} and whose leading
and trailing exponents are compatible (the ratio zeta_ij(x)/zeta_ji(1/x)
has a finite nonzero limit at infinity).  Validation computes every
derived constant used downstream: the integers sharp_ij, the leading and
trailing coefficients, the Euler-type form, the conjugation scalars gamma,
and the two log-series of zeta-ratios that drive loop-Cartan pairings and
normal ordering.
"""

from __future__ import annotations

import json

from .scalars import QQ, RATQ_ONE, RATQ_ZERO, RatQ, parse_ratq, ratq
from .urat import URat


class DatumError(ValueError):
    pass


class DerivedConstants:
    __slots__ = ("sharp", "lead", "trail", "gamma_ss", "generic")

    def __init__(self, sharp, lead, trail, gamma_ss, generic):
        self.sharp = sharp
        self.lead = lead
        self.trail = trail
        self.gamma_ss = gamma_ss
        self.generic = generic


class AlgebraDatum:
    """Validated (I, zeta) datum plus derived constants and caches."""

    def __init__(self, colors, zeta, normalized=False, cartan=None,
                 normalizers=None, _skip_validate=False):
        self.colors = tuple(colors)
        self.index = {c: i for i, c in enumerate(self.colors)}
        self.zeta = dict(zeta)  # (i, j) color-index pair -> URat in x
        self.normalized = bool(normalized)
        self.cartan = cartan  # symmetric integer matrix d_ij for presets
        self.normalizers = normalizers  # color index -> RatQ, presets only
        self.cache = {}
        self.derived = None if _skip_validate else validate(self)

    @property
    def ncolors(self):
        return len(self.colors)

    def is_preset(self):
        return self.cartan is not None

    # -- derived data ----------------------------------------------------------

    def euler(self, m, n):
        """Bilinear form sum m_i n_j sharp_ij."""
        sharp = self.derived.sharp
        return sum(m[i] * n[j] * sharp[i, j]
                   for i in range(self.ncolors) for j in range(self.ncolors)
                   if m[i] and n[j] and sharp[i, j])

    def gamma(self, m, n):
        """Conjugation scalar, multiplicative in both arguments."""
        out = RATQ_ONE
        gss = self.derived.gamma_ss
        for i in range(self.ncolors):
            if not m[i]:
                continue
            for j in range(self.ncolors):
                if n[j]:
                    out = out * gss[i, j] ** (m[i] * n[j])
        return out

    def gamma_weight(self, n):
        """The weight gamma^n: color i component gamma_{e_i, n}."""
        return tuple(self.gamma(_unit_vec(self.ncolors, i), n)
                     for i in range(self.ncolors))

    def h_ratio(self, i, j):
        """zeta_ij(x) / zeta_ji(1/x) as a rational function of x."""
        key = ("h_ratio", i, j)
        if key not in self.cache:
            self.cache[key] = self.zeta[i, j] * self.zeta[j, i].subs_recip().inv()
        return self.cache[key]

    def p_pairing(self, i, j, d):
        """<p_{i,d}, p_{j,-d}> = d^2 [log(gamma^-1 zeta_ij(x)/zeta_ji(1/x))]
        at x^-d (expansion at infinity)."""
        key = ("p_pair", i, j, d)
        if key not in self.cache:
            coeffs = self._log_series(i, j, d, at_infinity=True)
            self.cache[key] = coeffs[d] * (d * d)
        return self.cache[key]

    def p_pairing_zero(self, i, j, d):
        """d^2 [log(gamma_{ji} zeta_ij(x)/zeta_ji(1/x))] at x^d (at zero)."""
        key = ("p_pair0", i, j, d)
        if key not in self.cache:
            coeffs = self._log_series(i, j, d, at_infinity=False)
            self.cache[key] = coeffs[d] * (d * d)
        return self.cache[key]

    def _log_series(self, i, j, order, at_infinity):
        h = self.h_ratio(i, j)
        if at_infinity:
            lead, coeffs = h.seriesInf(order)
            if lead != 0:
                raise DatumError("zeta ratio not finite nonzero at infinity")
            unit = self.derived.gamma_ss[i, j]
        else:
            val, coeffs = h.series0(order)
            if val != 0:
                raise DatumError("zeta ratio not finite nonzero at zero")
            unit = self.derived.gamma_ss[j, i].inv()
        u_inv = unit.inv()
        s = [c * u_inv for c in coeffs]
        if s[0] != RATQ_ONE:
            raise DatumError("inconsistent gamma normalization")
        # log(1 + t) with t = s - 1, exact to the requested order
        t = [RATQ_ZERO] + s[1:]
        out = [RATQ_ZERO] * (order + 1)
        power = [RATQ_ONE] + [RATQ_ZERO] * order
        sign = 1
        for k in range(1, order + 1):
            power = _series_mul(power, t, order)
            inv_k = RatQ.from_rational(QQ(sign, k))
            for m in range(order + 1):
                if power[m]:
                    out[m] = out[m] + power[m] * inv_k
            sign = -sign
        return out

    def kappa_pair_matrix(self):
        return {(i, j): self.derived.gamma_ss[i, j]
                for i in range(self.ncolors) for j in range(self.ncolors)}

    def p_pair_matrix(self, d):
        return {(i, j): self.p_pairing(i, j, d)
                for i in range(self.ncolors) for j in range(self.ncolors)}

    def normalizer(self, i):
        """Per-letter pairing normalizer (identity unless the datum asks
        for the quantum-affine convention)."""
        if not self.normalized or not self.normalizers:
            return RATQ_ONE
        return self.normalizers[i]

    def __repr__(self):
        return "AlgebraDatum(colors=%r%s)" % (
            list(self.colors), ", preset" if self.is_preset() else "")


def _unit_vec(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def _series_mul(a, b, order):
    out = [RATQ_ZERO] * (order + 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if i + j > order:
                break
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


def validate(datum):
    """Check the zeta datum and compute all derived constants."""
    n = datum.ncolors
    sharp, lead, trail = {}, {}, {}
    for i in range(n):
        for j in range(n):
            if (i, j) not in datum.zeta:
                raise DatumError("missing zeta entry (%d, %d)" % (i, j))
            z = datum.zeta[i, j]
            if z.is_zero():
                raise DatumError("zeta entry (%d, %d) is zero" % (i, j))
            delta = 1 if i == j else 0
            num, den = _split_one_minus_x(z, i, j)
            if len(den) > delta:
                raise DatumError(
                    "zeta_%d%d denominator exceeds (1-x)^%d" % (i, j, delta))
            e = len(den)
            # magnitude form uses the (x-1)^delta convention
            p = {k: c * ((-1) ** e) for k, c in num.items()}
            if e < delta:
                # multiply numerator by (1-x)^(delta-e) ... cannot happen
                # since delta <= 1 and e <= delta
                p = _mul_one_minus_x(p, delta - e)
                p = {k: c * (-1) ** (delta - e) for k, c in p.items()}
            hi, lo = max(p), min(p)
            sharp[i, j] = hi - delta
            lead[i, j] = p[hi]
            trail[i, j] = p[lo]
    for i in range(n):
        for j in range(n):
            if min(_magnitude_num(datum.zeta[i, j])) != -sharp[j, i]:
                raise DatumError(
                    "zeta_%d%d / zeta_%d%d(1/x) has no finite nonzero limit "
                    "at infinity" % (i, j, j, i))
    gamma_ss = {}
    for i in range(n):
        for j in range(n):
            sign = -1 if i == j else 1
            gamma_ss[i, j] = (lead[i, j] / trail[j, i]) * sign
    generic = _check_generic(gamma_ss, n)
    out = DerivedConstants(sharp, lead, trail, gamma_ss, generic)
    datum.derived = out
    return out


def _split_one_minus_x(z, i, j):
    """Normalize the denominator to a power of (1-x); returns the numerator
    dict and the number of (1-x) factors."""
    den = dict(z.den)
    num = dict(z.num)
    # absorb the denominator's monomial part into the numerator
    dv = min(den)
    if dv:
        den = {e - dv: c for e, c in den.items()}
        num = {e - dv: c for e, c in num.items()}
    c0 = den.get(0, RATQ_ZERO)
    if not c0:
        raise DatumError("denominator of zeta_%d%d vanishes at 0" % (i, j))
    den = {e: c / c0 for e, c in den.items()}
    num = {e: c / c0 for e, c in num.items()}
    count = 0
    while den != {0: RATQ_ONE}:
        # divide den by (1 - x): den_e = quot_e - quot_{e-1}
        deg = max(den)
        quot = {}
        prev = RATQ_ZERO
        for e in range(0, deg):
            prev = den.get(e, RATQ_ZERO) + prev
            quot[e] = prev
        if den.get(deg, RATQ_ZERO) != -prev:
            raise DatumError("zeta_%d%d denominator is not (1-x)^k" % (i, j))
        den = {e: c for e, c in quot.items() if c}
        if not den:
            raise DatumError("zeta_%d%d denominator is not (1-x)^k" % (i, j))
        count += 1
        c0 = den.get(0, RATQ_ZERO)
        if not c0:
            raise DatumError("zeta_%d%d denominator is not (1-x)^k" % (i, j))
        if c0 != RATQ_ONE:
            den = {e: c / c0 for e, c in den.items()}
            num = {e: c / c0 for e, c in num.items()}
    return num, [1] * count


def _mul_one_minus_x(p, k):
    for _ in range(k):
        out = {}
        for e, c in p.items():
            out[e] = out.get(e, RATQ_ZERO) + c
            out[e + 1] = out.get(e + 1, RATQ_ZERO) - c
        p = {e: c for e, c in out.items() if c}
    return p


def _magnitude_num(z):
    """Exponent support of zeta in magnitude form (numerator over (x-1)^d)."""
    den = dict(z.den)
    num = dict(z.num)
    dv = min(den)
    if dv:
        den = {e - dv: c for e, c in den.items()}
        num = {e - dv: c for e, c in num.items()}
    return num


def _check_generic(gamma_ss, n):
    """gamma^m != 1 for all m != 0 iff the q-exponent matrix of gamma has
    full rank (any rational kernel vector doubles into an honest relation)."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            mono = gamma_ss[i, j].q_monomial()
            if mono is None:
                return False
            row.append(QQ(mono[1]))
        rows.append(row)
    # rank over Q by fraction-free elimination
    m = [row[:] for row in rows]
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, n):
            if m[r][col]:
                f = m[r][col] / m[rank][col]
                for c2 in range(col, n):
                    m[r][c2] -= f * m[rank][c2]
        rank += 1
    return rank == n


# -- presets -------------------------------------------------------------------


def preset_quantum_affine(cartan, colors=None, normalized=False):
    """Datum for a symmetrized Cartan matrix d_ij (d_ii > 0 even)."""
    n = len(cartan)
    colors = tuple(colors) if colors else tuple(str(i + 1) for i in range(n))
    for i in range(n):
        for j in range(n):
            if cartan[i][j] != cartan[j][i]:
                raise DatumError("cartan data must be symmetric")
            if i == j and (cartan[i][i] <= 0 or cartan[i][i] % 2):
                raise DatumError("diagonal cartan entries must be positive even")
            if i != j and (2 * cartan[i][j]) % cartan[i][i]:
                raise DatumError("cartan data is not symmetrizable")
    zeta = {}
    for i in range(n):
        for j in range(n):
            dij = cartan[i][j]
            num = {0: RatQ.q_power(-dij), 1: -RATQ_ONE}
            if i > j:
                num = {e - 1: -c for e, c in num.items()}
            if i == j:
                zeta[i, j] = URat(num, {0: RATQ_ONE, 1: -RATQ_ONE})
            else:
                zeta[i, j] = URat(num)
    normalizers = {}
    for i in range(n):
        di = cartan[i][i] // 2
        normalizers[i] = RatQ.q_power(-di) - RatQ.q_power(di)
    return AlgebraDatum(colors, zeta, normalized=normalized,
                        cartan=[list(r) for r in cartan],
                        normalizers=normalizers)


def sl2(normalized=False):
    return preset_quantum_affine([[2]], colors=("1",), normalized=normalized)


def sl3(normalized=False):
    return preset_quantum_affine([[2, -1], [-1, 2]], colors=("1", "2"),
                                 normalized=normalized)


def constant_datum(ncolors):
    """zeta_ij = 1 for all i, j."""
    zeta = {(i, j): URat({0: RATQ_ONE})
            for i in range(ncolors) for j in range(ncolors)}
    return AlgebraDatum(tuple(str(i + 1) for i in range(ncolors)), zeta)


# -- JSON round trip -------------------------------------------------------------


def datum_to_json(datum):
    entries = []
    for (i, j), z in sorted(datum.zeta.items()):
        entries.append({
            "i": datum.colors[i], "j": datum.colors[j],
            "num": [[e, str(c)] for e, c in sorted(z.num.items())],
            "den": [[e, str(c)] for e, c in sorted(z.den.items())],
        })
    out = {"colors": list(datum.colors), "zeta": entries,
           "normalized": datum.normalized}
    if datum.cartan is not None:
        out["cartan"] = datum.cartan
    return out


def datum_from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "preset" in obj:
        name = obj["preset"]
        normalized = bool(obj.get("normalized", False))
        if name == "sl2":
            return sl2(normalized)
        if name == "sl3":
            return sl3(normalized)
        raise DatumError("unknown preset %r" % name)
    if "cartan" in obj and "zeta" not in obj:
        return preset_quantum_affine(obj["cartan"], obj.get("colors"),
                                     bool(obj.get("normalized", False)))
    colors = tuple(obj["colors"])
    idx = {c: i for i, c in enumerate(colors)}
    zeta = {}
    for entry in obj["zeta"]:
        i, j = idx[entry["i"]], idx[entry["j"]]
        num = {int(e): parse_ratq(s) for e, s in entry["num"]}
        den = {int(e): parse_ratq(s) for e, s in entry["den"]} \
            if entry.get("den") else None
        zeta[i, j] = URat(num, den)
    datum = AlgebraDatum(colors, zeta,
                         normalized=bool(obj.get("normalized", False)),
                         cartan=obj.get("cartan"))
    return datum


def cartan_pairings(datum, dmax):
    """The finite-Cartan pairing matrix and the loop-Cartan pairing
    matrices for mode degrees 1..dmax; flags singular degrees."""
    kappa = datum.kappa_pair_matrix()
    p_by_degree = {}
    singular = []
    for dd in range(1, dmax + 1):
        mat = datum.p_pair_matrix(dd)
        p_by_degree[dd] = mat
        n = datum.ncolors
        rows = [[mat[i, j] for j in range(n)] for i in range(n)]
        from .linalg import rank
        if rank(rows) < n:
            singular.append(dd)
    return {"kappa": kappa, "p": p_by_degree, "singular_degrees": singular}
