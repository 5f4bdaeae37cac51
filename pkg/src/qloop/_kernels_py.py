"""Pure-Python reference kernels.

These are the hot inner loops of the whole library: dense univariate
convolution (coefficient arithmetic in Q) and sparse multivariate
Laurent-term dict merges.  `_kernels.pyx` provides a compiled twin with
identical semantics; `_backend` picks whichever is importable.
"""

BACKEND = "python"


def conv(a, b, zero):
    """Dense convolution of two coefficient sequences (len >= 1 each)."""
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] += ca * cb
    return out


def dict_mul(a, b):
    """Multiply sparse term dicts keyed by exponent tuples."""
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            c = ca * cb
            if not c:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            acc = out.get(k)
            if acc is None:
                out[k] = c
            else:
                acc = acc + c
                if acc:
                    out[k] = acc
                else:
                    del out[k]
    return out


def dict_addmul(acc, b, coeff, shift):
    """In-place acc += coeff * q_shift(b); shift is an exponent tuple or None."""
    for kb, cb in b.items():
        c = cb * coeff if coeff is not None else cb
        if not c:
            continue
        k = tuple(x + y for x, y in zip(kb, shift)) if shift is not None else kb
        old = acc.get(k)
        if old is None:
            acc[k] = c
        else:
            old = old + c
            if old:
                acc[k] = old
            else:
                del acc[k]
    return acc
