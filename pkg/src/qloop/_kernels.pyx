# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: dense coefficient convolution and sparse Laurent-term
dict merges.  Semantics match _kernels_py exactly; coefficients stay
arbitrary Python objects (exact rationals), the win is loop and tuple
overhead."""

BACKEND = "cython"


def conv(a, b, zero):
    cdef Py_ssize_t na = len(a)
    cdef Py_ssize_t nb = len(b)
    cdef Py_ssize_t i, j
    out = [zero] * (na + nb - 1)
    for i in range(na):
        ca = a[i]
        if not ca:
            continue
        for j in range(nb):
            cb = b[j]
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


def dict_mul(a, b):
    cdef Py_ssize_t n, k
    out = {}
    for ka, ca in a.items():
        n = len(ka)
        for kb, cb in b.items():
            c = ca * cb
            if not c:
                continue
            key = tuple([ka[k] + kb[k] for k in range(n)])
            acc = out.get(key)
            if acc is None:
                out[key] = c
            else:
                acc = acc + c
                if acc:
                    out[key] = acc
                else:
                    del out[key]
    return out


def dict_addmul(acc, b, coeff, shift):
    cdef Py_ssize_t n, k
    if shift is not None:
        n = len(shift)
    for kb, cb in b.items():
        if coeff is not None:
            c = cb * coeff
        else:
            c = cb
        if not c:
            continue
        if shift is not None:
            key = tuple([kb[k] + shift[k] for k in range(n)])
        else:
            key = kb
        old = acc.get(key)
        if old is None:
            acc[key] = c
        else:
            old = old + c
            if old:
                acc[key] = old
            else:
                del acc[key]
    return acc
