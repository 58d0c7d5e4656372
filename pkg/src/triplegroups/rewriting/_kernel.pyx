# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the rewriting hot loops; same contract as _kernel_py."""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport malloc, free


cdef bytes _reduce_parts(const unsigned char[:] a, Py_ssize_t a_end,
                         const unsigned char[:] v,
                         const unsigned char[:] b, Py_ssize_t b_start):
    cdef Py_ssize_t total = a_end + v.shape[0] + (b.shape[0] - b_start)
    cdef unsigned char* buf = <unsigned char*> malloc(total + 1)
    cdef Py_ssize_t top = 0, i
    cdef unsigned char x
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(a_end):
            x = a[i]
            if top and buf[top - 1] == (x ^ 1):
                top -= 1
            else:
                buf[top] = x
                top += 1
        for i in range(v.shape[0]):
            x = v[i]
            if top and buf[top - 1] == (x ^ 1):
                top -= 1
            else:
                buf[top] = x
                top += 1
        for i in range(b_start, b.shape[0]):
            x = b[i]
            if top and buf[top - 1] == (x ^ 1):
                top -= 1
            else:
                buf[top] = x
                top += 1
        return PyBytes_FromStringAndSize(<char*> buf, top)
    finally:
        free(buf)


def free_reduce(bytes word):
    cdef const unsigned char[:] w = word
    return _reduce_parts(w, w.shape[0], w[:0], w, w.shape[0])


def expand(bytes word, dict index, Py_ssize_t max_len):
    cdef const unsigned char[:] w = word
    cdef Py_ssize_t n = w.shape[0], pos, lu, k
    cdef const unsigned char[:] uu
    cdef bint match
    cdef list out = []
    cdef bytes u, v, new
    for pos in range(n):
        bucket = index.get(w[pos])
        if bucket is None:
            continue
        for u, v, pid in bucket:
            lu = len(u)
            if pos + lu > n:
                continue
            uu = u
            match = True
            for k in range(lu):
                if w[pos + k] != uu[k]:
                    match = False
                    break
            if not match:
                continue
            new = _reduce_parts(w, pos, v, w, pos + lu)
            if len(new) <= max_len:
                out.append((pid, pos, new))
    out.sort(key=_order)
    return out


def _order(t):
    return (t[0], t[1])
