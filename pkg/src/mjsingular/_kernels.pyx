# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the polynomial kernels in ``_kernels_py``.

Coefficients stay Python objects (mpq or extension elements); the gain
comes from typed exponent loops and key construction.
"""

from heapq import heapify, heappop, heappush


cdef tuple _order_key(tuple m, tuple W):
    cdef Py_ssize_t n = len(m)
    cdef Py_ssize_t i, j
    cdef long s, e
    cdef list k = []
    cdef tuple w
    for w in W:
        s = 0
        for i in range(n):
            s += <long>w[i] * <long>m[i]
        k.append(s)
    s = 0
    for i in range(n):
        s += <long>m[i]
    k.append(s)
    for j in range(n - 1, -1, -1):
        e = m[j]
        k.append(-e)
    return tuple(k)


cdef tuple _neg_key(tuple m, tuple W):
    cdef tuple k = _order_key(m, W)
    return tuple([-v for v in k])


cdef inline tuple _add(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] + <long>b[i]
    return tuple(out)


cdef inline tuple _sub(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <long>a[i] - <long>b[i]
    return tuple(out)


cdef inline bint _divides(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i
    for i in range(n):
        if <long>a[i] > <long>b[i]:
            return False
    return True


cdef inline long _deg(tuple m):
    cdef long s = 0
    cdef Py_ssize_t i
    for i in range(len(m)):
        s += <long>m[i]
    return s


def order_key(m, W):
    return _order_key(tuple(m), tuple(W))


def leading_monomial(dict terms, tuple W):
    best = None
    best_key = None
    cdef tuple k
    for m in terms:
        k = _order_key(m, W)
        if best_key is None or k > best_key:
            best, best_key = m, k
    return best


def divides(a, b):
    return _divides(tuple(a), tuple(b))


def mul_terms(dict a, dict b, long maxdeg=-1):
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef list bl
    cdef tuple ma, mb, m
    cdef long da, db
    if maxdeg >= 0:
        bl = sorted([(_deg(mb), mb, cb) for mb, cb in b.items()], key=lambda t: t[0])
        for ma, ca in a.items():
            da = _deg(ma)
            if da > maxdeg:
                continue
            for entry in bl:
                db = entry[0]
                if da + db > maxdeg:
                    break
                m = _add(ma, entry[1])
                v = out.get(m)
                if v is None:
                    out[m] = ca * entry[2]
                else:
                    v = v + ca * entry[2]
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return out
    bl = list(b.items())
    for ma, ca in a.items():
        for entry in bl:
            m = _add(ma, entry[0])
            v = out.get(m)
            if v is None:
                out[m] = ca * entry[1]
            else:
                v = v + ca * entry[1]
                if v:
                    out[m] = v
                else:
                    del out[m]
    return out


def add_scaled(dict p, dict q, c, shift=None):
    cdef tuple m, s
    if shift is None:
        for m, v in q.items():
            w = p.get(m)
            if w is None:
                p[m] = c * v
            else:
                w = w + c * v
                if w:
                    p[m] = w
                else:
                    del p[m]
        return p
    s = tuple(shift)
    for m, v in q.items():
        m = _add(m, s)
        w = p.get(m)
        if w is None:
            p[m] = c * v
        else:
            w = w + c * v
            if w:
                p[m] = w
            else:
                del p[m]
    return p


def normal_form(dict f, list basis, tuple W):
    cdef dict p = dict(f)
    cdef dict r = {}
    cdef list heap = [(_neg_key(m, W), m) for m in p]
    cdef tuple m, lm, q, mm, mg
    cdef bint found
    heapify(heap)
    while heap:
        m = heappop(heap)[1]
        c = p.pop(m, None)
        if c is None:
            continue
        found = False
        for entry in basis:
            lm = entry[0]
            if _divides(lm, m):
                found = True
                tail = entry[1]
                break
        if not found:
            r[m] = c
            continue
        q = _sub(m, lm)
        for mg, cg in tail:
            mm = _add(mg, q)
            v = p.get(mm)
            if v is None:
                p[mm] = -c * cg
                heappush(heap, (_neg_key(mm, W), mm))
            else:
                v = v - c * cg
                if v:
                    p[mm] = v
                else:
                    del p[mm]
    return r
