"""Pure-Python reference implementation of the hot polynomial kernels.

Polynomials are plain dicts mapping exponent tuples to nonzero coefficients.
Monomial orders are given as a weight matrix ``W`` (tuple of int tuples);
ties are broken by graded-reverse-lexicographic comparison of the exponents.
The compiled module ``_kernels`` exposes the same functions.
"""

from heapq import heapify, heappop, heappush


def order_key(m, W):
    """Sort key: larger key means larger monomial."""
    k = [sum(w[i] * m[i] for i in range(len(m))) for w in W]
    k.append(sum(m))
    k.extend(-e for e in reversed(m))
    return tuple(k)


def _neg_key(m, W):
    return tuple(-v for v in order_key(m, W))


def leading_monomial(terms, W):
    best = None
    best_key = None
    for m in terms:
        k = order_key(m, W)
        if best_key is None or k > best_key:
            best, best_key = m, k
    return best


def mul_terms(a, b, maxdeg=-1):
    """Product of two term dicts, dropping terms of total degree > maxdeg
    when maxdeg >= 0."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    if maxdeg >= 0:
        bl = sorted(((sum(m), m, c) for m, c in b.items()), key=lambda t: t[0])
        for ma, ca in a.items():
            da = sum(ma)
            if da > maxdeg:
                continue
            for db, mb, cb in bl:
                if da + db > maxdeg:
                    break
                m = tuple([x + y for x, y in zip(ma, mb)])
                v = out.get(m)
                if v is None:
                    out[m] = ca * cb
                else:
                    v = v + ca * cb
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return out
    bl = list(b.items())
    for ma, ca in a.items():
        for mb, cb in bl:
            m = tuple([x + y for x, y in zip(ma, mb)])
            v = out.get(m)
            if v is None:
                out[m] = ca * cb
            else:
                v = v + ca * cb
                if v:
                    out[m] = v
                else:
                    del out[m]
    return out


def add_scaled(p, q, c, shift=None):
    """In-place ``p += c * x^shift * q``."""
    for m, v in q.items():
        if shift is not None:
            m = tuple([x + y for x, y in zip(m, shift)])
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


def divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def normal_form(f, basis, W):
    """Fully reduce ``f`` modulo ``basis`` (list of (lm, tail_items) for
    monic elements; tail_items excludes the leading term)."""
    p = dict(f)
    r = {}
    heap = [(_neg_key(m, W), m) for m in p]
    heapify(heap)
    while heap:
        _, m = heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        for lm, tail in basis:
            if divides(lm, m):
                break
        else:
            r[m] = c
            continue
        q = tuple([x - y for x, y in zip(m, lm)])
        for mg, cg in tail:
            mm = tuple([x + y for x, y in zip(mg, q)])
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
