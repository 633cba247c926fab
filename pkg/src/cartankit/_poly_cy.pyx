# cython: language_level=3
"""Compiled twin of cartankit._poly_py.

Same contracts, same semantics; the speedup comes from compiling the merge
and accumulation loops.  Coefficients stay generic Python objects (gmpy2.mpq
or Fraction), so all arithmetic goes through the object protocol.
"""


def mono_mul(tuple a, tuple b):
    """Merge two sorted (symbol, exponent) tuples, adding exponents."""
    if not a:
        return b
    if not b:
        return a
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef list out = []
    cdef long sa, sb
    while i < na and j < nb:
        sa = <long> (<tuple> a[i])[0]
        sb = <long> (<tuple> b[j])[0]
        if sa == sb:
            out.append((sa, (<tuple> a[i])[1] + (<tuple> b[j])[1]))
            i += 1
            j += 1
        elif sa < sb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


def poly_add(dict p, dict q):
    """Return p + q as a new dict; zero coefficients are dropped."""
    cdef dict out = dict(p)
    cdef object m, c, s
    for m, c in q.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_iadd_scaled(dict acc, dict p, c):
    """acc += c * p in place; returns acc."""
    cdef object m, v, s
    if not c:
        return acc
    for m, v in p.items():
        s = acc.get(m)
        if s is None:
            acc[m] = c * v
        else:
            s = s + c * v
            if s:
                acc[m] = s
            else:
                del acc[m]
    return acc


def poly_mul(dict p, dict q):
    """Return p * q, accumulating duplicate monomials."""
    if len(p) > len(q):
        p, q = q, p
    cdef dict out = {}
    cdef object m1, c1, m2, c2, m, c, s
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(<tuple> m1, <tuple> m2)
            c = c1 * c2
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def poly_substitute(dict p, dict bind):
    """Bind some symbols to values; unbound symbols stay in the monomial."""
    cdef dict out = {}
    cdef object m, c, v, acc
    cdef list rest
    for m, c in p.items():
        rest = []
        for se in <tuple> m:
            v = bind.get((<tuple> se)[0])
            if v is None:
                rest.append(se)
            else:
                c = c * v ** (<tuple> se)[1]
        if not c:
            continue
        key = tuple(rest)
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


def poly_eval(dict p, dict vals, zero):
    """Evaluate with every symbol bound; vals maps symbol index -> value."""
    cdef object total = zero
    cdef object m, c, term
    for m, c in p.items():
        term = c
        for se in <tuple> m:
            term = term * vals[(<tuple> se)[0]] ** (<tuple> se)[1]
        total = total + term
    return total
