"""Pure-Python kernels for sparse multivariate polynomial arithmetic.

A monomial is a tuple of (symbol, exponent) pairs, sorted by symbol index,
with every exponent >= 1; the empty tuple is the unit monomial.  A polynomial
is a dict mapping monomials to nonzero coefficients.  Coefficients are exact
rationals (gmpy2.mpq or fractions.Fraction); the kernels only require +, *
and truthiness, so any exact ring element works.

cartankit._poly_cy is the compiled twin of this module; cartankit.kernels
picks one at import time.  Keep the two implementations in lockstep.
"""

from __future__ import annotations


def mono_mul(a, b):
    """Merge two sorted (symbol, exponent) tuples, adding exponents."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        sa, ea = a[i]
        sb, eb = b[j]
        if sa == sb:
            out.append((sa, ea + eb))
            i += 1
            j += 1
        elif sa < sb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def poly_add(p, q):
    """Return p + q as a new dict; zero coefficients are dropped."""
    out = dict(p)
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


def poly_iadd_scaled(acc, p, c):
    """acc += c * p in place; returns acc."""
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


def poly_mul(p, q):
    """Return p * q, accumulating duplicate monomials."""
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
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


def poly_substitute(p, bind):
    """Bind some symbols to values; unbound symbols stay in the monomial.

    bind maps symbol index -> exact value.  Returns a new poly dict.
    """
    out = {}
    for m, c in p.items():
        rest = []
        for s, e in m:
            v = bind.get(s)
            if v is None:
                rest.append((s, e))
            else:
                c = c * v ** e
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


def poly_eval(p, vals, zero):
    """Evaluate with every symbol bound; vals maps symbol index -> value."""
    total = zero
    for m, c in p.items():
        term = c
        for s, e in m:
            term = term * vals[s] ** e
        total = total + term
    return total
