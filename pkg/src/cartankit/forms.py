"""Graded exterior algebra over the ten coframe generators of the bundle.

Generators in the fixed global order dx^0 < dx^1 < dx^2 < dx^3 < gamma^1 <
... < gamma^6, stored as bits 0..9 of a term mask.  Coefficients are
ScalarExpr.  The exterior derivative follows

    d f      = sum_mu (d_mu f) dx^mu + sum_j (rho_j f) gamma^j
    d dx^mu  = 0
    d gamma^k = -(1/2) c^k_{ij} gamma^i wedge gamma^j

with c the so(3,1) structure constants, so that d o d = 0 holds identically
(the gamma part is the Jacobi identity).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .scalars import Q, QONE, ScalarExpr
from . import lorentz
from .lorentz import (STRUCTURE_CONSTANTS, LorentzGroupElement,
                      group_bindings, group_derivative, sample_group)

DX_MASK = 0b0000001111
GAMMA_MASK = 0b1111110000


def gamma_slot(j: int) -> int:
    """Bit index of gamma^j, j in 1..6."""
    if not 1 <= j <= 6:
        raise ValueError(f"vertical index out of range: {j}")
    return 3 + j


@dataclass(frozen=True)
class VectorIndex:
    """A frame vector: base d_mu (mu in 0..3) or vertical rho_i (i in 1..6).

    Vertical indices are canonical 1..6; use lorentz.vertical_from_frame_slot
    to convert the 4..9 coframe-slot alias explicitly.
    """

    kind: str
    index: int

    def __post_init__(self):
        if self.kind == "base":
            if not 0 <= self.index <= 3:
                raise ValueError(f"base index out of range: {self.index}")
        elif self.kind == "vertical":
            if not 1 <= self.index <= 6:
                raise ValueError(f"vertical index out of range: {self.index}")
        else:
            raise ValueError(f"unknown vector kind: {self.kind}")

    @property
    def slot(self) -> int:
        return self.index if self.kind == "base" else gamma_slot(self.index)


def d_dx(mu: int) -> VectorIndex:
    return VectorIndex("base", mu)


def rho(i: int) -> VectorIndex:
    return VectorIndex("vertical", i)


@lru_cache(maxsize=None)
def _merge_sign(m1: int, m2: int) -> int:
    """Sign of sorting the concatenation of two disjoint ascending masks."""
    inv = 0
    m = m2
    while m:
        b = (m & -m).bit_length() - 1
        inv += bin(m1 >> (b + 1)).count("1")
        m &= m - 1
    return -1 if inv & 1 else 1


class Form:
    """Exterior element: dict from generator mask to ScalarExpr coefficient.

    Terms with zero coefficients are never stored.  Immutable by contract.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def from_scalar(f) -> "Form":
        f = ScalarExpr.coerce(f)
        return Form({0: f} if f else {})

    @staticmethod
    def basis(mask: int, coeff=1) -> "Form":
        c = ScalarExpr.coerce(coeff)
        return Form({mask: c} if c else {})

    @staticmethod
    def coerce(v) -> "Form":
        if isinstance(v, Form):
            return v
        return Form.from_scalar(v)

    def coefficient(self, mask: int) -> ScalarExpr:
        return self.terms.get(mask, ScalarExpr())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return self.terms == Form.coerce(other).terms

    def __hash__(self):
        return hash(frozenset((m, hash(c)) for m, c in self.terms.items()))

    def degrees(self):
        return sorted({bin(m).count("1") for m in self.terms})

    def homogeneous_part(self, p: int) -> "Form":
        return Form({m: c for m, c in self.terms.items()
                     if bin(m).count("1") == p})

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        other = Form.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Form(out)

    __radd__ = __add__

    def __neg__(self):
        return Form({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Form.coerce(other))

    def __rsub__(self, other):
        return Form.coerce(other) + (-self)

    def scale(self, f) -> "Form":
        f = ScalarExpr.coerce(f)
        if not f:
            return Form()
        out = {}
        for m, c in self.terms.items():
            p = c * f
            if p:
                out[m] = p
        return Form(out)

    def __mul__(self, other):
        if isinstance(other, Form):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"dx{i}" for i in range(4)] + [f"gam{j}" for j in range(1, 7)]
        parts = []
        for m in sorted(self.terms, key=lambda m: (bin(m).count("1"), m)):
            gens = "^".join(names[b] for b in range(10) if m >> b & 1) or "1"
            parts.append(f"({self.terms[m]}) {gens}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Form({self})"


ZERO_FORM = Form()
ONE_FORM = Form.from_scalar(1)


def wedge(a: Form, b: Form) -> Form:
    """Graded-anticommutative product, canonicalized against the global
    generator order."""
    a, b = Form.coerce(a), Form.coerce(b)
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            if m1 & m2:
                continue
            c = c1 * c2
            if _merge_sign(m1, m2) < 0:
                c = -c
            m = m1 | m2
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return Form(out)


def wedge_all(*forms) -> Form:
    acc = ONE_FORM
    for f in forms:
        acc = wedge(acc, f)
    return acc


def interior(vectors, a: Form) -> Form:
    """Iterated interior product; the list is applied left to right.

    interior([v1, ..., vp], a) computes v_p -| ... -| v_1 -| a, matching the
    multivector convention (v1 ^ ... ^ vp) -| a with v1 contracted first.
    """
    if isinstance(vectors, VectorIndex):
        vectors = [vectors]
    out = a
    for v in vectors:
        out = _contract(v.slot, out)
    return out


def _contract(slot: int, a: Form) -> Form:
    bit = 1 << slot
    out = {}
    for m, c in a.terms.items():
        if not m & bit:
            continue
        below = bin(m & (bit - 1)).count("1")
        out[m ^ bit] = -c if below & 1 else c
    return Form(out)


def _dgamma(k: int) -> Form:
    """d gamma^k = -(1/2) c^k_{ij} gamma^i wedge gamma^j."""
    out = {}
    for i in range(1, 7):
        for j in range(i + 1, 7):
            coeff = STRUCTURE_CONSTANTS[k][i][j]
            if coeff:
                mask = (1 << gamma_slot(i)) | (1 << gamma_slot(j))
                out[mask] = ScalarExpr.constant(-coeff)
    return Form(out)


DGAMMA = {k: _dgamma(k) for k in range(1, 7)}


def d_scalar(f: ScalarExpr) -> Form:
    """df = (d_mu f) dx^mu + (rho_j f) gamma^j."""
    out = {}
    for mu in range(4):
        df = f.diff_x(mu)
        if df:
            out[1 << mu] = df
    for j in range(1, 7):
        rf = group_derivative(f, j)
        if rf:
            out[1 << gamma_slot(j)] = rf
    return Form(out)


def ext_d(a: Form) -> Form:
    """Exterior derivative; Leibniz over coefficient and generator factors."""
    a = Form.coerce(a)
    out = Form()
    for mask, f in a.terms.items():
        out = out + wedge(d_scalar(f), Form.basis(mask))
        m = mask & GAMMA_MASK
        while m:
            bit = m & -m
            slot = bit.bit_length() - 1
            below = bin(mask & (bit - 1)).count("1")
            coeff = -f if below & 1 else f
            out = out + wedge(DGAMMA[slot - 3], Form({mask ^ bit: coeff}))
            m &= m - 1
    return out


# -- basis p-form families ----------------------------------------------------

VOLUME_BETA = Form.basis(DX_MASK)
VOLUME_GAMMA = Form.basis(GAMMA_MASK)
VOLUME_TOTAL = Form.basis(DX_MASK | GAMMA_MASK)


def _validate_index_list(idx, count, label, bound):
    idx = list(idx)
    if len(idx) != count:
        raise ValueError(f"{label}: expected {count} indices, got {len(idx)}")
    if len(set(idx)) != len(idx):
        raise ValueError(f"{label}: repeated index in {idx}")
    for i in idx:
        lo, hi = bound
        if not lo <= i <= hi:
            raise ValueError(f"{label}: index {i} out of range {lo}..{hi}")
    return idx


def basis_beta(p: int, idx) -> Form:
    """beta^(p)_{mu_1 ... mu_{4-p}}: iterated interior products on beta^(4)."""
    if not 0 <= p <= 4:
        raise ValueError(f"degree out of range: {p}")
    idx = _validate_index_list(idx, 4 - p, "basis_beta", (0, 3))
    return interior([d_dx(mu) for mu in idx], VOLUME_BETA)


def basis_gamma(q: int, idx) -> Form:
    """gamma^(q)_{i_1 ... i_{6-q}}: iterated interior products on gamma^(6)."""
    if not 0 <= q <= 6:
        raise ValueError(f"degree out of range: {q}")
    idx = _validate_index_list(idx, 6 - q, "basis_gamma", (1, 6))
    return interior([rho(i) for i in idx], VOLUME_GAMMA)


def beta_upper(indices) -> Form:
    """beta^{mu_1 ... mu_p} = dx^{mu_1} wedge ... wedge dx^{mu_p}."""
    acc = ONE_FORM
    for mu in indices:
        acc = wedge(acc, Form.basis(1 << mu))
    return acc


def gamma_upper(indices) -> Form:
    acc = ONE_FORM
    for j in indices:
        acc = wedge(acc, Form.basis(1 << gamma_slot(j)))
    return acc


def dx3_components(a: Form):
    """Components W_{lmn} (l<m<n) of the pure-dx 3-form part, as a dict."""
    comps = {}
    for l in range(4):
        for m in range(l + 1, 4):
            for n in range(m + 1, 4):
                mask = (1 << l) | (1 << m) | (1 << n)
                c = a.terms.get(mask)
                if c:
                    comps[(l, m, n)] = c
    return comps


def hodge3(a: Form):
    """(1/3!) eps~^{s l m n} W_{lmn} for the pure-dx part of a 3-form.

    Equals the beta^(3)_s expansion coefficients: W|dx = sum_s hodge3(W)[s]
    beta^(3)_s.  The epsilon here is the permutation symbol (coordinate
    indices carry no metric).
    """
    comps = dx3_components(a)
    out = []
    for s in range(4):
        total = ScalarExpr()
        for (l, m, n), c in comps.items():
            sgn = lorentz.EPS[s][l][m][n]
            if sgn == 1:
                total = total + c
            elif sgn == -1:
                total = total - c
        out.append(total)
    return out


# -- randomized exact equality ------------------------------------------------

def random_point(rng) -> dict:
    """Random rational bindings for the four coordinates."""
    return {mu: Q(rng.randint(-9, 9), rng.randint(1, 4)) for mu in range(4)}


def sample_bindings(rng) -> dict:
    """Full symbol bindings: a random rational x-point plus an exact
    Cayley-sampled Lorentz element (ginv bound to the true inverse)."""
    bind = random_point(rng)
    bind.update(group_bindings(sample_group(rng)))
    return bind


def _as_form(v) -> Form:
    if isinstance(v, Form):
        return v
    return Form.from_scalar(v)


def equal_by_evaluation(a, b, samples: int = 16, seed: int = 0) -> bool:
    """Decide equality of scalars or forms by exact randomized evaluation.

    Group symbols are bound to Cayley-sampled exact Lorentz elements, so the
    comparison is modulo the Lorentz relations (g ginv = 1, g^T h g = h).
    When no group symbols occur, falls back to exact expansion, which is then
    complete.  Deterministic for a fixed seed.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    diff = _as_form(a) - _as_form(b)
    if diff.is_zero():
        return True
    if not any(c.has_group_symbols() for c in diff.terms.values()):
        return False  # exact expansion: no relations to quotient by
    rng = random.Random(seed)
    for _ in range(samples):
        bind = sample_bindings(rng)
        for c in diff.terms.values():
            if c.evaluate(bind):
                return False
    return True


def substitute_group(v, g: LorentzGroupElement):
    """Bind only the group symbols to an exact Lorentz element."""
    bind = group_bindings(g)
    if isinstance(v, Form):
        out = {}
        for m, c in v.terms.items():
            s = c.substitute(bind)
            if s:
                out[m] = s
        return Form(out)
    return ScalarExpr.coerce(v).substitute(bind)
