"""Independent brute-force oracles for the lemma suite.

Everything here is computed by explicit index summation with locally built
epsilon and metric tables, recursive Laplace determinants, and first-order
dual numbers for group derivatives.  No Form machinery, no lorentz-module
matrix helpers: the only shared layer is the exact scalar ring itself, which
has its own unit tests.  Structural independence of these paths from the
ones they validate is the point.
"""

from __future__ import annotations

import itertools

from .scalars import Q, QONE, QZERO, ScalarExpr, g_symbol, ginv_symbol

_H = (1, -1, -1, -1)


def _sign_of(perm) -> int:
    """Permutation sign by explicit cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def eps_down(a, b, c, d) -> int:
    idx = (a, b, c, d)
    if len(set(idx)) != 4:
        return 0
    return _sign_of(idx)


def eps_up(a, b, c, d) -> int:
    return eps_down(a, b, c, d) * _H[a] * _H[b] * _H[c] * _H[d]


def eps_mixed(a, b, c, d) -> int:
    """eps_{abc}^d."""
    return eps_down(a, b, c, d) * _H[d]


def gen_kronecker(uppers, lowers):
    """Generalized Kronecker delta: det of the delta matrix."""
    n = len(uppers)
    if n != len(lowers):
        raise ValueError("index lists must have equal length")
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i in range(n):
            if uppers[i] != lowers[perm[i]]:
                term = 0
                break
        if term:
            total += _sign_of(perm)
    return total


def epsilon_contract(uppers, lowers):
    """sum over k contracted slots of eps^{uppers m...} eps_{lowers m...}.

    uppers and lowers are the free index tuples (equal length, <= 4); the
    remaining 4 - len slots are summed.  Equals -k! times the generalized
    Kronecker delta of the free slots under this signature.
    """
    nfree = len(uppers)
    if nfree != len(lowers):
        raise ValueError("free index lists must have equal length")
    k = 4 - nfree
    total = 0
    for tail in itertools.product(range(4), repeat=k):
        total += eps_up(*(tuple(uppers) + tail)) \
            * eps_down(*(tuple(lowers) + tail))
    return total


def laplace_det(m):
    """Determinant by first-row Laplace expansion (any square size)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if isinstance(m[0][j], ScalarExpr) and m[0][j].is_zero():
            continue
        minor = [[m[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = m[0][j] * laplace_det(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] * 0
    return total


def laplace_adjugate(m):
    """adj[i][j] = (-1)^{i+j} minor_{ji}, via laplace_det."""
    n = len(m)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            term = laplace_det(minor)
            if (i + j) % 2 == 1:
                term = -term
            row.append(term)
        out.append(row)
    return out


# -- tensors straight from the displayed component formulas -------------------

def torsion_components(e_rows, a_entries):
    """T^a_{mu nu} = d_mu e^a_nu - d_nu e^a_mu + A^a_{mu c} e^c_nu
    - e^c_mu A^a_{nu c}, by explicit loops."""
    t = [[[None] * 4 for _ in range(4)] for _ in range(4)]
    for a in range(4):
        for mu in range(4):
            for nu in range(4):
                val = e_rows[a][nu].diff_x(mu) - e_rows[a][mu].diff_x(nu)
                for c in range(4):
                    val = val + a_entries[a][c][mu] * e_rows[c][nu] \
                        - e_rows[c][mu] * a_entries[a][c][nu]
                t[a][mu][nu] = val
    return t


def curvature_components(a_entries):
    """F^a_{b mu nu} (second index down) from the component formula."""
    f = [[[[None] * 4 for _ in range(4)] for _ in range(4)]
         for _ in range(4)]
    for a in range(4):
        for b in range(4):
            for mu in range(4):
                for nu in range(4):
                    val = a_entries[a][b][nu].diff_x(mu) \
                        - a_entries[a][b][mu].diff_x(nu)
                    for c in range(4):
                        val = val + a_entries[a][c][mu] * a_entries[c][b][nu] \
                            - a_entries[a][c][nu] * a_entries[c][b][mu]
                    f[a][b][mu][nu] = val
    return f


def torsion_frame_numerators(e_rows, a_entries):
    """(T^a_{cd} * det^2, det) with the inverse frame from the adjugate."""
    t = torsion_components(e_rows, a_entries)
    det = laplace_det(e_rows)
    adj = laplace_adjugate(e_rows)  # adj[mu][a] = det * e^mu_a
    out = [[[None] * 4 for _ in range(4)] for _ in range(4)]
    for a in range(4):
        for c in range(4):
            for d in range(4):
                acc = ScalarExpr()
                for mu in range(4):
                    for nu in range(4):
                        if t[a][mu][nu]:
                            acc = acc + t[a][mu][nu] * adj[mu][c] * adj[nu][d]
                out[a][c][d] = acc
    return out, det


def einstein_mixed_numerators(e_rows, a_entries):
    """(G^b_a * det^2, det) by explicit contraction loops.

    Ric_{ab} = F^{a'}_{a a' b},  S = h^{ab} Ric_{ab},
    G_{ab} = Ric_{ab} - (1/2) h_{ab} S,  G^b_a = h^{bb'} G_{b'a}.
    """
    f = curvature_components(a_entries)
    det = laplace_det(e_rows)
    adj = laplace_adjugate(e_rows)
    den = det * det
    ric_num = [[ScalarExpr() for _ in range(4)] for _ in range(4)]
    for a in range(4):
        for b in range(4):
            acc = ScalarExpr()
            for ap in range(4):
                for mu in range(4):
                    for nu in range(4):
                        if f[ap][a][mu][nu]:
                            acc = acc + f[ap][a][mu][nu] \
                                * adj[mu][ap] * adj[nu][b]
            ric_num[a][b] = acc
    s_num = ScalarExpr()
    for a in range(4):
        s_num = s_num + _H[a] * ric_num[a][a]
    g_num = [[ric_num[a][b] - (Q(_H[a], 2) * s_num if a == b
                               else ScalarExpr())
              for b in range(4)] for a in range(4)]
    mixed = [[_H[b] * g_num[b][a] for a in range(4)] for b in range(4)]
    return mixed, den, det, adj


def einstein_hodge_rhs(e_rows, a_entries):
    """(sigma-free) right side of the Einstein Hodge identity:

    returns (N[a][mu], den) with N/den = det(e) G^b_a e^mu_b; the identity
    under test is hodge(G_a)[mu] = sigma_E * N / den.
    """
    mixed, den, det, adj = einstein_mixed_numerators(e_rows, a_entries)
    out = [[ScalarExpr() for _ in range(4)] for _ in range(4)]
    for a in range(4):
        for mu in range(4):
            acc = ScalarExpr()
            for b in range(4):
                if mixed[b][a]:
                    acc = acc + mixed[b][a] * adj[mu][b]
            out[a][mu] = acc
    return out, den


def spin_hodge_rhs(e_rows, a_entries):
    """Right side of the Spin Hodge identity, det(e)-normalized:

    returns (N[a][b][mu], den) with N/den =
      det(e) * (1/2) h^{bb'} (T^c_{b'c} e^mu_a + T^c_{ca} e^mu_{b'}
                              + T^c_{ab'} e^mu_c).
    """
    t_num, det = torsion_frame_numerators(e_rows, a_entries)
    adj = laplace_adjugate(e_rows)
    den = det * det * det  # t_num/det^2 times adj/det, times det
    out = [[[ScalarExpr() for _ in range(4)] for _ in range(4)]
           for _ in range(4)]
    for a in range(4):
        for b in range(4):
            bp = b
            half = Q(_H[b], 2)
            for mu in range(4):
                acc = ScalarExpr()
                for c in range(4):
                    if t_num[c][bp][c]:
                        acc = acc + t_num[c][bp][c] * adj[mu][a]
                    if t_num[c][c][a]:
                        acc = acc + t_num[c][c][a] * adj[mu][bp]
                    if t_num[c][a][bp]:
                        acc = acc + t_num[c][a][bp] * adj[mu][c]
                out[a][b][mu] = half * acc * det
    return out, den


# -- first-order dual numbers for the group-derivative oracle ------------------

class Dual:
    """a + b t with t^2 = 0, over exact rationals."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Q(a)
        self.b = Q(b)

    def __add__(self, other):
        other = other if isinstance(other, Dual) else Dual(other)
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        other = other if isinstance(other, Dual) else Dual(other)
        return Dual(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return Dual(other) - self

    def __mul__(self, other):
        other = other if isinstance(other, Dual) else Dual(other)
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Dual(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        other = other if isinstance(other, Dual) else Dual(other)
        return self.a == other.a and self.b == other.b

    def __repr__(self):
        return f"Dual({self.a}, {self.b})"


def _dual_mat_mul(m1, m2):
    n = len(m1)
    return [[sum((m1[i][k] * m2[k][j] for k in range(n)), start=Dual(0))
             for j in range(n)] for i in range(n)]


def _dual_mat_inverse(m):
    """(A + tB)^-1 = A^-1 - t A^-1 B A^-1, with A^-1 via the adjugate."""
    a = [[x.a for x in row] for row in m]
    b = [[x.b for x in row] for row in m]
    det = laplace_det(a)
    if not det:
        raise ZeroDivisionError("dual matrix not invertible at order 0")
    adj = laplace_adjugate(a)
    ainv = [[adj[i][j] / det for j in range(4)] for i in range(4)]

    def rat_mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4)]
                for i in range(4)]

    corr = rat_mul(rat_mul(ainv, b), ainv)
    return [[Dual(ainv[i][j], -corr[i][j]) for j in range(4)]
            for i in range(4)]


def group_derivative_fd(f: ScalarExpr, j: int, group_elem, x_bind):
    """rho_j f at a point, by first-order expansion along g (1 + t ell_j).

    group_elem supplies exact (g, ginv); the curve's inverse is recomputed
    honestly from the dual-number matrix inverse, so this is independent of
    the symbolic derivation rules it validates.  Returns the exact rational
    derivative.
    """
    ell = [[QZERO] * 4 for _ in range(4)]
    rot = {1: (2, 3), 2: (3, 1), 3: (1, 2)}
    if j in rot:
        r, c = rot[j]
        ell[r][c] = Q(-1)
        ell[c][r] = Q(1)
    else:
        k = j - 3
        ell[0][k] = QONE
        ell[k][0] = QONE
    curve = [[Dual(QONE if r == c else QZERO, ell[r][c]) for c in range(4)]
             for r in range(4)]
    g_curve = _dual_mat_mul(
        [[Dual(group_elem.g[r][c]) for c in range(4)] for r in range(4)],
        curve)
    ginv_curve = _dual_mat_inverse(g_curve)
    vals = {}
    for mu, v in x_bind.items():
        vals[mu] = Dual(v)
    for a in range(4):
        for b in range(4):
            vals[g_symbol(a, b)] = g_curve[a][b]
            vals[ginv_symbol(a, b)] = ginv_curve[a][b]
    result = f.evaluate(vals)
    if not isinstance(result, Dual):
        return QZERO
    return result.b
