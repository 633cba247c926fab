"""so(3,1) and the Poincare algebra in the standard 4x4 representation.

Conventions (the one global orientation/sign table lives here):

  * metric h = diag(+1, -1, -1, -1)
  * epsilon with all indices down is the permutation symbol, eps_{0123} = +1
  * raised epsilon indices are obtained by h-contraction, so eps^{0123} = -1
  * generator order ell_1..ell_6 = J1, J2, J3 (rotations), K1, K2, K3 (boosts)

Vertical indices are 1..6 internally.  Frame slots 4..9 (the second half of
the moving coframe on the bundle) alias the same generators; the maps
vertical_from_frame_slot / frame_slot_of_vertical make the alias explicit
rather than guessing, since 1..6 and 4..9 overlap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .scalars import (Q, QONE, QZERO, ScalarExpr, g_symbol, ginv_symbol)

# -- metric and epsilon tables ----------------------------------------------

H_SIGNS = (1, -1, -1, -1)
H = tuple(tuple(Q(H_SIGNS[a]) if a == b else QZERO for b in range(4))
          for a in range(4))


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _eps_table():
    t = [[[[0] * 4 for _ in range(4)] for _ in range(4)] for _ in range(4)]
    for p in itertools.permutations(range(4)):
        t[p[0]][p[1]][p[2]][p[3]] = _perm_sign(p)
    return t


#: permutation symbol, eps_{0123} = +1 (also used for coordinate indices,
#: where there is no metric to raise with)
EPS = _eps_table()


def eps_down(a, b, c, d) -> int:
    return EPS[a][b][c][d]


def eps_up4(a, b, c, d) -> int:
    """eps with all four indices raised by h: equals -eps_down here."""
    return EPS[a][b][c][d] * H_SIGNS[a] * H_SIGNS[b] * H_SIGNS[c] * H_SIGNS[d]


def eps_mixed(a, b, c, d) -> int:
    """eps_{abc}^d, the last index raised with h."""
    return EPS[a][b][c][d] * H_SIGNS[d]


# -- generic 4x4 matrix helpers (entries: rationals or ScalarExpr) -----------

def mat_from_rows(rows):
    return tuple(tuple(row) for row in rows)


IDENTITY4 = mat_from_rows([[QONE if i == j else QZERO for j in range(4)]
                           for i in range(4)])
ZERO4 = mat_from_rows([[QZERO] * 4 for _ in range(4)])


def mat_add(a, b):
    return tuple(tuple(a[i][j] + b[i][j] for j in range(4)) for i in range(4))


def mat_sub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(4)) for i in range(4))


def mat_scale(c, a):
    return tuple(tuple(c * a[i][j] for j in range(4)) for i in range(4))


def mat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(4)),
                           start=a[i][0] * 0)
                       for j in range(4)) for i in range(4))


def mat_commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_vec(a, v):
    return tuple(sum((a[i][k] * v[k] for k in range(4)), start=a[i][0] * 0)
                 for i in range(4))


def mat_transpose(a):
    return tuple(tuple(a[j][i] for j in range(4)) for i in range(4))


def det4(a):
    """Determinant by permutation expansion; exact for any commutative ring."""
    total = a[0][0] * 0
    for p in itertools.permutations(range(4)):
        term = a[0][p[0]] * a[1][p[1]] * a[2][p[2]] * a[3][p[3]]
        total = total + term if _PERMS4[p] > 0 else total - term
    return total


_PERMS4 = {p: _perm_sign(p) for p in itertools.permutations(range(4))}


def adjugate4(a):
    """Adjugate: adj(a) * a = det(a) * I, computed from 3x3 cofactors."""
    def minor(i, j):
        rows = [r for r in range(4) if r != i]
        cols = [c for c in range(4) if c != j]
        m = [[a[r][c] for c in cols] for r in rows]
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    return tuple(tuple(minor(j, i) if (i + j) % 2 == 0 else -minor(j, i)
                       for j in range(4)) for i in range(4))


def mat_inverse(a):
    """Exact inverse of a rational matrix; raises on a singular input."""
    d = det4(a)
    if not d:
        raise ZeroDivisionError("singular matrix")
    inv_d = QONE / d
    adj = adjugate4(a)
    return tuple(tuple(inv_d * adj[i][j] for j in range(4)) for i in range(4))


def raise_second_index(xi):
    """xi^{ab} = xi^a_{b'} h^{b'b}; h is diagonal so this rescales columns."""
    return tuple(tuple(xi[a][b] * H_SIGNS[b] for b in range(4))
                 for a in range(4))


def is_h_antisymmetric(xi) -> bool:
    """Check xi^{ab} + xi^{ba} = 0 exactly (entries rational or ScalarExpr)."""
    up = raise_second_index(xi)
    for a in range(4):
        for b in range(4):
            v = up[a][b] + up[b][a]
            if isinstance(v, ScalarExpr):
                if not v.is_zero():
                    return False
            elif v:
                return False
    return True


# -- generator basis ---------------------------------------------------------

def _generator(entries):
    m = [[QZERO] * 4 for _ in range(4)]
    for (a, b), v in entries.items():
        m[a][b] = Q(v)
    return mat_from_rows(m)


#: ell_1..ell_6 stored at indices 0..5: rotations J1, J2, J3 then boosts
#: K1, K2, K3.  (J_i)^j_k = -eps_{ijk} on spatial slots; (K_i)^0_i =
#: (K_i)^i_0 = 1.
GENERATORS = (
    _generator({(2, 3): -1, (3, 2): 1}),   # J1
    _generator({(3, 1): -1, (1, 3): 1}),   # J2
    _generator({(1, 2): -1, (2, 1): 1}),   # J3
    _generator({(0, 1): 1, (1, 0): 1}),    # K1
    _generator({(0, 2): 1, (2, 0): 1}),    # K2
    _generator({(0, 3): 1, (3, 0): 1}),    # K3
)


def generator(j: int):
    """ell_j as a rational matrix, j in 1..6."""
    if not 1 <= j <= 6:
        raise ValueError(f"vertical index out of range: {j}")
    return GENERATORS[j - 1]


def vertical_from_frame_slot(s: int) -> int:
    """Map a bundle coframe slot 4..9 to the canonical vertical index 1..6."""
    if not 4 <= s <= 9:
        raise ValueError(f"frame slot out of range: {s}")
    return s - 3


def frame_slot_of_vertical(j: int) -> int:
    if not 1 <= j <= 6:
        raise ValueError(f"vertical index out of range: {j}")
    return j + 3


# -- typed wrappers ----------------------------------------------------------

@dataclass(frozen=True)
class LorentzAlgebraElement:
    """xi^a_b with xi^{ab} + xi^{ba} = 0 after raising with h."""

    m: tuple

    def __post_init__(self):
        if not is_h_antisymmetric(self.m):
            raise ValueError("matrix is not h-antisymmetric")


@dataclass(frozen=True)
class PoincareElement:
    """Element of p = g (+) t: a rotation matrix part and a translation."""

    rot: tuple
    trans: tuple


@dataclass(frozen=True)
class PoincareDual:
    """Element of p*: components (lambda_a^b, lambda_a).

    The pairing with (xi^a_b, xi^a) is (1/2) sum lambda_a^b xi^a_b
    + sum lambda_a xi^a.  The 1/2 on the rotational block is the single
    normalization constant that makes the displayed coadjoint formula the
    literal adjoint of the bracket.
    """

    rot_dual: tuple
    trans_dual: tuple


ZERO_VEC = (QZERO,) * 4


def standard_basis():
    """The six generators as LorentzAlgebraElement, in the fixed order."""
    return [LorentzAlgebraElement(g) for g in GENERATORS]


def poincare_basis():
    """Basis (t_0..t_3, ell_1..ell_6) of p, ten elements."""
    basis = []
    for a in range(4):
        t = tuple(QONE if i == a else QZERO for i in range(4))
        basis.append(PoincareElement(ZERO4, t))
    for g in GENERATORS:
        basis.append(PoincareElement(g, ZERO_VEC))
    return basis


def poincare_dual_basis():
    """The dual basis (t^0..t^3, ell^1..ell^6) under the pairing above.

    With the chosen generators the half-trace Gram matrix is the identity,
    so the rotational duals reuse the generator component arrays.
    """
    basis = []
    for a in range(4):
        t = tuple(QONE if i == a else QZERO for i in range(4))
        basis.append(PoincareDual(ZERO4, t))
    for g in GENERATORS:
        basis.append(PoincareDual(g, ZERO_VEC))
    return basis


def pairing(lam: PoincareDual, xi: PoincareElement):
    total = QZERO
    for a in range(4):
        for b in range(4):
            total += Q(1, 2) * lam.rot_dual[a][b] * xi.rot[a][b]
        total += lam.trans_dual[a] * xi.trans[a]
    return total


def bracket(xi: PoincareElement, zeta: PoincareElement) -> PoincareElement:
    """[xi, zeta] = ([xi_rot, zeta_rot], xi_rot zeta_t - zeta_rot xi_t)."""
    rot = mat_commutator(xi.rot, zeta.rot)
    t1 = mat_vec(xi.rot, zeta.trans)
    t2 = mat_vec(zeta.rot, xi.trans)
    return PoincareElement(rot, tuple(t1[i] - t2[i] for i in range(4)))


def structure_constants():
    """c^k_{ij} with [ell_i, ell_j] = c^k_{ij} ell_k; indices 1..6.

    Extracted with the half-trace pairing (the generator Gram matrix is the
    identity) and verified by reconstructing the commutator.
    """
    c = [[[QZERO] * 7 for _ in range(7)] for _ in range(7)]
    for i in range(1, 7):
        for j in range(1, 7):
            comm = mat_commutator(generator(i), generator(j))
            recon = ZERO4
            for k in range(1, 7):
                lk = generator(k)
                coeff = sum(Q(1, 2) * lk[a][b] * comm[a][b]
                            for a in range(4) for b in range(4))
                c[k][i][j] = coeff
                recon = mat_add(recon, mat_scale(coeff, lk))
            if recon != comm:
                raise AssertionError("structure constants do not reconstruct "
                                     f"[ell_{i}, ell_{j}]")
    return c


STRUCTURE_CONSTANTS = structure_constants()


def adjoint(g: "LorentzGroupElement", xi: PoincareElement) -> PoincareElement:
    """Ad_g (xi_rot, xi_t) = (g xi_rot g^-1, g xi_t)."""
    return PoincareElement(mat_mul(g.g, mat_mul(xi.rot, g.ginv)),
                           mat_vec(g.g, xi.trans))


def coadjoint(xi: PoincareElement, lam: PoincareDual) -> PoincareDual:
    """ad*_xi lambda, componentwise:

    (ad*_xi lam)_a^b = xi^c_a lam_c^b - lam_a^c xi^b_c - 2 lam_a xi^b
    (ad*_xi lam)_b   = xi^a_b lam_a
    """
    X, L = xi.rot, lam.rot_dual
    u, v = xi.trans, lam.trans_dual
    rot = tuple(tuple(
        sum(X[c][a] * L[c][b] - L[a][c] * X[b][c] for c in range(4))
        - 2 * v[a] * u[b]
        for b in range(4)) for a in range(4))
    trans = tuple(sum(X[a][b] * v[a] for a in range(4)) for b in range(4))
    return PoincareDual(rot, trans)


# -- exact Lorentz group sampling via the Cayley transform -------------------

@dataclass(frozen=True)
class LorentzGroupElement:
    """Exact rational Lorentz matrix with its exact inverse."""

    g: tuple
    ginv: tuple


IDENTITY_GROUP = LorentzGroupElement(IDENTITY4, IDENTITY4)


class CayleySingular(ValueError):
    """(I + X) was singular; the caller should resample."""


def cayley(x_matrix) -> LorentzGroupElement:
    """g = (I - X)(I + X)^-1 for X in so(3,1) with rational entries.

    X^T h + h X = 0 gives g^T h g = h exactly, and det g = 1; both are
    asserted.  Raises CayleySingular when I + X is not invertible.
    """
    if not is_h_antisymmetric(x_matrix):
        raise ValueError("Cayley parameter is not in so(3,1)")
    plus = mat_add(IDENTITY4, x_matrix)
    minus = mat_sub(IDENTITY4, x_matrix)
    try:
        plus_inv = mat_inverse(plus)
    except ZeroDivisionError:
        raise CayleySingular("I + X is singular") from None
    g = mat_mul(minus, plus_inv)
    ginv = mat_mul(plus, mat_inverse(minus))
    if mat_mul(g, ginv) != IDENTITY4:
        raise AssertionError("Cayley inverse failed")
    if mat_mul(mat_transpose(g), mat_mul(H, g)) != H:
        raise AssertionError("Cayley output does not preserve h")
    if det4(g) != 1:
        raise AssertionError("Cayley output has det != 1")
    return LorentzGroupElement(g, ginv)


def cayley_from_parameters(params) -> LorentzGroupElement:
    """Cayley transform of X = sum_j t_j ell_j for six rationals t_j."""
    x = ZERO4
    for j, t in enumerate(params, start=1):
        x = mat_add(x, mat_scale(Q(t), generator(j)))
    return cayley(x)


def sample_group(rng, max_tries: int = 50) -> LorentzGroupElement:
    """Draw an exact Lorentz element from small random Cayley parameters."""
    for _ in range(max_tries):
        params = [Q(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(6)]
        try:
            return cayley_from_parameters(params)
        except CayleySingular:
            continue
    raise RuntimeError("could not sample a Cayley-regular parameter")


def group_bindings(g: LorentzGroupElement) -> dict:
    """Symbol bindings sending g/ginv entry symbols to this group element."""
    bind = {}
    for a in range(4):
        for b in range(4):
            bind[g_symbol(a, b)] = g.g[a][b]
            bind[ginv_symbol(a, b)] = g.ginv[a][b]
    return bind


# -- the group derivation on the symbol ring ---------------------------------

def _derivation_images(j: int) -> dict:
    """Images of the left-invariant derivation rho_j on g and ginv symbols.

    rho_j g^a_b = g^a_c (ell_j)^c_b,  rho_j ginv^a_b = -(ell_j)^a_c ginv^c_b,
    rho_j x^mu = 0.
    """
    lj = generator(j)
    images: dict = {}
    for a in range(4):
        for b in range(4):
            img: dict = {}
            for c in range(4):
                if lj[c][b]:
                    img[((g_symbol(a, c), 1),)] = lj[c][b]
            images[g_symbol(a, b)] = img
            img_inv: dict = {}
            for c in range(4):
                if lj[a][c]:
                    img_inv[((ginv_symbol(c, b), 1),)] = -lj[a][c]
            images[ginv_symbol(a, b)] = img_inv
    return images


_GROUP_IMAGES = {j: _derivation_images(j) for j in range(1, 7)}


def group_derivative(f: ScalarExpr, j: int) -> ScalarExpr:
    """rho_j acting on a scalar: derivation on the group-entry symbols."""
    if not 1 <= j <= 6:
        raise ValueError(f"vertical index out of range: {j}")
    return f.derive(_GROUP_IMAGES[j])


# -- epsilon equivariance ----------------------------------------------------

def epsilon_equivariance_residual(g, ginv=None):
    """All residuals of eps_{abc}^d conjugation for a 4x4 rational matrix.

    Returns the 4^4 array of
      eps_{abc}^d ginv^b_{b'} ginv^c_{c'} g^{d'}_d - g^{a'}_a eps_{a'b'c'}^{d'}
    indexed by the free tuple (a, b', c', d').
    """
    if ginv is None:
        ginv = mat_inverse(g)
    res = [[[[QZERO] * 4 for _ in range(4)] for _ in range(4)]
           for _ in range(4)]
    for a in range(4):
        for bp in range(4):
            for cp in range(4):
                for dp in range(4):
                    lhs = QZERO
                    for b in range(4):
                        for c in range(4):
                            for d in range(4):
                                s = eps_mixed(a, b, c, d)
                                if s:
                                    lhs += s * ginv[b][bp] * ginv[c][cp] \
                                        * g[dp][d]
                    rhs = QZERO
                    for ap in range(4):
                        s = eps_mixed(ap, bp, cp, dp)
                        if s:
                            rhs += g[ap][a] * s
                    res[a][bp][cp][dp] = lhs - rhs
    return res


def epsilon_equivariance_check(g, ginv=None) -> bool:
    """True iff the epsilon conjugation identity holds for this matrix."""
    res = epsilon_equivariance_residual(g, ginv)
    return all(not res[a][b][c][d]
               for a in range(4) for b in range(4)
               for c in range(4) for d in range(4))
