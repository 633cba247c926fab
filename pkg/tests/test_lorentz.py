"""so(3,1)/Poincare layer: brackets, duals, Cayley sampling, derivations."""

import random

import pytest

from cartankit import lorentz as lz
from cartankit.scalars import Q, ScalarExpr, G, GINV
from cartankit import oracles
from cartankit.forms import random_point


def test_generators_are_h_antisymmetric():
    for el in lz.standard_basis():
        up = lz.raise_second_index(el.m)
        for a in range(4):
            for b in range(4):
                assert up[a][b] + up[b][a] == 0


def test_rotation_subalgebra():
    # [J1, J2] = J3 cyclically, computed from the 4x4 matrices
    c = lz.STRUCTURE_CONSTANTS
    assert c[3][1][2] == 1 and c[1][2][3] == 1 and c[2][3][1] == 1
    # boosts close onto rotations with a minus sign
    assert c[3][4][5] == -1
    # mixed: [J_i, K_j] = eps_ijk K_k
    assert c[6][1][5] == 1


def test_structure_constants_antisymmetric():
    c = lz.STRUCTURE_CONSTANTS
    for k in range(1, 7):
        for i in range(1, 7):
            assert c[k][i][i] == 0
            for j in range(1, 7):
                assert c[k][i][j] == -c[k][j][i]


def test_bracket_properties():
    basis = lz.poincare_basis()
    for xi in basis:
        z = lz.bracket(xi, xi)
        assert all(not v for row in z.rot for v in row)
        assert all(not v for v in z.trans)
    # translations commute
    t1, t2 = basis[0], basis[3]
    z = lz.bracket(t1, t2)
    assert all(not v for row in z.rot for v in row) and not any(z.trans)


def test_jacobi_on_random_elements():
    rng = random.Random(0)

    def rand_elem():
        rot = lz.ZERO4
        for j in range(1, 7):
            rot = lz.mat_add(rot, lz.mat_scale(Q(rng.randint(-3, 3)),
                                               lz.generator(j)))
        return lz.PoincareElement(rot, tuple(Q(rng.randint(-3, 3))
                                             for _ in range(4)))

    for _ in range(15):
        x, y, z = rand_elem(), rand_elem(), rand_elem()
        s1 = lz.bracket(x, lz.bracket(y, z))
        s2 = lz.bracket(y, lz.bracket(z, x))
        s3 = lz.bracket(z, lz.bracket(x, y))
        for a in range(4):
            assert all(s1.rot[a][b] + s2.rot[a][b] + s3.rot[a][b] == 0
                       for b in range(4))
            assert s1.trans[a] + s2.trans[a] + s3.trans[a] == 0


def test_adjoint():
    rng = random.Random(1)
    basis = lz.poincare_basis()
    ident = lz.IDENTITY_GROUP
    for xi in basis:
        got = lz.adjoint(ident, xi)
        assert got.rot == xi.rot and got.trans == xi.trans
    for _ in range(10):
        g = lz.sample_group(rng)
        ginv_el = lz.LorentzGroupElement(g.ginv, g.g)
        for xi in basis:
            back = lz.adjoint(ginv_el, lz.adjoint(g, xi))
            assert back.rot == xi.rot and back.trans == xi.trans
            # Ad_g preserves h-antisymmetry
            assert lz.is_h_antisymmetric(lz.adjoint(g, xi).rot)


def test_coadjoint_translation_slot():
    """ad*_xi on a pure-translation dual fills only the rotational slot
    through the -2 lam xi term, and the translation slot through xi_rot."""
    lam = lz.PoincareDual(lz.ZERO4, (Q(1), 0, 0, 0))
    xi = lz.PoincareElement(lz.generator(4), (Q(2), 0, 0, 0))
    out = lz.coadjoint(xi, lam)
    # translation slot: xi^a_b lam_a = column 0 of K1 scaled
    assert out.trans_dual == (0, Q(1), 0, 0)
    # rotational slot: -2 lam_a xi^b
    assert out.rot_dual[0][0] == Q(-4)


def test_cayley_exactness_and_rejection():
    rng = random.Random(2)
    for _ in range(50):
        g = lz.sample_group(rng)
        assert lz.mat_mul(lz.mat_transpose(g.g),
                          lz.mat_mul(lz.H, g.g)) == lz.H
        assert lz.det4(g.g) == 1
        assert lz.mat_mul(g.g, g.ginv) == lz.IDENTITY4
    assert lz.cayley_from_parameters([0] * 6).g == lz.IDENTITY4
    # K1 with parameter 1 makes I + X singular
    with pytest.raises(lz.CayleySingular):
        lz.cayley_from_parameters([0, 0, 0, 1, 0, 0])
    with pytest.raises(ValueError):
        lz.cayley(((Q(1),) * 4,) * 4)


def test_group_derivative_rules():
    for j in range(1, 7):
        lj = lz.generator(j)
        for a in range(4):
            for b in range(4):
                want = ScalarExpr()
                for c in range(4):
                    want = want + G[a][c] * lj[c][b]
                assert lz.group_derivative(G[a][b], j) == want
                want = ScalarExpr()
                for c in range(4):
                    want = want - lj[a][c] * GINV[c][b]
                assert lz.group_derivative(GINV[a][b], j) == want
        assert lz.group_derivative(ScalarExpr.constant(5), j).is_zero()


def test_group_derivative_leibniz_kills_contractions():
    for j in range(1, 7):
        for a in range(4):
            for b in range(4):
                f = ScalarExpr()
                for c in range(4):
                    f = f + G[a][c] * GINV[c][b]
                assert lz.group_derivative(f, j).is_zero()


def test_group_derivative_fd_oracle():
    rng = random.Random(3)
    for _ in range(5):
        g = lz.sample_group(rng)
        xb = random_point(rng)
        f = G[0][1] * GINV[2][3] + G[1][1] * G[2][2]
        bind = dict(xb)
        bind.update(lz.group_bindings(g))
        for j in range(1, 7):
            want = lz.group_derivative(f, j).evaluate(bind)
            got = oracles.group_derivative_fd(f, j, g, xb)
            assert got == want


def test_epsilon_equivariance():
    rng = random.Random(4)
    assert lz.epsilon_equivariance_check(lz.IDENTITY4)
    for _ in range(5):
        g = lz.sample_group(rng)
        assert lz.epsilon_equivariance_check(g.g, g.ginv)
    bad = tuple(tuple(Q(2) if i == j == 0 else (Q(1) if i == j else Q(0))
                      for j in range(4)) for i in range(4))
    assert not lz.epsilon_equivariance_check(bad)


def test_vertical_index_alias():
    assert lz.vertical_from_frame_slot(4) == 1
    assert lz.frame_slot_of_vertical(6) == 9
    with pytest.raises(ValueError):
        lz.vertical_from_frame_slot(3)
    with pytest.raises(ValueError):
        lz.frame_slot_of_vertical(7)


def test_pairing_dual_basis():
    basis = lz.poincare_basis()
    duals = lz.poincare_dual_basis()
    for i, lam in enumerate(duals):
        for j, xi in enumerate(basis):
            assert lz.pairing(lam, xi) == (1 if i == j else 0)
