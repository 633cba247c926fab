"""Exterior algebra: wedge, interior, d, basis families, evaluation."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cartankit import forms as fm
from cartankit import lorentz as lz
from cartankit.forms import (Form, basis_beta, basis_gamma, beta_upper, d_dx,
                             equal_by_evaluation, ext_d, gamma_upper, hodge3,
                             interior, rho, wedge, VOLUME_BETA, VOLUME_GAMMA)
from cartankit.scalars import Q, ScalarExpr, G, GINV, X


def rand_form(rng, nterms=3, gdeg=2):
    terms = {}
    for _ in range(nterms):
        mask = rng.randint(0, 1023)
        f = ScalarExpr.constant(Q(rng.randint(-4, 4), rng.randint(1, 2)))
        for _ in range(rng.randint(0, 3)):
            f = f * X[rng.randint(0, 3)]
        for _ in range(rng.randint(0, gdeg)):
            f = f * (G if rng.random() < 0.5 else GINV)[
                rng.randint(0, 3)][rng.randint(0, 3)]
        if f:
            terms[mask] = terms.get(mask, ScalarExpr()) + f
    return Form({m: c for m, c in terms.items() if c})


def test_wedge_basics():
    dx0, dx1 = Form.basis(1), Form.basis(2)
    assert wedge(dx0, dx1) == Form.basis(3)          # beta^{01}
    assert wedge(dx0, dx0).is_zero()
    assert wedge(dx1, dx0) == Form.basis(3).scale(-1)


def test_wedge_bilinear_associative():
    rng = random.Random(0)
    for _ in range(15):
        a, b, c = rand_form(rng), rand_form(rng), rand_form(rng)
        assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_wedge_graded_anticommutative():
    rng = random.Random(1)
    for _ in range(10):
        p, q = rng.randint(0, 4), rng.randint(0, 4)
        masks_p = [m for m in range(1024) if bin(m).count("1") == p]
        masks_q = [m for m in range(1024) if bin(m).count("1") == q]
        a = Form.basis(rng.choice(masks_p), Q(rng.randint(1, 5)))
        b = Form.basis(rng.choice(masks_q), Q(rng.randint(1, 5)))
        sign = -1 if (p * q) % 2 else 1
        assert wedge(a, b) == wedge(b, a).scale(sign)


def test_beta_upper_vs_basis_beta():
    # beta^{mu nu} ^ beta2_{rho sigma} = delta2 beta4 (one frozen case)
    lhs = wedge(beta_upper([0, 1]), basis_beta(2, [0, 1]))
    assert lhs == VOLUME_BETA
    lhs = wedge(beta_upper([0, 1]), basis_beta(2, [1, 0]))
    assert lhs == VOLUME_BETA.scale(-1)
    lhs = wedge(beta_upper([0, 1]), basis_beta(2, [2, 3]))
    assert lhs.is_zero()


def test_basis_validation():
    with pytest.raises(ValueError):
        basis_beta(5, [])
    with pytest.raises(ValueError):
        basis_beta(2, [1, 1])
    with pytest.raises(ValueError):
        basis_beta(3, [4])
    with pytest.raises(ValueError):
        basis_gamma(4, [0, 1])
    with pytest.raises(ValueError):
        fm.VectorIndex("vertical", 7)
    with pytest.raises(ValueError):
        fm.VectorIndex("spooky", 1)


def test_basis_beta_examples():
    # beta3_0 = dx1^dx2^dx3
    assert basis_beta(3, [0]) == Form.basis(0b1110)
    # gamma5_1 = rho_1 -| gamma6
    assert basis_gamma(5, [1]) == interior(rho(1), VOLUME_GAMMA)
    # interior of non-member vanishes
    assert interior(d_dx(0), Form.basis(2)).is_zero()
    # full contraction gives the permutation sign
    for p in itertools.permutations(range(4)):
        got = basis_beta(0, list(p)).coefficient(0)
        assert got == ScalarExpr.constant(lz.EPS[p[0]][p[1]][p[2]][p[3]])


def test_interior_order_convention():
    """interior([v1, v2], a) applies v1 innermost: (v1 ^ v2) -| a."""
    a = VOLUME_BETA
    seq = interior([d_dx(0), d_dx(1)], a)
    assert seq == interior(d_dx(1), interior(d_dx(0), a))
    assert seq == basis_beta(2, [0, 1])


def test_interior_graded_derivation_random():
    rng = random.Random(2)
    vectors = [d_dx(mu) for mu in range(4)] + [rho(i) for i in range(1, 7)]
    for _ in range(30):
        v = rng.choice(vectors)
        a, b = rand_form(rng, 2, 0), rand_form(rng, 2, 0)
        for m, c in list(a.terms.items()):
            # make a homogeneous to use (-1)^{deg a}
            a_h = Form({m: c})
            lhs = interior(v, wedge(a_h, b))
            sign = -1 if bin(m).count("1") % 2 else 1
            rhs = wedge(interior(v, a_h), b) \
                + wedge(a_h, interior(v, b)).scale(sign)
            assert lhs == rhs


def test_ext_d_product_rule_example():
    # d(x1 dx0) = dx1 ^ dx0 = -beta^{01}
    got = ext_d(Form.basis(1, X[1]))
    assert got == beta_upper([0, 1]).scale(-1)


def test_dd_zero_mixed_symbols():
    rng = random.Random(3)
    for _ in range(30):
        a = rand_form(rng)
        assert ext_d(ext_d(a)).is_zero()


def test_d_gamma_jacobi():
    for k in range(1, 7):
        gk = Form.basis(1 << fm.gamma_slot(k))
        assert ext_d(gk) == fm.DGAMMA[k]
        assert ext_d(ext_d(gk)).is_zero()


def test_d_leibniz():
    rng = random.Random(4)
    for _ in range(10):
        m = rng.randint(0, 1023)
        a = Form.basis(m, X[rng.randint(0, 3)] * G[1][1] + rng.randint(1, 3))
        b = rand_form(rng, 2)
        p = bin(m).count("1")
        lhs = ext_d(wedge(a, b))
        rhs = wedge(ext_d(a), b) + wedge(a, ext_d(b)).scale(
            -1 if p % 2 else 1)
        assert lhs == rhs


def test_hodge3_matches_beta3_expansion():
    rng = random.Random(5)
    for _ in range(10):
        comps = [ScalarExpr.constant(Q(rng.randint(-3, 3))) * X[rng.randint(0, 3)]
                 for _ in range(4)]
        f = Form()
        for s in range(4):
            f = f + basis_beta(3, [s]).scale(comps[s])
        got = hodge3(f)
        assert all(got[s] == comps[s] for s in range(4))


def test_equal_by_evaluation_group_relations():
    # Kronecker delta from g ginv contraction
    expr = ScalarExpr()
    for c in range(4):
        expr = expr + G[0][c] * GINV[c][1]
    assert equal_by_evaluation(expr, ScalarExpr(), samples=4, seed=0)
    diag = ScalarExpr()
    for c in range(4):
        diag = diag + G[0][c] * GINV[c][0]
    assert equal_by_evaluation(diag, ScalarExpr.constant(1), samples=4)
    # free polynomial inequality is decided exactly
    assert not equal_by_evaluation(X[0], X[1], samples=1)
    assert equal_by_evaluation(X[0] + X[1], X[1] + X[0], samples=1)
    # Lorentz relation g^T h g = h holds only on the group
    expr = ScalarExpr()
    for a in range(4):
        expr = expr + G[a][0] * lz.H_SIGNS[a] * G[a][0]
    assert equal_by_evaluation(expr, ScalarExpr.constant(1), samples=6)
    with pytest.raises(ValueError):
        equal_by_evaluation(X[0], X[0], samples=0)


def test_equal_by_evaluation_deterministic():
    a = G[0][0] * GINV[0][0]
    assert equal_by_evaluation(a, a, samples=2, seed=9) == \
        equal_by_evaluation(a, a, samples=2, seed=9)


def test_substitute_group():
    rng = random.Random(6)
    g = lz.sample_group(rng)
    f = Form.basis(1, G[0][0] + X[0])
    out = fm.substitute_group(f, g)
    assert out.coefficient(1) == X[0] + ScalarExpr.constant(g.g[0][0])
