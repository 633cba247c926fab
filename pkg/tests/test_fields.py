"""Space-time layer: structure equations, Einstein/Spin 3-forms, Bianchi."""

import random

import pytest

from cartankit import fields as fl
from cartankit import lorentz as lz
from cartankit import oracles
from cartankit.fields import (ConnectionField, DegenerateTetrad, TetradField,
                              SIGMA_EINSTEIN, SIGMA_SPIN, bianchi_check,
                              curvature, dual_basis_3form, einstein_3form,
                              random_connection, random_tetrad, spin_3form,
                              torsion, volume_4form)
from cartankit.forms import Form, basis_beta, beta_upper, wedge
from cartankit.scalars import Q, RExpr, ScalarExpr, X


def test_validation():
    with pytest.raises(DegenerateTetrad):
        TetradField.from_rows([[0] * 4] * 4)
    with pytest.raises(ValueError):
        # x-dependence only
        bad = [[ScalarExpr.symbol(5) if a == mu == 0 else
                ScalarExpr.constant(1 if a == mu else 0)
                for mu in range(4)] for a in range(4)]
        TetradField.from_rows(bad)
    entries = [[[ScalarExpr() for _ in range(4)] for _ in range(4)]
               for _ in range(4)]
    entries[0][0][1] = ScalarExpr.constant(1)  # A^{00} != 0 breaks antisym
    with pytest.raises(ValueError, match="antisymmetry"):
        ConnectionField.from_entries(entries)


def test_degenerate_at_point():
    e = TetradField.from_rows(
        [[X[0] if a == mu == 0 else (1 if a == mu else 0)
          for mu in range(4)] for a in range(4)])
    with pytest.raises(DegenerateTetrad):
        e.check_nondegenerate_at([{0: Q(0), 1: Q(0), 2: Q(0), 3: Q(0)}])
    e.check_nondegenerate_at([{0: Q(1), 1: Q(0), 2: Q(0), 3: Q(0)}])


def test_flat_data():
    e, a = TetradField.flat(), ConnectionField.zero()
    tor = torsion(e, a)
    cur = curvature(a, e)
    assert all(f.is_zero() for f in tor.forms)
    assert all(f.is_zero() for row in cur.forms for f in row)
    assert cur.scalar.is_zero()
    assert all(cur.einstein_mixed[b][i].is_zero()
               for b in range(4) for i in range(4))


def test_constant_connection_torsion():
    """e = delta, A constant: T^a = A^a_b ^ dx^b componentwise."""
    rng = random.Random(0)
    e = TetradField.flat()
    a = random_connection(rng, degree=0)
    tor = torsion(e, a)
    af = a.forms()
    for i in range(4):
        want = Form()
        for b in range(4):
            want = want + wedge(af[i][b], Form.basis(1 << b))
        assert tor.forms[i] == want


def test_constant_connection_curvature():
    """Constant A: F = A ^ A only, the derivative terms vanish."""
    rng = random.Random(1)
    a = random_connection(rng, degree=0)
    cur = curvature(a)
    af = a.forms()
    for i in range(4):
        for j in range(4):
            want = Form()
            for c in range(4):
                want = want + wedge(af[i][c], af[c][j])
            assert cur.forms[i][j] == want


def test_form_tensor_roundtrip():
    rng = random.Random(2)
    e = random_tetrad(rng, 2)
    a = random_connection(rng, 2)
    tor = torsion(e, a)
    for i in range(4):
        f = Form()
        for mu in range(4):
            for nu in range(4):
                c = tor.t_mu_nu[i][mu][nu]
                if c:
                    f = f + beta_upper([mu, nu]).scale(c * Q(1, 2))
        assert f == tor.forms[i]
    # frame components contract back: T^a_{mu nu} = T^a_{cd} e^c_mu e^d_nu
    bind = {0: Q(1), 1: Q(2), 2: Q(-1), 3: Q(1, 2)}
    e.check_nondegenerate_at([bind])
    for i in range(4):
        for mu in range(4):
            for nu in range(4):
                want = tor.t_mu_nu[i][mu][nu].evaluate(bind)
                got = 0
                for c in range(4):
                    for d in range(4):
                        got += tor.t_frame[i][c][d].evaluate(bind) \
                            * e.e[c][mu].evaluate(bind) \
                            * e.e[d][nu].evaluate(bind)
                assert got == want


def test_scalar_curvature_double_trace():
    rng = random.Random(3)
    e = random_tetrad(rng, 1)
    a = random_connection(rng, 1)
    cur = curvature(a, e)
    alt = RExpr(0)
    for ap in range(4):
        for b in range(4):
            alt = alt + lz.H_SIGNS[b] * cur.f_frame[ap][b][ap][b]
    assert (alt - cur.scalar).is_zero()
    # h-double-trace of Ricci
    alt2 = RExpr(0)
    for a_ in range(4):
        alt2 = alt2 + lz.H_SIGNS[a_] * cur.ricci[a_][a_]
    assert (alt2 - cur.scalar).is_zero()


def test_bianchi_random_fields():
    rng = random.Random(4)
    for _ in range(3):
        e = random_tetrad(rng, 2)
        a = random_connection(rng, 2)
        assert bianchi_check(e, a)


def test_dual_basis_3form():
    flat = TetradField.flat()
    for a in range(4):
        assert dual_basis_3form(flat, a) == basis_beta(3, [a])
    rng = random.Random(5)
    e = random_tetrad(rng, 2)
    e4 = volume_4form(e)
    cf = e.coframe()
    for g in range(4):
        for a in range(4):
            want = e4 if g == a else Form()
            assert wedge(cf[g], dual_basis_3form(e, a)) == want
    # diag(2,1,1,1): det = 2, e^mu_0 = 1/2 -> e3_0 = beta3_0, e3_1 = 2 beta3_1
    scaled = TetradField.from_rows(
        [[2 if a == mu == 0 else (1 if a == mu else 0) for mu in range(4)]
         for a in range(4)])
    assert dual_basis_3form(scaled, 0) == basis_beta(3, [0])
    assert dual_basis_3form(scaled, 1) == basis_beta(3, [1]).scale(2)


def test_einstein_3form_flat_and_decomposition():
    flat = einstein_3form(TetradField.flat(), ConnectionField.zero())
    assert all(f.is_zero() for f in flat.forms)
    rng = random.Random(6)
    e = random_tetrad(rng, 1)
    a = random_connection(rng, 1)
    e3 = einstein_3form(e, a)
    for i in range(4):
        for b in range(4):
            want = SIGMA_EINSTEIN * e3.mixed_tensor[b][i]
            assert (e3.e3_coeff[i][b] - want).is_zero()
    # hodge identity against the epsilon-sum oracle
    nums, den = oracles.einstein_hodge_rhs(e.e, a.a)
    for i in range(4):
        for mu in range(4):
            assert (e3.hodge[i][mu] * den
                    - SIGMA_EINSTEIN * nums[i][mu]).is_zero()


def test_spin_3form_torsion_linearity():
    # torsion-free data (flat) -> H = 0
    s3 = spin_3form(TetradField.flat(), ConnectionField.zero())
    assert all(f.is_zero() for row in s3.forms for f in row)
    rng = random.Random(7)
    e = random_tetrad(rng, 1)
    a = random_connection(rng, 1)
    s3 = spin_3form(e, a)
    for i in range(4):
        for b in range(4):
            for ap in range(4):
                want = SIGMA_SPIN * s3.trace_combo[i][b][ap]
                assert (s3.e3_coeff[i][b][ap] - want).is_zero()
    nums, den = oracles.spin_hodge_rhs(e.e, a.a)
    for i in range(4):
        for b in range(4):
            for mu in range(4):
                assert (s3.hodge[i][b][mu] * den
                        - SIGMA_SPIN * nums[i][b][mu]).is_zero()


def test_gauge_covariance_constant_g():
    rng = random.Random(8)
    e = random_tetrad(rng, 1)
    a = random_connection(rng, 1)
    e3 = einstein_3form(e, a)
    g = lz.sample_group(rng)
    e2, a2 = fl.gauge_transform_constant(e, a, g)
    e3t = einstein_3form(e2, a2)
    for i in range(4):
        want = Form()
        for ap in range(4):
            if g.g[ap][i]:
                want = want + e3.forms[ap].scale(g.g[ap][i])
        assert e3t.forms[i] == want
