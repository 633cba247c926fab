"""Bundle phase space: lift, equivariance, Legendre, residual systems."""

import random
from dataclasses import replace

import pytest

from cartankit import fields as fl
from cartankit import lorentz as lz
from cartankit import multisym as ms
from cartankit import oracles
from cartankit.fields import (ConnectionField, TetradField, SIGMA_EINSTEIN,
                              SIGMA_SPIN, curvature, random_connection,
                              random_tetrad, torsion)
from cartankit.forms import (Form, equal_by_evaluation, gamma_slot,
                             substitute_group, random_point, GAMMA_MASK)
from cartankit.lorentz import IDENTITY_GROUP, generator, group_bindings
from cartankit.scalars import Q, ScalarExpr, G, GINV, X


def _random_pair(seed, degree=1):
    rng = random.Random(seed)
    return random_tetrad(rng, degree), random_connection(rng, degree)


def test_lift_normalization_and_equivariance():
    e, a = _random_pair(0)
    l = ms.lift(e, a)
    assert ms.check_normalization(l).all_ok
    rep = ms.check_equivariance(l, samples=3)
    assert rep.all_zero
    # structurally zero, not just numerically
    assert all(rep.residual0[c][d][mu][j].is_zero()
               for c in range(4) for d in range(4)
               for mu in range(4) for j in range(6))


def test_lift_at_identity():
    """Evaluating the lift at g = identity gives back (e, A + MC part)."""
    e, a = _random_pair(1)
    l = ms.lift(e, a)
    for c in range(4):
        got = substitute_group(l.alpha[c], IDENTITY_GROUP)
        want = e.coframe()[c]
        assert got == want
    af = a.forms()
    for c in range(4):
        for d in range(4):
            got = substitute_group(l.omega[c][d], IDENTITY_GROUP)
            mc = Form({1 << gamma_slot(j): ScalarExpr.constant(
                generator(j)[c][d]) for j in range(1, 7)
                if generator(j)[c][d]})
            assert got == af[c][d] + mc


def test_normalization_counterexamples():
    e, a = _random_pair(2)
    l = ms.lift(e, a)
    nogamma = ms.LiftedConnection(
        l.alpha,
        tuple(tuple(Form({m: c for m, c in l.omega[i][j].terms.items()
                          if not m & GAMMA_MASK}) for j in range(4))
              for i in range(4)))
    assert not ms.check_normalization(nogamma).all_ok
    alpha_bad = list(l.alpha)
    alpha_bad[2] = alpha_bad[2] + Form({1 << gamma_slot(4):
                                        ScalarExpr.constant(1)})
    assert not ms.check_normalization(
        ms.LiftedConnection(tuple(alpha_bad), l.omega)).all_ok


def test_equivariance_counterexample():
    e, a = _random_pair(3)
    l = ms.lift(e, a)
    eta0 = [[[l.eta0(c, d, mu) for mu in range(4)] for d in range(4)]
            for c in range(4)]
    eta1 = [[G[c][0] * X[0] if mu == 0 else ScalarExpr()
             for mu in range(4)] for c in range(4)]
    _, res1 = ms.equivariance_residuals(eta0, eta1)
    nonzero = any(
        not equal_by_evaluation(res1[c][mu][j], ScalarExpr(), samples=4)
        for c in range(4) for mu in range(4) for j in range(6))
    assert nonzero


def test_lift_curvature_is_conjugated_base_curvature():
    e, a = _random_pair(4)
    l = ms.lift(e, a)
    cur_l = ms.lifted_curvature(l)
    cur_b = curvature(a, e)
    for c in range(4):
        for d in range(4):
            want = Form()
            for ap in range(4):
                for bp in range(4):
                    want = want + cur_b.forms[ap][bp].scale(
                        GINV[c][ap] * G[bp][d])
            assert equal_by_evaluation(cur_l[c][d], want, samples=3)


def test_wec_density_flat_zero_and_gauge_invariance():
    flat = ms.lift(TetradField.flat(), ConnectionField.zero())
    assert ms.wec_density(flat).coefficient.is_zero()
    e, a = _random_pair(5)
    l = ms.lift(e, a)
    dens = ms.wec_density(l)
    rng = random.Random(6)
    xb = random_point(rng)
    vals = set()
    for _ in range(3):
        bind = dict(xb)
        bind.update(group_bindings(lz.sample_group(rng)))
        vals.add(dens.coefficient.evaluate(bind))
    assert len(vals) == 1


def test_section_roundtrip():
    e, a = _random_pair(7, degree=2)
    l = ms.lift(e, a)
    sp = ms.section_roundtrip(l, samples=3)
    assert sp.equivariant
    assert sp.tetrad.e == e.e
    assert sp.connection.a == a.a
    alpha_bad = list(l.alpha)
    alpha_bad[0] = alpha_bad[0] + Form({1: G[0][0] * X[0]})
    sp2 = ms.section_roundtrip(ms.LiftedConnection(tuple(alpha_bad), l.omega),
                               samples=3)
    assert not sp2.equivariant


def test_phase_point_validation():
    rng = random.Random(8)
    pt = ms.sample_phase_point(rng)
    # eta0 must be so(3,1)-valued
    eta0 = [[[pt.eta0[c][d][mu] for mu in range(4)] for d in range(4)]
            for c in range(4)]
    eta0[0][0][0] = Q(1)
    with pytest.raises(ValueError, match="so"):
        replace(pt, eta0=ms._freeze(eta0))
    # psi0^{mu nu} antisymmetry enforced
    psi = [[[[pt.psi0mn[d][c][mu][nu] for nu in range(4)]
             for mu in range(4)] for c in range(4)] for d in range(4)]
    psi[0][1][0][0] = Q(1)
    with pytest.raises(ValueError, match="antisym"):
        replace(pt, psi0mn=ms._freeze(psi))


def test_bivector_antisymmetries():
    rng = random.Random(9)
    pt = ms.sample_phase_point(rng)
    bv = ms.bivector(pt.eta1)
    for d in range(4):
        for c in range(4):
            for mu in range(4):
                for nu in range(4):
                    assert bv[d][c][mu][nu] == -bv[d][c][nu][mu]
    # h-antisymmetric in the Lorentz slots
    for mu in range(4):
        for nu in range(4):
            m = [[bv[d][c][mu][nu] for c in range(4)] for d in range(4)]
            assert lz.is_h_antisymmetric(m)


def test_legendre_gradient_iff_constraints():
    rng = random.Random(10)
    pt_on = ms.sample_phase_point(rng, on_manifold=True)
    rep = ms.legendre_constraints(pt_on)
    assert rep.on_constraint_manifold
    pt_off = ms.sample_phase_point(rng, on_manifold=False)
    rep = ms.legendre_constraints(pt_off)
    assert not rep.on_constraint_manifold
    bv = ms.bivector(pt_off.eta1)
    for d in range(4):
        for c in range(4):
            for mu in range(4):
                for nu in range(4):
                    assert rep.grad0[d][c][mu][nu] == \
                        pt_off.psi0mn[d][c][mu][nu] - bv[d][c][mu][nu]
    for c in range(4):
        for mu in range(4):
            for nu in range(4):
                assert rep.grad1[c][mu][nu] == pt_off.psi1mn[c][mu][nu]


def test_w_affine():
    rng = random.Random(11)
    pt = ms.sample_phase_point(rng, on_manifold=False)
    w0 = ms.legendre_w(pt)
    for _ in range(5):
        idx = (rng.randint(0, 3), rng.randint(0, 3),
               rng.randint(0, 3), rng.randint(0, 3))
        b1 = ms._with_velocity_bump(pt, "v0", idx, Q(1))
        b2 = ms._with_velocity_bump(pt, "v0", idx, Q(2))
        assert ms.legendre_w(b2) - 2 * ms.legendre_w(b1) + w0 == 0


def test_w_trivial_case():
    """Everything zero except sigma: W = sigma."""
    z4 = ms._freeze([[Q(0)] * 4 for _ in range(4)])
    z44 = ms._freeze([[[Q(0)] * 4 for _ in range(4)] for _ in range(4)])
    z443 = ms._freeze([[[Q(0)] * 4 for _ in range(4)] for _ in range(4)])
    z444 = ms._freeze([[[[Q(0)] * 4 for _ in range(4)] for _ in range(4)]
                       for _ in range(4)])
    z46 = ms._freeze([[[Q(0)] * 6 for _ in range(4)] for _ in range(4)])
    z446 = ms._freeze([[[[Q(0)] * 6 for _ in range(4)] for _ in range(4)]
                       for _ in range(4)])
    pt = ms.PhasePoint(sigma=Q(5, 3), eta0=z443, eta1=z4,
                       v0=z444, v1=z44, w0=z446, w1=z46,
                       psi0mn=z444, psi1mn=z44, psi0mj=z446, psi1mj=z46)
    assert ms.legendre_w(pt) == Q(5, 3)
    assert ms.hamiltonian_value(pt) == Q(5, 3)


def test_phi_star_lambda_matches_bivector_form():
    rng = random.Random(12)
    for trial in range(3):
        pt = ms.sample_phase_point(rng, on_manifold=(trial != 1))
        lhs = ms.phi_star_lambda(pt)
        bv = ms.bivector(pt.eta1)
        rhs = Q(0)
        for mu in range(4):
            for nu in range(4):
                brk = ms._bracket_eta0(pt.eta0, mu, nu)
                for d in range(4):
                    for c in range(4):
                        rhs = rhs + bv[d][c][mu][nu] * (
                            pt.v0[c][d][mu][nu] - Q(1, 2) * brk[c][d])
        lv = lhs.constant_value() if isinstance(lhs, ScalarExpr) else lhs
        assert lv == rhs


def test_hvdw_flat_vacuum():
    l = ms.lift(TetradField.flat(), ConnectionField.zero())
    res = ms.hvdw_residuals(l, ms.MomentumField.zero())
    assert all(res.einstein[a][s].is_zero()
               for a in range(4) for s in range(4))
    assert all(res.spin[a][b][s].is_zero()
               for a in range(4) for b in range(4) for s in range(4))


def test_hvdw_einstein_family_vs_oracle():
    e, a = _random_pair(13)
    l = ms.lift(e, a)
    res = ms.hvdw_residuals(l, ms.MomentumField.zero())
    nums, den = oracles.einstein_hodge_rhs(e.e, a.a)
    for i in range(4):
        for s in range(4):
            got = substitute_group(res.einstein[i][s], IDENTITY_GROUP)
            assert (got * den - 2 * SIGMA_EINSTEIN * nums[i][s]).is_zero()


def test_momentum_field_degree_cap():
    entry = G[0][0] * G[1][1] * G[2][2]
    psi0 = [[[[ScalarExpr() for _ in range(6)] for _ in range(4)]
             for _ in range(4)] for _ in range(4)]
    psi1 = [[[ScalarExpr() for _ in range(6)] for _ in range(4)]
            for _ in range(4)]
    psi1[0][0][0] = entry
    with pytest.raises(ms.GroupDegreeError):
        ms.MomentumField.from_entries(psi0, psi1)


def test_ec_residuals_momentum_free_cases():
    r1, r2 = ms.einstein_cartan_residuals(
        TetradField.flat(), ConnectionField.zero(), ms.MomentumField.zero())
    assert all(r1[b][a].is_zero() for b in range(4) for a in range(4))
    assert all(r2[a][c][d].is_zero()
               for a in range(4) for c in range(4) for d in range(4))
    e, a = _random_pair(14)
    cur = curvature(a, e)
    tor = torsion(e, a)
    r1, r2 = ms.einstein_cartan_residuals(e, a, ms.MomentumField.zero())
    for b in range(4):
        for i in range(4):
            assert (r1[b][i] - cur.einstein_mixed[b][i]).is_zero()
    for i in range(4):
        for c in range(4):
            for d in range(4):
                assert (r2[i][c][d] - tor.t_frame[i][c][d]).is_zero()


def test_xi_conjugation():
    rng = random.Random(15)
    m = ms.random_momentum(rng)
    res0, res1 = ms.xi_conjugation_residuals(m)
    zero = ScalarExpr()
    for d in range(4):
        for c in range(4):
            for mu in range(4):
                assert equal_by_evaluation(res0[d][c][mu], zero, samples=3)
    for a in range(4):
        for mu in range(4):
            assert equal_by_evaluation(res1[a][mu], zero, samples=3)


def test_constcalcul_identity():
    rng = random.Random(16)
    eta0 = [[[ScalarExpr() for _ in range(4)] for _ in range(4)]
            for _ in range(4)]
    for mu in range(4):
        m = ms.random_g_matrix(rng)
        for c in range(4):
            for d in range(4):
                if m[c][d]:
                    eta0[c][d][mu] = X[mu] * m[c][d]
    eta1 = [[ScalarExpr.constant(Q(rng.randint(-2, 2), rng.randint(1, 2)))
             for _ in range(4)] for _ in range(4)]
    lhs, rhs = ms.constcalcul_sides(eta0, eta1)
    for c in range(4):
        for d in range(4):
            assert lhs[c][d] == rhs[c][d].scale(ms.SIGMA_CONSTCALCUL)
