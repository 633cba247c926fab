"""Space-time field layer: tetrad, spin connection, Cartan structure
equations, curvature/torsion tensors, Einstein and Spin 3-forms.

All fields are polynomial in the coordinates x0..x3.  Form-valued results
carry polynomial coefficients; frame-index tensors (contracted with the
inverse tetrad) are exact fractions (RExpr) with denominator a power of
det(e).  The decomposition signs sigma that the source lemmas leave
ambiguous are pinned once in SIGMA_EINSTEIN / SIGMA_SPIN and re-derived by
the independent brute-force oracle in the verification harness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .scalars import Q, QONE, RExpr, ScalarExpr, X
from .lorentz import (H_SIGNS, LorentzGroupElement, adjugate4, det4,
                      eps_mixed, mat_from_rows)
from .forms import Form, ext_d, wedge, basis_beta, hodge3

#: global decomposition signs under eps_{0123} = +1, h = diag(+,-,-,-);
#: resolved by the epsilon-contraction oracle (harness check einstein.sign /
#: spin.sign) and asserted everywhere else.
SIGMA_EINSTEIN = -1
SIGMA_SPIN = 1


def _check_x_only(entries, label):
    for row in entries:
        for item in row:
            items = item if isinstance(item, (tuple, list)) else (item,)
            for f in items:
                if not f.depends_only_on_x():
                    raise ValueError(f"{label} must depend on x only")


class DegenerateTetrad(ValueError):
    """det(e) vanished (identically, or at every evaluation point)."""


@dataclass(frozen=True)
class TetradField:
    """e^a_mu(x): rows are the Lorentz index a, columns the coordinate mu."""

    e: tuple

    @staticmethod
    def from_rows(rows) -> "TetradField":
        e = mat_from_rows([[ScalarExpr.coerce(v) for v in row]
                           for row in rows])
        _check_x_only(e, "tetrad")
        t = TetradField(e)
        if t.det.is_zero():
            raise DegenerateTetrad("tetrad determinant is identically zero")
        return t

    @staticmethod
    def flat() -> "TetradField":
        return TetradField.from_rows(
            [[1 if a == mu else 0 for mu in range(4)] for a in range(4)])

    @property
    def det(self) -> ScalarExpr:
        return det4(self.e)

    @property
    def adj(self) -> tuple:
        """adj[mu][a] = det(e) e^mu_a, the polynomial scaled inverse frame."""
        return adjugate4(self.e)

    def inverse_entry(self, mu: int, a: int) -> RExpr:
        """e^mu_a as an exact fraction."""
        return RExpr(self.adj[mu][a], self.det)

    def coframe(self) -> list:
        """The four 1-forms e^a = e^a_mu dx^mu."""
        return [Form({1 << mu: self.e[a][mu]
                      for mu in range(4) if self.e[a][mu]})
                for a in range(4)]

    def check_nondegenerate_at(self, points) -> None:
        """Require det(e) != 0 at every given x-binding."""
        det = self.det
        for pt in points:
            if not det.evaluate(pt):
                vals = [str(pt.get(mu, 0)) for mu in range(4)]
                raise DegenerateTetrad(
                    "tetrad degenerate at x = (" + ", ".join(vals) + ")")


@dataclass(frozen=True)
class ConnectionField:
    """A^a_{b mu}(x), antisymmetric after raising: A^{ab} + A^{ba} = 0."""

    a: tuple  # a[i][j][mu] = A^i_{j mu}

    @staticmethod
    def from_entries(entries) -> "ConnectionField":
        a = tuple(tuple(tuple(ScalarExpr.coerce(entries[i][j][mu])
                              for mu in range(4))
                        for j in range(4)) for i in range(4))
        _check_x_only(a, "connection")
        c = ConnectionField(a)
        bad = c.antisymmetry_violation()
        if bad is not None:
            i, j, mu = bad
            raise ValueError(
                f"connection violates antisymmetry at A^{{{i}{j}}}_{mu}")
        return c

    @staticmethod
    def zero() -> "ConnectionField":
        z = ScalarExpr()
        return ConnectionField(tuple(tuple((z,) * 4 for _ in range(4))
                                     for _ in range(4)))

    def antisymmetry_violation(self):
        """First (a, b, mu) with A^{ab}_mu + A^{ba}_mu != 0, else None."""
        for i in range(4):
            for j in range(4):
                for mu in range(4):
                    up_ij = self.a[i][j][mu] * H_SIGNS[j]
                    up_ji = self.a[j][i][mu] * H_SIGNS[i]
                    if not (up_ij + up_ji).is_zero():
                        return (i, j, mu)
        return None

    def upper(self, a: int, b: int, mu: int) -> ScalarExpr:
        """A^{ab}_mu = A^a_{b' mu} h^{b'b}."""
        return self.a[a][b][mu] * H_SIGNS[b]

    def forms(self) -> list:
        """The 4x4 matrix of 1-forms A^a_b."""
        return [[Form({1 << mu: self.a[i][j][mu]
                       for mu in range(4) if self.a[i][j][mu]})
                 for j in range(4)] for i in range(4)]


# -- torsion and curvature ----------------------------------------------------

@dataclass(frozen=True)
class TorsionData:
    forms: tuple          # T^a as 2-forms, a = 0..3
    t_mu_nu: tuple        # T^a_{mu nu}, ScalarExpr, from the component formula
    t_frame: tuple        # T^a_{cd}, RExpr


@dataclass(frozen=True)
class CurvatureData:
    forms: tuple          # F^a_b as 2-forms
    f_up: tuple           # F^{ab}_{mu nu}, ScalarExpr
    f_frame: tuple        # F^a_{bcd}, RExpr
    ricci: tuple          # Ric_{ab}, RExpr
    scalar: RExpr         # S
    einstein_lower: tuple  # G_{ab}, RExpr
    einstein_mixed: tuple  # einstein_mixed[b][a] = G^b_a, RExpr


def torsion(e: TetradField, a_field: ConnectionField) -> TorsionData:
    """T^a = de^a + A^a_b wedge e^b, plus tensor components.

    The form and the displayed component formula are computed independently;
    their agreement is a registered double-entry check.
    """
    cf = e.coframe()
    af = a_field.forms()
    forms = []
    for i in range(4):
        t = ext_d(cf[i])
        for j in range(4):
            t = t + wedge(af[i][j], cf[j])
        forms.append(t)

    t_mu_nu = [[[None] * 4 for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for mu in range(4):
            for nu in range(4):
                val = (e.e[i][nu].diff_x(mu) - e.e[i][mu].diff_x(nu))
                for c in range(4):
                    val = val + a_field.a[i][c][mu] * e.e[c][nu] \
                        - e.e[c][mu] * a_field.a[i][c][nu]
                t_mu_nu[i][mu][nu] = val

    det, adj = e.det, e.adj
    den = det * det
    t_frame = [[[None] * 4 for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for c in range(4):
            for d in range(4):
                num = ScalarExpr()
                for mu in range(4):
                    for nu in range(4):
                        if t_mu_nu[i][mu][nu]:
                            num = num + t_mu_nu[i][mu][nu] \
                                * adj[mu][c] * adj[nu][d]
                t_frame[i][c][d] = RExpr(num, den)

    freeze = lambda x: tuple(tuple(tuple(r) for r in m) for m in x)
    return TorsionData(tuple(forms), freeze(t_mu_nu), freeze(t_frame))


def curvature(a_field: ConnectionField,
              e: TetradField | None = None) -> CurvatureData:
    """F^a_b = dA^a_b + A^a_c wedge A^c_b, plus tensors and the Einstein
    tensor.  Frame components need the tetrad; pass e for those (defaults to
    the flat tetrad)."""
    if e is None:
        e = TetradField.flat()
    af = a_field.forms()
    forms = []
    for i in range(4):
        row = []
        for j in range(4):
            f = ext_d(af[i][j])
            for c in range(4):
                f = f + wedge(af[i][c], af[c][j])
            row.append(f)
        forms.append(row)

    f_up = [[[[None] * 4 for _ in range(4)] for _ in range(4)]
            for _ in range(4)]
    for i in range(4):
        for j in range(4):
            for mu in range(4):
                for nu in range(4):
                    val = (a_field.upper(i, j, nu).diff_x(mu)
                           - a_field.upper(i, j, mu).diff_x(nu))
                    for c in range(4):
                        val = val + a_field.a[i][c][mu] \
                            * a_field.upper(c, j, nu) \
                            - a_field.a[i][c][nu] * a_field.upper(c, j, mu)
                    f_up[i][j][mu][nu] = val

    det, adj = e.det, e.adj
    den = det * det
    f_frame = [[[[None] * 4 for _ in range(4)] for _ in range(4)]
               for _ in range(4)]
    for i in range(4):
        for j in range(4):
            low = [[f_up[i][j][mu][nu] * H_SIGNS[j]
                    for nu in range(4)] for mu in range(4)]
            for c in range(4):
                for d in range(4):
                    num = ScalarExpr()
                    for mu in range(4):
                        for nu in range(4):
                            if low[mu][nu]:
                                num = num + low[mu][nu] \
                                    * adj[mu][c] * adj[nu][d]
                    f_frame[i][j][c][d] = RExpr(num, den)

    ricci = [[None] * 4 for _ in range(4)]
    for a in range(4):
        for b in range(4):
            total = RExpr(0)
            for ap in range(4):
                total = total + f_frame[ap][a][ap][b]
            ricci[a][b] = total
    scalar = RExpr(0)
    for a in range(4):
        scalar = scalar + H_SIGNS[a] * ricci[a][a]
    g_lower = [[ricci[a][b] - RExpr(Q(H_SIGNS[a], 2)) * scalar
                if a == b else ricci[a][b] for b in range(4)]
               for a in range(4)]
    g_mixed = [[H_SIGNS[b] * g_lower[b][a] for a in range(4)]
               for b in range(4)]

    freeze2 = lambda m: tuple(tuple(r) for r in m)
    freeze4 = lambda m: tuple(tuple(tuple(tuple(c) for c in r) for r in p)
                              for p in m)
    return CurvatureData(
        forms=freeze2(forms), f_up=freeze4(f_up), f_frame=freeze4(f_frame),
        ricci=freeze2(ricci), scalar=scalar,
        einstein_lower=freeze2(g_lower), einstein_mixed=freeze2(g_mixed))


# -- dual basis 3-forms and the Einstein / Spin 3-forms ------------------------

def dual_basis_3form(e: TetradField, a: int) -> Form:
    """e^(3)_a = det(e) e^mu_a beta^(3)_mu, assembled from the adjugate so
    the coefficients stay polynomial.  Satisfies e^g ^ e^(3)_a = delta e^(4).
    """
    adj = e.adj
    out = Form()
    for mu in range(4):
        if adj[mu][a]:
            out = out + basis_beta(3, [mu]).scale(adj[mu][a])
    return out


def volume_4form(e: TetradField) -> Form:
    """e^(4) = e^0 ^ e^1 ^ e^2 ^ e^3 = det(e) beta^(4)."""
    cf = e.coframe()
    return wedge(wedge(cf[0], cf[1]), wedge(cf[2], cf[3]))


@dataclass(frozen=True)
class Einstein3Form:
    forms: tuple        # G_a, 3-forms with polynomial coefficients
    hodge: tuple        # hodge[a][mu] = (1/3!) eps~^{mu l m n} G_{a lmn}
    e3_coeff: tuple     # e3_coeff[a][b]: G_a = e3_coeff[a][b] e^(3)_b, RExpr
    mixed_tensor: tuple  # G^b_a from the curvature route, for comparison


def einstein_3form(e: TetradField, a_field: ConnectionField) -> Einstein3Form:
    """G_a = (1/2) eps_{abc}^d F^c_d wedge e^b and its decompositions.

    The e^(3) coefficients satisfy e3_coeff[a][b] = SIGMA_EINSTEIN * G^b_a;
    that equality is a harness check against the epsilon-sum oracle, not an
    assumption used here.
    """
    cur = curvature(a_field, e)
    cf = e.coframe()
    half = Q(1, 2)
    forms = []
    for a in range(4):
        acc = Form()
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    s = eps_mixed(a, b, c, d)
                    if s:
                        acc = acc + wedge(cur.forms[c][d], cf[b]).scale(
                            half * s)
        forms.append(acc)

    hodge = tuple(tuple(hodge3(f)) for f in forms)
    det = e.det
    e3_coeff = tuple(
        tuple(RExpr(sum((hodge[a][mu] * e.e[b][mu] for mu in range(4)),
                        start=ScalarExpr()), det)
              for b in range(4))
        for a in range(4))
    return Einstein3Form(tuple(forms), hodge, e3_coeff, cur.einstein_mixed)


@dataclass(frozen=True)
class Spin3Form:
    forms: tuple        # H_a^b, indexed [a][b]
    hodge: tuple        # hodge[a][b][mu]
    e3_coeff: tuple     # H_a^b = e3_coeff[a][b][a'] e^(3)_{a'}, RExpr
    trace_combo: tuple  # (1/2) h^{bb'}(T^c_{b'c} d^{a'}_a + T^c_{ca} d^{a'}_{b'}
    #                      + T^c_{ab'} d^{a'}_c): the lemma's torsion combination


def spin_3form(e: TetradField, a_field: ConnectionField) -> Spin3Form:
    """H_a^b = (1/2) eps_{cda}^b T^c wedge e^d and its torsion-trace
    decomposition; equality with trace_combo up to SIGMA_SPIN is a harness
    check."""
    tor = torsion(e, a_field)
    cf = e.coframe()
    half = Q(1, 2)
    forms = []
    for a in range(4):
        row = []
        for b in range(4):
            acc = Form()
            for c in range(4):
                for d in range(4):
                    s = eps_mixed(c, d, a, b)
                    if s:
                        acc = acc + wedge(tor.forms[c], cf[d]).scale(half * s)
            row.append(acc)
        forms.append(row)

    hodge = tuple(tuple(tuple(hodge3(forms[a][b])) for b in range(4))
                  for a in range(4))
    det = e.det
    e3_coeff = tuple(
        tuple(tuple(RExpr(sum((hodge[a][b][mu] * e.e[ap][mu]
                               for mu in range(4)), start=ScalarExpr()), det)
                    for ap in range(4))
              for b in range(4))
        for a in range(4))

    t = tor.t_frame
    combo = [[[RExpr(0)] * 4 for _ in range(4)] for _ in range(4)]
    for a in range(4):
        for b in range(4):
            bp = b  # h is diagonal: h^{bb'} = H_SIGNS[b] delta^{bb'}
            hb = Q(H_SIGNS[b], 2)
            for ap in range(4):
                val = RExpr(0)
                if ap == a:
                    for c in range(4):
                        val = val + t[c][bp][c]
                if ap == bp:
                    for c in range(4):
                        val = val + t[c][c][a]
                val = val + t[ap][a][bp]
                combo[a][b][ap] = hb * val
    combo = tuple(tuple(tuple(r) for r in m) for m in combo)
    return Spin3Form(tuple(tuple(r) for r in forms), hodge, e3_coeff, combo)


def bianchi_residuals(e: TetradField, a_field: ConnectionField):
    """Both Bianchi identities as forms (zero iff they hold):

    first[a]  = dT^a + A^a_b ^ T^b - F^a_b ^ e^b
    second[a][b] = dF^a_b + A^a_c ^ F^c_b - F^a_c ^ A^c_b
    """
    tor = torsion(e, a_field)
    cur = curvature(a_field, e)
    af = a_field.forms()
    cf = e.coframe()
    first = []
    for a in range(4):
        r = ext_d(tor.forms[a])
        for b in range(4):
            r = r + wedge(af[a][b], tor.forms[b]) - wedge(cur.forms[a][b],
                                                          cf[b])
        first.append(r)
    second = []
    for a in range(4):
        row = []
        for b in range(4):
            r = ext_d(cur.forms[a][b])
            for c in range(4):
                r = r + wedge(af[a][c], cur.forms[c][b]) \
                    - wedge(cur.forms[a][c], af[c][b])
            row.append(r)
        second.append(row)
    return first, second


def bianchi_check(e: TetradField, a_field: ConnectionField) -> bool:
    first, second = bianchi_residuals(e, a_field)
    return (all(f.is_zero() for f in first)
            and all(f.is_zero() for row in second for f in row))


def gauge_transform_constant(e: TetradField, a_field: ConnectionField,
                             g: LorentzGroupElement):
    """(e, A) -> (g^-1 e, g^-1 A g) for a constant Lorentz matrix g."""
    new_e = [[sum((g.ginv[a][ap] * e.e[ap][mu] for ap in range(4)),
                  start=ScalarExpr()) for mu in range(4)] for a in range(4)]
    new_a = [[[sum((g.ginv[a][ap] * a_field.a[ap][bp][mu] * g.g[bp][b]
                    for ap in range(4) for bp in range(4)),
                   start=ScalarExpr())
               for mu in range(4)] for b in range(4)] for a in range(4)]
    return TetradField.from_rows(new_e), ConnectionField.from_entries(new_a)


# -- seeded random fields ------------------------------------------------------

def _random_entry(rng: random.Random, degree: int, nterms: int) -> ScalarExpr:
    out = ScalarExpr()
    for _ in range(nterms):
        c = Q(rng.randint(-3, 3), rng.randint(1, 2))
        if not c:
            continue
        term = ScalarExpr.constant(c)
        for _ in range(rng.randint(0, degree)):
            term = term * X[rng.randint(0, 3)]
        out = out + term
    return out


def random_tetrad(rng: random.Random, degree: int = 2,
                  perturbations: int = 4) -> TetradField:
    """Flat tetrad plus a few sparse polynomial perturbations; retried until
    nondegenerate."""
    while True:
        rows = [[ScalarExpr.constant(1 if a == mu else 0) for mu in range(4)]
                for a in range(4)]
        for _ in range(perturbations):
            a, mu = rng.randint(0, 3), rng.randint(0, 3)
            rows[a][mu] = rows[a][mu] + _random_entry(rng, degree, 1)
        try:
            return TetradField.from_rows(rows)
        except DegenerateTetrad:
            continue


def random_connection(rng: random.Random, degree: int = 2,
                      slots: int = 4) -> ConnectionField:
    """Sparse antisymmetric connection: a few random A^{ab}_mu slots."""
    up = [[[ScalarExpr() for _ in range(4)] for _ in range(4)]
          for _ in range(4)]
    for _ in range(slots):
        a = rng.randint(0, 3)
        b = rng.randint(0, 3)
        if a == b:
            continue
        mu = rng.randint(0, 3)
        entry = _random_entry(rng, degree, 1)
        up[a][b][mu] = up[a][b][mu] + entry
        up[b][a][mu] = up[b][a][mu] - entry
    lower = [[[up[a][b][mu] * H_SIGNS[b] for mu in range(4)]
              for b in range(4)] for a in range(4)]
    return ConnectionField.from_entries(lower)
