"""The identity suite run by ``nlconn verify`` on one manifest instance."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable

from . import connection as cn
from . import hermitian as hm
from .calculus import (
    VectorForm,
    apply_vf,
    compose,
    fn_bracket,
    insert_vf,
    interior,
    is_homogeneous,
    is_semibasic,
    pullback,
)
from .manifest import Manifest, torsion_form
from .randomgen import random_semispray_vertical, random_vector_field
from .ratpoly import MultiPoly
from .report import CheckRecord, VerificationReport, render_residual
from .tangent import (
    StructureError,
    TangentStructure,
    canonical_L,
    custom_structure,
    lemma2_reconstruct,
    make_semispray,
    sample_points,
    semispray_from_field,
    spray_by_degree,
    validate_L,
)

HALF = Fraction(1, 2)
RANDOM_FIELDS = 3


class Skip(Exception):
    """Precondition of a check does not hold on this instance."""


class Blocked(Exception):
    """An upstream object could not be built; dependent checks fail."""


def nonzero(*objs) -> list:
    return [o for o in objs if not o.is_zero()]


@dataclass
class Instance:
    manifest: Manifest
    seed: int
    extra_points: int = 4

    # -- structure and semispray --------------------------------------------

    @cached_property
    def points(self) -> list:
        N = 2 * self.manifest.dimension_n
        pts = list(self.manifest.points)
        for p in sample_points(N, self.seed, self.extra_points):
            if p not in pts:
                pts.append(p)
        return pts

    @cached_property
    def ts(self) -> TangentStructure:
        m = self.manifest
        if m.structure == "canonical":
            return canonical_L(m.dimension_n)
        st = m.structure
        try:
            return custom_structure(
                VectorForm.from_matrix(st["L"]),
                [VectorForm.field(f) for f in st["kernel_frame"]],
                VectorForm.field(st["C"]),
                self.points,
            )
        except StructureError as exc:
            raise Blocked(str(exc)) from exc

    @cached_property
    def L_report(self):
        m = self.manifest
        if m.structure == "canonical":
            ts = canonical_L(m.dimension_n)
            return validate_L(ts.L, ts.kernel_frame, self.points)
        st = m.structure
        return validate_L(VectorForm.from_matrix(st["L"]), [VectorForm.field(f) for f in st["kernel_frame"]], self.points)

    @cached_property
    def sp(self):
        m = self.manifest
        try:
            if m.semispray is not None:
                return semispray_from_field(VectorForm.field(m.semispray), self.ts)
            return make_semispray(m.semispray_vertical, self.ts)
        except StructureError as exc:
            raise Blocked(str(exc)) from exc

    @cached_property
    def t(self):
        m = self.manifest
        if m.strong_torsion is None:
            return VectorForm.zero(2 * m.dimension_n, 1) if m.dimension_n else None
        return torsion_form(m.strong_torsion, m.dimension_n)

    @cached_property
    def rng(self):
        return random.Random(self.seed)

    @cached_property
    def random_fields(self) -> list:
        rng = random.Random(self.seed * 7919 + 1)
        return [random_vector_field(rng, self.ts.num_vars) for _ in range(RANDOM_FIELDS)]

    @cached_property
    def other_semispray(self):
        """A second seeded semispray S' != S."""
        rng = random.Random(self.seed * 7919 + 2)
        if self.ts.canonical:
            return make_semispray(random_semispray_vertical(rng, self.ts.n), self.ts)
        # custom L: shift S by a kernel-frame field
        return semispray_from_field(self.sp.S + self.ts.kernel_frame[0], self.ts)

    # -- connection ---------------------------------------------------------

    @cached_property
    def compat_residual(self):
        return cn.compatibility_residual(self.sp, self.t, self.ts)

    @cached_property
    def conn(self) -> cn.LConnection:
        try:
            return cn.build_from_decomposition(self.sp, self.t, self.ts, verify=False)
        except (cn.CompatibilityError, cn.InvalidConnection) as exc:
            raise Blocked(str(exc)) from exc

    @cached_property
    def spray_conn(self) -> cn.LConnection:
        """``[L, S]`` for the manifest semispray."""
        return cn.from_semispray(self.sp, self.ts)

    @cached_property
    def S(self):
        """Canonical semispray of the connection."""
        if not self.ts.canonical:
            return cn.canonical_semispray(self.conn, self.ts, reference=self.sp)
        return cn.canonical_semispray(self.conn, self.ts)

    @cached_property
    def C_gamma(self):
        return fn_bracket(self.ts.C, self.conn.gamma)

    @cached_property
    def tor(self) -> cn.TorsionData:
        return cn.torsion(self.conn, self.ts, self.S, cross_check=False)

    @cached_property
    def R(self) -> VectorForm:
        return fn_bracket(self.conn.h, self.conn.h) * (-HALF)

    @cached_property
    def R_spray(self) -> VectorForm:
        c = self.spray_conn
        return fn_bracket(c.h, c.h) * (-HALF)

    @cached_property
    def F(self) -> VectorForm:
        return compose(self.conn.h, fn_bracket(self.S.S, self.conn.h)) - self.ts.L

    @cached_property
    def metric(self) -> hm.VerticalMetric:
        if self.manifest.metric is None:
            return hm.identity_metric(self.ts)
        return hm.VerticalMetric(g=tuple(tuple(r) for r in self.manifest.metric))

    @cached_property
    def g_gamma(self) -> hm.ExtendedMetric:
        return hm.extend_metric(self.metric, self.conn, self.ts)

    def need_canonical(self):
        if not self.ts.canonical:
            raise Skip("defined for the canonical L only")

    def need_homogeneous(self):
        if not self.conn.homogeneous:
            raise Skip("connection is not homogeneous")


# ---------------------------------------------------------------------------
# checks: each returns None/empty (pass) or a residual object (fail),
# or a (ok, residual) pair for equivalence-type statements.

CHECKS: list = []


def check(check_id: str, statement: str, ref: str):
    def deco(fn: Callable):
        CHECKS.append((check_id, statement, ref, fn))
        return fn

    return deco


@check("L01", "[L,L] = 0", "integrable almost-tangent structure")
def _l01(ins: Instance):
    return ins.L_report.checks["bracket_LL_zero"].residual


@check("L02", "L o L = 0", "almost-tangent structure")
def _l02(ins):
    return ins.L_report.checks["L_squared_zero"].residual


@check("L03", "rank L = n at sample points; kernel frame spans Ker L", "image of L equals kernel")
def _l03(ins):
    bad = [f"{k}: {v.residual}" if isinstance(v.residual, str) else k
           for k, v in ins.L_report.checks.items()
           if not v.ok and k not in ("bracket_LL_zero", "L_squared_zero")]
    return "; ".join(bad)


@check("L04", "[C,L] = -L", "homogeneity of L")
def _l04(ins):
    return fn_bracket(ins.ts.C, ins.ts.L) + ins.ts.L


@check("S01", "L S = C", "semispray")
def _s01(ins):
    return apply_vf(ins.ts.L, ins.sp.S) - ins.ts.C


@check("S02", "is_spray <=> [C,S] = S <=> G^i of y-degree 2", "spray")
def _s02(ins):
    ins.need_canonical()
    bracket = fn_bracket(ins.ts.C, ins.sp.S) == ins.sp.S
    by_degree = spray_by_degree(ins.sp, ins.ts)
    ok = bracket == by_degree == ins.sp.is_spray
    return ok, f"flag {ins.sp.is_spray}, bracket {bracket}, degree {by_degree}"


@check("S03", "L[LX,S] = LX for seeded random X", "semispray bracket identity")
def _s03(ins):
    L, S = ins.ts.L, ins.sp.S
    return nonzero(*[apply_vf(L, fn_bracket(apply_vf(L, X), S)) - apply_vf(L, X) for X in ins.random_fields])


@check("S04", "L[S,S'] = S - S' for a second semispray S'", "difference of semisprays")
def _s04(ins):
    S, S2 = ins.sp.S, ins.other_semispray.S
    return apply_vf(ins.ts.L, fn_bracket(S, S2)) - (S - S2)


@check("S05", "[L,K]° / [L,K°] reconstruct a homogeneous semibasic K (K = dx^1 (x) d/dy^1)", "semibasic reconstruction")
def _s05(ins):
    ins.need_canonical()
    n, N = ins.ts.n, ins.ts.num_vars
    mat = [[MultiPoly.zero(N)] * N for _ in range(N)]
    mat[n][0] = MultiPoly.const(N, 1)
    return lemma2_reconstruct(VectorForm.from_matrix(mat), 0, ins.ts, ins.sp.S)


@check("G01", "t semibasic and t° + [C,S] - S = 0", "canonical decomposition compatibility")
def _g01(ins):
    sb = is_semibasic(ins.t, ins.ts.L, ins.ts.kernel_frame)
    return nonzero(ins.compat_residual) + sb.residual


@check("G02", "Gamma = [L,S] + t: L Gamma = L, Gamma L = -L, Gamma^2 = I, projector identities", "L-connection")
def _g02(ins):
    rep = cn.connection_identities(ins.conn.gamma, ins.ts)
    return [c.residual for c in rep.checks.values() if not c.ok]


@check("G03", "h[LX,S] = hX for seeded random X", "horizontal bracket identity")
def _g03(ins):
    L, h, S = ins.ts.L, ins.conn.h, ins.sp.S
    return nonzero(*[apply_vf(h, fn_bracket(apply_vf(L, X), S)) - apply_vf(h, X) for X in ins.random_fields])


@check("G04", "canonical semispray S = hS': 1/2 [C,Gamma]° + S - [C,S] = 0, independent of S'", "canonical semispray")
def _g04(ins):
    res = [cn.canonical_semispray_residual(ins.conn, ins.S, ins.ts)]
    other = cn.canonical_semispray(ins.conn, ins.ts, reference=ins.other_semispray)
    res.append(other.S - ins.S.S)
    if ins.conn.homogeneous and not ins.S.is_spray:
        return ["homogeneous connection with a non-spray canonical semispray"]
    return nonzero(*res)


@check("G05", "[L,S] is an L-connection with canonical semispray 1/2 (S + [C,S]); S itself if S is a spray",
       "connection of a semispray")
def _g05(ins):
    conn = ins.spray_conn
    ref = ins.sp if not ins.ts.canonical else None
    S_can = cn.canonical_semispray(conn, ins.ts, reference=ref)
    ts = ins.ts
    res = [(S_can.S - (ins.sp.S + fn_bracket(ts.C, ins.sp.S)) * HALF)]
    if ins.sp.is_spray:
        res.append(S_can.S - ins.sp.S)
        if not conn.homogeneous:
            return ["[L,S] for a spray S is not homogeneous"]
    return nonzero(*res)


@check("G06", "homogeneous Gamma => coefficients Gamma^i_a are y-homogeneous of degree 1", "connection coefficients")
def _g06(ins):
    ins.need_canonical()
    ins.need_homogeneous()
    n = ins.ts.n
    bad = [f"Gamma^{i + 1}_{a + 1}" for (i, a), p in cn.coefficients(ins.conn, ins.ts).items()
           if not p.degree_in(range(n, 2 * n)) <= {1}]
    return ", ".join(bad)


@check("T01", "T = 1/2 [L,Gamma] = v[LX,hY] + v[hX,LY] - L[hX,hY] = [L,h] = -[L,v]", "torsion")
def _t01(ins):
    T = ins.tor.T
    return nonzero(cn.torsion_eq11(ins.conn, ins.ts) - T, fn_bracket(ins.ts.L, ins.conn.h) - T,
                   fn_bracket(ins.ts.L, ins.conn.v) + T)


@check("T02", "T is semibasic and T(hX,hY) = T(X,Y)", "torsion properties")
def _t02(ins):
    T = ins.tor.T
    return is_semibasic(T, ins.ts.L, ins.ts.kernel_frame).residual + nonzero(pullback(T, ins.conn.h) - T)


@check("T03", "[L,T] = 0", "torsion is L-closed")
def _t03(ins):
    return fn_bracket(ins.ts.L, ins.tor.T)


@check("T04", "[C,T] = -T + 1/2 [L,[C,Gamma]]", "homogeneity of torsion")
def _t04(ins):
    T = ins.tor.T
    return fn_bracket(ins.ts.C, T) + T - fn_bracket(ins.ts.L, ins.C_gamma) * HALF


@check("T05", "torsion of [L,S] vanishes", "torsion-free connection of a semispray")
def _t05(ins):
    return fn_bracket(ins.ts.L, ins.spray_conn.gamma)


@check("T06", "homogeneous Gamma: T = 1/2 ([L,T]° + [L,T°]) = 1/2 [L,T°]", "torsion from its potential")
def _t06(ins):
    ins.need_homogeneous()
    T = ins.tor.T
    return nonzero(lemma2_reconstruct(T, 0, ins.ts, ins.S.S),
                   T - fn_bracket(ins.ts.L, insert_vf(ins.S.S, T)) * HALF)


@check("T07", "homogeneous Gamma: T = 0 <=> T° = 0", "torsion vanishes with its potential")
def _t07(ins):
    ins.need_homogeneous()
    a, b = ins.tor.T.is_zero(), insert_vf(ins.S.S, ins.tor.T).is_zero()
    return a == b, f"T=0: {a}, T°=0: {b}"


@check("T08", "homogeneous Gamma: i_S T = [S,L]h + h and T = [L,[S,L]h]", "torsion from the canonical spray")
def _t08(ins):
    ins.need_homogeneous()
    S, L, h = ins.S.S, ins.ts.L, ins.conn.h
    SLh = compose(fn_bracket(S, L), h)  # [S,L] o h
    return nonzero(insert_vf(S, ins.tor.T) - (SLh + h), ins.tor.T - fn_bracket(L, SLh))


@check("T09", "strong torsion t = T° - 1/2 [C,Gamma] is semibasic and t° + [C,S] - S = 0", "strong torsion")
def _t09(ins):
    t, S = ins.tor.t_strong, ins.S.S
    return is_semibasic(t, ins.ts.L, ins.ts.kernel_frame).residual + nonzero(
        insert_vf(S, t) + fn_bracket(ins.ts.C, S) - S)


@check("T10", "t = 0 <=> (Gamma homogeneous and T = 0)", "vanishing strong torsion")
def _t10(ins):
    a = ins.tor.t_strong.is_zero()
    b = ins.conn.homogeneous and ins.tor.T.is_zero()
    return a == b, f"t=0: {a}, homogeneous and T=0: {b}"


@check("T11", "decomposition round trip: [L, S_canonical] + t_strong = Gamma; t_strong = t", "canonical decomposition")
def _t11(ins):
    rebuilt = cn.build_from_decomposition(ins.S, ins.tor.t_strong, ins.ts, verify=False)
    return nonzero(rebuilt.gamma - ins.conn.gamma, ins.tor.t_strong - ins.t, ins.S.S - ins.sp.S)


@check("T12", "homogeneous Gamma: conservative ([L,Gamma] = 0) <=> Gamma = [L,G] for a spray G", "conservative connection")
def _t12(ins):
    ins.need_homogeneous()
    res = cn.conservative_check(ins.conn, ins.ts, cn.CurvatureData(ins.R), ins.S)
    is_spray_bracket = ins.S.is_spray and fn_bracket(ins.ts.L, ins.S.S) == ins.conn.gamma
    return res.ok == is_spray_bracket, f"[L,Gamma]=0: {res.ok}, Gamma=[L,G]: {is_spray_bracket}"


@check("R01", "R = -1/2 [h,h] = -1/2 [v,v] = 1/2 [h,v] = -1/8 [Gamma,Gamma]", "curvature")
def _r01(ins):
    c, R = ins.conn, ins.R
    return nonzero(fn_bracket(c.v, c.v) * (-HALF) - R, fn_bracket(c.h, c.v) * HALF - R,
                   fn_bracket(c.gamma, c.gamma) * Fraction(-1, 8) - R)


@check("R02", "R(X,Y) = -v[hX,hY]; R semibasic; R(hX,hY) = R(X,Y)", "curvature properties")
def _r02(ins):
    R = ins.R
    return nonzero(cn.curvature_frame(ins.conn, ins.ts) - R, pullback(R, ins.conn.h) - R) + \
        is_semibasic(R, ins.ts.L, ins.ts.kernel_frame).residual


@check("R03", "[C,R] = -1/2 [h,[C,Gamma]]; homogeneous Gamma => [C,R] = 0", "homogeneity of curvature")
def _r03(ins):
    CR = fn_bracket(ins.ts.C, ins.R)
    res = [CR + fn_bracket(ins.conn.h, ins.C_gamma) * HALF]
    if ins.conn.homogeneous:
        res.append(is_homogeneous(ins.R, 1, ins.ts.C).residual)
    return nonzero(*res)


@check("R04", "[L,R] = [h,T]", "Bianchi identity (first)")
def _r04(ins):
    return fn_bracket(ins.ts.L, ins.R) - fn_bracket(ins.conn.h, ins.tor.T)


@check("R05", "[h,R] = 0 and [[L,S],R] = -[t,R]", "Bianchi identity (second)")
def _r05(ins):
    R = ins.R
    return nonzero(fn_bracket(ins.conn.h, R),
                   fn_bracket(fn_bracket(ins.ts.L, ins.S.S), R) + fn_bracket(ins.tor.t_strong, R))


@check("R06", "conservative Gamma: R = 1/3 [L,R°]", "curvature from its potential")
def _r06(ins):
    ins.need_homogeneous()
    res = cn.conservative_check(ins.conn, ins.ts, cn.CurvatureData(ins.R), ins.S)
    if not res.ok:
        raise Skip("connection is not conservative")
    return res.curvature_residual


@check("R07", "Gamma = [L,S]: R = -1/4 [L,[S,h]] = -[L,h[S,h]]", "curvature of the connection of a semispray")
def _r07(ins):
    a, b = cn.curvature_from_spray_forms(ins.spray_conn, ins.sp, ins.ts)
    return nonzero(a - ins.R_spray, b - ins.R_spray)


@check("R08", "Gamma = [L,S]: R = 0 <=> R° = 0", "curvature vanishes with its potential")
def _r08(ins):
    ref = ins.sp if not ins.ts.canonical else None
    S_can = cn.canonical_semispray(ins.spray_conn, ins.ts, reference=ref)
    a, b = ins.R_spray.is_zero(), insert_vf(S_can.S, ins.R_spray).is_zero()
    return a == b, f"R=0: {a}, R°=0: {b}"


@check("R09", "[h,h] = 0 <=> R = 0 <=> [Gamma,Gamma] = 0, matched by involutivity of the horizontal frame",
       "integrable horizontal distribution")
def _r09(ins):
    ins.need_canonical()
    rep = cn.involutivity_check(cn.horizontal_frame(ins.conn, ins.ts), ins.conn, ins.ts, ins.points, ins.R)
    ok = rep.chain_consistent and rep.involutive == rep.chain[1]
    return ok, f"[h,h]=0: {rep.chain[0]}, R=0: {rep.chain[1]}, [Gamma,Gamma]=0: {rep.chain[2]}, involutive: {rep.involutive}"


@check("R10", "nullity index 0 <= mu <= n with i_X R = 0 on the nullity basis; mu = n where R_z = 0", "nullity of curvature")
def _r10(ins):
    ins.need_canonical()
    bad = []
    N, n, R = ins.ts.num_vars, ins.ts.n, ins.R
    for z in ins.points:
        rep = cn.nullity(ins.conn, ins.ts, z, R)
        Rz_zero = all(p.eval(z) == 0 for _, _, p in R.nonzero_terms())
        if not 0 <= rep.mu <= n or (Rz_zero and rep.mu != n):
            bad.append(f"mu={rep.mu} at {tuple(str(c) for c in z)}")
        for X in rep.nullity_basis:
            Xf = VectorForm.field([MultiPoly.const(N, c) for c in X])
            iXR = insert_vf(Xf, R)
            if any(p.eval(z) for _, _, p in iXR.nonzero_terms()):
                bad.append(f"i_X R != 0 at {tuple(str(c) for c in z)}")
    return "; ".join(bad)


@check("F01", "F = h[S,h] - L: FL = h, Fh = -L, F^2 = -I", "associated almost-complex structure")
def _f01(ins):
    rep = hm.complex_structure_identities(ins.F, ins.conn, ins.ts, ins.S)
    return [rep.checks[k].residual for k in ("F_L_eq_h", "F_h_eq_minus_L", "F_squared_eq_minus_I") if not rep.checks[k].ok]


@check("F02", "LF = v, Fv = hF, vF = -L, h[S,h] = hF", "properties of F")
def _f02(ins):
    rep = hm.complex_structure_identities(ins.F, ins.conn, ins.ts, ins.S)
    keys = ("L_F_eq_v", "F_v_eq_h_F", "v_F_eq_minus_L", "h_S_h_eq_h_F")
    return [rep.checks[k].residual for k in keys if not rep.checks[k].ok]


@check("F03", "L[C,F] = v - 1/2 [C,Gamma]", "Lie derivative of F along C")
def _f03(ins):
    return hm.lie_C_F_residual(ins.F, ins.conn, ins.ts)


@check("F04", "F agrees with the direct solution of FL = h, Fh = -L", "uniqueness of F")
def _f04(ins):
    ins.need_canonical()
    return hm.F_from_splitting(ins.conn, ins.ts) - ins.F


@check("F05", "h*[F,F] = F o T + R", "bracket of F with itself")
def _f05(ins):
    return hm.prop10_identities(ins.F, ins.conn, ins.ts, ins.tor, cn.CurvatureData(ins.R))[0]


@check("F06", "[L,F] = i_F T - F o T - R", "bracket of L with F")
def _f06(ins):
    return hm.prop10_identities(ins.F, ins.conn, ins.ts, ins.tor, cn.CurvatureData(ins.R))[1]


@check("F07", "[h,F] = -i_F R - T", "bracket of h with F (as stated)")
def _f07(ins):
    return hm.prop10_identities(ins.F, ins.conn, ins.ts, ins.tor, cn.CurvatureData(ins.R))[2]


@check("F08", "[h,F] = -i_F R + F o R - T", "bracket of h with F (with F o R term)")
def _f08(ins):
    F, R = ins.F, ins.R
    return fn_bracket(ins.conn.h, F) - (-interior(F, R) + compose(F, R) - ins.tor.T)


@check("F09", "T = 0: R = h*[F,F] = -[L,F] = -[L,hF] = -[L,h[S,h]]", "curvature of a torsion-free connection")
def _f09(ins):
    if not ins.tor.T.is_zero():
        raise Skip("connection has torsion")
    return nonzero(*[f - ins.R for f in hm.torsion_free_curvature_forms(ins.F, ins.conn, ins.ts, ins.S)])


@check("F10", "[F,F] = 0 <=> (T = 0 and R = 0) <=> [L,F] = 0 <=> [h,F] = 0", "integrability of F")
def _f10(ins):
    rep = hm.theorem9_equivalence(ins.F, ins.conn, ins.ts, ins.tor, cn.CurvatureData(ins.R))
    return rep.consistent, "[F,F]=0: {}, T=R=0: {}, [L,F]=0: {}, [h,F]=0: {}".format(*rep.values)


@check("M01", "g symmetric and positive definite at sample points", "vertical metric")
def _m01(ins):
    ins.need_canonical()
    try:
        hm.make_vertical_metric([list(r) for r in ins.metric.g], ins.points)
    except hm.MetricError as exc:
        return str(exc)
    return None


@check("M02", "g_Gamma(hX,vY) = 0 and g_Gamma(hX,hY) = g(LX,LY)", "extended metric")
def _m02(ins):
    ins.need_canonical()
    return hm.metric_splitting_residuals(ins.g_gamma, ins.metric, ins.conn, ins.ts)


@check("M03", "g_Gamma(FX,FY) = g_Gamma(X,Y) and i_F g_Gamma = 0", "almost-Hermitian metric")
def _m03(ins):
    ins.need_canonical()
    unitary, skew = hm.hermitian_residuals(ins.g_gamma, ins.F, ins.ts)
    return unitary + skew


@check("M04", "K(X,Y) = g_Gamma(FX,Y) = g_Gamma(X,LY) - g_Gamma(LX,Y), antisymmetric", "Kähler form")
def _m04(ins):
    ins.need_canonical()
    try:
        hm.kahler_form(ins.g_gamma, ins.F, ins.ts)
    except cn.CrossCheckError as exc:
        return str(exc)
    return None


def _status(result) -> tuple:
    if isinstance(result, tuple) and len(result) == 2 and isinstance(result[0], bool):
        ok, info = result
        return ("pass" if ok else "fail"), ("" if ok else info)
    if result is None or result == "" or result == []:
        return "pass", ""
    if isinstance(result, str):
        return "fail", result
    if isinstance(result, list):
        return "fail", render_residual(result)
    if result.is_zero():
        return "pass", ""
    return "fail", render_residual(result)


def run_suite(manifest: Manifest, seed: int | None = None, extra_points: int = 4) -> VerificationReport:
    seed = manifest.seed if seed is None else seed
    ins = Instance(manifest, seed, extra_points)
    report = VerificationReport(seed=seed, n=manifest.dimension_n)
    for check_id, statement, ref, fn in sorted(CHECKS, key=lambda c: c[0]):
        t0 = time.perf_counter()
        try:
            status, residual = _status(fn(ins))
        except Skip as exc:
            status, residual = "skipped", str(exc)
        except Blocked as exc:
            status, residual = "fail", f"blocked: {exc}"
        except cn.CrossCheckError as exc:
            status, residual = "fail", str(exc)
        report.checks.append(CheckRecord(check_id, statement, ref, status, residual, time.perf_counter() - t0))
    return report


def build_instance(manifest: Manifest, seed: int | None = None, extra_points: int = 4) -> Instance:
    return Instance(manifest, manifest.seed if seed is None else seed, extra_points)
