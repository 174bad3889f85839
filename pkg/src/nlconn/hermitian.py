"""Almost-complex structure of an L-connection, extended metric and Kähler form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .calculus import ScalarForm, VectorForm, compose, fn_bracket, interior, pullback
from .connection import (
    HALF,
    CrossCheckError,
    CurvatureData,
    LConnection,
    TorsionData,
    canonical_semispray,
    curvature,
    torsion,
)
from .ratpoly import MultiPoly, leading_minors_positive
from .tangent import Semispray, StructureReport, TangentStructure


@dataclass(frozen=True)
class AlmostComplex:
    F: VectorForm
    report: StructureReport = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class VerticalMetric:
    g: tuple  # n x n MultiPoly, components on the d/dy frame


@dataclass(frozen=True)
class ExtendedMetric:
    g_gamma: tuple  # 2n x 2n MultiPoly on the coordinate frame


class MetricError(ValueError):
    pass


def _check(rep: StructureReport, name: str, lhs: VectorForm, rhs: VectorForm):
    res = lhs - rhs
    rep.add(name, res.is_zero(), res)


def complex_structure_identities(F: VectorForm, conn: LConnection, ts: TangentStructure,
                                 semispray: Semispray) -> StructureReport:
    N = ts.num_vars
    L, h, v = ts.L, conn.h, conn.v
    I = VectorForm.identity(N)
    rep = StructureReport()
    _check(rep, "F_L_eq_h", compose(F, L), h)
    _check(rep, "F_h_eq_minus_L", compose(F, h), -L)
    _check(rep, "F_squared_eq_minus_I", compose(F, F), -I)
    _check(rep, "L_F_eq_v", compose(L, F), v)
    _check(rep, "F_v_eq_h_F", compose(F, v), compose(h, F))
    _check(rep, "v_F_eq_minus_L", compose(v, F), -L)
    _check(rep, "h_S_h_eq_h_F", compose(h, fn_bracket(semispray.S, h)), compose(h, F))
    return rep


def associated_F(conn: LConnection, ts: TangentStructure, semispray: Semispray | None = None) -> AlmostComplex:
    """``F = h[S,h] - L`` with ``S`` the canonical semispray of ``conn``."""
    S = semispray or canonical_semispray(conn, ts)
    F = compose(conn.h, fn_bracket(S.S, conn.h)) - ts.L
    rep = complex_structure_identities(F, conn, ts, S)
    if not rep.ok:
        raise CrossCheckError(f"almost-complex structure identities fail: {', '.join(rep.failures())}")
    return AlmostComplex(F=F, report=rep)


def F_from_splitting(conn: LConnection, ts: TangentStructure) -> VectorForm:
    """Solve ``FL = h``, ``Fh = -L`` directly on the frame ``{h d/dx^a, d/dy^a}``.

    ``F d/dy^a = h d/dx^a`` and, writing ``d/dx^a = h d/dx^a + w^i d/dy^i``,
    ``F d/dx^a = -d/dy^a + w^i h d/dx^i``.
    """
    if not ts.canonical:
        raise ValueError("splitting construction is implemented for the canonical L")
    n, N = ts.n, ts.num_vars
    hcol = [[conn.h.comps[c].get((a,)) for c in range(N)] for a in range(n)]
    cols = [None] * N
    for a in range(n):
        cols[n + a] = hcol[a]
        w = [conn.v.comps[n + i].get((a,)) for i in range(n)]
        col = [MultiPoly.zero(N)] * N
        col[n + a] = MultiPoly.const(N, -1)
        for i in range(n):
            col = [c + w[i] * hc for c, hc in zip(col, hcol[i])]
        cols[a] = col
    return VectorForm.from_matrix([[cols[a][c] for a in range(N)] for c in range(N)])


def lie_C_F_residual(F: VectorForm, conn: LConnection, ts: TangentStructure) -> VectorForm:
    """``L[C,F] - v + ½[C,Gamma]``."""
    return compose(ts.L, fn_bracket(ts.C, F)) - conn.v + fn_bracket(ts.C, conn.gamma) * HALF


def h_star(K: VectorForm, h: VectorForm) -> VectorForm:
    """``(X,Y) -> ½ K(hX, hY)``."""
    return pullback(K, h) * HALF


def prop10_identities(F: VectorForm, conn: LConnection, ts: TangentStructure,
                      tor: TorsionData | None = None, curv: CurvatureData | None = None) -> tuple:
    """Residuals of the three bracket identities linking F with T and R."""
    tor = tor or torsion(conn, ts, cross_check=False)
    curv = curv or curvature(conn, ts, cross_check=False)
    T, R = tor.T, curv.R
    FT = compose(F, T)
    FF = fn_bracket(F, F)
    a = h_star(FF, conn.h) - (FT + R)
    b = fn_bracket(ts.L, F) - (interior(F, T) - FT - R)
    c = fn_bracket(conn.h, F) - (-interior(F, R) - T)
    return a, b, c


def torsion_free_curvature_forms(F: VectorForm, conn: LConnection, ts: TangentStructure,
                                 semispray: Semispray | None = None) -> list:
    """``h*[F,F]``, ``-[L,F]``, ``-[L,hF]``, ``-[L,h[S,h]]``; each equals R when T = 0."""
    S = semispray or canonical_semispray(conn, ts)
    L, h = ts.L, conn.h
    return [
        h_star(fn_bracket(F, F), h),
        -fn_bracket(L, F),
        -fn_bracket(L, compose(h, F)),
        -fn_bracket(L, compose(h, fn_bracket(S.S, h))),
    ]


@dataclass
class IntegrabilityReport:
    F_integrable: bool
    flat_and_torsion_free: bool
    L_F_zero: bool
    h_F_zero: bool

    @property
    def values(self) -> tuple:
        return (self.F_integrable, self.flat_and_torsion_free, self.L_F_zero, self.h_F_zero)

    @property
    def consistent(self) -> bool:
        return len(set(self.values)) == 1


def theorem9_equivalence(F: VectorForm, conn: LConnection, ts: TangentStructure,
                         tor: TorsionData | None = None, curv: CurvatureData | None = None) -> IntegrabilityReport:
    tor = tor or torsion(conn, ts, cross_check=False)
    curv = curv or curvature(conn, ts, cross_check=False)
    return IntegrabilityReport(
        F_integrable=fn_bracket(F, F).is_zero(),
        flat_and_torsion_free=tor.T.is_zero() and curv.R.is_zero(),
        L_F_zero=fn_bracket(ts.L, F).is_zero(),
        h_F_zero=fn_bracket(conn.h, F).is_zero(),
    )


# ---------------------------------------------------------------------------
# metrics


def _bilinear(G: Sequence[Sequence[MultiPoly]], X: Sequence[MultiPoly], Y: Sequence[MultiPoly]) -> MultiPoly:
    nv = len(X)
    acc = MultiPoly.zero(X[0].num_vars)
    for a in range(nv):
        if not X[a]:
            continue
        for b in range(nv):
            if Y[b] and G[a][b]:
                acc = acc + X[a] * G[a][b] * Y[b]
    return acc


def _column(K: VectorForm, a: int) -> list:
    return [K.comps[c].get((a,)) for c in range(K.num_vars)]


def make_vertical_metric(g: Sequence[Sequence[MultiPoly]], points: Sequence = ()) -> VerticalMetric:
    n = len(g)
    if any(len(row) != n for row in g):
        raise MetricError("metric must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                raise MetricError(f"metric is not symmetric at ({i + 1},{j + 1})")
    for z in points:
        vals = [[e.eval(z) for e in row] for row in g]
        if not leading_minors_positive(vals):
            raise MetricError(f"metric is not positive definite at {tuple(str(c) for c in z)}")
    return VerticalMetric(g=tuple(tuple(row) for row in g))


def identity_metric(ts: TangentStructure) -> VerticalMetric:
    N = ts.num_vars
    return VerticalMetric(g=tuple(tuple(MultiPoly.const(N, int(i == j)) for j in range(ts.n)) for i in range(ts.n)))


def _vertical_part(vec: Sequence[MultiPoly], n: int) -> list:
    return list(vec[n:])


def extend_metric(gm: VerticalMetric, conn: LConnection, ts: TangentStructure) -> ExtendedMetric:
    """``g_Gamma(X,Y) = g(LX,LY) + g(vX,vY)`` on the coordinate frame."""
    if not ts.canonical:
        raise ValueError("metric extension is implemented for the canonical L")
    n, N = ts.n, ts.num_vars
    Lc = [_vertical_part(_column(ts.L, a), n) for a in range(N)]
    vc = [_vertical_part(_column(conn.v, a), n) for a in range(N)]
    G = [[_bilinear(gm.g, Lc[a], Lc[b]) + _bilinear(gm.g, vc[a], vc[b]) for b in range(N)] for a in range(N)]
    em = ExtendedMetric(g_gamma=tuple(tuple(r) for r in G))
    res = metric_splitting_residuals(em, gm, conn, ts)
    if any(r for r in res):
        raise CrossCheckError("extended metric does not split into horizontal and vertical parts")
    return em


def metric_splitting_residuals(em: ExtendedMetric, gm: VerticalMetric, conn: LConnection, ts: TangentStructure) -> list:
    """Nonzero entries of ``g_Gamma(h a, v b)`` and ``g_Gamma(h a, h b) - g(L a, L b)``."""
    n, N = ts.n, ts.num_vars
    G = em.g_gamma
    hc = [_column(conn.h, a) for a in range(N)]
    vc = [_column(conn.v, a) for a in range(N)]
    Lc = [_column(ts.L, a) for a in range(N)]
    out = []
    for a in range(N):
        for b in range(N):
            out.append(_bilinear(G, hc[a], vc[b]))
            out.append(_bilinear(G, hc[a], hc[b]) - _bilinear(gm.g, Lc[a][n:], Lc[b][n:]))
    return [r for r in out if r]


def kahler_form(em: ExtendedMetric, F: VectorForm, ts: TangentStructure) -> ScalarForm:
    """``K(X,Y) = g_Gamma(FX, Y)``, checked against ``g_Gamma(X,LY) - g_Gamma(LX,Y)``."""
    N = ts.num_vars
    G = em.g_gamma
    Fc = [_column(F, a) for a in range(N)]
    Lc = [_column(ts.L, a) for a in range(N)]
    e = [[MultiPoly.const(N, int(i == a)) for i in range(N)] for a in range(N)]
    K = [[_bilinear(G, Fc[a], e[b]) for b in range(N)] for a in range(N)]
    for a in range(N):
        for b in range(N):
            other = _bilinear(G, e[a], Lc[b]) - _bilinear(G, Lc[a], e[b])
            if K[a][b] != other:
                raise CrossCheckError("Kähler form: g(FX,Y) and g(X,LY) - g(LX,Y) disagree")
            if K[a][b] != -K[b][a]:
                raise CrossCheckError("Kähler form is not antisymmetric")
    return ScalarForm(N, 2, {(a, b): K[a][b] for a in range(N) for b in range(a + 1, N)})


def hermitian_residuals(em: ExtendedMetric, F: VectorForm, ts: TangentStructure) -> tuple:
    """Nonzero entries of ``g(FX,FY) - g(X,Y)`` and ``g(FX,Y) + g(X,FY)``."""
    N = ts.num_vars
    G = em.g_gamma
    Fc = [_column(F, a) for a in range(N)]
    e = [[MultiPoly.const(N, int(i == a)) for i in range(N)] for a in range(N)]
    unitary, skew = [], []
    for a in range(N):
        for b in range(N):
            u = _bilinear(G, Fc[a], Fc[b]) - G[a][b]
            s = _bilinear(G, Fc[a], e[b]) + _bilinear(G, e[a], Fc[b])
            if u:
                unitary.append(u)
            if s:
                skew.append(s)
    return unitary, skew
