"""L-connections and their torsion, curvature and nullity.

All identity checks are symbolic: a residual must be the zero form.  Ranks
(nullity, frame independence) are computed pointwise with exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .calculus import (
    Check,
    VectorForm,
    apply_vf,
    compose,
    coordinate_frame,
    fn_bracket,
    insert_vf,
    is_semibasic,
    vf_bracket,
)
from .ratpoly import nullspace, rank
from .tangent import (
    Semispray,
    StructureReport,
    TangentStructure,
    frame_matrix,
    reference_semispray,
    semispray_from_field,
)

HALF = Fraction(1, 2)


class InvalidConnection(ValueError):
    """A vector 1-form failed the connection axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CompatibilityError(ValueError):
    """``t° + [C,S] - S`` does not vanish."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class CrossCheckError(RuntimeError):
    """Two independent routes to the same object disagree (engine bug signal)."""


class FrameError(ValueError):
    pass


@dataclass(frozen=True)
class LConnection:
    gamma: VectorForm
    h: VectorForm
    v: VectorForm
    homogeneous: bool
    report: StructureReport = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class TorsionData:
    T: VectorForm
    t_strong: VectorForm


@dataclass(frozen=True)
class CurvatureData:
    R: VectorForm


@dataclass(frozen=True)
class NullityReport:
    point: tuple
    nullity_basis: list
    mu: int


@dataclass
class InvolutivityReport:
    involutive: bool
    failures: list
    # (h,h) bracket zero, curvature zero, (Gamma,Gamma) bracket zero
    chain: tuple = None

    @property
    def chain_consistent(self) -> bool:
        return self.chain is None or len(set(self.chain)) == 1


def _residual_check(rep: StructureReport, name: str, lhs, rhs):
    res = lhs - rhs
    rep.add(name, res.is_zero(), res)


def connection_identities(gamma: VectorForm, ts: TangentStructure) -> StructureReport:
    N = ts.num_vars
    L = ts.L
    I = VectorForm.identity(N)
    h = (I + gamma) * HALF
    v = (I - gamma) * HALF
    rep = StructureReport()
    _residual_check(rep, "L_gamma_eq_L", compose(L, gamma), L)
    _residual_check(rep, "gamma_L_eq_minus_L", compose(gamma, L), -L)
    _residual_check(rep, "gamma_squared_eq_I", compose(gamma, gamma), I)
    _residual_check(rep, "h_idempotent", compose(h, h), h)
    _residual_check(rep, "v_idempotent", compose(v, v), v)
    _residual_check(rep, "h_plus_v_eq_I", h + v, I)
    _residual_check(rep, "L_h_eq_L", compose(L, h), L)
    _residual_check(rep, "h_L_zero", compose(h, L), VectorForm.zero(N, 1))
    _residual_check(rep, "L_v_zero", compose(L, v), VectorForm.zero(N, 1))
    _residual_check(rep, "v_L_eq_L", compose(v, L), L)
    _residual_check(rep, "gamma_h_eq_h", compose(gamma, h), h)
    _residual_check(rep, "h_gamma_eq_h", compose(h, gamma), h)
    _residual_check(rep, "gamma_v_eq_minus_v", compose(gamma, v), -v)
    _residual_check(rep, "v_gamma_eq_minus_v", compose(v, gamma), -v)
    return rep


def validate_connection(gamma: VectorForm, ts: TangentStructure) -> LConnection:
    if gamma.degree != 1:
        raise ValueError("an L-connection is a vector 1-form")
    rep = connection_identities(gamma, ts)
    if not rep.ok:
        raise InvalidConnection(f"not an L-connection: {', '.join(rep.failures())}", rep)
    N = ts.num_vars
    I = VectorForm.identity(N)
    homogeneous = fn_bracket(ts.C, gamma).is_zero()
    return LConnection(gamma=gamma, h=(I + gamma) * HALF, v=(I - gamma) * HALF, homogeneous=homogeneous, report=rep)


def from_semispray(sp: Semispray, ts: TangentStructure) -> LConnection:
    """``Gamma = [L, S]``."""
    return validate_connection(fn_bracket(ts.L, sp.S), ts)


def canonical_semispray(conn: LConnection, ts: TangentStructure, reference: Semispray | None = None) -> Semispray:
    """``S = h S'`` for a reference semispray ``S'`` (default ``y^i d/dx^i``)."""
    if reference is None:
        reference = reference_semispray(ts) if ts.canonical else None
    if reference is None:
        raise ValueError("non-canonical L needs an explicit reference semispray")
    return semispray_from_field(apply_vf(conn.h, reference.S), ts)


def canonical_semispray_residual(conn: LConnection, sp: Semispray, ts: TangentStructure) -> VectorForm:
    """``½[C,Gamma]° + S - [C,S]``."""
    CG = fn_bracket(ts.C, conn.gamma)
    return insert_vf(sp.S, CG) * HALF + sp.S - fn_bracket(ts.C, sp.S)


def torsion_eq11(conn: LConnection, ts: TangentStructure) -> VectorForm:
    """``T(X,Y) = v[LX,hY] + v[hX,LY] - L[hX,hY]`` on the coordinate frame."""
    N = ts.num_vars
    frame = coordinate_frame(N)
    hX = [apply_vf(conn.h, X) for X in frame]
    LX = [apply_vf(ts.L, X) for X in frame]

    def value(J):
        a, b = J
        out = apply_vf(conn.v, vf_bracket(LX[a], hX[b]))
        out = out + apply_vf(conn.v, vf_bracket(hX[a], LX[b]))
        out = out - apply_vf(ts.L, vf_bracket(hX[a], hX[b]))
        return out.components()

    return VectorForm.from_frame_values(N, 2, value)


def torsion(conn: LConnection, ts: TangentStructure, semispray: Semispray | None = None, cross_check: bool = True) -> TorsionData:
    """``T = ½[L,Gamma]`` and strong torsion ``t = T° - ½[C,Gamma]``."""
    T = fn_bracket(ts.L, conn.gamma) * HALF
    if cross_check:
        if torsion_eq11(conn, ts) != T:
            raise CrossCheckError("torsion: frame formula disagrees with ½[L,Gamma]")
        if fn_bracket(ts.L, conn.h) != T or -fn_bracket(ts.L, conn.v) != T:
            raise CrossCheckError("torsion: [L,h] / -[L,v] disagree with ½[L,Gamma]")
    S = semispray or canonical_semispray(conn, ts)
    t = insert_vf(S.S, T) - fn_bracket(ts.C, conn.gamma) * HALF
    return TorsionData(T=T, t_strong=t)


def compatibility_residual(sp: Semispray, t: VectorForm, ts: TangentStructure) -> VectorForm:
    """``t° + [C,S] - S``."""
    return insert_vf(sp.S, t) + fn_bracket(ts.C, sp.S) - sp.S


def build_from_decomposition(sp: Semispray, t: VectorForm, ts: TangentStructure, verify: bool = True) -> LConnection:
    """``Gamma = [L,S] + t`` for semibasic ``t`` compatible with ``S``."""
    if t.degree != 1:
        raise ValueError("strong torsion must be a vector 1-form")
    sb = is_semibasic(t, ts.L, ts.kernel_frame)
    if not sb.ok:
        raise CompatibilityError("t is not L-semibasic", sb.residual)
    res = compatibility_residual(sp, t, ts)
    if not res.is_zero():
        raise CompatibilityError("t° + [C,S] - S is not zero", res)
    conn = validate_connection(fn_bracket(ts.L, sp.S) + t, ts)
    if verify:
        S2 = canonical_semispray(conn, ts)
        if S2.S != sp.S:
            raise CrossCheckError("decomposition: canonical semispray of [L,S]+t is not S")
        if torsion(conn, ts, S2, cross_check=False).t_strong != t:
            raise CrossCheckError("decomposition: strong torsion of [L,S]+t is not t")
    return conn


def curvature_frame(conn: LConnection, ts: TangentStructure) -> VectorForm:
    """``R(X,Y) = -v[hX,hY]`` on the coordinate frame."""
    N = ts.num_vars
    hX = [apply_vf(conn.h, X) for X in coordinate_frame(N)]
    return VectorForm.from_frame_values(
        N, 2, lambda J: (-apply_vf(conn.v, vf_bracket(hX[J[0]], hX[J[1]]))).components()
    )


def curvature(conn: LConnection, ts: TangentStructure, source: Semispray | None = None, cross_check: bool = True) -> CurvatureData:
    """``R = -½[h,h]``; with ``source`` (Gamma = [L,S]) also the semispray forms."""
    R = fn_bracket(conn.h, conn.h) * (-HALF)
    if cross_check:
        if fn_bracket(conn.v, conn.v) * (-HALF) != R:
            raise CrossCheckError("curvature: -½[v,v] disagrees")
        if fn_bracket(conn.h, conn.v) * HALF != R:
            raise CrossCheckError("curvature: ½[h,v] disagrees")
        if fn_bracket(conn.gamma, conn.gamma) * Fraction(-1, 8) != R:
            raise CrossCheckError("curvature: -⅛[Gamma,Gamma] disagrees")
        if curvature_frame(conn, ts) != R:
            raise CrossCheckError("curvature: frame formula -v[hX,hY] disagrees")
        if source is not None and fn_bracket(ts.L, source.S) == conn.gamma:
            a, b = curvature_from_spray_forms(conn, source, ts)
            if a != R or b != R:
                raise CrossCheckError("curvature: semispray forms disagree")
    return CurvatureData(R=R)


def curvature_from_spray_forms(conn: LConnection, sp: Semispray, ts: TangentStructure) -> tuple:
    """``-¼[L,[S,h]]`` and ``-[L, h[S,h]]`` for ``Gamma = [L,S]``."""
    Sh = fn_bracket(sp.S, conn.h)
    a = fn_bracket(ts.L, Sh) * Fraction(-1, 4)
    b = -fn_bracket(ts.L, compose(conn.h, Sh))
    return a, b


def bianchi_check(conn: LConnection, ts: TangentStructure, tor: TorsionData | None = None,
                  curv: CurvatureData | None = None, semispray: Semispray | None = None) -> tuple:
    """Residuals ``[L,R] - [h,T]``, ``[h,R]`` and ``[[L,S],R] + [t,R]``."""
    tor = tor or torsion(conn, ts, cross_check=False)
    curv = curv or curvature(conn, ts, cross_check=False)
    S = semispray or canonical_semispray(conn, ts)
    R = curv.R
    a = fn_bracket(ts.L, R) - fn_bracket(conn.h, tor.T)
    b = fn_bracket(conn.h, R)
    c = fn_bracket(fn_bracket(ts.L, S.S), R) + fn_bracket(tor.t_strong, R)
    return a, b, c


@dataclass
class ConservativeResult:
    ok: bool
    residual: VectorForm
    # R - ⅓[L,R°]; only computed for conservative connections
    curvature_residual: VectorForm | None = None


def conservative_check(conn: LConnection, ts: TangentStructure, curv: CurvatureData | None = None,
                       semispray: Semispray | None = None) -> ConservativeResult:
    if not conn.homogeneous:
        raise ValueError("conservativity is defined for homogeneous connections only")
    res = fn_bracket(ts.L, conn.gamma)
    if not res.is_zero():
        return ConservativeResult(False, res)
    curv = curv or curvature(conn, ts, cross_check=False)
    S = semispray or canonical_semispray(conn, ts)
    Rpot = insert_vf(S.S, curv.R)
    return ConservativeResult(True, res, curv.R - fn_bracket(ts.L, Rpot) * Fraction(1, 3))


@dataclass
class PotentialCurvatureReport:
    R_zero: bool
    potential_zero: bool

    @property
    def consistent(self) -> bool:
        return self.R_zero == self.potential_zero


def theorem6_check(sp: Semispray, ts: TangentStructure) -> PotentialCurvatureReport:
    """For ``Gamma = [L,S]``: R vanishes exactly when its potential does."""
    conn = from_semispray(sp, ts)
    R = curvature(conn, ts, cross_check=False).R
    S = canonical_semispray(conn, ts)
    return PotentialCurvatureReport(R.is_zero(), insert_vf(S.S, R).is_zero())


def nullity(conn: LConnection, ts: TangentStructure, z, R: VectorForm | None = None) -> NullityReport:
    """Kernel of ``X -> i_X R`` on the horizontal space at ``z``."""
    if R is None:
        R = curvature(conn, ts, cross_check=False).R
    N, n = ts.num_vars, ts.n
    z = tuple(Fraction(c) for c in z)
    if not ts.canonical:
        raise ValueError("nullity uses the horizontal frame h d/dx^a of the canonical L")
    hcols = [[conn.h.comps[c].get((a,)).eval(z) for c in range(N)] for a in range(n)]
    Rz = [[[R.comps[c].get((a, b)).eval(z) for b in range(N)] for a in range(N)] for c in range(N)]
    rows = []
    for c in range(N):
        for b in range(N):
            rows.append([sum(hcols[al][a] * Rz[c][a][b] for a in range(N)) for al in range(n)])
    kernel = nullspace(rows, n)
    basis = [[sum(vec[al] * hcols[al][a] for al in range(n)) for a in range(N)] for vec in kernel]
    return NullityReport(point=z, nullity_basis=basis, mu=len(kernel))


def horizontal_frame(conn: LConnection, ts: TangentStructure) -> list:
    N = ts.num_vars
    return [apply_vf(conn.h, VectorForm.coordinate_field(N, a)) for a in range(ts.n)]


def integrability_chain(conn: LConnection, R: VectorForm | None = None) -> tuple:
    hh = fn_bracket(conn.h, conn.h)
    if R is None:
        R = hh * (-HALF)
    gg = fn_bracket(conn.gamma, conn.gamma)
    return (hh.is_zero(), R.is_zero(), gg.is_zero())


def involutivity_check(frame: Sequence[VectorForm], conn: LConnection | None, ts: TangentStructure,
                       points: Sequence, R: VectorForm | None = None) -> InvolutivityReport:
    """Is ``[X_i, X_j]`` in the span of ``frame`` at every sample point?"""
    k = len(frame)
    brackets = {(i, j): vf_bracket(frame[i], frame[j]) for i in range(k) for j in range(i + 1, k)}
    failures = []
    for z in points:
        base = frame_matrix(frame, z)
        if rank(base) != k:
            raise FrameError(f"frame is not independent at {tuple(str(c) for c in z)}")
        for (i, j), B in brackets.items():
            if rank(base + frame_matrix([B], z)) != k:
                failures.append(((i, j), z))
    chain = integrability_chain(conn, R) if conn is not None else None
    return InvolutivityReport(involutive=not failures, failures=failures, chain=chain)


def coefficients(conn: LConnection, ts: TangentStructure) -> dict:
    """``Gamma^i_a`` with ``h d/dx^a = d/dx^a - Gamma^i_a d/dy^i`` (so ``theta^i`` kills H)."""
    if not ts.canonical:
        raise ValueError("coefficients are defined for the canonical L")
    n = ts.n
    out = {}
    for a in range(n):
        for i in range(n):
            out[(i, a)] = -conn.h.comps[n + i].get((a,))
    return out
