"""Almost-tangent structures, the canonical field C and (semi)sprays."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .calculus import (
    Check,
    VectorForm,
    apply_vf,
    compose,
    fn_bracket,
    insert_vf,
    is_semibasic,
)
from .ratpoly import MultiPoly, rank

SCHEDULE_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2))


class StructureError(ValueError):
    """An almost-tangent structure or semispray failed validation."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class TangentStructure:
    n: int
    L: VectorForm
    kernel_frame: tuple
    C: VectorForm
    canonical: bool = False

    @property
    def num_vars(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class Semispray:
    S: VectorForm
    is_spray: bool

    @property
    def vertical(self) -> list:
        comps = self.S.components()
        return comps[len(comps) // 2:]


@dataclass
class StructureReport:
    """Named checks; each residual is empty/zero on success."""

    checks: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, residual=None):
        self.checks[name] = Check(ok, residual)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def failures(self) -> list:
        return [k for k, c in self.checks.items() if not c.ok]


def sample_points(num_vars: int, seed: int = 0, extra: int = 4) -> list:
    """Deterministic schedule over {0, 1, -1, 1/2} plus ``extra`` seeded random rationals."""
    pts = []
    for v in SCHEDULE_VALUES:
        pts.append(tuple([v] * num_vars))
    k = len(SCHEDULE_VALUES)
    for shift in range(k):
        pts.append(tuple(SCHEDULE_VALUES[(i + shift) % k] for i in range(num_vars)))
    rng = random.Random(seed)
    for _ in range(extra):
        pts.append(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(num_vars)))
    seen, out = set(), []
    for p in pts:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def eval_matrix(K: VectorForm, point) -> list:
    return [[entry.eval(point) for entry in row] for row in K.matrix()]


def frame_matrix(frame: Sequence[VectorForm], point) -> list:
    return [[c.eval(point) for c in X.components()] for X in frame]


def canonical_L(n: int) -> TangentStructure:
    """``L d/dx^i = d/dy^i``, ``L d/dy^i = 0``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = 2 * n
    mat = [[0] * N for _ in range(N)]
    for i in range(n):
        mat[n + i][i] = 1
    L = VectorForm.from_matrix(mat)
    kernel = tuple(VectorForm.coordinate_field(N, n + i) for i in range(n))
    return TangentStructure(n=n, L=L, kernel_frame=kernel, C=canonical_C(n), canonical=True)


def canonical_C(n: int) -> VectorForm:
    """``C = y^i d/dy^i``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    N = 2 * n
    comps = [MultiPoly.zero(N)] * n + [MultiPoly.var(N, n + i) for i in range(n)]
    return VectorForm.field(comps)


def validate_L(L: VectorForm, kernel_frame: Sequence[VectorForm], points: Sequence) -> StructureReport:
    """Integrability, nilpotency, kernel frame and pointwise rank of a candidate L."""
    rep = StructureReport()
    N = L.num_vars
    n = N // 2
    nij = fn_bracket(L, L)
    rep.add("bracket_LL_zero", nij.is_zero(), nij)
    sq = compose(L, L)
    rep.add("L_squared_zero", sq.is_zero(), sq)
    if len(kernel_frame) != n:
        rep.add("kernel_frame_size", False, f"{len(kernel_frame)} fields, expected {n}")
    for idx, X in enumerate(kernel_frame):
        LX = apply_vf(L, X)
        rep.add(f"kernel_frame_{idx}_in_kernel", LX.is_zero(), LX)
    for z in points:
        r = rank(eval_matrix(L, z))
        rep.add(f"rank_at_{_fmt_point(z)}", r == n, f"rank {r}, expected {n}" if r != n else None)
        if kernel_frame:
            kr = rank(frame_matrix(kernel_frame, z))
            rep.add(
                f"kernel_frame_independent_at_{_fmt_point(z)}",
                kr == n,
                f"rank {kr}, expected {n}" if kr != n else None,
            )
    return rep


def _fmt_point(z) -> str:
    return "(" + ",".join(str(c) for c in z) + ")"


def custom_structure(L: VectorForm, kernel_frame: Sequence[VectorForm], C: VectorForm, points: Sequence) -> TangentStructure:
    rep = validate_L(L, kernel_frame, points)
    if not rep.ok:
        raise StructureError(f"invalid almost-tangent structure: {', '.join(rep.failures())}", rep)
    N = L.num_vars
    return TangentStructure(n=N // 2, L=L, kernel_frame=tuple(kernel_frame), C=C, canonical=False)


def semispray_from_field(S: VectorForm, ts: TangentStructure) -> Semispray:
    LS = apply_vf(ts.L, S)
    if LS != ts.C:
        raise StructureError(f"L S != C, residual {(LS - ts.C).format(32)}")
    return Semispray(S=S, is_spray=fn_bracket(ts.C, S) == S)


def make_semispray(vertical_components: Sequence[MultiPoly], ts: TangentStructure) -> Semispray:
    """``S = y^i d/dx^i + G^i d/dy^i`` for the canonical L."""
    if not ts.canonical:
        raise StructureError("vertical-only semisprays need the canonical L; pass all components instead")
    n, N = ts.n, ts.num_vars
    if len(vertical_components) != n:
        raise ValueError(f"{len(vertical_components)} vertical components, expected {n}")
    comps = [MultiPoly.var(N, n + i) for i in range(n)] + list(vertical_components)
    return semispray_from_field(VectorForm.field(comps), ts)


def reference_semispray(ts: TangentStructure) -> Semispray:
    return make_semispray([MultiPoly.zero(ts.num_vars)] * ts.n, ts)


def spray_by_degree(sp: Semispray, ts: TangentStructure) -> bool:
    """Every monomial of every G^i has y-degree exactly 2 (canonical L)."""
    n = ts.n
    ys = range(n, 2 * n)
    return all(G.degree_in(ys) <= {2} for G in sp.vertical)


def lemma2_reconstruct(K: VectorForm, r: int, ts: TangentStructure, S: VectorForm):
    """Residual of ``K - ([L,K]° + [L,K°]) / (r + k)`` for semibasic homogeneous ``K``."""
    k = K.degree
    if r + k == 0:
        raise ValueError("r + k must be nonzero")
    if not is_semibasic(K, ts.L, ts.kernel_frame).ok:
        raise ValueError("K must be L-semibasic")
    LK = fn_bracket(ts.L, K)
    first = insert_vf(S, LK)
    second = fn_bracket(ts.L, insert_vf(S, K))
    return K - (first + second) * Fraction(1, r + k)
