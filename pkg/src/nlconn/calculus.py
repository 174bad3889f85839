"""Scalar and vector-valued differential forms on a single chart of R^{2n}.

Forms are stored by their components on the coordinate coframe with strictly
increasing multi-indices, using the determinant convention
``(dz^I)(d/dz^{J}) = delta^I_J`` for increasing ``I, J``.  Vector fields are
vector forms of degree 0.

The Frolicher-Nijenhuis bracket :func:`fn_bracket` is computed from the graded
commutator of Lie derivations applied to the coordinate functions;
:func:`fn_bracket_explicit` evaluates the classical (0, l) and (1, 1) formulas
on vector fields and serves as an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, NamedTuple, Sequence, Union

from .ratpoly import DimensionError, MultiPoly, var_name

MAX_BRACKET_DEGREE = 4


class Check(NamedTuple):
    ok: bool
    residual: object


class NotSemibasicError(ValueError):
    pass


def sort_sign(indices: Sequence[int]) -> tuple[int, tuple]:
    """Sign of the permutation sorting ``indices``; 0 if an index repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def perm_sign(perm: Sequence[int]) -> int:
    return sort_sign(perm)[0]


# ---------------------------------------------------------------------------
# scalar forms


class ScalarForm:
    """Scalar p-form: coefficients keyed by increasing index tuples."""

    __slots__ = ("num_vars", "degree", "_coeffs")

    def __init__(self, num_vars: int, degree: int, coeffs: dict | None = None):
        self.num_vars = num_vars
        self.degree = degree
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DimensionError(f"index {idx} does not match degree {degree}")
            if any(not 0 <= i < num_vars for i in idx):
                raise DimensionError(f"index {idx} out of range")
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} is not strictly increasing")
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(num_vars, c)
            if c:
                clean[idx] = c
        self._coeffs = clean

    @classmethod
    def _raw(cls, num_vars, degree, coeffs):
        f = object.__new__(cls)
        f.num_vars = num_vars
        f.degree = degree
        f._coeffs = coeffs
        return f

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "ScalarForm":
        return cls._raw(num_vars, degree, {})

    @classmethod
    def function(cls, f: MultiPoly) -> "ScalarForm":
        return cls._raw(f.num_vars, 0, {(): f} if f else {})

    @classmethod
    def coordinate_differential(cls, num_vars: int, index: int) -> "ScalarForm":
        return cls(num_vars, 1, {(index,): MultiPoly.const(num_vars, 1)})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def get(self, idx: Sequence[int]) -> MultiPoly:
        """Coefficient ``omega(d_{i1}, ..., d_{ip})`` for any index order."""
        sign, key = sort_sign(idx)
        if not sign:
            return MultiPoly.zero(self.num_vars)
        c = self._coeffs.get(key)
        if c is None:
            return MultiPoly.zero(self.num_vars)
        return c if sign > 0 else -c

    def as_function(self) -> MultiPoly:
        if self.degree != 0:
            raise ValueError("not a 0-form")
        return self._coeffs.get((), MultiPoly.zero(self.num_vars))

    def is_zero(self) -> bool:
        return not self._coeffs

    def _check(self, other: "ScalarForm"):
        if not isinstance(other, ScalarForm):
            raise TypeError(f"expected ScalarForm, got {type(other).__name__}")
        if other.num_vars != self.num_vars or other.degree != self.degree:
            raise DimensionError("form shape mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ScalarForm._raw(self.num_vars, self.degree, out)

    def __neg__(self):
        return ScalarForm._raw(self.num_vars, self.degree, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        """Multiply by a function (MultiPoly) or a rational constant."""
        if isinstance(f, (int, Fraction)) and not f:
            return ScalarForm.zero(self.num_vars, self.degree)
        out = {}
        for k, c in self._coeffs.items():
            p = c * f
            if p:
                out[k] = p
        return ScalarForm._raw(self.num_vars, self.degree, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ScalarForm):
            return NotImplemented
        return (self.num_vars, self.degree, self._coeffs) == (other.num_vars, other.degree, other._coeffs)

    __hash__ = None

    def format(self, max_terms: int | None = None) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for idx, c in self.items():
            basis = "^".join("d" + _var(i, self.num_vars) for i in idx)
            parts.append(f"({c.format(max_terms)})" + (f" {basis}" if basis else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"ScalarForm(degree={self.degree}, {self.format()})"


_var = var_name


# ---------------------------------------------------------------------------
# vector forms


class VectorForm:
    """Vector-valued l-form, one scalar l-form per output direction ``d/dz^c``.

    Degree 0 is a vector field; degree 1 is a (1,1) tensor with matrix
    ``K[c][a] = dz^c(K d/dz^a)``.
    """

    __slots__ = ("num_vars", "degree", "comps")

    def __init__(self, comps: Sequence[ScalarForm]):
        comps = tuple(comps)
        if not comps:
            raise DimensionError("vector form needs at least one component")
        nv = comps[0].num_vars
        deg = comps[0].degree
        if len(comps) != nv:
            raise DimensionError(f"{len(comps)} components for {nv} variables")
        for c in comps:
            if c.num_vars != nv or c.degree != deg:
                raise DimensionError("components must share degree and variable count")
        self.num_vars = nv
        self.degree = deg
        self.comps = comps

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "VectorForm":
        z = ScalarForm.zero(num_vars, degree)
        return cls([z] * num_vars)

    @classmethod
    def field(cls, components: Sequence[MultiPoly]) -> "VectorForm":
        return cls([ScalarForm.function(c) for c in components])

    @classmethod
    def coordinate_field(cls, num_vars: int, index: int) -> "VectorForm":
        comps = [MultiPoly.const(num_vars, int(i == index)) for i in range(num_vars)]
        return cls.field(comps)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence]) -> "VectorForm":
        nv = len(matrix)
        comps = []
        for row in matrix:
            if len(row) != nv:
                raise DimensionError("matrix must be square")
            comps.append(ScalarForm(nv, 1, {(a,): row[a] for a in range(nv)}))
        return cls(comps)

    @classmethod
    def identity(cls, num_vars: int) -> "VectorForm":
        return cls.from_matrix([[int(i == j) for j in range(num_vars)] for i in range(num_vars)])

    @classmethod
    def from_frame_values(cls, num_vars: int, degree: int, values: Callable[[tuple], Sequence[MultiPoly]]):
        """Build a form from its values ``K(d_J)`` on increasing frame tuples ``J``."""
        coeffs = [dict() for _ in range(num_vars)]
        for J in combinations(range(num_vars), degree):
            vec = values(J)
            for c in range(num_vars):
                if vec[c]:
                    coeffs[c][J] = vec[c]
        return cls([ScalarForm._raw(num_vars, degree, co) for co in coeffs])

    # -- access ------------------------------------------------------------

    def components(self) -> list:
        """Vector field components (degree 0 only)."""
        if self.degree != 0:
            raise ValueError("not a vector field")
        return [c.as_function() for c in self.comps]

    def matrix(self) -> list:
        if self.degree != 1:
            raise ValueError("not a vector 1-form")
        return [[c.get((a,)) for a in range(self.num_vars)] for c in self.comps]

    def value(self, idx: Sequence[int]) -> list:
        """``K(d_{i1}, ..., d_{il})`` as a list of component polynomials."""
        return [c.get(idx) for c in self.comps]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _check(self, other):
        if not isinstance(other, VectorForm):
            raise TypeError(f"expected VectorForm, got {type(other).__name__}")
        if other.num_vars != self.num_vars or other.degree != self.degree:
            raise DimensionError(
                f"vector form shape mismatch: degree {self.degree} vs {other.degree}"
            )

    def __add__(self, other):
        self._check(other)
        return VectorForm([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._check(other)
        return VectorForm([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorForm([-a for a in self.comps])

    def __mul__(self, f):
        return VectorForm([a * f for a in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorForm):
            return NotImplemented
        return self.degree == other.degree and self.comps == other.comps

    __hash__ = None

    def nonzero_terms(self):
        """(output index, input multi-index, coefficient) in deterministic order."""
        for c, comp in enumerate(self.comps):
            for idx, p in comp.items():
                yield c, idx, p

    def format(self, max_terms: int | None = None) -> str:
        parts = []
        for c, idx, p in self.nonzero_terms():
            basis = "^".join("d" + _var(i, self.num_vars) for i in idx)
            target = "d/d" + _var(c, self.num_vars)
            parts.append(f"({p.format(max_terms)})" + (f" {basis}" if basis else "") + f" (x) {target}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorForm(degree={self.degree}, {self.format()})"


VectorField = VectorForm
AnyForm = Union[ScalarForm, VectorForm]


def coordinate_frame(num_vars: int) -> list:
    return [VectorForm.coordinate_field(num_vars, a) for a in range(num_vars)]


# ---------------------------------------------------------------------------
# exterior derivative, interior products, Lie derivatives


def exterior_d(omega: ScalarForm) -> ScalarForm:
    nv = omega.num_vars
    out: dict = {}
    for idx, c in omega._coeffs.items():
        for a in range(nv):
            if a in idx:
                continue
            dc = c.diff(a)
            if not dc:
                continue
            pos = sum(1 for i in idx if i < a)
            key = idx[:pos] + (a,) + idx[pos:]
            term = dc if pos % 2 == 0 else -dc
            out[key] = out[key] + term if key in out else term
    return ScalarForm._raw(nv, omega.degree + 1, {k: v for k, v in out.items() if v})


def _shuffles(J: tuple, k: int):
    """(sign, A, B) over (k, |J|-k)-shuffles of the increasing tuple ``J``."""
    q = len(J)
    base = k * (k - 1) // 2
    for pos in combinations(range(q), k):
        sign = -1 if (sum(pos) - base) % 2 else 1
        A = tuple(J[i] for i in pos)
        B = tuple(J[i] for i in range(q) if i not in pos)
        yield sign, A, B


def _interior_scalar(K: VectorForm, omega: ScalarForm) -> ScalarForm:
    nv = omega.num_vars
    k, p = K.degree, omega.degree
    q = k + p - 1
    # omega(d_c, d_B) looked up with sorting
    out = {}
    for J in combinations(range(nv), q):
        total = None
        for sign, A, B in _shuffles(J, k):
            for c in range(nv):
                kc = K.comps[c].get(A)
                if not kc:
                    continue
                w = omega.get((c,) + B)
                if not w:
                    continue
                term = kc * w
                if sign < 0:
                    term = -term
                total = term if total is None else total + term
        if total:
            out[J] = total
    return ScalarForm._raw(nv, q, out)


def interior(K: VectorForm, omega: AnyForm) -> AnyForm:
    """Interior product ``i_K omega`` with the shuffle-sum convention.

    ``(i_K omega)(X_1..X_{k+p-1}) = sum over shuffles sgn * omega(K(X_A), X_B)``.
    A vector-valued ``omega`` is handled componentwise.  ``i_K`` of a 0-form is 0.
    """
    if K.num_vars != omega.num_vars:
        raise DimensionError("variable count mismatch")
    if isinstance(omega, VectorForm):
        if omega.degree == 0:
            if K.degree == 0:
                raise ValueError("interior product of two degree-0 objects is undefined")
            return VectorForm.zero(omega.num_vars, K.degree - 1)
        return VectorForm([_interior_scalar(K, c) for c in omega.comps])
    if omega.degree == 0:
        if K.degree == 0:
            raise ValueError("interior product of two degree-0 objects is undefined")
        return ScalarForm.zero(omega.num_vars, K.degree - 1)
    return _interior_scalar(K, omega)


def insert_vf(X: VectorForm, K: AnyForm) -> AnyForm:
    """``(i_X K)(X_1..X_{k-1}) = K(X, X_1..X_{k-1})``."""
    if X.degree != 0:
        raise ValueError("insert_vf expects a vector field")
    if K.degree == 0:
        raise ValueError("cannot insert a vector field into a degree-0 form")
    return interior(X, K)


def lie_scalar(K: VectorForm, omega: ScalarForm) -> ScalarForm:
    """``L_K omega = i_K d omega - (-1)^{k-1} d i_K omega``."""
    k = K.degree
    first = _interior_scalar(K, exterior_d(omega))
    if omega.degree == 0:
        return first
    second = exterior_d(interior(K, omega))
    return first + second if k % 2 == 0 else first - second


def vf_bracket(X: VectorForm, Y: VectorForm) -> VectorForm:
    if X.degree != 0 or Y.degree != 0:
        raise ValueError("vf_bracket expects vector fields")
    if X.num_vars != Y.num_vars:
        raise DimensionError("variable count mismatch")
    xs, ys = X.components(), Y.components()
    nv = X.num_vars
    out = []
    for c in range(nv):
        acc = MultiPoly.zero(nv)
        for a in range(nv):
            if xs[a]:
                acc = acc + xs[a] * ys[c].diff(a)
            if ys[a]:
                acc = acc - ys[a] * xs[c].diff(a)
        out.append(acc)
    return VectorForm.field(out)


def fn_bracket(K: VectorForm, L: VectorForm) -> VectorForm:
    """Frolicher-Nijenhuis bracket, from ``L_{[K,L]} = [L_K, L_L]`` on coordinates."""
    k, l = K.degree, L.degree
    if k + l > MAX_BRACKET_DEGREE:
        raise ValueError(f"bracket degree {k + l} exceeds cap {MAX_BRACKET_DEGREE}")
    if K.num_vars != L.num_vars:
        raise DimensionError("variable count mismatch")
    if k == 0 and l == 0:
        return vf_bracket(K, L)
    sign = -1 if (k * l) % 2 else 1
    comps = []
    for c in range(K.num_vars):
        # L_L(z^c) is the c-th component form of L
        a = lie_scalar(K, L.comps[c])
        b = lie_scalar(L, K.comps[c])
        comps.append(a - b if sign > 0 else a + b)
    return VectorForm(comps)


# ---------------------------------------------------------------------------
# evaluation on arbitrary vector fields, and the explicit bracket formulas


def apply_form(K: AnyForm, fields: Sequence[VectorForm]):
    """Evaluate ``K(X_1..X_k)`` on vector fields by multilinear expansion."""
    k = K.degree
    if len(fields) != k:
        raise ValueError(f"form of degree {k} needs {k} arguments")
    nv = K.num_vars
    if k == 0:
        return K.components() if isinstance(K, VectorForm) else K.as_function()
    comps = [X.components() for X in fields]
    perms = [(perm_sign(p), p) for p in permutations(range(k))]
    # minor(J) = det[X_i^{J_j}]
    minors = {}
    for J in combinations(range(nv), k):
        det = MultiPoly.zero(nv)
        for s, p in perms:
            term = MultiPoly.const(nv, s)
            for i in range(k):
                term = term * comps[i][J[p[i]]]
                if not term:
                    break
            det = det + term
        if det:
            minors[J] = det

    def contract(form: ScalarForm) -> MultiPoly:
        acc = MultiPoly.zero(nv)
        for J, c in form._coeffs.items():
            m = minors.get(J)
            if m is not None:
                acc = acc + c * m
        return acc

    if isinstance(K, ScalarForm):
        return contract(K)
    return [contract(c) for c in K.comps]


def _bracket_fields(X: Sequence[MultiPoly], Y: Sequence[MultiPoly]) -> list:
    return vf_bracket(VectorForm.field(X), VectorForm.field(Y)).components()


def fn_bracket_explicit_on(K: VectorForm, L: VectorForm, fields: Sequence[VectorForm]) -> list:
    """``[K,L](X_1..)`` from the classical formulas, valid for degrees (0,l), (l,0), (1,1)."""
    k, l = K.degree, L.degree
    nv = K.num_vars
    if k == 0:
        X = K
        value = VectorForm.field(apply_form(L, fields))
        out = vf_bracket(X, value).components()
        for i in range(l):
            moved = list(fields)
            moved[i] = vf_bracket(X, fields[i])
            term = apply_form(L, moved)
            out = [a - b for a, b in zip(out, term)]
        return out
    if l == 0:
        # [K, X] = -(-1)^{0} [X, K]
        return [-a for a in fn_bracket_explicit_on(L, K, fields)]
    if k == 1 and l == 1:
        X, Y = fields
        KX, KY = VectorForm.field(apply_form(K, [X])), VectorForm.field(apply_form(K, [Y]))
        LX, LY = VectorForm.field(apply_form(L, [X])), VectorForm.field(apply_form(L, [Y]))
        XY = vf_bracket(X, Y)

        def add(*vs):
            acc = [MultiPoly.zero(nv)] * nv
            for s, v in vs:
                acc = [a + b * s for a, b in zip(acc, v)]
            return acc

        KL_XY = apply_form(K, [VectorForm.field(apply_form(L, [XY]))])
        LK_XY = apply_form(L, [VectorForm.field(apply_form(K, [XY]))])
        inner_L = VectorForm.field(add((1, vf_bracket(LX, Y).components()), (1, vf_bracket(X, LY).components())))
        inner_K = VectorForm.field(add((1, vf_bracket(KX, Y).components()), (1, vf_bracket(X, KY).components())))
        return add(
            (1, vf_bracket(KX, LY).components()),
            (1, vf_bracket(LX, KY).components()),
            (1, KL_XY),
            (1, LK_XY),
            (-1, apply_form(K, [inner_L])),
            (-1, apply_form(L, [inner_K])),
        )
    raise ValueError(f"no explicit formula for degrees ({k}, {l})")


def fn_bracket_explicit(K: VectorForm, L: VectorForm) -> VectorForm:
    """Independent route to :func:`fn_bracket` via the explicit formulas on the coordinate frame."""
    nv = K.num_vars
    frame = coordinate_frame(nv)
    deg = K.degree + L.degree
    return VectorForm.from_frame_values(
        nv, deg, lambda J: fn_bracket_explicit_on(K, L, [frame[j] for j in J])
    )


# ---------------------------------------------------------------------------
# algebraic operations on vector forms


def compose(A: VectorForm, K: AnyForm) -> AnyForm:
    """``A o K``: apply the vector 1-form ``A`` to the values of ``K``."""
    if A.degree != 1:
        raise ValueError("left factor must be a vector 1-form")
    nv = A.num_vars
    if isinstance(K, ScalarForm):
        raise TypeError("cannot compose onto a scalar form")
    mat = A.matrix()
    comps = []
    for c in range(nv):
        acc = ScalarForm.zero(nv, K.degree)
        for b in range(nv):
            if mat[c][b]:
                acc = acc + K.comps[b] * mat[c][b]
        comps.append(acc)
    return VectorForm(comps)


def pullback(K: AnyForm, A: VectorForm) -> AnyForm:
    """``(X_1..X_k) -> K(A X_1, .., A X_k)`` for a vector 1-form ``A``."""
    if A.degree != 1:
        raise ValueError("A must be a vector 1-form")
    nv = A.num_vars
    cols = [VectorForm.field([A.comps[c].get((a,)) for c in range(nv)]) for a in range(nv)]
    if isinstance(K, ScalarForm):
        out = {}
        for J in combinations(range(nv), K.degree):
            v = apply_form(K, [cols[j] for j in J])
            if v:
                out[J] = v
        return ScalarForm._raw(nv, K.degree, out)
    return VectorForm.from_frame_values(nv, K.degree, lambda J: apply_form(K, [cols[j] for j in J]))


def apply_vf(A: VectorForm, X: VectorForm) -> VectorForm:
    """Value ``A X`` of a vector 1-form on a vector field."""
    return VectorForm.field(apply_form(A, [X]))


# ---------------------------------------------------------------------------
# homogeneity, semibasic forms, potentials


def is_homogeneous(K: AnyForm, r: int, C: VectorForm) -> Check:
    """Degree-``r`` homogeneity: ``L_C w = r w`` or ``[C,K] = (r-1) K``."""
    if isinstance(K, ScalarForm):
        res = lie_scalar(C, K) - K * r
    else:
        res = fn_bracket(C, K) - K * (r - 1)
    return Check(res.is_zero(), res)


def is_semibasic(K: AnyForm, L: VectorForm, kernel_frame: Sequence[VectorForm] | None) -> Check:
    """``L o K = 0`` (vector case) and ``i_X K = 0`` for every kernel-frame field ``X``.

    The residual is a list of the nonzero offending forms.
    """
    if kernel_frame is None:
        raise ValueError("semibasic test needs an explicit kernel frame for L")
    bad = []
    if isinstance(K, VectorForm):
        lk = compose(L, K)
        if not lk.is_zero():
            bad.append(lk)
    if K.degree >= 1:
        for X in kernel_frame:
            ins = insert_vf(X, K)
            if not ins.is_zero():
                bad.append(ins)
    return Check(not bad, bad)


def potential(K: AnyForm, S: VectorForm, ts) -> AnyForm:
    """``K° = i_S K`` for an L-semibasic ``K`` and an L-semispray ``S`` of ``ts``."""
    if K.degree < 1:
        raise ValueError("potential needs degree >= 1")
    if not is_semibasic(K, ts.L, ts.kernel_frame).ok:
        raise NotSemibasicError("form is not L-semibasic")
    if apply_vf(ts.L, S) != ts.C:
        raise ValueError("S is not an L-semispray (L S != C)")
    return insert_vf(S, K)
