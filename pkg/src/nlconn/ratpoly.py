"""Exact rationals and multivariate polynomials over them.

Variables are ordered ``x1..xn, y1..yn``; a polynomial in ``2n`` variables is
stored as a map from dense exponent tuples to nonzero ``Fraction`` coefficients.
Every operation returns a normalized value, so ``==`` is exact equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]
# A chart point: 2n rationals ordered (x1..xn, y1..yn).
Point = tuple


class DimensionError(ValueError):
    """Operands live in different numbers of variables, or an index is out of range."""


def _grlex_key(exp: tuple) -> tuple:
    # graded lexicographic, highest first when sorted with reverse=True
    return (sum(exp), exp)


def var_name(index: int, num_vars: int) -> str:
    n = num_vars // 2
    if index < n:
        return f"x{index + 1}"
    return f"y{index - n + 1}"


class MultiPoly:
    """Immutable polynomial in ``num_vars`` variables with rational coefficients."""

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[tuple, Scalar] | None = None):
        self.num_vars = num_vars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != num_vars:
                    raise DimensionError(f"exponent {exp} has wrong length for {num_vars} variables")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already normalized
        p = object.__new__(cls)
        p.num_vars = num_vars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls._raw(num_vars, {})

    @classmethod
    def const(cls, num_vars: int, c: Scalar) -> "MultiPoly":
        if not c:
            return cls.zero(num_vars)
        return cls._raw(num_vars, {(0,) * num_vars: Fraction(c)})

    @classmethod
    def var(cls, num_vars: int, index: int) -> "MultiPoly":
        if not 0 <= index < num_vars:
            raise DimensionError(f"variable index {index} out of range for {num_vars} variables")
        exp = [0] * num_vars
        exp[index] = 1
        return cls._raw(num_vars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, num_vars: int, exp: Sequence[int], c: Scalar = 1) -> "MultiPoly":
        return cls(num_vars, {tuple(exp): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator[tuple]:
        """Terms in graded-lex order, highest first."""
        for exp in sorted(self._terms, key=_grlex_key, reverse=True):
            yield exp, self._terms[exp]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def truncated(self, k: int) -> "MultiPoly":
        """The ``k`` leading terms in graded-lex order."""
        return MultiPoly._raw(self.num_vars, dict(list(self.items())[:k]))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> set:
        """Set of total degrees in the given variables over all terms."""
        idx = list(indices)
        return {sum(e[i] for i in idx) for e in self._terms}

    def constant_value(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1:
            exp, c = next(iter(self._terms.items()))
            if not any(exp):
                return c
        return None

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise DimensionError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.num_vars)
            return MultiPoly._raw(self.num_vars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return MultiPoly.zero(self.num_vars)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.num_vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == MultiPoly.const(self.num_vars, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus ---------------------------------------------------------

    def diff(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.num_vars:
            raise DimensionError(f"variable index {var} out of range for {self.num_vars} variables")
        out = {}
        for exp, c in self._terms.items():
            k = exp[var]
            if k:
                e = list(exp)
                e[var] = k - 1
                out[tuple(e)] = c * k
        return MultiPoly._raw(self.num_vars, out)

    def eval(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.num_vars:
            raise DimensionError(f"point has {len(point)} coordinates, polynomial has {self.num_vars} variables")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, k in zip(pt, exp):
                if k:
                    term *= v ** k
            total += term
        return total

    # -- printing ---------------------------------------------------------

    def format(self, max_terms: int | None = None) -> str:
        """Graded-lex rendering that re-parses with :func:`nlconn.parser.parse_expression`."""
        if not self._terms:
            return "0"
        items = list(self.items())
        omitted = 0
        if max_terms is not None and len(items) > max_terms:
            omitted = len(items) - max_terms
            items = items[:max_terms]
        parts = []
        for k, (exp, c) in enumerate(items):
            mono = "*".join(
                var_name(i, self.num_vars) + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exp)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                if c < 0:
                    # unary minus binds to the first factor only, so keep the sign on a literal
                    body = f"-{mag}*{mono}" if mono else f"-{mag}"
                parts.append(body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        if omitted:
            text += f" ... (+{omitted} more terms)"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MultiPoly({self.num_vars}, {self.format()!r})"


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if p.num_vars != q.num_vars:
        raise DimensionError(f"variable count mismatch: {p.num_vars} vs {q.num_vars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(p: MultiPoly, var: int) -> MultiPoly:
    return p.diff(var)


def poly_eval(p: MultiPoly, z: Sequence[Scalar]) -> Fraction:
    return p.eval(z)


def make_point(coords: Iterable[Scalar], num_vars: int | None = None) -> Point:
    pt = tuple(Fraction(c) for c in coords)
    if num_vars is not None and len(pt) != num_vars:
        raise DimensionError(f"point has {len(pt)} coordinates, expected {num_vars}")
    return pt


# -- exact linear algebra over Q ------------------------------------------


def row_reduce(rows: Sequence[Sequence[Scalar]]) -> tuple[list, list]:
    """Reduced row echelon form and pivot columns, by exact Gauss-Jordan elimination."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(m)) if m[i][col]), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        piv = m[r][col]
        m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list:
    """Basis of ``{c : A c = 0}`` as lists of Fractions."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_reduce(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -red[r][f]
        basis.append(vec)
    return basis


def leading_minors_positive(matrix: Sequence[Sequence[Scalar]]) -> bool:
    """Sylvester's criterion for a symmetric rational matrix."""
    size = len(matrix)
    for k in range(1, size + 1):
        if _det([row[:k] for row in matrix[:k]]) <= 0:
            return False
    return True


def _det(matrix: Sequence[Sequence[Scalar]]) -> Fraction:
    m = [[Fraction(v) for v in row] for row in matrix]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        sel = next((i for i in range(col, size) if m[i][col]), None)
        if sel is None:
            return Fraction(0)
        if sel != col:
            m[col], m[sel] = m[sel], m[col]
            det = -det
        piv = m[col][col]
        det *= piv
        for i in range(col + 1, size):
            if m[i][col]:
                f = m[i][col] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det
