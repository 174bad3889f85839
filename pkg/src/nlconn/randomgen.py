"""Seeded random polynomials, vector forms and semisprays for identity sweeps."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .calculus import ScalarForm, VectorForm
from .ratpoly import MultiPoly


def random_coeff(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 2, 3])
    return Fraction(num, rng.choice([1, 1, 1, 2, 3]))


def random_exponent(rng: random.Random, num_vars: int, max_degree: int, variables=None) -> tuple:
    pool = list(range(num_vars)) if variables is None else list(variables)
    exp = [0] * num_vars
    for _ in range(rng.randint(0, max_degree)):
        exp[rng.choice(pool)] += 1
    return tuple(exp)


def random_poly(rng: random.Random, num_vars: int, max_degree: int = 2, max_terms: int = 3,
                zero_prob: float = 0.0) -> MultiPoly:
    if zero_prob and rng.random() < zero_prob:
        return MultiPoly.zero(num_vars)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = random_exponent(rng, num_vars, max_degree)
        terms[e] = terms.get(e, 0) + random_coeff(rng)
    return MultiPoly(num_vars, terms)


def random_y_homogeneous(rng: random.Random, n: int, y_degree: int, x_degree: int = 1, max_terms: int = 2) -> MultiPoly:
    """Polynomial of exact total degree ``y_degree`` in y1..yn with x-dependent coefficients."""
    N = 2 * n
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        ey = random_exponent(rng, N, 0, range(n, N))
        ey = list(ey)
        for _ in range(y_degree):
            ey[rng.randrange(n, N)] += 1
        ex = random_exponent(rng, N, x_degree, range(n))
        e = tuple(a + b for a, b in zip(ex, ey))
        terms[e] = terms.get(e, 0) + random_coeff(rng)
    return MultiPoly(N, terms)


def random_vector_field(rng: random.Random, num_vars: int, max_degree: int = 2, max_terms: int = 2) -> VectorForm:
    return VectorForm.field([random_poly(rng, num_vars, max_degree, max_terms, zero_prob=0.3) for _ in range(num_vars)])


def random_vector_form(rng: random.Random, num_vars: int, degree: int, max_degree: int = 2,
                       density: float = 0.35) -> VectorForm:
    if degree == 0:
        return random_vector_field(rng, num_vars, max_degree)
    comps = []
    for _ in range(num_vars):
        coeffs = {}
        for J in combinations(range(num_vars), degree):
            if rng.random() < density:
                coeffs[J] = random_poly(rng, num_vars, max_degree, 2)
        comps.append(ScalarForm(num_vars, degree, coeffs))
    return VectorForm(comps)


def random_scalar_form(rng: random.Random, num_vars: int, degree: int, max_degree: int = 2,
                       density: float = 0.5) -> ScalarForm:
    coeffs = {}
    for J in combinations(range(num_vars), degree):
        if rng.random() < density:
            coeffs[J] = random_poly(rng, num_vars, max_degree, 2)
    return ScalarForm(num_vars, degree, coeffs)


def random_semispray_vertical(rng: random.Random, n: int, max_degree: int = 2) -> list:
    return [random_poly(rng, 2 * n, max_degree, 3, zero_prob=0.2) for _ in range(n)]


def random_spray_vertical(rng: random.Random, n: int) -> list:
    return [random_y_homogeneous(rng, n, 2) for _ in range(n)]


def compatible_pair(rng: random.Random, n: int) -> tuple:
    """Vertical parts ``G`` and coefficient matrix ``t`` with ``t° + [C,S] - S = 0``.

    ``G^i = y^a g^i_a(x) + q^i`` with ``q^i`` quadratic in y and ``t^i_a = g^i_a``;
    then ``t^i_a y^a = 2 G^i - y^j dG^i/dy^j`` holds term by term.
    """
    N = 2 * n
    ys = [MultiPoly.var(N, n + a) for a in range(n)]
    t = [[random_poly(rng, N, 1, 2, zero_prob=0.3) for _ in range(n)] for _ in range(n)]
    # keep only x-dependence in t
    t = [[MultiPoly(N, {e: c for e, c in p.terms.items() if not any(e[n:])}) for p in row] for row in t]
    G = []
    for i in range(n):
        g = random_y_homogeneous(rng, n, 2) if rng.random() < 0.7 else MultiPoly.zero(N)
        for a in range(n):
            g = g + ys[a] * t[i][a]
        G.append(g)
    return G, t


def random_expression(rng: random.Random, n: int, depth: int = 3) -> str:
    """Source text in the expression grammar, with nesting, powers and unary minus."""
    if depth <= 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.45:
            return f"{rng.choice('xy')}{rng.randint(1, n)}"
        num = rng.randint(0, 9)
        return f"{num}/{rng.randint(1, 5)}" if r < 0.7 else str(num)
    kind = rng.choice(["sum", "diff", "prod", "pow", "neg", "paren"])
    a = random_expression(rng, n, depth - 1)
    if kind == "sum":
        return f"{a} + {random_expression(rng, n, depth - 1)}"
    if kind == "diff":
        return f"{a} - {random_expression(rng, n, depth - 1)}"
    if kind == "prod":
        return f"({a})*({random_expression(rng, n, depth - 1)})"
    if kind == "pow":
        return f"({a})^{rng.randint(0, 3)}"
    if kind == "neg":
        return f"-({a})"
    return f"({a})"
