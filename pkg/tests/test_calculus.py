import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlconn.calculus import (
    MAX_BRACKET_DEGREE,
    NotSemibasicError,
    ScalarForm,
    VectorForm,
    apply_form,
    apply_vf,
    exterior_d,
    fn_bracket,
    fn_bracket_explicit,
    fn_bracket_explicit_on,
    insert_vf,
    interior,
    is_homogeneous,
    is_semibasic,
    lie_scalar,
    potential,
    vf_bracket,
)
from nlconn.connection import from_semispray, torsion
from nlconn.randomgen import (
    random_scalar_form,
    random_semispray_vertical,
    random_vector_field,
    random_vector_form,
)
from nlconn.ratpoly import MultiPoly
from nlconn.tangent import canonical_L, make_semispray

N = 2
ts1 = canonical_L(1)
x, y = MultiPoly.var(N, 0), MultiPoly.var(N, 1)
one = MultiPoly.const(N, 1)
dx, dy = ScalarForm.coordinate_differential(N, 0), ScalarForm.coordinate_differential(N, 1)
dx_dy = ScalarForm(N, 2, {(0, 1): 1})
d_x, d_y = VectorForm.coordinate_field(N, 0), VectorForm.coordinate_field(N, 1)
S0 = VectorForm.field([y, MultiPoly.zero(N)])
seeds = st.integers(0, 10 ** 6)


def test_exterior_derivative_examples():
    assert exterior_d(ScalarForm.function(x)) == dx
    assert exterior_d(dy * x) == dx_dy
    rng = random.Random(1)
    for deg in (0, 1, 2):
        w = random_scalar_form(rng, 4, deg)
        assert exterior_d(exterior_d(w)).is_zero()


def test_interior_examples():
    assert interior(ts1.L, dy) == dx
    assert interior(ts1.L, dx).is_zero()
    h_flat = VectorForm.from_matrix([[1, 0], [0, 0]])
    assert interior(h_flat, dx) == dx
    with pytest.raises(ValueError):
        interior(d_x, ScalarForm.function(x))


def test_insertion_examples():
    assert insert_vf(d_x, dx_dy) == dy
    g = 3 * x + 1
    t = VectorForm.from_matrix([[0, 0], [g, 0]])
    S = VectorForm.field([y, y * g])
    assert insert_vf(S, t) == VectorForm.field([MultiPoly.zero(N), y * g])
    with pytest.raises(ValueError):
        insert_vf(d_x, S)


def test_lie_derivative_examples():
    C = ts1.C
    assert lie_scalar(C, dx).is_zero()
    assert lie_scalar(C, dy) == dy
    assert lie_scalar(d_x, ScalarForm.function(x)) == ScalarForm.function(one)


def test_vector_field_bracket_examples():
    assert vf_bracket(ts1.C, S0) == S0
    assert vf_bracket(d_x, d_y).is_zero()
    rng = random.Random(2)
    for _ in range(5):
        X = random_vector_field(rng, N)
        LX = apply_vf(ts1.L, X)
        assert vf_bracket(ts1.C, LX) - apply_vf(ts1.L, vf_bracket(ts1.C, X)) == -LX


def test_fn_bracket_examples():
    for n in (1, 2, 3):
        ts = canonical_L(n)
        assert fn_bracket(ts.C, ts.L) == -ts.L
        assert fn_bracket(ts.L, ts.L).is_zero()
    assert fn_bracket(ts1.L, S0) == VectorForm.from_matrix([[1, 0], [0, -1]])


def test_bracket_degree_cap():
    rng = random.Random(3)
    A = random_vector_form(rng, 6, 3)
    B = random_vector_form(rng, 6, 2)
    assert MAX_BRACKET_DEGREE == 4
    with pytest.raises(ValueError):
        fn_bracket(A, B)


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from([(0, 1), (1, 1), (1, 2)]))
def test_graded_antisymmetry(seed, degs):
    rng = random.Random(seed)
    k, l = degs
    K, L = random_vector_form(rng, N, k), random_vector_form(rng, N, l)
    sign = -1 if (k * l) % 2 else 1
    assert fn_bracket(K, L) == fn_bracket(L, K) * (-sign)


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from([(0, 1), (0, 2), (1, 0), (1, 1)]))
def test_oracle_agrees(seed, degs):
    rng = random.Random(seed)
    n_vars = rng.choice([2, 4])
    K, L = random_vector_form(rng, n_vars, degs[0]), random_vector_form(rng, n_vars, degs[1])
    assert fn_bracket(K, L) == fn_bracket_explicit(K, L)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_bracket_is_tensorial_on_general_fields(seed):
    rng = random.Random(seed)
    K, L = random_vector_form(rng, N, 1), random_vector_form(rng, N, 1)
    X, Y = random_vector_field(rng, N), random_vector_field(rng, N)
    assert apply_form(fn_bracket(K, L), [X, Y]) == fn_bracket_explicit_on(K, L, [X, Y])


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_jacobi_identity(seed):
    rng = random.Random(seed)
    degs = [rng.randint(0, 1) for _ in range(3)]
    A, B, C = (random_vector_form(rng, N, d, max_degree=2) for d in degs)
    a, b, c = degs

    def sgn(e):
        return -1 if e % 2 else 1

    total = (fn_bracket(A, fn_bracket(B, C)) * sgn(a * c)
             + fn_bracket(B, fn_bracket(C, A)) * sgn(b * a)
             + fn_bracket(C, fn_bracket(A, B)) * sgn(c * b))
    assert total.is_zero()


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 2))
def test_semispray_bracket_identities(seed, n):
    rng = random.Random(seed)
    ts = canonical_L(n)
    S = make_semispray(random_semispray_vertical(rng, n), ts).S
    S2 = make_semispray(random_semispray_vertical(rng, n), ts).S
    X = random_vector_field(rng, 2 * n)
    LX = apply_vf(ts.L, X)
    assert apply_vf(ts.L, fn_bracket(LX, S)) == LX
    assert apply_vf(ts.L, fn_bracket(S, S2)) == S - S2


def test_potential_is_independent_of_semispray():
    rng = random.Random(4)
    ts = canonical_L(2)
    x1 = MultiPoly.var(4, 0)
    t = VectorForm.from_matrix([[0] * 4, [0] * 4, [x1, 1, 0, 0], [0, x1 * x1, 0, 0]])
    S = make_semispray(random_semispray_vertical(rng, 2), ts).S
    S2 = make_semispray(random_semispray_vertical(rng, 2), ts).S
    assert potential(t, S, ts) == potential(t, S2, ts)
    K = VectorForm.from_frame_values(4, 2, lambda J: [MultiPoly.zero(4)] * 2 + [MultiPoly.const(4, int(J == (0, 1)))] * 2)
    assert potential(K, S, ts) == potential(K, S2, ts)
    assert insert_vf(S, potential(K, S, ts)).is_zero()
    with pytest.raises(NotSemibasicError):
        potential(VectorForm.identity(4), S, ts)
    with pytest.raises(ValueError):
        potential(t, ts.C, ts)


def test_homogeneity_examples():
    assert is_homogeneous(ts1.C, 1, ts1.C).ok
    assert is_homogeneous(S0, 2, ts1.C).ok
    assert is_homogeneous(ts1.L, 0, ts1.C).ok
    bad = is_homogeneous(S0, 1, ts1.C)
    assert not bad.ok and bad.residual == S0
    assert is_homogeneous(dy, 1, ts1.C).ok


def test_semibasic_examples():
    assert is_semibasic(dx, ts1.L, ts1.kernel_frame).ok
    assert not is_semibasic(dy, ts1.L, ts1.kernel_frame).ok
    rng = random.Random(5)
    ts = canonical_L(2)
    conn = from_semispray(make_semispray(random_semispray_vertical(rng, 2), ts), ts)
    T = torsion(conn, ts).T
    assert is_semibasic(T, ts.L, ts.kernel_frame).ok
    with pytest.raises(ValueError):
        is_semibasic(dx, ts1.L, None)


def test_vector_form_constructors():
    m = [[1, 0], [Fraction(1, 2), x]]
    K = VectorForm.from_matrix(m)
    assert K.matrix()[1][0] == Fraction(1, 2) and K.matrix()[1][1] == x
    assert apply_vf(VectorForm.identity(N), S0) == S0
    assert VectorForm.zero(N, 2).is_zero()
    with pytest.raises(ValueError):
        ScalarForm(N, 2, {(1, 0): 1})
