import random

import pytest

from nlconn.calculus import VectorForm, apply_vf, fn_bracket, is_homogeneous
from nlconn.randomgen import random_semispray_vertical, random_spray_vertical
from nlconn.ratpoly import MultiPoly
from nlconn.tangent import (
    StructureError,
    canonical_C,
    canonical_L,
    custom_structure,
    eval_matrix,
    lemma2_reconstruct,
    make_semispray,
    reference_semispray,
    sample_points,
    semispray_from_field,
    spray_by_degree,
    validate_L,
)
from nlconn.ratpoly import rank


def test_canonical_L_n1():
    ts = canonical_L(1)
    assert eval_matrix(ts.L, (0, 0)) == [[0, 0], [1, 0]]
    assert ts.canonical and ts.num_vars == 2
    with pytest.raises(ValueError):
        canonical_L(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_canonical_structure_is_valid(n):
    ts = canonical_L(n)
    rep = validate_L(ts.L, ts.kernel_frame, sample_points(2 * n))
    assert rep.ok, rep.failures()
    assert rank(eval_matrix(ts.L, (1,) * (2 * n))) == n
    assert fn_bracket(ts.C, ts.L) == -ts.L


def test_validate_rejects_non_nilpotent():
    N = 2
    L = VectorForm.from_matrix([[0, 0], [1, 1]])
    rep = validate_L(L, [VectorForm.coordinate_field(N, 1)], sample_points(N))
    assert not rep.checks["L_squared_zero"].ok


def test_validate_rejects_rank_drop_at_origin():
    N = 2
    x = MultiPoly.var(N, 0)
    L = VectorForm.from_matrix([[0, 0], [x, 0]])
    rep = validate_L(L, [VectorForm.coordinate_field(N, 1)], [(0, 0), (1, 1)])
    assert not rep.ok
    assert rep.failures() == ["rank_at_(0,0)"]
    with pytest.raises(StructureError):
        custom_structure(L, [VectorForm.coordinate_field(N, 1)], canonical_C(1), [(0, 0)])


def test_canonical_C():
    C = canonical_C(1)
    y = MultiPoly.var(2, 1)
    assert C == VectorForm.field([MultiPoly.zero(2), y])
    assert apply_vf(canonical_L(1).L, C).is_zero()
    assert is_homogeneous(C, 1, C).ok


def test_semispray_examples():
    ts = canonical_L(1)
    N = 2
    x, y = MultiPoly.var(N, 0), MultiPoly.var(N, 1)
    s0 = make_semispray([MultiPoly.zero(N)], ts)
    assert s0.is_spray and s0 == reference_semispray(ts)
    g = 2 * x + 1
    s1 = make_semispray([y * g], ts)
    assert not s1.is_spray
    residual = fn_bracket(ts.C, s1.S) - s1.S
    assert residual == VectorForm.field([MultiPoly.zero(N), -(y * g)])
    assert make_semispray([y * y * 5], ts).is_spray


def test_semispray_validation():
    ts = canonical_L(1)
    with pytest.raises(StructureError):
        semispray_from_field(VectorForm.coordinate_field(2, 0), ts)
    with pytest.raises(ValueError):
        make_semispray([], ts)


def test_spray_flag_matches_degree():
    rng = random.Random(7)
    for k in range(20):
        n = 1 + k % 2
        ts = canonical_L(n)
        vert = random_spray_vertical(rng, n) if k % 3 == 0 else random_semispray_vertical(rng, n)
        sp = make_semispray(vert, ts)
        assert sp.is_spray == spray_by_degree(sp, ts)


def test_reconstruction_of_semibasic_forms():
    ts = canonical_L(1)
    S = make_semispray([MultiPoly.var(2, 1) ** 2], ts).S
    K = VectorForm.from_matrix([[0, 0], [1, 0]])
    assert lemma2_reconstruct(K, 0, ts, S).is_zero()
    assert lemma2_reconstruct(VectorForm.zero(2, 1), 0, ts, S).is_zero()
    with pytest.raises(ValueError):
        lemma2_reconstruct(K, -1, ts, S)


def test_sample_points_are_deterministic():
    a = sample_points(4, seed=3)
    assert a == sample_points(4, seed=3)
    assert a != sample_points(4, seed=4)
    assert len(set(a)) == len(a)
    assert (0, 0, 0, 0) in a
