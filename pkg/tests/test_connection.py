import random
from fractions import Fraction

import pytest

from instances import instance
from nlconn import connection as cn
from nlconn.calculus import VectorForm, apply_vf, compose, fn_bracket, insert_vf, pullback
from nlconn.manifest import torsion_form
from nlconn.randomgen import compatible_pair, random_semispray_vertical, random_spray_vertical
from nlconn.ratpoly import MultiPoly
from nlconn.tangent import canonical_L, make_semispray

N = 2
ts1 = canonical_L(1)
x, y = MultiPoly.var(N, 0), MultiPoly.var(N, 1)
ZERO = MultiPoly.zero(N)
g = 2 * x + 1
GAMMA0 = VectorForm.from_matrix([[1, 0], [0, -1]])
S0 = make_semispray([ZERO], ts1)
S_g = make_semispray([y * g], ts1)
t_g = VectorForm.from_matrix([[0, 0], [g, 0]])


def test_validate_connection_examples():
    conn = cn.validate_connection(GAMMA0, ts1)
    assert conn.homogeneous
    assert conn.h == VectorForm.from_matrix([[1, 0], [0, 0]])
    with pytest.raises(cn.InvalidConnection):
        cn.validate_connection(VectorForm.identity(N), ts1)
    assert not cn.validate_connection(GAMMA0 + t_g, ts1).homogeneous
    assert cn.validate_connection(GAMMA0 + t_g * 0, ts1).homogeneous
    assert fn_bracket(ts1.C, GAMMA0 + t_g) == -t_g


def test_from_semispray_examples():
    assert cn.from_semispray(S0, ts1).gamma == GAMMA0
    assert cn.from_semispray(S_g, ts1).gamma == VectorForm.from_matrix([[1, 0], [g, -1]])


def test_canonical_semispray_examples():
    assert cn.canonical_semispray(cn.validate_connection(GAMMA0, ts1), ts1) == S0
    spray = make_semispray([y * y * x], ts1)
    assert cn.canonical_semispray(cn.from_semispray(spray, ts1), ts1).S == spray.S
    half = (S_g.S + fn_bracket(ts1.C, S_g.S)) * Fraction(1, 2)
    assert cn.canonical_semispray(cn.from_semispray(S_g, ts1), ts1).S == half


def test_canonical_semispray_is_independent_of_reference():
    rng = random.Random(1)
    ts = canonical_L(2)
    conn = cn.from_semispray(make_semispray(random_semispray_vertical(rng, 2), ts), ts)
    base = cn.canonical_semispray(conn, ts)
    other = cn.canonical_semispray(conn, ts, make_semispray(random_semispray_vertical(rng, 2), ts))
    assert base == other
    assert cn.canonical_semispray_residual(conn, base, ts).is_zero()


def test_build_from_decomposition_examples():
    assert cn.build_from_decomposition(S0, VectorForm.zero(N, 1), ts1).gamma == GAMMA0
    conn = cn.build_from_decomposition(S_g, t_g, ts1)
    assert conn.gamma == VectorForm.from_matrix([[1, 0], [2 * g, -1]])
    with pytest.raises(cn.CompatibilityError) as err:
        cn.build_from_decomposition(S0, VectorForm.from_matrix([[0, 0], [1, 0]]), ts1)
    assert err.value.residual == VectorForm.field([ZERO, y])
    with pytest.raises(cn.CompatibilityError):
        cn.build_from_decomposition(S0, VectorForm.from_matrix([[0, 0], [0, 1]]), ts1)


def test_torsion_examples():
    rng = random.Random(2)
    ts = canonical_L(2)
    conn = cn.from_semispray(make_semispray(random_semispray_vertical(rng, 2), ts), ts)
    assert cn.torsion(conn, ts).T.is_zero()
    tor = cn.torsion(cn.build_from_decomposition(S_g, t_g, ts1), ts1)
    assert tor.t_strong == t_g
    ins = instance("homog_torsion_n2")
    assert fn_bracket(ins.ts.C, ins.tor.T) == -ins.tor.T


def test_curvature_of_literal_and_corrected_instances():
    # literal curved instance: h d/dx1 = d/dx1, h d/dx2 = d/dx2 + x2*y2 d/dy1, and
    # [h d/dx1, h d/dx2] = d(x2*y2)/dx1 d/dy1 = 0, so R vanishes
    lit = instance("curved_n2")
    assert lit.R.is_zero()
    # corrected: h d/dx2 = d/dx2 + x1*y2 d/dy1, bracket y2 d/dy1, R(d1,d2) = -y2 d/dy1
    cor = instance("curved_n2_corrected")
    y2 = MultiPoly.var(4, 3)
    expected = VectorForm.from_frame_values(
        4, 2, lambda J: [MultiPoly.zero(4)] * 2 + [-y2 if J == (0, 1) else MultiPoly.zero(4), MultiPoly.zero(4)])
    assert cor.R == expected
    assert cn.curvature(cor.conn, cor.ts, cor.sp).R == expected


def test_curvature_vanishes_for_n1():
    rng = random.Random(3)
    for _ in range(5):
        conn = cn.from_semispray(make_semispray(random_semispray_vertical(rng, 1), ts1), ts1)
        assert cn.curvature(conn, ts1).R.is_zero()


def test_bianchi_examples():
    for name in ("flat_n1", "torsion_n1", "curved_n2", "curved_n2_corrected", "homog_torsion_n2"):
        ins = instance(name)
        assert all(r.is_zero() for r in cn.bianchi_check(ins.conn, ins.ts, ins.tor))


def test_conservative_examples():
    spray = make_semispray([y * y * x], ts1)
    assert cn.conservative_check(cn.from_semispray(spray, ts1), ts1).ok
    assert cn.conservative_check(cn.validate_connection(GAMMA0, ts1), ts1).ok
    ins = instance("homog_torsion_n2")
    res = cn.conservative_check(ins.conn, ins.ts)
    assert not res.ok and res.residual == ins.tor.T * 2
    with pytest.raises(ValueError):
        cn.conservative_check(cn.build_from_decomposition(S_g, t_g, ts1), ts1)


def test_curvature_potential_equivalence():
    assert cn.theorem6_check(S0, ts1).consistent
    ts2 = canonical_L(2)
    flat = cn.theorem6_check(make_semispray([MultiPoly.zero(4)] * 2, ts2), ts2)
    assert flat.R_zero and flat.potential_zero
    cor = instance("curved_n2_corrected")
    rep = cn.theorem6_check(cor.sp, cor.ts)
    assert not rep.R_zero and not rep.potential_zero


def test_nullity_examples():
    conn0 = cn.validate_connection(GAMMA0, ts1)
    assert cn.nullity(conn0, ts1, (3, -1)).mu == 1
    flat2 = instance("flat_n2")
    assert cn.nullity(flat2.conn, flat2.ts, (1, 2, 3, 4)).mu == 2
    cor = instance("curved_n2_corrected")
    assert cn.nullity(cor.conn, cor.ts, (1, 1, 1, 1), cor.R).mu == 0
    # R_z = 0 where y2 = 0
    rep = cn.nullity(cor.conn, cor.ts, (1, 1, 1, 0), cor.R)
    assert rep.mu == 2 and len(rep.nullity_basis) == 2


def test_involutivity_examples():
    conn0 = cn.validate_connection(GAMMA0, ts1)
    assert cn.involutivity_check(cn.horizontal_frame(conn0, ts1), conn0, ts1, [(0, 0)]).involutive
    flat2 = instance("flat_n2")
    rep = cn.involutivity_check(cn.horizontal_frame(flat2.conn, flat2.ts), flat2.conn, flat2.ts, flat2.points)
    assert rep.involutive and rep.chain == (True, True, True)
    cor = instance("curved_n2_corrected")
    rep = cn.involutivity_check(cn.horizontal_frame(cor.conn, cor.ts), cor.conn, cor.ts, [(1, 1, 1, 1)])
    assert not rep.involutive and rep.chain == (False, False, False)
    frame = [VectorForm.coordinate_field(4, 0), VectorForm.coordinate_field(4, 0)]
    with pytest.raises(cn.FrameError):
        cn.involutivity_check(frame, None, cor.ts, [(0, 0, 0, 0)])


def test_coefficients():
    conn0 = cn.validate_connection(GAMMA0, ts1)
    assert all(p.is_zero() for p in cn.coefficients(conn0, ts1).values())
    conn = cn.build_from_decomposition(S_g, t_g, ts1)
    coeffs = cn.coefficients(conn, ts1)
    # h d/dx = d/dx + g d/dy, so theta = dy + Gamma dx kills it when Gamma = -g
    assert coeffs[(0, 0)] == -g
    assert apply_vf(conn.h, VectorForm.coordinate_field(N, 0)) == VectorForm.field([MultiPoly.const(N, 1), g])
    ins = instance("homog_torsion_n2")
    for p in cn.coefficients(ins.conn, ins.ts).values():
        assert p.degree_in((2, 3)) <= {1}


@pytest.mark.parametrize("seed", range(6))
def test_torsion_identities_on_random_decompositions(seed):
    rng = random.Random(seed)
    n = 1 + seed % 2
    ts = canonical_L(n)
    G, tm = compatible_pair(rng, n)
    conn = cn.build_from_decomposition(make_semispray(G, ts), torsion_form(tm, n), ts)
    S = cn.canonical_semispray(conn, ts)
    tor = cn.torsion(conn, ts, S)
    T, t, L, h, C = tor.T, tor.t_strong, ts.L, conn.h, ts.C
    CG = fn_bracket(C, conn.gamma)
    assert pullback(T, h) == T
    assert fn_bracket(L, T).is_zero()
    assert fn_bracket(C, T) + T - fn_bracket(L, CG) * Fraction(1, 2) == VectorForm.zero(2 * n, 2)
    assert (insert_vf(S.S, t) + fn_bracket(C, S.S) - S.S).is_zero()
    assert insert_vf(S.S, insert_vf(S.S, T)).is_zero()
    R = cn.curvature(conn, ts).R
    assert pullback(R, h) == R
    assert fn_bracket(C, R) + fn_bracket(h, CG) * Fraction(1, 2) == VectorForm.zero(2 * n, 2)


def test_homogeneous_torsion_formulas():
    ins = instance("homog_torsion_n2")
    S, L, h, T = ins.S.S, ins.ts.L, ins.conn.h, ins.tor.T
    SLh = compose(fn_bracket(S, L), h)
    assert insert_vf(S, T) == SLh + h
    assert T == fn_bracket(L, SLh)
    assert T == fn_bracket(L, insert_vf(S, T)) * Fraction(1, 2)
    assert not insert_vf(S, T).is_zero()


def test_spray_connections_are_conservative():
    rng = random.Random(9)
    ts = canonical_L(2)
    for _ in range(3):
        sp = make_semispray(random_spray_vertical(rng, 2), ts)
        conn = cn.from_semispray(sp, ts)
        res = cn.conservative_check(conn, ts, semispray=sp)
        assert res.ok and res.curvature_residual.is_zero()
