import random
from fractions import Fraction as F

import pytest

from tropcircle.piecewise import GroupMismatchError, ZZ, bottom_pa, hp_group, piecewise_affine
from tropcircle.polygons import (
    ell, from_function, legendre, newton_polygon, poly_join, poly_times, zero_polygon,
)
from tropcircle.scalars import rmax_join, rmax_times
from tropcircle.verify import gen_group, gen_polygon


def raw_ell(pts, lam):
    """Independent support-function oracle straight off the raw vertex set."""
    vals = [lam * x + y for x, y in pts]
    return max(vals) if vals else None


def sample_lams():
    return [F(0), F(1, 7), F(1, 2), F(1), F(3, 2), F(2), F(3), F(5), F(17, 3), F(40)]


class TestReduce:
    def assert_same_support(self, raw):
        n = newton_polygon(ZZ, raw)
        for lam in sample_lams():
            assert ell(n, lam) == raw_ell(raw, lam)

    def test_dominated_duplicate_x(self):
        n = newton_polygon(ZZ, [(0, 0), (0, -1)])
        assert n.vertices == ((F(0), F(0)),)

    def test_collinear_middle_dropped(self):
        raw = [(0, 0), (1, 0), (2, 0)]
        self.assert_same_support(raw)
        n = newton_polygon(ZZ, raw)
        # (1,0) never beats the pair, and (0,0) only ties at lam = 0, so the
        # minimal winning set keeps (2,0) alone
        assert n.vertices == ((F(2), F(0)),)

    def test_interior_winner_kept(self):
        raw = [(0, 0), (1, 0), (2, -3)]
        self.assert_same_support(raw)
        n = newton_polygon(ZZ, raw)
        # (1,0) wins on 0 < lam < 3; (0,0) never wins strictly on lam >= 0
        assert n.vertices == ((F(1), F(0)), (F(2), F(-3)))

    def test_every_kept_vertex_wins_somewhere(self):
        # exact oracle: the set where vertex i strictly beats vertex j is a
        # half-line in lam; the intersection over j must be a nonempty open
        # sub-interval of [0, inf)
        rng = random.Random(23)
        for _ in range(300):
            group = gen_group(rng)
            n = gen_polygon(rng, group)
            for i, (x, y) in enumerate(n.vertices):
                lower, upper = F(0), None
                for j, (a, b) in enumerate(n.vertices):
                    if j == i:
                        continue
                    cross = F(b - y, x - a)
                    if x > a:
                        lower = max(lower, cross)
                    else:
                        upper = cross if upper is None else min(upper, cross)
                assert upper is None or lower < upper

    def test_empty_input(self):
        assert newton_polygon(ZZ, []).is_zero


class TestLegendre:
    def test_single_vertex(self):
        f = legendre(newton_polygon(ZZ, [(0, 0)]))
        assert f.kinks == () and f.slopes == (F(0),) and f.anchor == 0

    def test_hinge(self):
        f = legendre(newton_polygon(ZZ, [(0, 0), (1, -1)]))
        assert f.kinks == (F(1),)
        assert f.slopes == (F(0), F(1))
        assert f.eval_at(3) == 2

    def test_three_vertices(self):
        f = legendre(newton_polygon(ZZ, [(0, 0), (1, 0), (2, -3)]))
        # max(t, 2t-3): slope 1 from 0, slope 2 beyond the kink at 3
        assert f.slopes == (F(1), F(2))
        assert f.kinks == (F(3),)

    def test_zero_polygon_is_bottom(self):
        f = legendre(zero_polygon(ZZ))
        assert f.is_bottom

    def test_matches_support_function(self):
        rng = random.Random(5)
        for _ in range(200):
            group = gen_group(rng)
            n = gen_polygon(rng, group)
            f = legendre(n)
            for lam in sample_lams():
                assert f.eval_at(lam) == ell(n, lam)


class TestFromFunction:
    def test_constant(self):
        f = piecewise_affine(ZZ, 0, None, 5)
        assert from_function(f).vertices == ((F(0), F(5)),)

    def test_hinge_inverse(self):
        f = piecewise_affine(ZZ, 0, None, 0, [F(1)], [F(0), F(1)])
        assert from_function(f).vertices == ((F(0), F(0)), (F(1), F(-1)))

    def test_bottom(self):
        assert from_function(bottom_pa(ZZ, 0, None)).is_zero

    def test_roundtrip_random(self):
        rng = random.Random(77)
        for _ in range(1000):
            group = gen_group(rng)
            n = gen_polygon(rng, group)
            assert from_function(legendre(n)) == n

    def test_rejects_nonconvex(self):
        f = piecewise_affine(ZZ, 0, None, 0, [F(1)], [F(1), F(0)])
        with pytest.raises(ValueError):
            from_function(f)

    def test_rejects_bounded_domain(self):
        f = piecewise_affine(ZZ, 0, 3, 0)
        with pytest.raises(ValueError):
            from_function(f)


class TestSemiring:
    def test_times_identity(self):
        one = newton_polygon(ZZ, [(0, 0)])
        n = newton_polygon(ZZ, [(0, 1), (2, 0)])
        assert poly_times(one, n) == n

    def test_single_vertices_add(self):
        a = newton_polygon(ZZ, [(1, 0)])
        b = newton_polygon(ZZ, [(2, 3)])
        assert poly_times(a, b).vertices == ((F(3), F(3)),)

    def test_join_keeps_both(self):
        a = newton_polygon(ZZ, [(0, 0)])
        b = newton_polygon(ZZ, [(1, -1)])
        j = poly_join(a, b)
        assert j.vertices == ((F(0), F(0)), (F(1), F(-1)))
        for lam in sample_lams():
            assert ell(j, lam) == rmax_join(ell(a, lam), ell(b, lam))

    def test_zero_neutral_and_absorbing(self):
        z = zero_polygon(ZZ)
        n = newton_polygon(ZZ, [(0, 1), (1, 0)])
        assert poly_join(z, n) == n
        assert poly_times(z, n) == z

    def test_group_mismatch(self):
        with pytest.raises(GroupMismatchError):
            poly_join(newton_polygon(ZZ, [(0, 0)]), newton_polygon(hp_group(2), [(0, 0)]))

    def test_duality_random(self):
        rng = random.Random(99)
        for _ in range(300):
            group = gen_group(rng)
            n, m = gen_polygon(rng, group), gen_polygon(rng, group)
            j, t = poly_join(n, m), poly_times(n, m)
            for lam in (F(0), F(2, 3), F(7, 4), F(6)):
                assert ell(j, lam) == rmax_join(ell(n, lam), ell(m, lam))
                assert ell(t, lam) == rmax_times(ell(n, lam), ell(m, lam))

    def test_transform_intertwines_operations_structurally(self):
        # the transform carries the polygon operations to the function
        # operations exactly, as canonical objects rather than pointwise
        from tropcircle.piecewise import pointwise_join, pointwise_times
        rng = random.Random(101)
        for _ in range(300):
            group = gen_group(rng)
            n, m = gen_polygon(rng, group), gen_polygon(rng, group)
            assert legendre(poly_join(n, m)) == pointwise_join(legendre(n), legendre(m))
            assert legendre(poly_times(n, m)) == pointwise_times(legendre(n), legendre(m))


def test_multiplicative_cancellation():
    rng = random.Random(41)
    for _ in range(500):
        group = gen_group(rng)
        n = gen_polygon(rng, group)
        m, m2 = gen_polygon(rng, group), gen_polygon(rng, group)
        if n.is_zero:
            continue
        if poly_times(n, m) == poly_times(n, m2):
            assert m == m2
        else:
            assert m != m2
