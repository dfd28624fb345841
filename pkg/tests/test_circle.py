import random
from fractions import Fraction as F

import pytest

from tropcircle.circle import (
    ClosureError, circle_bottom, circle_function, circle_join, circle_times,
    divisor, divisor_of, from_cut, is_principal, jacobian_class, normalize_point,
)
from tropcircle.verify import (
    class_representative, gen_circle, gen_divisor, gen_divisor_chi_nonzero,
    gen_divisor_deg0_chi0,
)


class TestNormalizePoint:
    def test_five_at_two(self):
        assert normalize_point(2, 5) == F(5, 4)

    def test_one(self):
        assert normalize_point(3, 1) == 1

    def test_third_at_three(self):
        assert normalize_point(3, F(1, 3)) == 1

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            normalize_point(2, 0)


class TestBuild:
    def test_constant(self):
        f = circle_function(3, [], [0], 0)
        assert f.is_constant and f.eval_at(F(7, 3)) == 0

    def test_two_arc_example(self):
        f = circle_function(3, [F(2)], [F(1, 3), F(-1, 3)], 0)
        assert f.eval_at(2) == F(1, 3)
        assert f.eval_at(1) == 0

    def test_closure_violation(self):
        with pytest.raises(ClosureError):
            circle_function(3, [F(2)], [F(1, 3), F(1, 3)], 0)

    def test_slope_outside_ring(self):
        with pytest.raises(ValueError):
            circle_function(3, [F(2)], [F(1, 2), F(-1, 4)], 0)

    def test_unsorted_kinks(self):
        with pytest.raises(ValueError):
            circle_function(5, [F(3), F(2)], [F(1, 5), F(2, 5), F(-1)], 0)

    def test_nonzero_constant_slope_fails_closure(self):
        with pytest.raises(ClosureError):
            circle_function(3, [], [F(1, 3)], 0)

    def test_bottom_anchor(self):
        f = circle_function(3, [], [0], None)
        assert f.is_bottom
        with pytest.raises(ValueError):
            from_cut(3, F(3, 2), [], [0], None)


class TestDivisorOf:
    def test_constant_has_empty_divisor(self):
        assert divisor_of(circle_function(5, [], [0], 3)).is_empty

    def test_two_arc_example(self):
        f = circle_function(3, [F(2)], [F(1, 3), F(-1, 3)], 0)
        d = divisor_of(f)
        assert d.coeff(1).to_fraction() == F(4, 3)
        assert d.coeff(2).to_fraction() == F(-2, 3)
        assert d.degree() == 0
        assert d.chi() == 0

    def test_bottom_rejected(self):
        with pytest.raises(ValueError):
            divisor_of(circle_bottom(3))

    def test_conservation_random(self):
        rng = random.Random(17)
        for p in (2, 3, 5):
            for _ in range(300):
                f = gen_circle(rng, p)
                d = divisor_of(f)
                assert d.degree() == 0
                assert d.chi() == 0

    def test_additive_under_times(self):
        rng = random.Random(19)
        for _ in range(200):
            p = rng.choice((2, 3, 5))
            f, g = gen_circle(rng, p), gen_circle(rng, p)
            assert divisor_of(circle_times(f, g)) == divisor_of(f) + divisor_of(g)


class TestDivisorBasics:
    def test_degree_sum(self):
        d = divisor(2, {F(1): F(1), F(3, 2): F(1, 2)})
        assert d.degree() == F(7, 4)

    def test_empty_degree(self):
        assert divisor(2, {}).degree() == 0

    def test_chi_example(self):
        d = divisor(5, {F(1): F(7, 5)})
        assert d.chi() == 3

    def test_chi_p2_trivial(self):
        assert divisor(2, {F(1): F(7, 4), F(5, 4): F(-3)}).chi() == 0

    def test_points_normalized_and_merged(self):
        d = divisor(3, {F(6): F(1), F(2): F(1, 3)})  # 6 -> 6/3 = 2
        assert d.support == (F(2),)
        assert d.coeff(2).to_fraction() == F(4, 3)

    def test_group_ops(self):
        d = divisor(3, {F(2): F(1)})
        e = divisor(3, {F(2): F(-1), F(1): F(1, 3)})
        assert (d + e).support == (F(1),)
        assert (d - d).is_empty


class TestPrincipality:
    def test_empty_divisor(self):
        rep = is_principal(divisor(3, {}))
        assert rep.principal and rep.witness.is_constant

    def test_chi_obstruction(self):
        d = divisor(3, {F(1): F(2), F(2): F(-1)})
        assert d.degree() == 0
        rep = is_principal(d)
        assert not rep.principal
        assert rep.obstructions == ("chi",)

    def test_degree_obstruction(self):
        d = divisor(3, {F(2): F(2)})
        rep = is_principal(d)
        assert rep.obstructions == ("degree",)

    def test_p2_all_deg0_divisors_principal(self):
        rng = random.Random(23)
        for _ in range(300):
            d = gen_divisor_deg0_chi0(rng, 2)
            rep = is_principal(d)
            assert rep.principal
            assert divisor_of(rep.witness) == d

    def test_witness_roundtrip_all_primes(self):
        rng = random.Random(29)
        for p in (2, 3, 5, 7):
            for _ in range(150):
                d = gen_divisor_deg0_chi0(rng, p)
                rep = is_principal(d)
                assert rep.principal
                assert divisor_of(rep.witness) == d
                assert rep.witness.anchor == 0

    def test_chi_nonzero_rejected(self):
        rng = random.Random(31)
        for p in (3, 5, 7):
            for _ in range(150):
                d = gen_divisor_chi_nonzero(rng, p)
                rep = is_principal(d)
                assert not rep.principal
                assert "chi" in rep.obstructions


class TestJacobian:
    def test_difference_with_self(self):
        d = gen_divisor(random.Random(1), 5)
        assert jacobian_class(d - d) == (0, 0)

    def test_class_additive(self):
        rng = random.Random(37)
        for _ in range(200):
            p = rng.choice((3, 5, 7))
            d, e = gen_divisor(rng, p), gen_divisor(rng, p)
            cd, ce, cs = jacobian_class(d), jacobian_class(e), jacobian_class(d + e)
            assert cs == (cd[0] + ce[0], (cd[1] + ce[1]) % (p - 1))

    def test_classes_equal_iff_difference_principal(self):
        rng = random.Random(47)
        for _ in range(150):
            p = rng.choice((2, 3, 5))
            d, e = gen_divisor(rng, p), gen_divisor(rng, p)
            same_class = jacobian_class(d) == jacobian_class(e)
            assert is_principal(d - e).principal == same_class

    def test_p5_all_classes_realized(self):
        reps = [class_representative(5, c) for c in range(4)]
        classes = {jacobian_class(r) for r in reps}
        assert classes == {(0, c) for c in range(4)}
        for i in range(4):
            for j in range(4):
                diff = reps[i] - reps[j]
                rep = is_principal(diff)
                if i == j:
                    assert rep.principal
                else:
                    assert not rep.principal and rep.obstructions == ("chi",)


class TestRecut:
    def test_trivial_cut(self):
        f = circle_function(3, [F(2)], [F(1, 3), F(-1, 3)], 0)
        g = from_cut(3, 1, [F(2)], [F(1, 3), F(-1, 3)], 0)
        assert g.pa == f.pa

    def test_shifted_window_same_divisor(self):
        # same function as above, laid out on [3/2, 9/2): arcs
        # [3/2,2] slope 1/3, [2,3] slope -1/3, [3,9/2] slope 1/9 (folded copy)
        f = circle_function(3, [F(2)], [F(1, 3), F(-1, 3)], 0)
        g = from_cut(3, F(3, 2),
                     [F(2), F(3)],
                     [F(1, 3), F(-1, 3), F(1, 9)],
                     f.eval_at(F(3, 2)))
        assert g.pa == f.pa
        assert divisor_of(g) == divisor_of(f)

    def test_kink_at_wrap_image(self):
        # a kink placed exactly at position p in the cut window lands on the
        # wrap class and must reproduce the implicit encoding
        f = circle_function(3, [F(2)], [F(1, 3), F(-1, 3)], 0)
        w = from_cut(3, F(2), [F(3)], [F(-1, 3), F(1, 9)], f.eval_at(2))
        assert w.pa == f.pa

    def test_bad_cut_closure(self):
        with pytest.raises(ClosureError):
            from_cut(3, F(3, 2), [F(2)], [F(1, 3), F(1, 3)], 0)


def test_join_and_times_stay_closed():
    rng = random.Random(41)
    for _ in range(200):
        p = rng.choice((2, 3, 5))
        f, g = gen_circle(rng, p), gen_circle(rng, p)
        j, t = circle_join(f, g), circle_times(f, g)
        for h in (j, t):
            assert h.pa.eval_at(1) == h.pa.eval_at(p)
