import math
import random

import pytest

from intersective import (
    IntPoly,
    RealPoly,
    WeightSpec,
    exp_sum,
    frac_mul,
    frac_norm,
    montgomery_witness,
    search_min_frac,
    sieve_primes,
    simultaneous_approx,
    theta_fit,
    weight_sum_bounds_check,
    weights,
    weyl_bound_eval,
)

from helpers import naive_min_frac_search, trial_division_primes

X = IntPoly.x()
SQRT2 = math.sqrt(2)


class TestFracNorm:
    def test_midpoint(self):
        assert frac_norm(0.5) == 0.5

    def test_positive(self):
        assert frac_norm(2.3) == pytest.approx(0.3)

    def test_negative_symmetry(self):
        assert frac_norm(-0.1) == pytest.approx(0.1)
        assert frac_norm(-2.3) == pytest.approx(frac_norm(2.3))

    def test_exact_multiplication(self):
        # alpha * n mod 1 is exact for dyadic alpha
        assert frac_mul(0.5, 10 ** 40 + 1) == 0.5
        assert frac_mul(0.25, 4) == 0.0
        big = 3 ** 80
        assert frac_mul(SQRT2, big) == float(
            __import__("fractions").Fraction(SQRT2) * big % 1)


class TestSievePrimes:
    def test_small_counts(self):
        assert len(sieve_primes(100)) == 25
        assert sieve_primes(1) == []
        assert sieve_primes(2) == [2]

    def test_progression(self):
        assert sieve_primes(50, (4, 1)) == [5, 13, 17, 29, 37, 41]

    def test_progression_with_negative_residue(self):
        # r_d style residues are <= 0 and get normalized mod d
        assert sieve_primes(50, (4, -3)) == [5, 13, 17, 29, 37, 41]

    def test_non_coprime_rejected(self):
        with pytest.raises(ValueError, match="coprime"):
            sieve_primes(100, (4, 2))

    def test_matches_trial_division(self):
        n = 10 ** 5
        oracle = trial_division_primes(n)
        assert sieve_primes(n) == oracle
        for d in range(1, 31):
            for r in range(d):
                if math.gcd(r, d) != 1:
                    continue
                assert sieve_primes(n, (d, r)) == \
                    [p for p in oracle if p % d == r]


class TestWeights:
    def test_log_sum_over_primes(self):
        ws = weights(WeightSpec(1, 0), 10)
        nonzero = [i + 1 for i, v in enumerate(ws) if v]
        assert nonzero == [2, 3, 5, 7]
        assert math.fsum(ws) == pytest.approx(math.log(210), rel=1e-12)

    def test_progression_weights(self):
        ws = weights(WeightSpec(2, 1), 5)
        assert [i + 1 for i, v in enumerate(ws) if v] == [1, 2, 3, 5]

    def test_empty_window(self):
        assert weights(WeightSpec(25, 1), 3) == [0.0, 0.0, 0.0]
        # 26, 51, 76 are all composite

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            WeightSpec(4, 2)
        with pytest.raises(ValueError):
            WeightSpec(0, 0)
        WeightSpec(1, 0)

    def test_bounds_check(self):
        total, lower, upper = weight_sum_bounds_check(WeightSpec(1, 0), 10 ** 4, 3.0)
        assert abs(total - 10 ** 4) < 0.1 * 10 ** 4  # Chebyshev-style
        assert lower == 10 ** 4 and upper == 10 ** 4
        total2, lower2, upper2 = weight_sum_bounds_check(WeightSpec(3, 1), 10 ** 4, 8.0)
        assert lower2 < total2 < upper2
        assert weight_sum_bounds_check(WeightSpec(1, 0), 2, 1.0)[0] == \
            pytest.approx(math.log(2))

    def test_bounds_check_precondition(self):
        with pytest.raises(ValueError, match="exceeds"):
            weight_sum_bounds_check(WeightSpec(50, 1), 100, 3.0)


class TestExpSum:
    def test_integer_coefficients_give_weight_sum(self):
        w = WeightSpec(1, 0)
        s = exp_sum(RealPoly([0.0, 2.0, 3.0]), w, 1, 100)
        assert s.real == pytest.approx(math.fsum(weights(w, 100)), rel=1e-12)
        assert s.imag == 0.0

    def test_zero_phase(self):
        s = exp_sum(RealPoly([]), WeightSpec(1, 0), 1, 10)
        assert s == pytest.approx(math.log(210))

    def test_half_integer_phase(self):
        s = exp_sum(RealPoly([0.0, 0.5]), WeightSpec(1, 0), 1, 10)
        expect = math.log(2) - math.log(3) - math.log(5) - math.log(7)
        assert s.real == pytest.approx(expect, rel=1e-12)
        assert abs(s.imag) < 1e-12

    def test_triangle_inequality(self):
        rng = random.Random(1532)
        for _ in range(100):
            m = rng.randint(1, 6)
            b = rng.choice([t for t in range(m) if math.gcd(t, m) == 1])
            w = WeightSpec(m, b)
            n = rng.randint(10, 2000)
            f = RealPoly([rng.uniform(-2, 2) for _ in range(rng.randint(1, 4))])
            s = exp_sum(f, w, 1, n)
            assert abs(s) <= math.fsum(weights(w, n)) + 1e-9

    def test_periodicity_mod_integer_polynomials(self):
        # dyadic coefficients keep c + k exact in double precision, so the
        # shifted sum must agree to well within the 1e-9 contract
        rng = random.Random(77)
        w = WeightSpec(1, 0)
        for _ in range(20):
            f = RealPoly([rng.randint(-2 ** 40, 2 ** 40) / 2 ** 40
                          for _ in range(3)])
            g = RealPoly([c + k for c, k in zip(f.coeffs, (3, -2, 5))])
            s1, s2 = exp_sum(f, w, 1, 500), exp_sum(g, w, 1, 500)
            assert abs(s1 - s2) <= 1e-9 * max(abs(s1), 1.0)

    def test_partial_range(self):
        w = WeightSpec(1, 0)
        full = exp_sum(RealPoly([]), w, 1, 100)
        head = exp_sum(RealPoly([]), w, 1, 50)
        tail = exp_sum(RealPoly([]), w, 51, 100)
        assert full == pytest.approx(head + tail, rel=1e-12)

    def test_guard(self):
        with pytest.raises(ValueError, match="guard"):
            exp_sum(RealPoly([]), WeightSpec(1, 0), 1, 10 ** 9 + 1)

    def test_parallel_blocks_match_serial(self):
        w = WeightSpec(1, 0)
        f = RealPoly([0.0, SQRT2, 0.3])
        serial = exp_sum(f, w, 1, 3000)
        parallel = exp_sum(f, w, 1, 3000, jobs=2)
        assert abs(serial - parallel) < 1e-10


class TestWeylBound:
    def test_k2_structure(self):
        n = 10 ** 4
        val = weyl_bound_eval(2, n, n, 1, 0.0)
        assert val == pytest.approx(n * (2.0 / n + n ** -0.5) ** 0.25)
        # approaches N^(7/8) for large N
        big = 10 ** 12
        assert weyl_bound_eval(2, big, big, 1, 0.0) == \
            pytest.approx(big ** 0.875, rel=1e-2)

    def test_k1_trivial_regime(self):
        n = 10 ** 3
        val = weyl_bound_eval(1, 1, n, 1, 0.0)
        assert val >= n * math.log(n) ** 4
        assert val == pytest.approx(n * math.log(n) ** 4 * (1 + n ** -0.2 + n ** -0.5))

    def test_k3_substitution(self):
        n = 10 ** 4
        q = n ** 1.5
        val = weyl_bound_eval(3, q, n, 1, 0.0)
        assert val == pytest.approx(n * (2 * n ** -1.5 + n ** -0.5) ** (1.0 / 16))


class TestSimultaneousApprox:
    def test_half(self):
        q, errs = simultaneous_approx([0.5], 2)
        assert q == 2 and errs == [0.0]

    def test_integers(self):
        q, errs = simultaneous_approx([3.0, -7.0], 10)
        assert q == 1 and errs == [0.0, 0.0]

    def test_sqrt_pair_brute_force(self):
        alphas = [math.sqrt(2), math.sqrt(3)]
        q, errs = simultaneous_approx(alphas, 100)
        # exhaustive scan is its own oracle
        best = min(range(1, 101),
                   key=lambda t: max(frac_norm(frac_mul(a, t)) for a in alphas))
        assert q == best
        assert max(errs) <= 100 ** -0.5  # Dirichlet sanity bound for k = 2

    def test_dirichlet_single(self):
        rng = random.Random(5)
        for _ in range(50):
            alpha = rng.uniform(0, 1)
            big_q = rng.randint(10, 200)
            q, errs = simultaneous_approx([alpha], big_q)
            assert errs[0] <= 1.0 / big_q + 1e-12


class TestMontgomeryWitness:
    def test_all_half(self):
        t, mag = montgomery_witness([0.5] * 30, [1.0] * 30, 2)
        assert t == 2 and mag == pytest.approx(30.0)

    def test_all_third(self):
        t, mag = montgomery_witness([1 / 3] * 12, [1.0] * 12, 3)
        assert t == 3 and mag == pytest.approx(12.0)

    def test_hypothesis_violation_reported(self):
        with pytest.raises(ValueError, match=r"indices \[1\]"):
            montgomery_witness([0.5, 0.001, 0.4], [1.0, 1.0, 1.0], 4)

    def test_randomized_lower_bound(self):
        rng = random.Random(160)
        for _ in range(100):
            m = rng.randint(2, 20)
            n = rng.randint(5, 500)
            xs = [rng.uniform(1.0 / m, 1.0 - 1.0 / m) for _ in range(n)]
            cs = [rng.uniform(0.0, 2.0) for _ in range(n)]
            t, mag = montgomery_witness(xs, cs, m)
            assert 1 <= t <= m
            assert mag >= sum(cs) / (6.0 * m)


class TestSearchMinFrac:
    def test_sqrt2_square(self):
        res = search_min_frac([X ** 2], [[SQRT2]], 50)
        assert res.p == 13
        assert res.max_frac == pytest.approx(
            frac_norm(frac_mul(SQRT2, 169)), abs=1e-15)
        assert res.max_frac == pytest.approx(0.0021, abs=3e-4)

    def test_integral_matrix(self):
        res = search_min_frac([X ** 2, X ** 3], [[2.0, 1.0], [0.0, 5.0]], 50)
        assert res.p == 2 and res.max_frac == 0.0

    def test_shifted_powers_match_naive(self):
        hs = [(X - 1) ** 2, (X - 1) ** 3]
        A = [[SQRT2, 0.0], [0.0, SQRT2]]
        res = search_min_frac(hs, A, 1000)
        mf, p, vals = naive_min_frac_search(hs, A, 1000)
        assert res.p == p
        assert res.max_frac == pytest.approx(mf, abs=1e-12)

    def test_random_instances_match_naive(self):
        rng = random.Random(31415)
        for _ in range(20):
            k = rng.randint(1, 2)
            l = rng.randint(1, 2)
            hs = [IntPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))]
                          + [rng.randint(1, 5)]) for _ in range(k)]
            A = [[rng.uniform(-3, 3) for _ in range(k)] for _ in range(l)]
            n = rng.randint(10, 800)
            res = search_min_frac(hs, A, n)
            mf, p, vals = naive_min_frac_search(hs, A, n)
            assert res.p == p
            assert res.max_frac == pytest.approx(mf, abs=1e-12)

    def test_progression_restriction(self):
        res = search_min_frac([X], [[0.4]], 100, progression=(4, 1))
        assert res.p % 4 == 1 and res.d == 4 and res.r_d == 1

    def test_no_prime_in_range(self):
        with pytest.raises(ValueError, match="no prime"):
            search_min_frac([X], [[0.3]], 2, progression=(7, 6))

    def test_parallel_matches_serial(self):
        hs = [X ** 2]
        A = [[SQRT2]]
        serial = search_min_frac(hs, A, 2000)
        par = search_min_frac(hs, A, 2000, jobs=2)
        assert serial == par


class TestThetaFit:
    def test_degenerate_zero_minima(self):
        with pytest.raises(ValueError, match="degenerate"):
            theta_fit([X], [[1.0]], [16, 32, 64])

    def test_flat_points_slope_zero(self):
        # ||p^2 / 4|| = 1/4 for every prime p = 1 mod 4
        fit = theta_fit([X ** 2], [[0.25]], [50, 100, 200], progression=(4, 1))
        assert fit.slope == 0.0
        assert all(mf == 0.25 for _, mf in fit.points)

    def test_decay_for_sqrt2(self):
        fit = theta_fit([X ** 2], [[SQRT2]], [2 ** j for j in range(10, 14)])
        assert fit.slope < 0
        assert len(fit.points) == 4

    def test_needs_three_bounds(self):
        with pytest.raises(ValueError):
            theta_fit([X], [[SQRT2]], [100, 200])
