"""Roots-of-unity summation: identities, towers, progression sums, L-values."""

import random
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr, mpq

from polyzeta import (
    DomainError,
    InputError,
    PoleError,
    Precision,
    dirichlet_L,
    second_logderiv_sides,
    theta_lhs,
    theta_rhs,
    two_sided_power_sum,
    zeta2_finite,
    zeta_even_closed,
    zeta_from_odd,
)
from polyzeta.numerics import e_unit, pi_const, zeta_partial
from polyzeta.unity import representatives, taylor_inv_sq

P = Precision(128)


def test_representatives_window():
    assert list(representatives(1)) == [0]
    assert list(representatives(4)) == [-1, 0, 1, 2]
    assert list(representatives(5)) == [-2, -1, 0, 1, 2]
    for n in range(1, 30):
        reps = list(representatives(n))
        assert len(reps) == n
        assert all(-n / 2 < j <= n / 2 for j in reps)
        assert sorted(j % n for j in reps) == list(range(n))


def test_second_logderiv_exact_left_side():
    lhs3, rhs3 = second_logderiv_sides(3, P)
    with P.context():
        assert lhs3 == mpfr(mpq(3, 4))
        assert abs(rhs3.real - lhs3) <= mpfr(10) ** -30
        assert abs(rhs3.imag) <= mpfr(10) ** -30
    lhs12, rhs12 = second_logderiv_sides(12, P)
    with P.context():
        assert lhs12 == 30
        assert abs(rhs12.real - 30) <= mpfr(10) ** -28
    with pytest.raises(DomainError):
        second_logderiv_sides(2, P)


def test_taylor_tracks_the_function_near_zero():
    x = Fraction(1, 1000)
    with P.context(16):
        w = 1 - e_unit(x, Precision(160))
        truth = 1 / (w * w)
        approx = taylor_inv_sq(x, 4, P)
        assert abs(approx - truth) / abs(truth) <= mpfr(10) ** -9
        # each extra term tightens the error
        errs = [abs(taylor_inv_sq(x, t, P) - truth) for t in (1, 2, 3, 4)]
        assert errs[0] > errs[1] > errs[2] > errs[3]


def test_taylor_validation():
    for x, terms in ((0, 2), (1, 2), (Fraction(3, 2), 2), (Fraction(1, 8), 0), (Fraction(1, 8), 5)):
        with pytest.raises(DomainError):
            taylor_inv_sq(x, terms, P)


def test_zeta2_finite_smallest_case_exact():
    # n=4: 2*(1 + 1/9) = 20/9
    with P.context():
        assert zeta2_finite(4, P) == mpfr(mpq(20, 9))


def test_zeta2_finite_approaches_quarter_pi_squared():
    with P.context(16):
        target = pi_const(Precision(160)) ** 2 / 4
        for n in (100, 1000):
            err = abs(zeta2_finite(n, P) - target)
            assert err <= 10 * gmpy2.log(mpfr(n)) / n


def test_zeta2_finite_parity():
    for n in (2, 5, 3, -4):
        with pytest.raises(DomainError):
            zeta2_finite(n, P)


def test_odd_sum_chains_to_even_closed_form():
    # pi^2/8 over the odds recovers zeta(2) exactly as the closed form rounds it
    with P.context(64):
        odd2 = pi_const(Precision(192)) ** 2 / 8
    assert zeta_from_odd(2, odd2, P) == zeta_even_closed(1, P)
    with pytest.raises(DomainError):
        zeta_from_odd(1, odd2, P)


def test_even_closed_matches_partial_sums():
    from polyzeta.numerics import zeta_partial_tail_bounds
    with P.context():
        for n in (2, 3):
            closed = zeta_even_closed(n, P)
            partial = zeta_partial(2 * n, 2000, P)
            lo, hi = zeta_partial_tail_bounds(2 * n, 2000, P)
            assert lo < closed - partial < hi
    with pytest.raises(DomainError):
        zeta_even_closed(0, P)


def test_theta_order_one_is_a_single_ratio():
    # theta log(z - 1) = z/(z - 1)
    with P.context():
        for z in (mpfr(2), mpfr("0.25"), mpfr(-3)):
            expected = z / (z - 1)
            assert abs(theta_rhs(z, 1, 1, P) - expected) <= mpfr(2) ** -120
            assert abs(theta_lhs(z, 1, 1, P) - expected) <= mpfr(2) ** -120


def test_theta_order_two_hand_value():
    # theta^2 log(z - 1) = -z/(z - 1)^2; at z = 2 that is -2
    with P.context():
        assert abs(theta_rhs(2.0, 1, 2, P) + 2) <= mpfr(2) ** -120
        assert abs(theta_lhs(2.0, 1, 2, P) + 2) <= mpfr(2) ** -120


def test_theta_tower_midpoint_value():
    # at z = e(1/2n) the order-2 tower collapses to n^2 (2^2 - 1) B_2 / 2
    z = e_unit(Fraction(1, 12), P)
    with P.context():
        lhs = theta_lhs(z, 6, 2, P)
        rhs = theta_rhs(z, 6, 2, P)
        assert abs(lhs - 9) <= mpfr(10) ** -28
        assert abs(rhs - 9) <= mpfr(10) ** -28


def test_theta_sides_agree_on_random_points():
    rng = random.Random(28657)
    with P.context():
        for n in (2, 5):
            for m in (1, 2, 3):
                for _ in range(4):
                    radius = 0.3 + 1.2 * rng.random()
                    if abs(radius - 1) < 0.05:
                        radius += 0.1
                    angle = rng.random()
                    z = radius * e_unit(Fraction(round(angle * 2048), 2048), P)
                    a = theta_rhs(z, n, m, P)
                    b = theta_lhs(z, n, m, P)
                    scale = max(mpfr(1), abs(a))
                    assert abs(a - b) <= mpfr(2) ** -64 * scale


def test_theta_pole_guard():
    with pytest.raises(PoleError):
        theta_rhs(1.0, 6, 2, P)
    with pytest.raises(PoleError):
        theta_lhs(-1.0, 6, 2, P)  # (-1)^6 = 1, an exact 6th root of unity
    with pytest.raises(DomainError):
        theta_rhs(2.0, 0, 2, P)
    with pytest.raises(DomainError):
        theta_rhs(2.0, 6, 0, P)


def test_progression_sum_cosecant_law():
    # k=2: sum approaches (pi/sin(pi t))^2 with error at most 4/M
    with P.context(16):
        pi = pi_const(Precision(160))
        for t, M in ((Fraction(1, 3), 100), (Fraction(1, 4), 1000)):
            target = (pi / gmpy2.sin(pi * mpfr(mpq(t.numerator, t.denominator)))) ** 2
            v = two_sided_power_sum(t, 2, M, P)
            assert abs(v - target) <= mpfr(4) / M


def test_progression_sum_shift_invariance():
    a = two_sided_power_sum(Fraction(1, 3), 2, 50, P)
    b = two_sided_power_sum(Fraction(4, 3), 2, 50, P)
    c = two_sided_power_sum(Fraction(-2, 3), 2, 50, P)
    assert a == b == c


def test_progression_sum_odd_power_telescopes():
    # at t = 1/2, k = 3 the two-sided sum is exactly (M + 1/2)^-3
    with P.context():
        v = two_sided_power_sum(Fraction(1, 2), 3, 100, P)
        assert abs(v - mpfr("100.5") ** -3) <= mpfr(2) ** -140


def test_progression_sum_validation():
    with pytest.raises(PoleError):
        two_sided_power_sum(2, 2, 100, P)
    with pytest.raises(DomainError):
        two_sided_power_sum(Fraction(1, 3), 1, 100, P)
    with pytest.raises(DomainError):
        two_sided_power_sum(Fraction(1, 3), 2, 9, P)


def test_lfunction_beta_three():
    # mod 4 character, k=3: pi^3/32
    with P.context(16):
        target = pi_const(Precision(160)) ** 3 / 32
        v = dirichlet_L(4, {1: 1, 3: -1}, 3, 10**4, P)
        assert abs(v.real - target) <= mpfr(10) ** -10
        assert abs(v.imag) <= mpfr(10) ** -10


def test_lfunction_closed_form_mod_three():
    # odd character mod 3 at k=3: 4 pi^3 / (81 sqrt 3)
    with P.context(16):
        pi = pi_const(Precision(160))
        target = 4 * pi**3 / (81 * gmpy2.sqrt(mpfr(3)))
        v = dirichlet_L(3, {1: 1, 2: -1}, 3, 10**4, P)
        assert abs(v.real - target) <= mpfr(10) ** -10


def test_lfunction_parity_mismatch_small():
    # even k with an odd character nearly cancels
    with P.context():
        v = dirichlet_L(4, {1: 1, 3: -1}, 2, 10**4, P)
        assert abs(v) <= mpfr(10) ** -6


def test_lfunction_table_validation():
    with pytest.raises(InputError):
        dirichlet_L(4, {1: 1}, 3, 100, P)                 # missing residue 3
    with pytest.raises(InputError):
        dirichlet_L(4, {1: 1, 2: 5, 3: -1}, 3, 100, P)    # nonzero off the units
    with pytest.raises(InputError):
        dirichlet_L(4, {1: -1, 3: 1}, 3, 100, P)          # must fix 1
    with pytest.raises(InputError):
        dirichlet_L(4, {1: 1, 3: 1j}, 3, 100, P)          # chi(-1) not +-1
    with pytest.raises(InputError):
        dirichlet_L(4, {"1": 1, 3: -1}, 3, 100, P)
    with pytest.raises(DomainError):
        dirichlet_L(2, {1: 1}, 3, 100, P)
    with pytest.raises(DomainError):
        dirichlet_L(4, {1: 1, 3: -1}, 1, 100, P)
