import cmath
import math
from fractions import Fraction
from math import gcd

import numpy as np
import pytest

from twistlab.characters import DirichletCharacter, enumerate_characters
from twistlab.numtheory import divisors, is_squarefree, reduced_residues
from twistlab.series import build_split_table, divisor_series
from twistlab.twistdecomp import (
    NonlinearTwistParams,
    decompose,
    decompose_recursive,
    evaluate_nonlinear_twist,
    f_coefficient,
    lemma3_coefficient_sweep,
    telescoping_check,
    verify_lemma3_coefficient,
    verify_lemma3_numeric,
)

SQUAREFREE_D = [2, 3, 5, 6, 10, 15, 30]


class TestFCoefficient:
    def test_base_case(self):
        assert f_coefficient(DirichletCharacter(1, ()), 1, 1) == 1

    def test_d2_principal_m4(self, zeta2):
        split = build_split_table(zeta2, 2)
        assert f_coefficient(enumerate_characters(2)[0], 4, 1, split) == pytest.approx(-2)

    def test_d3_primitive(self):
        chi = enumerate_characters(3)[1]
        assert f_coefficient(chi, 1, 1) == pytest.approx(-1j * math.sqrt(3), abs=1e-12)

    def test_rejects_bad_m_and_a(self, zeta2):
        split = build_split_table(zeta2, 2)
        chi = enumerate_characters(2)[0]
        with pytest.raises(ValueError):
            f_coefficient(chi, 8, 1, split)  # 8 does not divide (D/f)* = 4
        with pytest.raises(ValueError):
            f_coefficient(chi, 1, 2)  # a shares a factor with D
        with pytest.raises(ValueError):
            f_coefficient(enumerate_characters(4)[1], 1, 1)  # D not squarefree

    @pytest.mark.parametrize("D", SQUAREFREE_D)
    def test_never_vanishes(self, zeta2, D):
        split = build_split_table(zeta2, D)
        for chi in enumerate_characters(D):
            from twistlab.characters import primitive_inducing

            mstar = split.dstar_of(D // primitive_inducing(chi).q)
            for m in divisors(mstar):
                for a in reduced_residues(D):
                    assert abs(f_coefficient(chi, m, a, split)) > 1e-9


class TestDecompose:
    def test_d1_single_term(self, zeta2):
        split = build_split_table(zeta2, 1)
        terms = decompose(split, 1)
        assert len(terms) == 1
        assert terms[0].m == 1 and terms[0].scalar == pytest.approx(1)

    def test_zeta2_d2_scalars(self, zeta2):
        split = build_split_table(zeta2, 2)
        terms = sorted(decompose(split, 1), key=lambda t: t.m)
        assert [t.m for t in terms] == [1, 2, 4]
        assert [t.shift_base for t in terms] == [1, 2, 4]
        scalars = [t.scalar for t in terms]
        assert scalars == pytest.approx([-1, 4, -2], abs=1e-9)

    def test_zeta2_d6_term_counts(self, zeta2):
        split = build_split_table(zeta2, 6)
        terms = decompose(split, 1)
        by_conductor = {}
        for t in terms:
            by_conductor.setdefault(t.chi_star.q, []).append(t)
        assert len(by_conductor[1]) == 9  # m | 36
        assert len(by_conductor[3]) == 3  # m | 4
        assert len(terms) == 12

    def test_scalar_nonzero_iff_b_nonzero(self, zl_chi4):
        # the chi4-twisted local factor at 3 has a vanishing middle
        # coefficient, so B_3 (hence the m=3 scalar) is numerically zero
        split = build_split_table(zl_chi4, 6)
        for t in decompose(split, 1):
            if abs(split.B[t.m]) > 1e-12:
                assert abs(t.scalar) > 1e-12
            else:
                assert abs(t.scalar) < 1e-12

    @pytest.mark.parametrize("D", SQUAREFREE_D)
    def test_recursive_matches_closed(self, all_fixtures, D):
        for x in all_fixtures:
            split = build_split_table(x, D)
            for a in reduced_residues(D):
                closed: dict = {}
                for t in decompose(split, a):
                    key = (t.chi_star, t.m)
                    closed[key] = closed.get(key, 0j) + t.scalar
                recur = decompose_recursive(split, a)
                keys = set(closed) | set(recur)
                worst = max(
                    abs(closed.get(k, 0j) - recur.get(k, 0j)) for k in keys
                )
                assert worst < 1e-10


class TestPerCoefficientIdentity:
    def test_worked_example_n3(self, zeta2):
        split = build_split_table(zeta2, 2)
        # LHS d(3) e(-3/2) = -2; RHS only m=1 contributes
        assert verify_lemma3_coefficient(zeta2, split, 1, 3) < 1e-12

    def test_worked_example_n2(self, zeta2):
        split = build_split_table(zeta2, 2)
        assert verify_lemma3_coefficient(zeta2, split, 1, 2) < 1e-12

    def test_d1_trivial(self, zeta2):
        split = build_split_table(zeta2, 1)
        for n in (1, 9, 100):
            assert verify_lemma3_coefficient(zeta2, split, 1, n) < 1e-14

    def test_lhs_value_of_worked_example(self, zeta2):
        # independent arithmetic for the D=2, n=3 row
        lhs = zeta2.a(3) * cmath.exp(-2j * cmath.pi * (3 % 2) / 2)
        assert lhs == pytest.approx(-2)

    @pytest.mark.parametrize("D", SQUAREFREE_D)
    def test_sweep_matches_scalar_form(self, zeta2, D):
        split = build_split_table(zeta2, D)
        res, wit = lemma3_coefficient_sweep(zeta2, split, 1, 600)
        assert res < 1e-8
        spot = verify_lemma3_coefficient(zeta2, split, 1, wit)
        assert spot == pytest.approx(res, abs=1e-12)


class TestNonlinearTwistEvaluation:
    def test_single_term(self):
        from twistlab.series import unit_series

        s = unit_series(10)
        params = NonlinearTwistParams(Fraction(1, 3), 0.7, 0.5)
        val, tail = evaluate_nonlinear_twist(s, 2 + 0j, params)
        assert val == pytest.approx(cmath.exp(-2j * cmath.pi * (1 / 3 + 0.7)))
        assert tail >= 0

    def test_zeta2_value(self, zeta2):
        params = NonlinearTwistParams(Fraction(0), 0.0, 0.5)
        val, tail = evaluate_nonlinear_twist(zeta2, 2 + 0j, params)
        assert abs(val - (math.pi**2 / 6) ** 2) < tail

    def test_beta_shift_periodicity_bit_exact(self, zeta2):
        p1 = NonlinearTwistParams(Fraction(2, 5), 0.3, 0.4)
        p2 = NonlinearTwistParams(Fraction(7, 5), 0.3, 0.4)
        v1, _ = evaluate_nonlinear_twist(zeta2, 2.5 + 1j, p1, 500)
        v2, _ = evaluate_nonlinear_twist(zeta2, 2.5 + 1j, p2, 500)
        assert v1 == v2

    def test_rejects_low_sigma(self, zeta2):
        with pytest.raises(ValueError):
            evaluate_nonlinear_twist(
                zeta2, 1.4 + 0j, NonlinearTwistParams(Fraction(0), 0.0, 0.5)
            )

    def test_rejects_bad_lambda(self):
        with pytest.raises(ValueError):
            NonlinearTwistParams(Fraction(0), 0.0, 0.6)
        with pytest.raises(ValueError):
            NonlinearTwistParams(Fraction(0), 0.0, 0.0)

    def test_tail_bound_shrinks(self, zeta2):
        params = NonlinearTwistParams(Fraction(0), 1.0, 0.5)
        _, t1 = evaluate_nonlinear_twist(zeta2, 2 + 0j, params, 100)
        _, t2 = evaluate_nonlinear_twist(zeta2, 2 + 0j, params, 10_000)
        assert t2 < t1


class TestNumericIdentity:
    def test_d1_reduces_to_roundoff(self, zeta2):
        split = build_split_table(zeta2, 1)
        res = verify_lemma3_numeric(zeta2, split, 1, 1.0, 1 / 3, 2 + 3j)
        assert res["residual"] < 1e-10

    @pytest.mark.parametrize("alpha,lam", [(0.0, 1 / 3), (1.0, 1 / 3), (1.0, 0.5)])
    def test_d2_within_tails(self, zeta2, alpha, lam):
        split = build_split_table(zeta2, 2)
        res = verify_lemma3_numeric(zeta2, split, 1, alpha, lam, 2 + 3j)
        assert res["residual"] <= res["tail_bound"]

    def test_alpha_zero_matches_coefficient_route(self, zeta2):
        # RHS with alpha=0 is the plain twisted-L combination; summing the
        # per-coefficient identity against n^(-s) must give the same number
        split = build_split_table(zeta2, 6)
        s = 2.5 + 1j
        res = verify_lemma3_numeric(zeta2, split, 1, 0.0, 0.5, s, 4000)
        n = np.arange(1, 4001)
        lhs_direct = np.sum(
            zeta2.values[:4000]
            * np.exp(-s * np.log(n))
            * np.exp(-2j * np.pi * ((1 * n) % 6) / 6)
        )
        assert res["lhs"] == pytest.approx(lhs_direct, abs=1e-12)
        assert res["residual"] <= res["tail_bound"]


class TestTelescoping:
    def test_m1(self):
        assert telescoping_check(1, 1) == 1

    def test_m4_d2(self):
        assert telescoping_check(4, 2) == 1

    def test_m36_d6(self):
        assert telescoping_check(36, 6) == 1

    def test_rejects_prime_outside_d(self):
        with pytest.raises(ValueError):
            telescoping_check(4, 3)

    @pytest.mark.parametrize("D", [d for d in range(1, 31) if is_squarefree(d)])
    def test_all_m_dividing_powers(self, D):
        # every m built from primes of D with exponents <= 4
        ms = [1]
        for p in [p for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29) if D % p == 0]:
            ms = [m * p**k for m in ms for k in range(5)]
        for m in ms:
            assert telescoping_check(m, D) == 1
