import math
from fractions import Fraction

import numpy as np
import pytest

from twistlab.characters import (
    DirichletCharacter,
    RootOfUnityValue,
    c_coefficient,
    c_coefficient_direct,
    conductor,
    enumerate_characters,
    gauss_sum,
    lemma1_sweep,
    primitive_inducing,
    verify_lemma1,
)
from twistlab.numtheory import euler_phi, reduced_residues


class TestRootOfUnity:
    def test_normalization(self):
        r = RootOfUnityValue.from_fraction(Fraction(7, 6))
        assert (r.k, r.n) == (1, 6)
        assert abs(abs(r.to_complex()) - 1) < 1e-15

    def test_product_and_conjugate(self):
        a = RootOfUnityValue.from_fraction(Fraction(1, 3))
        b = RootOfUnityValue.from_fraction(Fraction(1, 2))
        assert (a * b).turns == Fraction(5, 6)
        assert (a * a.conjugate()).is_one()
        assert (a * RootOfUnityValue.make_zero()).zero


class TestGroupStructure:
    def test_trivial_modulus(self):
        chars = enumerate_characters(1)
        assert len(chars) == 1
        # identically 1, even off "units"
        assert chars[0].value_complex(0) == 1
        assert chars[0].value_complex(12) == 1

    def test_mod_3(self):
        chars = enumerate_characters(3)
        assert len(chars) == 2 and chars[0].is_principal
        assert chars[1].value_complex(2) == pytest.approx(-1)

    def test_mod_6(self):
        chars = enumerate_characters(6)
        assert len(chars) == euler_phi(6) == 2

    @pytest.mark.parametrize("q", list(range(1, 61)))
    def test_counts_distinct_principal_first(self, q):
        chars = enumerate_characters(q)
        assert len(chars) == euler_phi(q)
        assert len(set(chars)) == len(chars)
        assert chars[0].is_principal

    @pytest.mark.parametrize("q", [3, 5, 8, 12, 16, 24, 45, 56])
    def test_complete_multiplicativity_and_period(self, q):
        for chi in enumerate_characters(q):
            for m in (2, 3, 7, 10):
                for n in (3, 5, 11):
                    lhs = chi.value(m) * chi.value(n)
                    assert lhs == chi.value(m * n)
            for n in range(1, q + 1):
                assert chi.value(n) == chi.value(n + q)
                if math.gcd(n, q) > 1:
                    assert chi.value(n).zero

    @pytest.mark.parametrize("q", list(range(1, 61)))
    def test_orthogonality(self, q):
        chars = enumerate_characters(q)
        X = np.vstack([c.period_values() for c in chars])
        G = X @ np.conjugate(X.T)
        expected = euler_phi(q) * np.eye(len(chars))
        assert np.max(np.abs(G - expected)) < 1e-9


class TestConductor:
    def test_principal_mod_30(self):
        assert conductor(enumerate_characters(30)[0]) == 1

    def test_nontrivial_mod_6(self):
        chi = enumerate_characters(6)[1]
        assert chi.value_complex(5) == pytest.approx(-1)
        assert conductor(chi) == 3

    def test_primitive_mod_3(self):
        assert conductor(enumerate_characters(3)[1]) == 3

    def test_inducers(self):
        principal30 = enumerate_characters(30)[0]
        star = primitive_inducing(principal30)
        assert star.q == 1 and star.value_complex(15) == 1

        chi6 = enumerate_characters(6)[1]
        star6 = primitive_inducing(chi6)
        assert star6.q == 3 and not star6.is_principal

        chi5 = enumerate_characters(5)[1]
        assert primitive_inducing(chi5) == chi5

    @pytest.mark.parametrize("q", [4, 8, 9, 12, 16, 40, 60])
    def test_inducer_agrees_on_units(self, q):
        for chi in enumerate_characters(q):
            star = primitive_inducing(chi)
            assert conductor(star) == star.q == conductor(chi)
            for n in reduced_residues(q):
                assert star.value(n) == chi.value(n)


class TestGaussSums:
    def test_trivial(self):
        assert complex(gauss_sum(DirichletCharacter(1, ()))) == 1

    def test_mod_3(self):
        tau = complex(gauss_sum(enumerate_characters(3)[1]))
        assert tau == pytest.approx(1j * math.sqrt(3), abs=1e-12)

    def test_mod_4(self):
        tau = complex(gauss_sum(enumerate_characters(4)[1]))
        assert tau == pytest.approx(2j, abs=1e-12)

    @pytest.mark.parametrize("q", list(range(1, 61)))
    def test_primitive_modulus(self, q):
        for chi in enumerate_characters(q):
            star = primitive_inducing(chi)
            tau = complex(gauss_sum(star))
            assert abs(abs(tau) - math.sqrt(star.q)) < 1e-9

    @pytest.mark.parametrize("q", [6, 12, 15, 24, 40])
    def test_closed_form_matches_direct(self, q):
        for chi in enumerate_characters(q):
            direct = gauss_sum(chi, "direct-sum")
            closed = gauss_sum(chi, "closed-form")
            assert direct.computed_by == "direct-sum"
            assert closed.computed_by == "closed-form"
            assert complex(direct) == pytest.approx(complex(closed), abs=1e-10)


class TestExpansionCoefficients:
    def test_trivial_modulus(self):
        assert c_coefficient(DirichletCharacter(1, ()), 1) == 1

    def test_d2_principal(self):
        chi = enumerate_characters(2)[0]
        assert c_coefficient(chi, 1) == pytest.approx(-1)
        assert c_coefficient_direct(chi, 1) == pytest.approx(-1)

    def test_d3_nontrivial(self):
        chi = enumerate_characters(3)[1]
        expected = -1j * math.sqrt(3)
        assert c_coefficient(chi, 1) == pytest.approx(expected, abs=1e-12)
        assert c_coefficient_direct(chi, 1) == pytest.approx(expected, abs=1e-12)

    def test_rejects_non_coprime(self):
        chi = enumerate_characters(6)[0]
        with pytest.raises(ValueError):
            c_coefficient(chi, 3)
        with pytest.raises(ValueError):
            c_coefficient_direct(chi, 2)

    @pytest.mark.parametrize("D", list(range(1, 41)))
    def test_closed_vs_direct(self, D):
        for chi in enumerate_characters(D):
            for a in reduced_residues(D):
                gap = abs(c_coefficient(chi, a) - c_coefficient_direct(chi, a))
                assert gap < 1e-10


class TestExpansionIdentity:
    def test_trivial(self):
        assert verify_lemma1(1, 1, 7) == 0

    def test_d2(self):
        assert verify_lemma1(2, 1, 3) < 1e-12

    def test_d3(self):
        assert verify_lemma1(3, 1, 2) < 1e-12

    def test_vanishing_side(self):
        # n sharing a factor with D: both sides must vanish
        assert verify_lemma1(6, 5, 4) < 1e-12

    @pytest.mark.parametrize("D", [1, 2, 5, 8, 9, 12, 30, 45])
    def test_sweep(self, D):
        res, _, gap, _ = lemma1_sweep(D, 200)
        assert res < 1e-9
        assert gap < 1e-10
