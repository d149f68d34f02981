import numpy as np
import pytest

from conftest import fd1
from susypiv.errors import LambdaPole, RepulsiveOscillator
from susypiv.numerics import max_rel_spread
from susypiv.oscillator import (
    DerivativeTower,
    Frequency,
    JetValue,
    LadderDirection,
    SeedKind,
    SeedSpec,
    eigenfunction_jet,
    eigenvalue,
    ladder_jet,
    lambda_coefficient,
    seed_jet,
    tower_eval,
)


class TestFrequency:
    def test_unit_modulus(self, freq6):
        assert abs(abs(freq6.omega) - 1.0) < 1e-15
        assert abs(freq6.sqrt_omega**2 - freq6.omega) < 1e-15

    def test_repulsive_rejected(self):
        with pytest.raises(RepulsiveOscillator):
            Frequency(np.pi / 2)

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            Frequency(-0.3)
        with pytest.raises(ValueError):
            Frequency(2.0)
        Frequency(0.0)
        Frequency(1.4)

    def test_unchecked_constructor_for_symmetry_tests(self):
        f = Frequency(-0.4, validate=False)
        assert f.omega.imag < 0


class TestEigenvalue:
    def test_frozen_pi_over_six(self, freq6):
        assert abs(eigenvalue(0, freq6) - (0.4330127018922193 + 0.25j)) < 1e-12

    def test_harmonic_limit(self):
        assert eigenvalue(2, Frequency(0.0)) == 2.5

    def test_conjugation_symmetry(self):
        theta = 0.7
        plus = eigenvalue(3, Frequency(theta))
        minus = eigenvalue(3, Frequency(-theta, validate=False))
        assert abs(np.conj(plus) - minus) < 1e-14

    def test_spectral_ray(self, freq6):
        for n in range(8):
            assert abs(np.angle(eigenvalue(n, freq6)) - freq6.theta) < 1e-15


class TestEigenfunction:
    def test_ground_state_peak(self, freq6):
        jet = eigenfunction_jet(0, freq6, 0.0)
        assert jet.u == 1.0 and jet.du == 0.0

    def test_parity(self, freq6):
        left = eigenfunction_jet(3, freq6, -1.2)
        right = eigenfunction_jet(3, freq6, 1.2)
        assert abs(left.u + right.u) < 1e-14 * abs(right.u)

    def test_schroedinger_residual_with_tower(self, freq6):
        xs = np.linspace(-4, 4, 41)
        for n in (0, 2, 5):
            jet = eigenfunction_jet(n, freq6, xs)
            tower = DerivativeTower(eigenvalue(n, freq6), freq6.omega)
            u2 = tower_eval(tower, jet, 2)
            res = -0.5 * u2 + 0.5 * freq6.omega**2 * xs**2 * jet.u - eigenvalue(n, freq6) * jet.u
            assert np.max(np.abs(res) / np.maximum(1.0, np.abs(jet.u))) < 1e-10

    def test_derivative_consistency_fd(self, freq6):
        # the non-vacuous check: du really is d/dx of u as a function of x
        xs = np.linspace(-3.5, 3.5, 15)
        jet = eigenfunction_jet(4, freq6, xs)
        approx = fd1(lambda x: eigenfunction_jet(4, freq6, x).u, xs)
        assert np.max(np.abs(approx - jet.du)) < 1e-8 * np.max(np.abs(jet.du))


class TestSeedSpec:
    def test_nu_bound(self):
        with pytest.raises(ValueError):
            SeedSpec.general(1.0, nu=1.0)

    def test_general_needs_energy(self):
        with pytest.raises(ValueError):
            SeedSpec(SeedKind.GENERAL)

    def test_forced_energy_rejects_explicit(self):
        with pytest.raises(ValueError):
            SeedSpec(SeedKind.AMS, epsilon=1.0)

    def test_forced_energies(self, freq6):
        assert SeedSpec.bound_even(1).epsilon_for(freq6) == 2.5 * freq6.omega
        assert SeedSpec.bound_odd(1).epsilon_for(freq6) == 3.5 * freq6.omega
        assert SeedSpec.ams().epsilon_for(freq6) == -0.5 * freq6.omega


class TestSeedJet:
    def test_even_level_reduces_to_eigenfunction(self, freq6):
        xs = np.linspace(-3, 3, 13)
        spec = SeedSpec.general(eigenvalue(2, freq6), nu=0.5 + 0.2j)
        general = seed_jet(spec, freq6, xs)
        bound = eigenfunction_jet(2, freq6, xs)
        assert max_rel_spread(general.u / bound.u) < 1e-12

    def test_ams_frozen_value(self):
        jet = seed_jet(SeedSpec.ams(0j), Frequency(0.0), 1.0)
        assert abs(jet.u - np.exp(0.5)) < 1e-14
        assert abs(jet.du - np.exp(0.5)) < 1e-14

    def test_dual_branch_agreement(self, rng):
        worst = 0.0
        for _ in range(25):
            theta = rng.uniform(0, 1.4)
            eps = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            nu = 0.6 * np.exp(1j * rng.uniform(0, 2 * np.pi))
            x = rng.uniform(-5, 5)
            freq = Frequency(theta)
            spec = SeedSpec.general(eps, nu)
            a = seed_jet(spec, freq, x, branch="first")
            b = seed_jet(spec, freq, x, branch="second")
            worst = max(worst, abs(a.u - b.u) / abs(a.u), abs(a.du - b.du) / abs(a.du))
        assert worst < 1e-8

    def test_lambda_pole(self, freq6):
        eps_odd = eigenvalue(1, freq6)
        with pytest.raises(LambdaPole):
            lambda_coefficient(0.3, eps_odd, freq6.omega)
        assert lambda_coefficient(0.0, eps_odd, freq6.omega) == 0.0

    def test_lambda_vanishes_on_even_levels(self, freq6):
        assert lambda_coefficient(0.7, eigenvalue(2, freq6), freq6.omega) == 0.0

    def test_derivative_consistency_fd(self, freq6):
        spec = SeedSpec.general(0.7 + 0.4j, nu=0.3 - 0.2j)
        xs = np.linspace(-4, 4, 9)
        jet = seed_jet(spec, freq6, xs)
        approx = fd1(lambda x: seed_jet(spec, freq6, x).u, xs)
        assert np.max(np.abs(approx - jet.du) / np.abs(jet.du)) < 1e-8

    def test_bound_seed_zero_structure(self, freq6):
        xs = np.linspace(-5, 5, 201)
        even = seed_jet(SeedSpec.bound_even(2), freq6, xs)
        assert np.min(np.abs(even.u)) > 0.0
        odd = seed_jet(SeedSpec.bound_odd(1), freq6, 0.0)
        assert odd.u == 0.0


class TestTower:
    def test_base_cases(self, freq6):
        tower = DerivativeTower(0.3 + 0.1j, freq6.omega)
        jet = JetValue(x=0.7, u=1.2 - 0.3j, du=0.5j)
        assert tower_eval(tower, jet, 0) == jet.u
        assert tower_eval(tower, jet, 1) == jet.du

    def test_second_order_is_schroedinger(self, freq6):
        eps = 0.3 + 0.1j
        tower = DerivativeTower(eps, freq6.omega)
        jet = JetValue(x=0.7, u=1.2 - 0.3j, du=0.5j)
        expect = (freq6.omega**2 * 0.7**2 - 2 * eps) * jet.u
        assert abs(tower_eval(tower, jet, 2) - expect) < 1e-15

    def test_polynomial_recurrence_invariants(self, freq6):
        eps = 1.1 - 0.2j
        tower = DerivativeTower(eps, freq6.omega)
        p2, q2 = tower.coefficients(2)
        np.testing.assert_allclose(p2, [-2 * eps, 0, freq6.omega**2])
        np.testing.assert_allclose(q2, [0])

    def test_fourth_derivative_vs_fd(self, freq6):
        spec = SeedSpec.general(0.9 - 0.6j, nu=0.4 + 0.1j)
        tower = DerivativeTower(0.9 - 0.6j, freq6.omega)
        xs = np.array([-2.3, 0.4, 1.7])
        jet = seed_jet(spec, freq6, xs)
        exact = tower_eval(tower, jet, 4)
        second = lambda x: tower_eval(tower, seed_jet(spec, freq6, x), 2)
        approx = fd1(lambda x: fd1(second, x, h=2e-3), xs, h=2e-3)
        assert np.max(np.abs(approx - exact) / np.abs(exact)) < 1e-5


class TestLadder:
    def test_ground_state_annihilation(self, freq6):
        xs = np.linspace(-3, 3, 11)
        jet = eigenfunction_jet(0, freq6, xs)
        tower = DerivativeTower(eigenvalue(0, freq6), freq6.omega)
        low = ladder_jet(LadderDirection.LOWER, jet, tower)
        assert np.max(np.abs(low.u)) == 0.0

    def test_raise_proportionality(self, freq6):
        xs = np.linspace(-3, 3, 25)
        jet = eigenfunction_jet(3, freq6, xs)
        tower = DerivativeTower(eigenvalue(3, freq6), freq6.omega)
        up = ladder_jet(LadderDirection.RAISE, jet, tower)
        ratio = up.u / eigenfunction_jet(4, freq6, xs).u
        assert max_rel_spread(ratio) < 1e-8
        assert abs(ratio[0] - np.sqrt(freq6.omega / 2)) < 1e-12

    def test_commutator_witness(self, freq6):
        eps = 1.1 - 0.7j
        spec = SeedSpec.general(eps, nu=0.4 + 0.1j)
        xs = np.linspace(-3, 3, 11)
        jet = seed_jet(spec, freq6, xs)
        tower = DerivativeTower(eps, freq6.omega)
        up_down = ladder_jet(
            LadderDirection.LOWER,
            ladder_jet(LadderDirection.RAISE, jet, tower),
            DerivativeTower(eps + freq6.omega, freq6.omega),
        )
        down_up = ladder_jet(
            LadderDirection.RAISE,
            ladder_jet(LadderDirection.LOWER, jet, tower),
            DerivativeTower(eps - freq6.omega, freq6.omega),
        )
        comm = up_down.u - down_up.u
        assert np.max(np.abs(comm - freq6.omega * jet.u) / np.abs(jet.u)) < 1e-8

    def test_anticommutator_identity(self, freq6):
        eps = -0.4 + 0.9j
        spec = SeedSpec.general(eps, nu=0.1 + 0.5j)
        xs = np.linspace(-2.5, 2.5, 9)
        jet = seed_jet(spec, freq6, xs)
        tower = DerivativeTower(eps, freq6.omega)
        up_down = ladder_jet(
            LadderDirection.LOWER,
            ladder_jet(LadderDirection.RAISE, jet, tower),
            DerivativeTower(eps + freq6.omega, freq6.omega),
        )
        down_up = ladder_jet(
            LadderDirection.RAISE,
            ladder_jet(LadderDirection.LOWER, jet, tower),
            DerivativeTower(eps - freq6.omega, freq6.omega),
        )
        lhs = up_down.u + down_up.u
        u2 = tower_eval(tower, jet, 2)
        rhs = 2.0 * (-0.5 * u2 + 0.5 * freq6.omega**2 * xs**2 * jet.u)
        assert np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-12)) < 1e-8
