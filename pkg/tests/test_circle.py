import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma as gamma_fn

from crwedge.circle import (
    BoundaryFunction,
    HarmonicField,
    SingularFunction,
    grid_angles,
    grid_points,
    hilbert_t1,
    holder_norm,
    holomorphy_residual,
    radial_derivative_at_one,
    singular_factor,
    singular_profile,
)
from crwedge.errors import (
    AccuracyError,
    ConfigurationError,
    DomainError,
    InvalidInputError,
)

GRID = 2048
THETA = grid_angles(GRID)


def hopf_constant(alpha):
    """Exact radial derivative at 1 of the harmonic extension of |1-tau|^{2a}.

    Derived by integrating the profile against the boundary kernel
    -1/(2 sin^2(theta/2)); equals -2 for alpha = 1.
    """
    beta = 2.0 * alpha
    return -(2.0 ** (beta - 1) / np.sqrt(np.pi)
             * gamma_fn((beta - 1) / 2.0) / gamma_fn(beta / 2.0))


class TestBoundaryFunction:
    def test_grid_size_power_of_two(self):
        with pytest.raises(ConfigurationError):
            BoundaryFunction(np.zeros(300))
        with pytest.raises(ConfigurationError):
            BoundaryFunction(np.zeros(128))

    def test_finite_samples_required(self):
        vals = np.zeros(256)
        vals[3] = np.inf
        with pytest.raises(InvalidInputError):
            BoundaryFunction(vals)

    def test_fourier_round_trip(self):
        rng = np.random.default_rng(0)
        f = BoundaryFunction(rng.standard_normal(512))
        back = np.fft.ifft(f.fourier * 512)
        assert np.max(np.abs(back - f.values)) <= 1e-12 * np.max(np.abs(f.values))


class TestHilbertT1:
    def test_constant_maps_to_zero(self):
        out = hilbert_t1(BoundaryFunction(np.full(GRID, 3.7)))
        assert np.max(np.abs(out.values)) == 0.0

    def test_cos_maps_to_sin(self):
        out = hilbert_t1(BoundaryFunction(np.cos(THETA)))
        assert np.max(np.abs(out.values - np.sin(THETA))) < 1e-13

    def test_chord_square_profile(self):
        out = hilbert_t1(BoundaryFunction(2.0 - 2.0 * np.cos(THETA)))
        assert np.max(np.abs(out.values + 2.0 * np.sin(THETA))) < 1e-12

    def test_vanishes_at_one(self):
        rng = np.random.default_rng(1)
        f = BoundaryFunction(rng.standard_normal(GRID))
        assert hilbert_t1(f).values[0] == 0.0

    def test_rejects_complex_input(self):
        with pytest.raises(InvalidInputError):
            hilbert_t1(BoundaryFunction(np.exp(1j * THETA)))

    def test_involution_identity(self):
        # T1(T1 f) = -f + f(1) for trigonometric polynomials
        rng = np.random.default_rng(2)
        for _ in range(5):
            degree = GRID // 4
            ks = rng.integers(1, degree, size=8)
            coeffs = rng.standard_normal((8, 2))
            f = np.zeros(GRID)
            for (a, b), k in zip(coeffs, ks):
                f += a * np.cos(k * THETA) + b * np.sin(k * THETA)
            f += rng.standard_normal()
            twice = hilbert_t1(hilbert_t1(BoundaryFunction(f))).values
            expected = f[0] - f
            assert np.max(np.abs(twice - expected)) < 1e-10

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-5, 5), st.floats(-5, 5), st.integers(1, 100))
    def test_linearity(self, a, b, k):
        f = np.cos(k * THETA)
        g = np.sin(2 * k * THETA)
        lhs = hilbert_t1(BoundaryFunction(a * f + b * g)).values
        rhs = (a * hilbert_t1(BoundaryFunction(f)).values
               + b * hilbert_t1(BoundaryFunction(g)).values)
        assert np.max(np.abs(lhs - rhs)) < 1e-10 * max(1.0, abs(a) + abs(b))

    def test_analytic_completion_is_one_sided(self):
        rng = np.random.default_rng(3)
        f = np.zeros(GRID)
        for k in rng.integers(1, GRID // 4, size=6):
            f += rng.standard_normal() * np.cos(k * THETA)
        g = hilbert_t1(BoundaryFunction(f)).values
        assert holomorphy_residual(BoundaryFunction(f + 1j * g)) < 1e-10


class TestRadialDerivative:
    def test_constant(self):
        assert radial_derivative_at_one(BoundaryFunction(np.full(GRID, 4.0))) == 0.0

    def test_chord_square(self):
        val = radial_derivative_at_one(BoundaryFunction(2.0 - 2.0 * np.cos(THETA)))
        assert abs(val + 2.0) < 1e-10

    @pytest.mark.parametrize("alpha", [0.55, 0.6, 0.75, 1.0])
    def test_hopf_sign_on_singular_profiles(self, alpha):
        val = radial_derivative_at_one(singular_profile(alpha, GRID), tail_rtol=1.0)
        assert val < 0.0

    @pytest.mark.parametrize("alpha,rtol", [(0.75, 0.05), (1.0, 1e-10)])
    def test_against_exact_hopf_constant(self, alpha, rtol):
        val = radial_derivative_at_one(singular_profile(alpha, 8192), tail_rtol=1.0)
        exact = hopf_constant(alpha)
        assert abs(val - exact) <= rtol * abs(exact)

    def test_tail_gate_rejects_slow_decay(self):
        # half the default grid of a barely-converging profile trips the gate
        with pytest.raises(AccuracyError) as info:
            radial_derivative_at_one(singular_profile(0.6, GRID))
        assert info.value.magnitude > 0


class TestSingularFactor:
    def test_at_zero(self):
        assert singular_factor(0.6, 0.0) == pytest.approx(1.0)

    def test_at_minus_one(self):
        assert singular_factor(0.75, -1.0) == pytest.approx(2.0 ** 0.75)

    def test_principal_branch_at_i(self):
        expected = np.sqrt(2.0) ** 0.6 * np.exp(-1j * np.pi * 0.6 / 4.0)
        assert singular_factor(0.6, 1j) == pytest.approx(expected)

    def test_zero_at_one(self):
        assert singular_factor(0.8, 1.0) == 0.0

    def test_positive_on_real_interval(self):
        taus = np.linspace(0.01, 0.99, 25)
        vals = singular_factor(0.6, taus)
        assert np.max(np.abs(vals.imag)) < 1e-15
        assert np.all(vals.real > 0)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            singular_factor(0.6, 1.5)
        with pytest.raises(DomainError):
            singular_factor(2.5, 0.0)


class TestHolomorphyResidual:
    def test_tau_squared(self):
        tau = grid_points(GRID)
        assert holomorphy_residual(BoundaryFunction(tau ** 2)) < 1e-28

    def test_conjugate(self):
        tau = grid_points(GRID)
        assert holomorphy_residual(BoundaryFunction(np.conj(tau))) == pytest.approx(1.0)

    def test_zero_function(self):
        assert holomorphy_residual(BoundaryFunction(np.zeros(GRID))) == 0.0

    def test_singular_factor_discretization(self):
        tau = grid_points(4096)
        f = BoundaryFunction((1.0 - tau) ** 0.6)
        assert holomorphy_residual(f) < 1e-6


class TestHolderNorm:
    def test_constant(self):
        assert holder_norm(BoundaryFunction(np.full(GRID, 3.0)), 0.7) == 3.0

    def test_chord_function_lipschitz(self):
        # sup = 2 and Lipschitz constant 1 (attained along the circle)
        f = BoundaryFunction(np.abs(1.0 - np.exp(1j * THETA)))
        val = holder_norm(f, 1.0)
        assert 2.9 < val <= 3.0 + 1e-6

    def test_seminorm_divergence_as_negative_control(self):
        # a C^0.6 function measured in the 0.8-seminorm grows ~ 4^0.2 per
        # grid quadrupling; the sup part stays fixed at 2^0.6
        semi = {}
        for g in (1024, 4096):
            th = grid_angles(g)
            vals = np.abs(1.0 - np.exp(1j * th)) ** 0.6
            semi[g] = holder_norm(BoundaryFunction(vals), 0.8) - vals.max()
        assert semi[4096] >= 1.25 * semi[1024]

    def test_alpha_domain(self):
        with pytest.raises(DomainError):
            holder_norm(BoundaryFunction(np.zeros(GRID)), 1.5)


class TestHarmonicField:
    def test_boundary_limit_smooth(self):
        f = BoundaryFunction(np.cos(THETA) + 0.5 * np.sin(3 * THETA))
        field = HarmonicField(f)
        r = 1.0 - 1e-6
        vals = field.at(r * np.exp(1j * THETA[::256]))
        assert np.max(np.abs(vals - f.values[::256])) < 1e-4

    def test_rejects_exterior(self):
        field = HarmonicField(BoundaryFunction(np.cos(THETA)))
        with pytest.raises(DomainError):
            field.at(1.0 + 0j)

    def test_center_value_is_mean(self):
        f = BoundaryFunction(2.0 - 2.0 * np.cos(THETA))
        assert HarmonicField(f).at(0j) == pytest.approx(2.0)


class TestSingularFunction:
    def test_alpha_range(self):
        with pytest.raises(DomainError):
            SingularFunction(0.5)

    def test_value_at_one_is_remainder(self):
        rem = BoundaryFunction(np.cos(THETA) + 2.0)
        sf = SingularFunction(0.75, coeff_plus=3.0, remainder=rem)
        assert sf.value_at_one() == pytest.approx(rem.values[0])

    def test_boundary_values_match_factor(self):
        sf = SingularFunction(0.75, coeff_plus=2.0, grid_size=512)
        tau = grid_points(512)
        expected = 2.0 * singular_factor(0.75, tau)
        assert np.max(np.abs(sf.boundary_values() - expected)) < 1e-14

    def test_beta(self):
        assert SingularFunction(0.8).beta == pytest.approx(0.6)
