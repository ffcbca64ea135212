import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delocwalk.errors import DegenerateTheta, GridTooSmall, OutOfRange, ResourceLimit
from delocwalk.initial import (
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    InitialSpec,
    Localized,
    SpinVector,
    TruncationPolicy,
    build,
)
from delocwalk.walk import (
    WalkState,
    distribution,
    evolve,
    fourier_oracle,
    make_coin,
    step,
)

R2 = 1 / math.sqrt(2)
HADAMARD = make_coin(0, math.pi / 4)

thetas = st.floats(0.0, 2 * math.pi, exclude_max=True).filter(
    lambda t: all(abs(t - b) > 1e-6 for b in (math.pi / 2, math.pi, 1.5 * math.pi))
)


def localized(up=1.0, down=0.0):
    return WalkState(np.array([[up, down]], dtype=complex), 0)


def random_state(rng, width):
    a = rng.normal(size=(width, 2)) + 1j * rng.normal(size=(width, 2))
    return WalkState(a / np.linalg.norm(a), width // 2)


class TestCoin:
    def test_hadamard_entries(self):
        assert np.allclose(HADAMARD.entries, (R2, R2, R2, -R2), atol=1e-15)

    def test_xi_one_entries(self):
        assert np.allclose(make_coin(1, math.pi / 4).entries, (R2, -R2, R2, R2), atol=1e-15)

    @pytest.mark.parametrize("theta", [math.pi / 2, math.pi, 1.5 * math.pi, math.pi / 2 + 5e-13])
    def test_excluded_angles(self, theta):
        with pytest.raises(DegenerateTheta):
            make_coin(0, theta)

    @pytest.mark.parametrize("xi, theta", [(2, 0.3), (0, -0.1), (1, 2 * math.pi), (0, float("nan"))])
    def test_out_of_range(self, xi, theta):
        with pytest.raises(OutOfRange):
            make_coin(xi, theta)

    def test_matrix_is_read_only(self):
        with pytest.raises(ValueError):
            HADAMARD.matrix[0, 0] = 0

    @given(st.sampled_from([0, 1]), thetas)
    def test_unitary(self, xi, theta):
        u = make_coin(xi, theta).matrix
        assert np.max(np.abs(u @ u.conj().T - np.eye(2))) < 1e-14

    @given(st.sampled_from([0, 1]), thetas)
    def test_determinant_sign(self, xi, theta):
        # the coin entries give det = -(-1)^xi
        assert abs(np.linalg.det(make_coin(xi, theta).matrix) + (-1) ** xi) < 1e-14

    @given(st.floats(1e-6, math.pi / 2 - 1e-6))
    def test_interchange_identity(self, theta):
        swap = np.array([[0, 1], [1, 0]])
        lhs = make_coin(1, math.pi / 2 - theta).matrix
        assert np.max(np.abs(lhs - swap @ make_coin(0, theta).matrix)) < 1e-14


class TestStep:
    def test_one_step_hadamard(self):
        s = step(localized(), HADAMARD)
        assert s.time == 1
        assert np.allclose(s.spinor(-1), (R2, 0), atol=1e-15)
        assert np.allclose(s.spinor(1), (0, R2), atol=1e-15)
        assert distribution(s).nonzero().as_dict() == pytest.approx({-1: 0.5, 1: 0.5}, abs=1e-15)

    def test_two_steps_hadamard(self):
        p = distribution(step(step(localized(), HADAMARD), HADAMARD)).nonzero(1e-300).as_dict()
        assert p == pytest.approx({-2: 0.25, 0: 0.5, 2: 0.25}, abs=1e-15)

    def test_diagonal_coin_translates(self):
        # theta = 0, xi = 0 gives U = diag(1, -1): no mixing between components
        s0 = random_state(np.random.default_rng(0), 7)
        s = evolve(s0, make_coin(0, 0.0), 5)
        xs = range(s0.x_min, s0.x_max + 1)
        up = np.array([s.spinor(x - 5).up for x in xs])
        down = np.array([s.spinor(x + 5).down for x in xs])
        assert np.array_equal(up, s0.amplitudes[:, 0])
        assert np.array_equal(down, -s0.amplitudes[:, 1])
        assert abs(s.total_probability() - s0.total_probability()) < 1e-15

    @settings(max_examples=50, deadline=None)
    @given(st.sampled_from([0, 1]), thetas, st.integers(1, 40), st.integers(0, 2**31 - 1))
    def test_step_preserves_probability(self, xi, theta, width, seed):
        s0 = random_state(np.random.default_rng(seed), width)
        s1 = step(s0, make_coin(xi, theta))
        assert abs(s1.total_probability() - s0.total_probability()) < 1e-14

    def test_window_grows(self):
        s = step(localized(), HADAMARD)
        assert (s.x_min, s.x_max) == (-1, 1)


class TestEvolve:
    def test_zero_steps_identity(self):
        s = localized(R2, 1j * R2)
        assert evolve(s, HADAMARD, 0) is s

    @settings(max_examples=25, deadline=None)
    @given(st.sampled_from([0, 1]), thetas, st.integers(1, 30), st.integers(0, 60), st.integers(0, 2**31 - 1))
    def test_matches_repeated_step(self, xi, theta, width, steps, seed):
        coin = make_coin(xi, theta)
        s0 = random_state(np.random.default_rng(seed), width)
        ref = s0
        for _ in range(steps):
            ref = step(ref, coin)
        out = evolve(s0, coin, steps)
        assert out.x_min == ref.x_min and out.x_max == ref.x_max and out.time == ref.time
        assert np.max(np.abs(out.amplitudes - ref.amplitudes)) < 1e-13

    def test_support_growth(self):
        rng = np.random.default_rng(4)
        s0 = random_state(rng, 11)
        s = evolve(s0, make_coin(1, 2.2), 37)
        lo, hi = s.occupied_range()
        assert lo >= s0.x_min - 37 and hi <= s0.x_max + 37

    def test_resource_limit(self):
        with pytest.raises(ResourceLimit):
            evolve(localized(), HADAMARD, 1000, max_cells=100)

    def test_negative_steps(self):
        with pytest.raises(OutOfRange):
            evolve(localized(), HADAMARD, -1)

    def test_case5_n0_equals_localized(self):
        phi = SpinVector(0.6, 0.8j)
        coin = make_coin(1, 0.9)
        a = evolve(build(InitialSpec(Case5(0), phi)), coin, 200)
        b = evolve(WalkState(np.array([[0.6, 0.8j]]), 0), coin, 200)
        assert a.x_min == b.x_min
        assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-15


class TestDistribution:
    def test_single_site(self):
        d = distribution(localized())
        assert d.as_dict() == {0: 1.0}

    def test_modulus_sum(self):
        d = distribution(localized(R2, 1j * R2))
        assert d.as_dict()[0] == pytest.approx(1.0, abs=1e-15)

    def test_nonnegative_and_normalized(self):
        d = distribution(evolve(random_state(np.random.default_rng(1), 9), HADAMARD, 100))
        assert np.all(d.probs >= 0)
        assert abs(d.total() - 1) < 1e-12


class TestFourierOracle:
    PHI = SpinVector(R2, 1j * R2)

    def test_localized_t0(self):
        out = fourier_oracle(InitialSpec(Localized(), self.PHI), HADAMARD, 0)
        assert np.allclose(out.spinor(0), (R2, 1j * R2), atol=1e-15)

    @pytest.mark.parametrize("kind", [Case1(0.5), Case2(), Case3(), Case4(), Case5(4), Localized()])
    def test_t1_equals_step(self, kind):
        spec = InitialSpec(kind, self.PHI, TruncationPolicy.fixed_radius(200))
        a = step(build(spec), HADAMARD)
        b = fourier_oracle(spec, HADAMARD, 1)
        assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-12

    def test_case1_t50(self):
        spec = InitialSpec(Case1(0.5), self.PHI, TruncationPolicy.tail_mass(1e-4))
        a = evolve(build(spec), HADAMARD, 50)
        b = fourier_oracle(spec, HADAMARD, 50)
        assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-8

    def test_grid_too_small(self):
        spec = InitialSpec(Case5(10), self.PHI)
        with pytest.raises(GridTooSmall):
            fourier_oracle(spec, HADAMARD, 100, k_grid_size=64)

    def test_analytic_profile_on_core(self):
        # the analytic profile describes the untruncated state, so compare
        # only where the truncated tail has not yet arrived
        spec = InitialSpec(Case4(), self.PHI, TruncationPolicy.fixed_radius(300, renormalize=False))
        a = evolve(build(spec), HADAMARD, 10)
        b = fourier_oracle(spec, HADAMARD, 10, k_grid_size=1 << 18, initial="analytic")
        core = np.abs(a.positions) <= 290
        assert np.max(np.abs(a.amplitudes[core] - b.amplitudes[core])) < 1e-8
