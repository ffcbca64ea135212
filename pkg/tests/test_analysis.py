import json
import math

import numpy as np
import pytest

from delocwalk.analysis import (
    analytic_moment,
    empirical_cdf,
    empirical_moment,
    kolmogorov_distance,
    quad_singular,
    run_convergence,
)
from delocwalk.density import limit_density
from delocwalk.errors import OutOfRange
from delocwalk.initial import Case1, Case2, Case4, Case5, InitialSpec, Localized, SpinVector, TruncationPolicy
from delocwalk.serialize import to_json
from delocwalk.walk import ProbabilityDistribution, WalkState, distribution, evolve, make_coin

PI = math.pi
R2 = 1 / math.sqrt(2)
HADAMARD = make_coin(0, PI / 4)
SYM = SpinVector(R2, 1j * R2)
EPS4 = TruncationPolicy.tail_mass(1e-4)


def localized_distribution(t, coin=HADAMARD, phi=SYM):
    state = WalkState(np.array([phi.vector]), 0)
    return distribution(evolve(state, coin, t))


@pytest.fixture(scope="module")
def hadamard_5000():
    return localized_distribution(5000)


class TestQuadSingular:
    def test_f1_normalized(self):
        d = limit_density(Localized(), HADAMARD, SYM)
        plain = lambda x: d(x)
        assert quad_singular(plain, HADAMARD) == pytest.approx(1.0, abs=1e-8)
        assert quad_singular(d, HADAMARD) == pytest.approx(1.0, abs=1e-8)

    def test_odd_integrand(self):
        d = limit_density(Case1(0.5), HADAMARD, SYM)
        assert abs(quad_singular(lambda x: x * d(x), HADAMARD)) < 1e-10

    def test_case2_split(self):
        d = limit_density(Case2(), HADAMARD, SYM)
        assert quad_singular(lambda x: d(x), HADAMARD, [0.0]) == pytest.approx(1.0, abs=1e-6)

    def test_split_outside_rejected(self):
        with pytest.raises(OutOfRange):
            quad_singular(np.cos, HADAMARD, [0.9])


class TestEmpiricalMoment:
    def test_hand_value(self):
        dist = localized_distribution(2, phi=SpinVector(1, 0))
        assert empirical_moment(dist, 2) == pytest.approx(0.5, abs=1e-15)

    def test_zeroth_and_odd(self):
        dist = localized_distribution(40)
        assert empirical_moment(dist, 0) == pytest.approx(1.0, abs=1e-13)
        assert abs(empirical_moment(dist, 1)) < 1e-13
        assert abs(empirical_moment(dist, 3)) < 1e-13

    def test_t0_rejected(self):
        with pytest.raises(OutOfRange):
            empirical_moment(localized_distribution(0), 1)


class TestAnalyticMoment:
    def test_second_moment_value(self):
        d = limit_density(Case1(0.5), HADAMARD, SYM)
        assert analytic_moment(d, 2) == pytest.approx(1 - R2, abs=1e-10)

    def test_second_moment_riemann_cross_check(self):
        # brute-force midpoint sum in the substituted variable x = |c| sin u
        d = limit_density(Localized(), HADAMARD, SYM)
        n = 200_000
        u = -PI / 2 + (np.arange(n) + 0.5) * PI / n
        riemann = float(np.sum((R2 * np.sin(u)) ** 2 * d.weighted(u))) * PI / n
        assert riemann == pytest.approx(analytic_moment(d, 2), abs=1e-8)

    @pytest.mark.parametrize("kind", [Case1(0.5), Case2(), Case4(), Case5(6)], ids=str)
    def test_zeroth(self, kind):
        for xi in (0, 1):
            d = limit_density(kind, make_coin(xi, 2.0), SpinVector(0.6, 0.8j))
            assert analytic_moment(d, 0) == pytest.approx(1.0, abs=1e-6)

    def test_mean_flips_with_xi(self):
        phi = SpinVector(R2, R2)
        m = [analytic_moment(limit_density(Case1(0.5), make_coin(xi, PI / 4), phi), 1) for xi in (0, 1)]
        assert abs(m[0]) > 0.1
        assert m[0] == pytest.approx(-m[1], abs=1e-10)


class TestKolmogorov:
    def test_empirical_cdf_shape(self):
        dist = ProbabilityDistribution(np.array([-1, 0, 1]), np.array([0.25, 0.5, 0.25]), 1)
        points, cdf = empirical_cdf(dist)
        assert points.tolist() == [-1.5, -0.5, 0.5, 1.5]
        assert cdf.tolist() == [0.0, 0.25, 0.75, 1.0]

    def test_synthetic_self_comparison(self):
        # atoms carrying exactly the analytic mass of each lattice cell
        d = limit_density(Case4(), make_coin(1, PI / 4), SYM)
        t = 400
        x = np.arange(-t, t + 1)
        edges = np.append(x - 0.5, x[-1] + 0.5) / t
        probs = np.diff(d.cdf(edges))
        ks = kolmogorov_distance(ProbabilityDistribution(x, probs, t), d)
        assert ks < 1 / t

    def test_hadamard_t5000(self, hadamard_5000):
        ks = kolmogorov_distance(hadamard_5000, limit_density(Case1(0.5), HADAMARD, SYM))
        assert ks < 0.05

    def test_localized_against_case5_n0(self, hadamard_5000):
        a = kolmogorov_distance(hadamard_5000, limit_density(Case1(0.5), HADAMARD, SYM))
        b = kolmogorov_distance(hadamard_5000, limit_density(Case5(0), HADAMARD, SYM))
        assert abs(a - b) < 0.01

    def test_range(self):
        ks = kolmogorov_distance(localized_distribution(3), limit_density(Case2(), HADAMARD, SYM))
        assert 0.0 <= ks <= 1.0

    def test_t0_rejected(self):
        with pytest.raises(OutOfRange):
            kolmogorov_distance(localized_distribution(0), limit_density(Case1(0.5), HADAMARD, SYM))


class TestRunConvergence:
    def test_case1_report(self):
        report = run_convergence(InitialSpec(Case1(0.5), SYM, EPS4), HADAMARD, 5000)
        assert report.kolmogorov < 0.05
        assert [m.r for m in report.moments] == [1, 2, 3, 4]
        assert all(m.abs_error < 0.02 for m in report.moments)
        assert 0 < report.truncated_mass <= 1e-4

    def test_case5_n50_report(self):
        report = run_convergence(InitialSpec(Case5(50), SYM), HADAMARD, 1000, orders=(0, 2))
        assert report.case == "5:n=50"
        assert report.moments[0].empirical == pytest.approx(1.0, abs=1e-12)
        assert 0.0 <= report.kolmogorov <= 1.0

    def test_deterministic(self):
        spec = InitialSpec(Case4(), SYM, EPS4)
        a = run_convergence(spec, make_coin(1, 1.0), 200).to_dict(timing=False)
        b = run_convergence(spec, make_coin(1, 1.0), 200).to_dict(timing=False)
        assert to_json(a) == to_json(b)

    def test_json_shape(self):
        report = run_convergence(InitialSpec(Localized(), SYM), HADAMARD, 50)
        d = json.loads(to_json(report.to_dict()))
        assert list(d) == ["case", "xi", "theta", "alpha", "beta", "t", "kolmogorov", "moments", "truncated_mass", "runtime_ms"]
        assert list(d["moments"][0]) == ["r", "empirical", "analytic", "abs_error"]
        assert d["beta"] == [0.0, R2]

    def test_t0_rejected(self):
        with pytest.raises(OutOfRange):
            run_convergence(InitialSpec(Localized(), SYM), HADAMARD, 0)

    @pytest.mark.slow
    def test_distance_shrinks_with_t(self):
        for kind in (Case1(0.5), Case4()):
            spec = InitialSpec(kind, SYM, EPS4)
            early = np.mean([run_convergence(spec, make_coin(xi, PI / 4), 500, ()).kolmogorov for xi in (0, 1)])
            late = np.mean([run_convergence(spec, make_coin(xi, PI / 4), 5000, ()).kolmogorov for xi in (0, 1)])
            assert late < early
