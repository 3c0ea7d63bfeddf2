import numpy as np
from pytest import approx, fixture, mark, raises
from scipy import special

from ginigap.core.fredholm.gap import gap_probability
from ginigap.core.montecarlo.montecarlo_error import (
    DimensionOverflowError, NonIntegerNuError)
from ginigap.core.montecarlo.sampler import (
    batch_generators, check_normalization, empirical_gap, lock_generator,
    sample_min_sq_singular_value, survival)
from ginigap.core.montecarlo.sampler_config_ie import SamplerConfigIe
from ginigap.core.specialfns.ensemble_spec_ie import EnsembleSpecIe
from ginigap.core.specialfns.q_route_enum import QRouteEnum


@fixture
def exponential_config() -> SamplerConfigIe:
    return SamplerConfigIe(
        spec=EnsembleSpecIe.create(1, 1, [0.0]), samples=20_000, seed=11)


class TestSamplerConfig():
    def test_batches(self):
        config = SamplerConfigIe(
            spec=EnsembleSpecIe.create(1, 2, [1.0]), samples=25, seed=0,
            batch_size=10)
        assert config.batch_sizes == [10, 10, 5]
        assert config.dimensions == [2, 3]
        assert len(sample_min_sq_singular_value(config)) == 25

    def test_non_integer_nu(self):
        with raises(NonIntegerNuError):
            SamplerConfigIe(
                spec=EnsembleSpecIe.create(1, 2, [0.5]), samples=10, seed=0)

    def test_dimension_overflow(self):
        with raises(DimensionOverflowError):
            SamplerConfigIe(
                spec=EnsembleSpecIe.create(2, 500, [0.0, 13.0]), samples=10,
                seed=0)


class TestSampler():
    def test_exponential_mean(self, exponential_config: SamplerConfigIe):
        values = sample_min_sq_singular_value(exponential_config)
        assert values.mean() == approx(1.0, abs=4 / np.sqrt(20_000))
        assert np.all(values > 0)

    def test_product_of_exponentials(self):
        config = SamplerConfigIe(
            spec=EnsembleSpecIe.create(2, 1, [0.0, 0.0]), samples=20_000,
            seed=5)
        estimates, errors = empirical_gap(config, [1.0])
        assert estimates[0] == approx(
            2 * special.kv(1, 2.0), abs=4 * errors[0])

    def test_determinism(self, exponential_config: SamplerConfigIe):
        first = sample_min_sq_singular_value(exponential_config)
        second = sample_min_sq_singular_value(exponential_config)
        np.testing.assert_array_equal(first, second)

    def test_normalization_lock(self):
        assert check_normalization(3) == approx(1.0, abs=0.04)

    def test_lock_stream_is_separate(self):
        config = SamplerConfigIe(
            spec=EnsembleSpecIe.create(1, 1, [0.0]), samples=10_000, seed=3)
        lock = lock_generator(3).standard_normal(8)
        for rng in batch_generators(config):
            assert not np.array_equal(lock, rng.standard_normal(8))
        run_mean = float(sample_min_sq_singular_value(config).mean())
        assert check_normalization(3) != run_mean
        assert check_normalization(3) == check_normalization(3)

    def test_survival(self):
        estimates, errors = survival(np.array([0.5, 1.0, 2.0, 3.0]), [0, 1])
        assert estimates == approx([1.0, 0.5])
        assert errors == approx([0.0, 0.25])

    def test_monotone(self, exponential_config: SamplerConfigIe):
        estimates = empirical_gap(
            exponential_config, np.linspace(0, 3, 13), check=False)[0]
        assert np.all(np.diff(estimates) <= 0)
        assert estimates[0] == 1.0


@mark.slow
class TestAgainstFredholm():
    def test_exponential_law(self):
        config = SamplerConfigIe(
            spec=EnsembleSpecIe.create(1, 1, [0.0]), samples=100_000,
            seed=2024)
        estimates, errors = empirical_gap(config, [1.0])
        assert estimates[0] == approx(np.exp(-1.0), abs=3 * errors[0])

    def test_two_factors(self):
        spec = EnsembleSpecIe.create(2, 5, [1.0, 2.0])
        config = SamplerConfigIe(spec=spec, samples=100_000, seed=99)
        values = sample_min_sq_singular_value(config)
        s = float(np.quantile(values, 0.2))
        estimates, errors = survival(values, [s])
        assert estimates[0] == approx(
            gap_probability(spec, s), abs=3 * errors[0])

    def test_integer_nu_grid(self):
        spec = EnsembleSpecIe.create(2, 5, [1.0, 2.0])
        pilot = sample_min_sq_singular_value(
            SamplerConfigIe(spec=spec, samples=20_000, seed=7))
        grid = np.quantile(pilot, [0.1, 0.3, 0.5, 0.7, 0.9])
        config = SamplerConfigIe(spec=spec, samples=100_000, seed=99)
        estimates, errors = empirical_gap(config, grid)
        for s, estimate, error in zip(grid, estimates, errors):
            assert estimate == approx(
                gap_probability(spec, float(s), QRouteEnum.CONTOUR),
                abs=3 * error)
