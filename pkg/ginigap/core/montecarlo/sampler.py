"""Empirical gap probabilities from sampled Ginibre products.

Entries are standard complex Gaussians with E|z|^2 = 1; every batch draws
from its own PCG64 stream spawned from SeedSequence(seed), so batches may be
evaluated in any order. The normalization lock draws from a sibling subtree
of the same root and never shares a stream with a batch.
"""
from typing import Iterator

import numpy as np

from ginigap.tools.log import log
from .montecarlo_error import NormalizationLockError
from .sampler_config_ie import SamplerConfigIe

GENERATOR_NAME = 'PCG64'
LOCK_SAMPLES = 10_000
LOCK_SIGMAS = 4.0
BATCH_STREAM, LOCK_STREAM = 0, 1


def ginibre(
        rng: np.random.Generator,
        count: int,
        rows: int,
        cols: int) -> np.ndarray:
    """`count` complex Ginibre matrices of shape rows x cols."""
    real = rng.standard_normal((count, rows, cols))
    imaginary = rng.standard_normal((count, rows, cols))
    return (real + 1j * imaginary) / np.sqrt(2.0)


def _stream_roots(seed: int) -> list[np.random.SeedSequence]:
    return np.random.SeedSequence(seed).spawn(2)


def batch_generators(config: SamplerConfigIe) -> list[np.random.Generator]:
    children = _stream_roots(config.seed)[BATCH_STREAM].spawn(
        len(config.batch_sizes))
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def lock_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(_stream_roots(seed)[LOCK_STREAM]))


def sample_batch(
        rng: np.random.Generator,
        dimensions: list[int],
        count: int) -> np.ndarray:
    """Smallest squared singular values of `count` products."""
    product = ginibre(rng, count, dimensions[1], dimensions[0])
    for rows, cols in zip(dimensions[2:], dimensions[1:-1]):
        product = ginibre(rng, count, rows, cols) @ product
    singular_values = np.linalg.svd(product, compute_uv=False)
    return singular_values[:, -1]**2


def iter_batches(config: SamplerConfigIe) -> Iterator[np.ndarray]:
    dimensions = config.dimensions
    for index, (rng, count) in enumerate(
            zip(batch_generators(config), config.batch_sizes)):
        log.debug(
            f'Sampling batch {index} of {count} products with'
            f' dimensions {dimensions}')
        yield sample_batch(rng, dimensions, count)


def sample_min_sq_singular_value(config: SamplerConfigIe) -> np.ndarray:
    return np.concatenate(list(iter_batches(config)))


def check_normalization(seed: int) -> float:
    """Sample mean of |z|^2 for the one by one law, which is Exponential(1).

    Raises:
        NormalizationLockError:
            Mean outside 1 +- LOCK_SIGMAS / sqrt(LOCK_SAMPLES).
    """
    values = sample_batch(lock_generator(seed), [1, 1], LOCK_SAMPLES)
    mean = float(values.mean())
    band = LOCK_SIGMAS / np.sqrt(LOCK_SAMPLES)
    if abs(mean - 1.0) > band:
        raise NormalizationLockError(mean, band)
    return mean


def survival(
        values: np.ndarray,
        s_grid: list[float] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fractions of `values` above every s with binomial standard errors."""
    ordered = np.sort(values)
    above = len(ordered) - np.searchsorted(
        ordered, np.asarray(s_grid, dtype=float), side='right')
    estimates = above / len(ordered)
    errors = np.sqrt(estimates * (1.0 - estimates) / len(ordered))
    return estimates, errors


def empirical_gap(
        config: SamplerConfigIe,
        s_grid: list[float] | np.ndarray,
        check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Estimates of E(0; (0, s)) and their standard errors on `s_grid`.

    The normalization lock runs first unless `check` is false.
    """
    if check:
        check_normalization(config.seed)
    values = sample_min_sq_singular_value(config)
    estimates, errors = survival(values, s_grid)
    log.info(
        f'Sampled {config.samples} products for n={config.spec.n},'
        f' M={config.spec.M}, nu={list(config.spec.nu)}')
    return estimates, errors
