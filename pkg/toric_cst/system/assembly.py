"""
Product integration of the radial equations

    g_lm(p_j) = sum_q w_jq * mean of K~_l(p_j, r) over [r_{q-1}, r_q] * f_lm(r_q)

with K~_l(p, r) = sqrt(p + r) K_l(p, r) / r and the exact weights
w_jq = integral of r / sqrt(p_j^2 - r^2) over [r_{q-1}, r_q].
"""
import logging

import numpy as np

from toric_cst.exceptions import DomainException
from toric_cst.geometry import KERNEL_AVERAGE, ScanConfig
from toric_cst.kernel.forms import direct_values

logger = logging.getLogger(__name__)

AVERAGE_POINTS = 10


def average_fractions(kernel_average: str) -> np.ndarray:
    """
    Positions of the averaging samples inside a cell, as fractions of its width
    """
    if kernel_average == KERNEL_AVERAGE.ENDPOINTS:
        return np.arange(AVERAGE_POINTS) / (AVERAGE_POINTS - 1)
    if kernel_average == KERNEL_AVERAGE.MIDPOINTS:
        return (np.arange(AVERAGE_POINTS) + 0.5) / AVERAGE_POINTS
    raise DomainException('Unknown kernel average "{}"'.format(kernel_average))


def weight(j: int, q: int, p_grid, r_grid) -> float:
    """
    :param j: diameter index, 1..M (p_j = p_grid[j - 1])
    :param q: cell index, 1..M (cell [r_grid[q - 1], r_grid[q]])
    """
    if q > j:
        return 0.0
    p = p_grid[j - 1]
    return float(np.sqrt(max(p * p - r_grid[q - 1] ** 2, 0.0)) - np.sqrt(max(p * p - r_grid[q] ** 2, 0.0)))


def weights(p_grid, r_grid) -> np.ndarray:
    p = np.asarray(p_grid, dtype=float)[:, np.newaxis]
    r = np.asarray(r_grid, dtype=float)
    antiderivative = -np.sqrt(np.clip(p * p - r[np.newaxis, :] ** 2, 0.0, None))
    result = antiderivative[:, 1:] - antiderivative[:, :-1]
    return np.tril(result)


def modified_kernel(p, r, l: int, R: float) -> np.ndarray:
    return np.sqrt(p + r) * direct_values(p, r, l, R) / r


def averaged_kernel(l: int, j: int, q: int, config: ScanConfig, kernel=None) -> float:
    """
    Mean of K~_l(p_j, r) over the averaging samples of cell q

    :param kernel: replaces K~_l, called as kernel(p, r)
    """
    if q > j:
        raise DomainException('Cell {} lies above the diameter index {}'.format(q, j))
    edges = config.radial_edges
    p = edges[j]
    samples = edges[q - 1] + average_fractions(config.kernel_average) * (edges[q] - edges[q - 1])
    samples = np.minimum(samples, p)
    if np.any(samples < config.R):
        raise DomainException('Averaging samples fall below R={}'.format(config.R))
    if kernel is None:
        values = modified_kernel(p, samples, l, config.R)
    else:
        values = kernel(p, samples)
    return float(np.mean(values))


def averaged_kernels(l: int, config: ScanConfig) -> np.ndarray:
    """
    (M, M) table of averaged kernels, zero above the diagonal
    """
    edges = config.radial_edges
    M = config.M
    fractions = average_fractions(config.kernel_average)
    samples = edges[:-1, np.newaxis] + fractions[np.newaxis, :] * np.diff(edges)[:, np.newaxis]
    p = edges[1:, np.newaxis, np.newaxis]
    r = np.broadcast_to(samples[np.newaxis, :, :], (M, M, len(fractions)))
    below = np.arange(M)[np.newaxis, :] <= np.arange(M)[:, np.newaxis]
    # cells above the diagonal are evaluated on the diagonal and discarded
    r = np.where(below[:, :, np.newaxis], np.minimum(r, p), p)
    values = modified_kernel(p, r, l, config.R).mean(axis=-1)
    return np.where(below, values, 0.0)


def assemble(l: int, config: ScanConfig) -> np.ndarray:
    if config.M < 1:
        raise DomainException('Expected at least one radial cell, got M={}'.format(config.M))
    edges = config.radial_edges
    matrix = weights(edges[1:], edges) * averaged_kernels(l, config)
    logger.debug('Assembled A_{} ({} x {})'.format(l, config.M, config.M))
    return matrix
