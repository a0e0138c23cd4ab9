"""
Reconstruction from toric projections:

    1. dsht of the data at every diameter p_j
    2. Tikhonov solution of g_lm = A_l f_lm for every l <= N, |m| <= l, one factorization per l
    3. idsht of f_lm at every radius r_q
    4. interpolation of the spherical samples onto the Cartesian output grid
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence

import numpy as np

from toric_cst.exceptions import ShapeMismatchException
from toric_cst.geometry import ScanConfig
from toric_cst.harmonics import HarmonicStack
from toric_cst.harmonics.transform import dsht, idsht
from toric_cst.projector import DataTensor, Volume
from toric_cst.reconstruct import ReconResult
from toric_cst.reconstruct.interpolation import spherical_to_cartesian
from toric_cst.reconstruct.solver import LCurvePoint, TikhonovSolver
from toric_cst.system import KernelMatrixSet

logger = logging.getLogger(__name__)


def _check_consistency(data: DataTensor, matrices: KernelMatrixSet, config: ScanConfig):
    N, grid = config.N, config.sphere_grid
    if matrices.N < N:
        raise ShapeMismatchException('Matrices cover l <= {}, expansion needs l <= {}'.format(matrices.N, N))
    if data.shape[0] != matrices.M or not np.allclose(data.p, matrices.p_grid, rtol=1e-12, atol=0):
        raise ShapeMismatchException('Data diameters do not match the matrix grid (M={})'.format(matrices.M))
    if data.shape[1:] != (grid.shape[1], grid.shape[0]):
        raise ShapeMismatchException('Expected {} x {} detector positions, got {} x {}'.format(
            grid.shape[1], grid.shape[0], data.shape[1], data.shape[2]))


def _lambdas(config: ScanConfig, lambda_per_l: Sequence[float] = None) -> List[float]:
    if lambda_per_l is None:
        return [config.lambda_] * (config.N + 1)
    if len(lambda_per_l) != config.N + 1:
        raise ShapeMismatchException('Expected {} per-degree weights, got {}'.format(config.N + 1, len(lambda_per_l)))
    return [float(x) for x in lambda_per_l]


def data_coefficients(data: DataTensor, config: ScanConfig) -> np.ndarray:
    """
    g_lm(p_j) as an (M, N + 1, 2N + 1) array
    """
    return dsht(data.sphere_samples(), config.sphere_grid)


def solve_coefficients(g: np.ndarray, matrices: KernelMatrixSet, lambdas: Sequence[float], threads: int = 1):
    """
    :return: f_lm(r_q) as an (M, N + 1, 2N + 1) array and the residual norms (N + 1, 2N + 1)
    """
    N = g.shape[1] - 1
    f = np.zeros_like(g)
    residuals = np.full((N + 1, 2 * N + 1), np.nan)

    def solve_degree(l):
        # orders -l..l of one degree share A_l; every task writes its own slice
        orders = slice(N - l, N + l + 1)
        solver = TikhonovSolver(matrices.matrix(l), lambdas[l])
        f[:, l, orders] = solver.solve(g[:, l, orders])
        residuals[l, orders] = solver.residual(f[:, l, orders], g[:, l, orders])

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        list(executor.map(solve_degree, range(N + 1)))
    return f, residuals


def reconstruct(data: DataTensor, matrices: KernelMatrixSet, config: ScanConfig, target: Volume = None,
                threads: int = 1, lambda_per_l: Sequence[float] = None) -> ReconResult:
    """
    :param target: output geometry; without it the spherical samples are reconstructed only
    :param lambda_per_l: per-degree regularization weights replacing config.lambda
    """
    _check_consistency(data, matrices, config)
    lambdas = _lambdas(config, lambda_per_l)
    grid, timings = config.sphere_grid, {}

    started = time.perf_counter()
    g = data_coefficients(data, config)
    timings['dsht'] = time.perf_counter() - started

    started = time.perf_counter()
    f, residuals = solve_coefficients(g, matrices, lambdas, threads)
    timings['solve'] = time.perf_counter() - started

    started = time.perf_counter()
    field = idsht(f, grid)
    imaginary = float(np.max(np.abs(field.imag), initial=0.0))
    if imaginary > 1e-8 * max(float(np.max(np.abs(field.real), initial=0.0)), 1.0):
        logger.warning('Reconstructed field has an imaginary part up to {:.3e}'.format(imaginary))
    field = field.real
    timings['idsht'] = time.perf_counter() - started

    volume = None
    if target is not None:
        started = time.perf_counter()
        volume = spherical_to_cartesian(field, matrices.p_grid, grid, target)
        timings['interpolate'] = time.perf_counter() - started
    logger.debug('Reconstruction timings: {}'.format(timings))
    return ReconResult(volume, HarmonicStack(config.N, matrices.M, f), residuals, lambdas, timings)


def lcurve_all(data: DataTensor, matrices: KernelMatrixSet, config: ScanConfig,
               lambdas: Sequence[float]) -> List[LCurvePoint]:
    """
    Residual and solution norms aggregated over every (l, m) for each weight
    """
    _check_consistency(data, matrices, config)
    g = data_coefficients(data, config)
    points = []
    for lambda_ in lambdas:
        f, residuals = solve_coefficients(g, matrices, [lambda_] * (config.N + 1))
        points.append(LCurvePoint(float(lambda_), float(np.sqrt(np.nansum(residuals ** 2))),
                                  float(np.linalg.norm(f))))
    return points
