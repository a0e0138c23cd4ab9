"""
Tikhonov solutions of A f = g through the normal equations (A^T A + lambda I) f = A^T g.
"""
import logging
from typing import List, NamedTuple, Sequence

import numpy as np
from scipy import linalg

from toric_cst.exceptions import DomainException, ShapeMismatchException, SingularSystemException

logger = logging.getLogger(__name__)

# smallest admissible ratio between Cholesky pivots when lambda = 0
PIVOT_RATIO = np.sqrt(np.finfo(float).eps)


class TikhonovSolver:
    """
    Factorizes A^T A + lambda I once and solves for any number of right-hand sides
    """
    matrix = None
    lambda_ = None

    def __init__(self, matrix: np.ndarray, lambda_: float):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ShapeMismatchException('Expected a square matrix, got shape {}'.format(matrix.shape))
        if lambda_ < 0:
            raise DomainException('Regularization weight must be non-negative, got {}'.format(lambda_))
        self.matrix = matrix
        self.lambda_ = lambda_
        normal = matrix.T @ matrix + lambda_ * np.eye(matrix.shape[0])
        try:
            self._factor = linalg.cho_factor(normal, lower=False, check_finite=True)
        except linalg.LinAlgError:
            raise SingularSystemException('Normal matrix is not positive definite (lambda={})'.format(lambda_))
        pivots = np.abs(np.diag(self._factor[0]))
        if lambda_ == 0 and pivots.min() <= PIVOT_RATIO * pivots.max():
            raise SingularSystemException('Normal matrix is numerically singular, use lambda > 0')

    def solve(self, g: np.ndarray) -> np.ndarray:
        """
        :param g: right-hand side (M,) or stacked columns (M, k), real or complex
        """
        g = np.asarray(g)
        if g.shape[0] != self.matrix.shape[0]:
            raise ShapeMismatchException('Expected {} data samples, got {}'.format(self.matrix.shape[0], g.shape[0]))
        if np.iscomplexobj(g):
            # real matrix: real and imaginary parts solve independently
            return self._solve_real(g.real) + 1j * self._solve_real(g.imag)
        return self._solve_real(g)

    def _solve_real(self, g: np.ndarray) -> np.ndarray:
        return linalg.cho_solve(self._factor, self.matrix.T @ g)

    def residual(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """
        ||A f - g|| per column
        """
        return np.linalg.norm(self.matrix @ f - g, axis=0)

    def normal_residual(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        lhs = self.matrix.T @ (self.matrix @ f) + self.lambda_ * f
        return np.linalg.norm(lhs - self.matrix.T @ g, axis=0)

    def __repr__(self):
        return '<TikhonovSolver M={} lambda={}>'.format(self.matrix.shape[0], self.lambda_)


def tikhonov_solve(matrix: np.ndarray, g: np.ndarray, lambda_: float) -> np.ndarray:
    return TikhonovSolver(matrix, lambda_).solve(g)


class LCurvePoint(NamedTuple):
    lambda_: float
    residual_norm: float
    solution_norm: float


def lcurve(matrix: np.ndarray, g: np.ndarray, lambdas: Sequence[float]) -> List[LCurvePoint]:
    """
    Residual and solution norms of the Tikhonov solutions over a list of weights
    """
    points = []
    for lambda_ in lambdas:
        solver = TikhonovSolver(matrix, lambda_)
        f = solver.solve(g)
        points.append(LCurvePoint(float(lambda_), float(np.linalg.norm(matrix @ f - g)), float(np.linalg.norm(f))))
    return points
