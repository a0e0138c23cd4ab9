import numpy as np

from toric_cst.exceptions import ShapeMismatchException


class KernelMatrixSet:
    """
    Lower-triangular matrices A_l (l = 0..N) of the discretized radial equations.

    Rows follow the diameters p_j = r_j (j = 1..M), columns the radial cells [r_{q-1}, r_q].
    """
    R = None
    r_M_star = None
    kernel_average = None
    matrices = None

    def __init__(self, R: float, r_M_star: float, matrices: np.ndarray, kernel_average: str = 'endpoints'):
        matrices = np.asarray(matrices, dtype=float)
        if matrices.ndim != 3 or matrices.shape[1] != matrices.shape[2]:
            raise ShapeMismatchException('Expected a (N + 1, M, M) stack of matrices, got {}'.format(matrices.shape))
        self.R = R
        self.r_M_star = r_M_star
        self.kernel_average = kernel_average
        self.matrices = matrices

    @property
    def N(self) -> int:
        return self.matrices.shape[0] - 1

    @property
    def M(self) -> int:
        return self.matrices.shape[1]

    @property
    def radial_edges(self) -> np.ndarray:
        return self.R + np.arange(self.M + 1) * (self.r_M_star - self.R) / self.M

    @property
    def p_grid(self) -> np.ndarray:
        return self.radial_edges[1:]

    def matrix(self, l: int) -> np.ndarray:
        return self.matrices[l]

    def is_lower_triangular(self) -> bool:
        return not np.any(np.triu(self.matrices, k=1))

    def __repr__(self):
        return '<KernelMatrixSet N={} M={} R={}>'.format(self.N, self.M, self.R)
