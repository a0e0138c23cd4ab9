from typing import Sequence

import numpy as np

from toric_cst.exceptions import ShapeMismatchException, DomainException


class Volume:
    """
    Scalar field on a regular Cartesian voxel grid; ``origin`` is the center of voxel (0, 0, 0)
    and ``values`` is indexed [ix, iy, iz].
    """
    dims = None
    origin = None
    spacing = None
    values = None

    def __init__(self, origin: Sequence[float], spacing: Sequence[float], values: np.ndarray = None,
                 dims: Sequence[int] = None):
        if values is None:
            if dims is None:
                raise ShapeMismatchException('Either values or dims must be given')
            values = np.zeros(tuple(int(x) for x in dims))
        values = np.asarray(values, dtype=float)
        if values.ndim != 3 or (dims is not None and tuple(dims) != values.shape):
            raise ShapeMismatchException('Expected a 3D array of shape {}, got {}'.format(dims, values.shape))
        self.values = values
        self.dims = values.shape
        self.origin = np.asarray(origin, dtype=float)
        self.spacing = np.asarray(spacing, dtype=float)
        if self.origin.shape != (3,) or self.spacing.shape != (3,) or np.any(self.spacing <= 0):
            raise DomainException('Expected 3 origin coordinates and 3 positive spacings, got {} and {}'.format(
                origin, spacing))

    def axes(self):
        return tuple(self.origin[i] + self.spacing[i] * np.arange(self.dims[i]) for i in range(3))

    def voxel_centers(self) -> np.ndarray:
        """
        (n_x, n_y, n_z, 3) coordinates of the voxel centers
        """
        return np.stack(np.meshgrid(*self.axes(), indexing='ij'), axis=-1)

    def to_index(self, points: np.ndarray) -> np.ndarray:
        """
        Fractional voxel indices of points (..., 3), returned with the coordinate axis first
        """
        return np.moveaxis((np.asarray(points) - self.origin) / self.spacing, -1, 0)

    def like(self, values: np.ndarray) -> 'Volume':
        return Volume(self.origin, self.spacing, values)

    def __repr__(self):
        return '<Volume dims={} origin={} spacing={}>'.format(self.dims, self.origin.tolist(), self.spacing.tolist())


class DataTensor:
    """
    Projections g[j, n, k] = R_T f(p_j, alpha_n, beta_k)
    """
    p = None
    alpha = None
    beta = None
    values = None

    def __init__(self, p: np.ndarray, alpha: np.ndarray, beta: np.ndarray, values: np.ndarray = None):
        self.p = np.asarray(p, dtype=float)
        self.alpha = np.asarray(alpha, dtype=float)
        self.beta = np.asarray(beta, dtype=float)
        shape = (len(self.p), len(self.alpha), len(self.beta))
        if values is None:
            values = np.zeros(shape)
        values = np.asarray(values, dtype=float)
        if values.shape != shape:
            raise ShapeMismatchException('Expected data of shape {}, got {}'.format(shape, values.shape))
        if np.any(np.diff(self.p) <= 0):
            raise DomainException('Diameter axis must be strictly increasing')
        self.values = values

    @property
    def shape(self):
        return self.values.shape

    def like(self, values: np.ndarray) -> 'DataTensor':
        return DataTensor(self.p, self.alpha, self.beta, values)

    def sphere_samples(self) -> np.ndarray:
        """
        Values rearranged as [j, k, n] (diameter, polar, azimuth) for the spherical harmonics transform
        """
        return np.swapaxes(self.values, 1, 2)

    def __repr__(self):
        return '<DataTensor shape={}>'.format(self.shape)
