import logging
from typing import NamedTuple

import numpy as np
from scipy import special

from toric_cst.exceptions import DomainException, ShapeMismatchException

logger = logging.getLogger(__name__)


class HarmonicIndex(NamedTuple):
    l: int
    m: int

    def validate(self, N: int = None):
        if self.l < 0 or abs(self.m) > self.l or (N is not None and self.l > N):
            raise DomainException('Invalid harmonic index (l={}, m={}) for N={}'.format(self.l, self.m, N))
        return self


class SphereGrid:
    """
    Sampling of the unit sphere used by the discrete spherical harmonics transform.

    Polar nodes are sorted by increasing theta. With Gauss-Legendre nodes in t = cos(theta) the
    transform pair is exact for band-limited data as soon as n_theta >= N + 1; uniform sampling uses
    midpoint nodes with weights sin(theta_k) * pi / n_theta.
    """
    N = None
    n_theta = None
    sampling = None
    _legendre_table = None

    def __init__(self, N: int, n_theta: int = None, sampling: str = 'gauss'):
        self.N = N
        self.n_theta = n_theta or N + 1
        self.sampling = sampling
        if sampling == 'gauss':
            t, w = special.roots_legendre(self.n_theta)
            order = np.argsort(-t)
            self.t, self.weights = t[order], w[order]
            self.thetas = np.arccos(self.t)
        elif sampling == 'uniform':
            logger.warning('Uniform theta sampling: the transform pair is only approximately inverse')
            self.thetas = (np.arange(self.n_theta) + 0.5) * np.pi / self.n_theta
            self.t = np.cos(self.thetas)
            self.weights = np.sin(self.thetas) * np.pi / self.n_theta
        else:
            raise DomainException('Unknown theta sampling "{}"'.format(sampling))
        if sampling == 'gauss' and self.n_theta < N + 1:
            logger.warning('n_theta={} < N + 1={}: highest degrees are not integrated exactly'.format(
                self.n_theta, N + 1))
        self.phis = 2 * np.pi * np.arange(2 * N + 1) / (2 * N + 1)

    @property
    def shape(self):
        return self.n_theta, 2 * self.N + 1

    @property
    def legendre_table(self) -> np.ndarray:
        """
        table[m, l, k] = q_l^m P_l^m(t_k) for 0 <= m <= l <= N, zero elsewhere
        """
        if self._legendre_table is None:
            from toric_cst.harmonics.legendre import normalized_legendre_table
            self._legendre_table = np.stack([normalized_legendre_table(m, self.N, self.t)
                                             for m in range(self.N + 1)])
        return self._legendre_table

    def signed_table(self, m: int) -> np.ndarray:
        """
        (N + 1, n_theta) values of q_l^m P_l^m(t_k) including negative orders
        """
        if abs(m) > self.N:
            raise DomainException('|m|={} exceeds N={}'.format(abs(m), self.N))
        table = self.legendre_table[abs(m)]
        return table if m >= 0 or m % 2 == 0 else -table

    def __repr__(self):
        return '<SphereGrid N={} n_theta={} sampling="{}">'.format(self.N, self.n_theta, self.sampling)


class HarmonicStack:
    """
    Coefficients c_lm(x_i) for l <= N, |m| <= l at every radial sample.

    Stored as a complex array of shape (n_radial, N + 1, 2N + 1), order m at column m + N;
    entries with |m| > l stay zero.
    """
    N = None
    n_radial = None
    coefficients = None

    def __init__(self, N: int, n_radial: int, coefficients: np.ndarray = None):
        self.N = N
        self.n_radial = n_radial
        shape = (n_radial, N + 1, 2 * N + 1)
        if coefficients is None:
            coefficients = np.zeros(shape, dtype=complex)
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.shape != shape:
            raise ShapeMismatchException('Expected coefficients of shape {}, got {}'.format(shape, coefficients.shape))
        self.coefficients = coefficients

    @classmethod
    def triangle_mask(cls, N: int) -> np.ndarray:
        l = np.arange(N + 1)[:, np.newaxis]
        m = np.arange(-N, N + 1)[np.newaxis, :]
        return np.abs(m) <= l

    def __getitem__(self, index):
        l, m = HarmonicIndex(*index).validate(self.N)
        return self.coefficients[:, l, m + self.N]

    def __setitem__(self, index, values):
        l, m = HarmonicIndex(*index).validate(self.N)
        self.coefficients[:, l, m + self.N] = values

    def pack(self) -> np.ndarray:
        """
        Triangular layout (n_radial, (N + 1)^2), pairs ordered l = 0..N, m = -l..l
        """
        return self.coefficients[:, self.triangle_mask(self.N)]

    @classmethod
    def unpack(cls, N: int, packed: np.ndarray) -> 'HarmonicStack':
        packed = np.asarray(packed, dtype=complex)
        if packed.ndim != 2 or packed.shape[1] != (N + 1) ** 2:
            raise ShapeMismatchException('Expected packed coefficients with {} columns, got shape {}'.format(
                (N + 1) ** 2, packed.shape))
        stack = cls(N, packed.shape[0])
        stack.coefficients[:, cls.triangle_mask(N)] = packed
        return stack

    def real_symmetry_error(self) -> float:
        """
        max |c_{l,-m} - (-1)^m conj(c_{l,m})|, zero for coefficients of real functions
        """
        m = np.arange(-self.N, self.N + 1)
        mirrored = np.conj(self.coefficients[:, :, ::-1]) * np.where(m % 2 == 0, 1.0, -1.0)
        return float(np.max(np.abs(self.coefficients - mirrored), initial=0.0))

    def __repr__(self):
        return '<HarmonicStack N={} n_radial={}>'.format(self.N, self.n_radial)
