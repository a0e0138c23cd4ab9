import math
from typing import NamedTuple

import numpy as np

from toric_cst.config import Section
from toric_cst.config.fields import NumberField, IntegerField, StringField
from toric_cst.config.model import SectionRecord
from toric_cst.exceptions import ConfigurationException, DomainException


class THETA_SAMPLING:
    GAUSS = 'gauss'
    UNIFORM = 'uniform'


class KERNEL_AVERAGE:
    ENDPOINTS = 'endpoints'
    MIDPOINTS = 'midpoints'


SCAN_SECTION = Section(
    name='scan',
    fields=[
        NumberField(name='R', minimum=0, exclusive_minimum=True),
        NumberField(name='r_m', minimum=0, exclusive_minimum=True),
        NumberField(name='r_M', minimum=0, exclusive_minimum=True),
        NumberField(name='r_M_star', optional=True),
        IntegerField(name='N', minimum=1),
        IntegerField(name='N_alpha', optional=True, minimum=1),
        IntegerField(name='N_beta', minimum=1),
        IntegerField(name='N_p', minimum=1),
        IntegerField(name='N_r', optional=True, minimum=1),
        IntegerField(name='N_gamma', default=32, minimum=1),
        IntegerField(name='N_psi', default=64, minimum=1),
        NumberField(name='lambda', default=0.01, minimum=0),
        IntegerField(name='seed', default=0),
        StringField(name='theta_sampling', default=THETA_SAMPLING.GAUSS,
                    choices=[THETA_SAMPLING.GAUSS, THETA_SAMPLING.UNIFORM]),
        StringField(name='interpolation', default='trilinear', choices=['trilinear', 'nearest']),
        StringField(name='kernel_average', default=KERNEL_AVERAGE.ENDPOINTS,
                    choices=[KERNEL_AVERAGE.ENDPOINTS, KERNEL_AVERAGE.MIDPOINTS]),
    ]
)


class ScanConfig(SectionRecord):
    """
    Acquisition, discretization and regularization parameters of a scan.

    The data diameter grid and the radial grid of the reconstruction coincide
    (p_j = r_j, N_p = N_r = M), the azimuthal detector grid has N_alpha = 2N + 1 nodes.
    """
    section = SCAN_SECTION

    R: float
    r_m: float
    r_M: float
    r_M_star: float
    N: int
    N_alpha: int
    N_beta: int
    N_p: int
    N_r: int
    N_gamma: int
    N_psi: int
    lambda_: float
    seed: int
    theta_sampling: str
    interpolation: str
    kernel_average: str

    _sphere_grid = None

    def validate(self):
        if self.r_M_star is None:
            self.r_M_star = 2 * self.r_M
        if self.N_alpha is None:
            self.N_alpha = 2 * self.N + 1
        if self.N_r is None:
            self.N_r = self.N_p
        if not 0 < self.R < self.r_m <= self.r_M <= self.r_M_star:
            raise ConfigurationException('Expected 0 < R < r_m <= r_M <= r_M_star, got R={}, r_m={}, r_M={}, '
                                         'r_M_star={}'.format(self.R, self.r_m, self.r_M, self.r_M_star))
        if self.N_alpha != 2 * self.N + 1:
            raise ConfigurationException('N_alpha must equal 2N + 1 = {}, got {}'.format(2 * self.N + 1, self.N_alpha))
        if self.N_r != self.N_p:
            raise ConfigurationException('Radial and diameter grids must coincide: N_r={} differs from N_p={}'.format(
                self.N_r, self.N_p))

    @property
    def M(self) -> int:
        return self.N_p

    @property
    def radial_edges(self) -> np.ndarray:
        """
        r_q = R + q (r_M_star - R) / M for q = 0..M
        """
        return self.R + np.arange(self.M + 1) * (self.r_M_star - self.R) / self.M

    @property
    def p_grid(self) -> np.ndarray:
        return self.radial_edges[1:]

    @property
    def alpha_grid(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.N_alpha) / self.N_alpha

    @property
    def sphere_grid(self):
        key = (self.N, self.N_beta, self.theta_sampling)
        if self._sphere_grid is None or self._sphere_grid[0] != key:
            from toric_cst.harmonics import SphereGrid
            self._sphere_grid = key, SphereGrid(self.N, n_theta=self.N_beta, sampling=self.theta_sampling)
        return self._sphere_grid[1]

    @property
    def beta_grid(self) -> np.ndarray:
        return self.sphere_grid.thetas


class DetectorAngles(NamedTuple):
    alpha: float
    beta: float

    def validate(self):
        if not (0 <= self.alpha < 2 * math.pi and 0 <= self.beta <= math.pi):
            raise DomainException('Detector angles out of range: alpha={}, beta={}'.format(self.alpha, self.beta))
        return self


class TorusLabel(NamedTuple):
    p: float
    angles: DetectorAngles

    def omega(self, R: float) -> float:
        from toric_cst.geometry.torus import p_to_omega
        return p_to_omega(self.p, R)
