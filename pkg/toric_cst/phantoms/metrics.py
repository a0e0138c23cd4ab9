"""
Normalized error measures between a reference volume f and an estimate f~, in percent:

    NMSE = 100 / n * ||f - f~||_2^2 / max_i f_i^2
    NMAE = 100 / n * ||f - f~||_1 / max_i |f_i|

n being the number of voxels.
"""
import numpy as np

from toric_cst.exceptions import MetricException, ShapeMismatchException
from toric_cst.harmonics import SphereGrid
from toric_cst.projector import Volume
from toric_cst.projector.samplers import SamplersManager


def _values(f, f_tilde):
    f = f.values if isinstance(f, Volume) else np.asarray(f, dtype=float)
    f_tilde = f_tilde.values if isinstance(f_tilde, Volume) else np.asarray(f_tilde, dtype=float)
    if f.shape != f_tilde.shape:
        raise ShapeMismatchException('Cannot compare volumes of shapes {} and {}'.format(f.shape, f_tilde.shape))
    peak = float(np.max(np.abs(f), initial=0.0))
    if peak == 0:
        raise MetricException('Reference volume has a zero maximum')
    return f, f_tilde, peak


def nmse(f, f_tilde) -> float:
    f, f_tilde, peak = _values(f, f_tilde)
    return float(100 / f.size * np.sum((f - f_tilde) ** 2) / peak ** 2)


def nmae(f, f_tilde) -> float:
    f, f_tilde, peak = _values(f, f_tilde)
    return float(100 / f.size * np.sum(np.abs(f - f_tilde)) / peak)


def sample_spherical(volume: Volume, radii, grid: SphereGrid, interpolation: str = 'trilinear') -> np.ndarray:
    """
    field[i, k, n] = f(r_i, theta_k, phi_n) read from the volume
    """
    radii = np.asarray(radii, dtype=float)
    theta, phi = np.meshgrid(grid.thetas, grid.phis, indexing='ij')
    directions = np.stack([np.cos(phi) * np.sin(theta), np.sin(phi) * np.sin(theta), np.cos(theta)], axis=-1)
    points = radii[:, np.newaxis, np.newaxis, np.newaxis] * directions[np.newaxis]
    return SamplersManager.get_sampler_by_type(interpolation).sample(volume, points)
