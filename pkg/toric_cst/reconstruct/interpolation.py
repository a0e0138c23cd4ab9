import logging

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from toric_cst.exceptions import ShapeMismatchException
from toric_cst.harmonics import SphereGrid
from toric_cst.projector import Volume

logger = logging.getLogger(__name__)


def _padded_field(field: np.ndarray, thetas: np.ndarray, phis: np.ndarray):
    """
    Closes the azimuth at 2 pi and adds pole rows holding the mean of the nearest ring
    """
    field = np.concatenate([field, field[:, :, :1]], axis=2)
    phis = np.append(phis, 2 * np.pi)
    if thetas[0] > 0:
        field = np.concatenate([np.repeat(field[:, :1].mean(axis=2, keepdims=True), field.shape[2], axis=2), field],
                               axis=1)
        thetas = np.insert(thetas, 0, 0.0)
    if thetas[-1] < np.pi:
        field = np.concatenate([field, np.repeat(field[:, -1:].mean(axis=2, keepdims=True), field.shape[2], axis=2)],
                               axis=1)
        thetas = np.append(thetas, np.pi)
    return field, thetas, phis


def spherical_to_cartesian(field: np.ndarray, radii: np.ndarray, grid: SphereGrid, target: Volume) -> Volume:
    """
    Trilinear interpolation in (r, theta, phi) of field[i, k, n] = f(r_i, theta_k, phi_n) at the voxel
    centers of ``target``; voxels outside [radii[0], radii[-1]] are set to zero

    :param target: geometry of the output, its values are ignored
    """
    field = np.asarray(field, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if field.shape != (len(radii),) + grid.shape:
        raise ShapeMismatchException('Expected a spherical field of shape {}, got {}'.format(
            (len(radii),) + grid.shape, field.shape))
    padded, thetas, phis = _padded_field(field, grid.thetas, grid.phis)
    if len(radii) == 1:
        # a single shell has no radial extent to interpolate over
        radii = np.array([radii[0], np.nextafter(radii[0], np.inf)])
        padded = np.concatenate([padded, padded])
    interpolator = RegularGridInterpolator((radii, thetas, phis), padded, method='linear', bounds_error=False,
                                           fill_value=0.0)
    centers = target.voxel_centers()
    r = np.linalg.norm(centers, axis=-1)
    theta = np.arccos(np.clip(centers[..., 2] / np.where(r > 0, r, 1.0), -1.0, 1.0))
    phi = np.mod(np.arctan2(centers[..., 1], centers[..., 0]), 2 * np.pi)
    values = interpolator(np.stack([r, theta, phi], axis=-1))
    logger.debug('Interpolated {} shells onto {}'.format(len(radii), target))
    return target.like(values)
