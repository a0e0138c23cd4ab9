"""
Forward toric Radon transform.

Data are normalized as surface integrals divided by R (integrand r sin(gamma) / sin(omega)), the
normalization in which the Abel kernel and the 1D coefficient relation are written; pass
``true_surface=True`` to get the geometric surface integral instead.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import special

from toric_cst.exceptions import ConfigurationException, ShapeMismatchException
from toric_cst.geometry import ScanConfig
from toric_cst.geometry.torus import detector_rotation, gamma_max, p_to_omega, radial_profile, torus_radius_p, \
    unit_direction
from toric_cst.projector import Volume, DataTensor
from toric_cst.projector.samplers import SamplersManager

logger = logging.getLogger(__name__)


def _trapezoid_weights(count: int, step: float) -> np.ndarray:
    weights = np.full(count, step)
    weights[[0, -1]] = step / 2
    return weights


def torus_template(p: float, config: ScanConfig, true_surface: bool = False):
    """
    Quadrature nodes of the torus (p, alpha=0, beta=0) and their weights.

    gamma covers [0, 2 arccos(R/p)] with step arccos(R/p) / N_gamma (trapezoidal rule),
    psi covers [0, 2 pi) with step 2 pi / N_psi.
    :return: points (n_gamma, n_psi, 3) and weights (n_gamma, n_psi)
    """
    R = config.R
    step = gamma_max(p, R) / (2 * config.N_gamma)
    gammas = np.arange(2 * config.N_gamma + 1) * step
    psis = 2 * np.pi * np.arange(config.N_psi) / config.N_psi
    radius = torus_radius_p(p, gammas, R)
    measure = p * radius * np.sin(gammas) * (1.0 if true_surface else 1.0 / R)
    points = radius[:, np.newaxis, np.newaxis] * unit_direction(gammas[:, np.newaxis], psis[np.newaxis, :])
    weights = (_trapezoid_weights(len(gammas), step) * measure)[:, np.newaxis] * np.full(
        config.N_psi, 2 * np.pi / config.N_psi)
    return points, weights


def _project_diameter(volume, p, alphas, betas, config, sampler, true_surface):
    points, weights = torus_template(p, config, true_surface)
    points = points.reshape(-1, 3)
    weights = weights.reshape(-1)
    row = np.zeros((len(alphas), len(betas)))
    for n, alpha in enumerate(alphas):
        rotations = np.stack([detector_rotation((alpha, beta)) for beta in betas])
        rotated = np.einsum('kij,sj->ksi', rotations, points)
        row[n] = sampler.sample(volume, rotated) @ weights
    return row


def project(volume: Volume, config: ScanConfig, threads: int = 1, true_surface: bool = False) -> DataTensor:
    p_grid = config.p_grid
    if np.any(p_grid <= config.R):
        raise ConfigurationException('Diameter grid must stay above R={}'.format(config.R))
    alphas, betas = config.alpha_grid, config.beta_grid
    sampler = SamplersManager.get_sampler_by_type(config.interpolation)
    logger.debug('Projecting {} onto {} tori per diameter, {} diameters, {} x {} quadrature nodes'.format(
        volume, len(alphas) * len(betas), len(p_grid), 2 * config.N_gamma + 1, config.N_psi))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        rows = list(executor.map(
            lambda p: _project_diameter(volume, p, alphas, betas, config, sampler, true_surface), p_grid))
    return DataTensor(p_grid, alphas, betas, np.stack(rows))


def project_omega(volume: Volume, omega: float, angles, config: ScanConfig) -> float:
    """
    Transform of the volume over the torus labeled by the scattering angle omega
    """
    R = config.R
    half = float(omega) - np.pi / 2
    step = half / config.N_gamma
    gammas = np.arange(2 * config.N_gamma + 1) * step
    psis = 2 * np.pi * np.arange(config.N_psi) / config.N_psi
    radius = radial_profile(omega, np.minimum(gammas, 2 * omega - np.pi), R)
    measure = radius * np.sin(gammas) / np.sin(omega)
    directions = unit_direction(gammas[:, np.newaxis], psis[np.newaxis, :]) @ detector_rotation(angles).T
    points = radius[:, np.newaxis, np.newaxis] * directions
    weights = (_trapezoid_weights(len(gammas), step) * measure)[:, np.newaxis] * (2 * np.pi / config.N_psi)
    sampler = SamplersManager.get_sampler_by_type(config.interpolation)
    return float(np.sum(sampler.sample(volume, points) * weights))


def _radial_function(f_lm, radii):
    if callable(f_lm):
        return f_lm
    f_lm = np.asarray(f_lm)
    if radii is None or np.shape(radii) != f_lm.shape:
        raise ShapeMismatchException('Radial samples need radii of the same shape, got {} and {}'.format(
            None if radii is None else np.shape(radii), f_lm.shape))
    radii = np.asarray(radii, dtype=float)

    def interpolated(r):
        real = np.interp(r, radii, f_lm.real, left=0.0, right=0.0)
        if np.iscomplexobj(f_lm):
            return real + 1j * np.interp(r, radii, f_lm.imag, left=0.0, right=0.0)
        return real

    return interpolated


def coeff_forward_1d(f_lm, l: int, p_grid, config: ScanConfig, radii=None, n_gamma: int = 2048) -> np.ndarray:
    """
    Coefficients (R_T f)_lm(p_j) of the data from the radial coefficient f_lm of the object:
    2 pi integral over gamma in [0, 2 omega - pi] of r sin(gamma) / sin(omega) f_lm(r) P_l(cos gamma).

    :param f_lm: callable of the radius, or samples taken at ``radii`` (linear interpolation, zero outside)
    :param n_gamma: trapezoidal intervals per diameter
    """
    R = config.R
    p_grid = np.atleast_1d(np.asarray(p_grid, dtype=float))
    f = _radial_function(f_lm, radii)
    fractions = np.linspace(0.0, 1.0, n_gamma + 1)
    result = []
    for p in p_grid:
        upper = float(gamma_max(p, R))
        gammas = fractions * upper
        radius = torus_radius_p(p, gammas, R)
        sin_omega = np.sin(p_to_omega(p, R))
        integrand = radius * np.sin(gammas) / sin_omega * f(radius) * special.eval_legendre(l, np.cos(gammas))
        result.append(2 * np.pi * np.sum(integrand * _trapezoid_weights(len(gammas), upper / n_gamma)))
    return np.array(result)
