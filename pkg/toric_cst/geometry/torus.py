"""
Detector positions, rotations and the two parametrizations of the toric manifolds.

A torus is labeled either by the scattering angle omega in (pi/2, pi) or by the
diameter p = R / sin(omega) > R of its generating circles. All angles are radians.
"""
import numpy as np

from toric_cst.exceptions import DomainException

ELECTRON_REST_ENERGY = 511.0  # keV

_TOLERANCE = 1e-12


def _check(condition, message):
    if not np.all(condition):
        raise DomainException(message)


def detector_position(angles, R: float) -> np.ndarray:
    alpha, beta = angles
    return R * np.array([np.cos(alpha) * np.sin(beta), np.sin(alpha) * np.sin(beta), np.cos(beta)])


def rotation_z(alpha: float) -> np.ndarray:
    c, s = np.cos(alpha), np.sin(alpha)
    return np.array([[c, -s, 0.0],
                     [s, c, 0.0],
                     [0.0, 0.0, 1.0]])


def rotation_y(beta: float) -> np.ndarray:
    c, s = np.cos(beta), np.sin(beta)
    return np.array([[c, 0.0, s],
                     [0.0, 1.0, 0.0],
                     [-s, 0.0, c]])


def detector_rotation(angles) -> np.ndarray:
    """
    u(alpha) a(beta), maps the z axis onto the detector direction
    """
    alpha, beta = angles
    return rotation_z(alpha) @ rotation_y(beta)


def unit_direction(gamma, psi) -> np.ndarray:
    """
    Theta(gamma, psi) on the unit sphere, last axis holds (x, y, z)
    """
    gamma, psi = np.broadcast_arrays(np.asarray(gamma, dtype=float), np.asarray(psi, dtype=float))
    return np.stack([np.cos(psi) * np.sin(gamma), np.sin(psi) * np.sin(gamma), np.cos(gamma)], axis=-1)


def radial_profile(omega, gamma, R: float):
    omega = np.asarray(omega, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    _check((omega > np.pi / 2) & (omega < np.pi), 'omega must lie in (pi/2, pi), got {}'.format(omega))
    _check((gamma >= -_TOLERANCE) & (gamma <= 2 * omega - np.pi + _TOLERANCE),
           'gamma must lie in [0, 2 omega - pi], got {}'.format(gamma))
    return R * np.sin(omega - gamma) / np.sin(omega)


def torus_point_omega(omega, angles, gamma, psi, R: float) -> np.ndarray:
    radius = radial_profile(omega, gamma, R)
    direction = unit_direction(gamma, psi) @ detector_rotation(angles).T
    return np.asarray(radius)[..., np.newaxis] * direction


def torus_radius_p(p, gamma, R: float):
    """
    Distance to the origin of the torus point labeled (p, gamma): p cos(gamma - arccos(R/p))
    """
    p = np.asarray(p, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    _check(p > R, 'p must exceed R={}, got {}'.format(R, p))
    _check((gamma >= -_TOLERANCE) & (gamma <= np.pi + _TOLERANCE), 'gamma must lie in [0, pi], got {}'.format(gamma))
    return p * np.cos(gamma - np.arccos(R / p))


def torus_point_p(p, angles, gamma, psi, R: float) -> np.ndarray:
    radius = torus_radius_p(p, gamma, R)
    direction = unit_direction(gamma, psi) @ detector_rotation(angles).T
    return np.asarray(radius)[..., np.newaxis] * direction


def gamma_max(p, R: float):
    """
    Upper end 2 arccos(R/p) = 2 omega - pi of the arc lying outside the detector sphere
    """
    p = np.asarray(p, dtype=float)
    _check(p > R, 'p must exceed R={}, got {}'.format(R, p))
    return 2 * np.arccos(R / p)


def omega_to_p(omega, R: float):
    omega = np.asarray(omega, dtype=float)
    _check((omega > np.pi / 2) & (omega < np.pi), 'omega must lie in (pi/2, pi), got {}'.format(omega))
    return R / np.sin(omega)


def p_to_omega(p, R: float):
    # obtuse branch only: backscattered photons
    p = np.asarray(p, dtype=float)
    _check(p > R, 'p must exceed R={}, got {}'.format(R, p))
    return np.pi - np.arcsin(R / p)


def compton_energy(omega, E0: float):
    """
    Energy (keV) of a photon of initial energy E0 after deviating by omega
    """
    omega = np.asarray(omega, dtype=float)
    _check(E0 > 0, 'E0 must be positive, got {}'.format(E0))
    _check((omega >= 0) & (omega <= np.pi), 'omega must lie in [0, pi], got {}'.format(omega))
    return E0 / (1 + (E0 / ELECTRON_REST_ENERGY) * (1 - np.cos(omega)))


def energy_to_omega(E, E0: float):
    E = np.asarray(E, dtype=float)
    _check(E0 > 0, 'E0 must be positive, got {}'.format(E0))
    lowest = compton_energy(np.pi, E0)
    _check((E >= lowest * (1 - _TOLERANCE)) & (E <= E0 * (1 + _TOLERANCE)),
           'Energy must lie in [{}, {}] keV, got {}'.format(lowest, E0, E))
    cosine = 1 - ELECTRON_REST_ENERGY * (1 / E - 1 / E0)
    return np.arccos(np.clip(cosine, -1.0, 1.0))


def energy_to_p(E, E0: float, R: float):
    """
    Diameter of the torus recorded at energy E; only backscatter energies label a torus
    """
    return omega_to_p(energy_to_omega(E, E0), R)
