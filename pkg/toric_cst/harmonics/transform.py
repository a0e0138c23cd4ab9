"""
Discrete spherical harmonics transform pair.

dsht: azimuthal DFT (divided by 2N + 1) followed by the discrete Legendre analysis per order m.
idsht: Legendre synthesis per order followed by the azimuthal inverse DFT (multiplied by 2N + 1).
Leading axes of the sample / coefficient arrays are batch axes (e.g. the radial index).
"""
import numpy as np
from scipy import fft

from toric_cst.exceptions import ShapeMismatchException
from toric_cst.harmonics import HarmonicStack, SphereGrid


def dlt(values, m: int, grid: SphereGrid) -> np.ndarray:
    """
    Coefficients over l = 0..N (zero below |m|) of samples v(t_k) at fixed order m
    """
    values = np.asarray(values)
    if values.shape[-1] != grid.n_theta:
        raise ShapeMismatchException('Expected {} polar samples, got {}'.format(grid.n_theta, values.shape[-1]))
    return 2 * np.pi * np.einsum('...k,lk->...l', values * grid.weights, grid.signed_table(m))


def idlt(coefficients, m: int, grid: SphereGrid) -> np.ndarray:
    coefficients = np.asarray(coefficients)
    if coefficients.shape[-1] != grid.N + 1:
        raise ShapeMismatchException('Expected {} degrees, got {}'.format(grid.N + 1, coefficients.shape[-1]))
    return np.einsum('...l,lk->...k', coefficients, grid.signed_table(m))


def _check_samples(samples, grid: SphereGrid):
    samples = np.asarray(samples)
    if samples.shape[-2:] != grid.shape:
        raise ShapeMismatchException('Expected samples on a {} grid, got {}'.format(grid.shape, samples.shape[-2:]))
    return samples


def dsht(samples, grid: SphereGrid) -> np.ndarray:
    """
    samples[..., k, n] = F(theta_k, phi_n)  ->  coefficients[..., l, m + N]
    """
    samples = _check_samples(samples, grid)
    N = grid.N
    by_order = fft.fftshift(fft.fft(samples, axis=-1), axes=-1) / (2 * N + 1)
    coefficients = np.zeros(samples.shape[:-2] + (N + 1, 2 * N + 1), dtype=complex)
    for m in range(-N, N + 1):
        coefficients[..., m + N] = dlt(by_order[..., m + N], m, grid)
    return coefficients


def idsht(coefficients, grid: SphereGrid) -> np.ndarray:
    coefficients = np.asarray(coefficients)
    N = grid.N
    if coefficients.shape[-2:] != (N + 1, 2 * N + 1):
        raise ShapeMismatchException('Expected coefficients of shape {}, got {}'.format(
            (N + 1, 2 * N + 1), coefficients.shape[-2:]))
    by_order = np.zeros(coefficients.shape[:-2] + grid.shape, dtype=complex)
    for m in range(-N, N + 1):
        by_order[..., m + N] = idlt(coefficients[..., m + N], m, grid)
    return fft.ifft(fft.ifftshift(by_order, axes=-1), axis=-1) * (2 * N + 1)


def parseval_energy(samples, grid: SphereGrid) -> np.ndarray:
    """
    Quadrature estimate of the integral of |F|^2 over the sphere
    """
    samples = _check_samples(samples, grid)
    return 2 * np.pi / (2 * grid.N + 1) * np.einsum('...kn,k->...', np.abs(samples) ** 2, grid.weights)


def random_coefficients(N: int, count: int = 1, seed: int = 0) -> np.ndarray:
    """
    Band-limited complex coefficients (count, N + 1, 2N + 1), zero outside |m| <= l
    """
    generator = np.random.Generator(np.random.PCG64(seed))
    shape = (count, N + 1, 2 * N + 1)
    coefficients = generator.standard_normal(shape) + 1j * generator.standard_normal(shape)
    return coefficients * HarmonicStack.triangle_mask(N)


def roundtrip_error(grid: SphereGrid, count: int = 1, seed: int = 0) -> float:
    """
    max |dsht(idsht(c)) - c| over random band-limited coefficients
    """
    coefficients = random_coefficients(grid.N, count, seed)
    return float(np.max(np.abs(dsht(idsht(coefficients, grid), grid) - coefficients)))
