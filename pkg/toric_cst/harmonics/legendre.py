"""
Associated Legendre functions and spherical harmonics.

Convention: P_l^m carries the Condon-Shortley phase (-1)^m and
Y_l^m(gamma, psi) = q_l^m P_l^m(cos gamma) exp(i m psi) with
q_l^m = sqrt((2l + 1) / (4 pi) * (l - m)! / (l + m)!), so that Y_l^{-m} = (-1)^m conj(Y_l^m).
"""
import numpy as np
from scipy import special

from toric_cst.exceptions import DomainException
from toric_cst.harmonics import HarmonicIndex


def _check_argument(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise DomainException('Legendre argument must lie in [-1, 1]')
    return x


def assoc_legendre(l: int, m: int, x):
    """
    Unnormalized P_l^m(x) by upward recurrence in l.

    Overflows for orders beyond a few hundred; the transforms use normalized_legendre_table instead.
    """
    if not 0 <= m <= l:
        raise DomainException('Expected 0 <= m <= l, got l={}, m={}'.format(l, m))
    x = _check_argument(x)
    # P_m^m = (-1)^m (2m - 1)!! (1 - x^2)^(m/2)
    p_mm = np.ones_like(x)
    s = np.sqrt((1 - x) * (1 + x))
    for i in range(1, m + 1):
        p_mm = -(2 * i - 1) * s * p_mm
    if l == m:
        return p_mm
    p_prev, p = p_mm, x * (2 * m + 1) * p_mm
    for n in range(m + 2, l + 1):
        p_prev, p = p, ((2 * n - 1) * x * p - (n + m - 1) * p_prev) / (n - m)
    return p


def normalized_legendre_table(m: int, N: int, t) -> np.ndarray:
    """
    Rows l = 0..N of q_l^m P_l^m(t) for a fixed order 0 <= m <= N, rows l < m are zero
    """
    if not 0 <= m <= N:
        raise DomainException('Expected 0 <= m <= N, got m={}, N={}'.format(m, N))
    t = _check_argument(t)
    table = np.zeros((N + 1,) + t.shape)
    s = np.sqrt((1 - t) * (1 + t))
    p_mm = np.full_like(t, 1 / np.sqrt(4 * np.pi))
    for i in range(1, m + 1):
        p_mm = -np.sqrt((2 * i + 1) / (2 * i)) * s * p_mm
    table[m] = p_mm
    if m + 1 <= N:
        table[m + 1] = np.sqrt(2 * m + 3) * t * p_mm
    for l in range(m + 2, N + 1):
        a = np.sqrt((4 * l * l - 1) / (l * l - m * m))
        b = np.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
        table[l] = a * (t * table[l - 1] - b * table[l - 2])
    return table


def qlm(l: int, m: int) -> float:
    HarmonicIndex(l, m).validate()
    return float(np.sqrt((2 * l + 1) / (4 * np.pi) * np.exp(special.gammaln(l - m + 1) - special.gammaln(l + m + 1))))


def ylm(index: HarmonicIndex, gamma, psi):
    l, m = HarmonicIndex(*index).validate()
    gamma = np.asarray(gamma, dtype=float)
    value = normalized_legendre_table(abs(m), l, np.cos(gamma))[l] * np.exp(1j * abs(m) * np.asarray(psi))
    if m < 0:
        value = (-1) ** abs(m) * np.conj(value)
    return value


def legendre_derivative(l: int, k: int, x):
    """
    k-th derivative of the Legendre polynomial P_l, through
    d^k/dx^k P_l = (2k - 1)!! C^{(k + 1/2)}_{l - k}
    """
    if l < 0 or k < 0:
        raise DomainException('Expected non-negative degree and order, got l={}, k={}'.format(l, k))
    x = np.asarray(x, dtype=float)
    if k > l:
        return np.zeros_like(x)
    if k == 0:
        return special.eval_legendre(l, x)
    double_factorial = 2 ** k * special.gamma(k + 0.5) / np.sqrt(np.pi)
    return double_factorial * special.eval_gegenbauer(l - k, k + 0.5, x)
