"""
Abel kernel K_l(p, r) of the radial equations, with Q factors

    Q1 = 2 pi r^2 sqrt(p^2 - R^2) / (R p sqrt(p + r))     Q2 = 2 pi r / p
    Q3 = sqrt(p^2 - R^2) sqrt(p + r) / p^2                Q4 = R r / p^2

The direct form sums over sigma = +-1 the terms (Q1 - sigma Q2 sqrt(p - r)) sigma^l P_l(Q3 sqrt(p - r) + sigma Q4).
In the expanded form the odd powers of sqrt(p - r) cancel and only integer powers of (p - r) remain:

    K = 2 Q1 P(Q4) + 2 (p - r) [Q3^2 Q1 P''(Q4) / 2 - Q3 Q2 P'(Q4)] + O((p - r)^2)

With x = Q4 and w = Q3^2 (p - r), the even and odd parts

    E_n = [P_n(x + u) + P_n(x - u)] / 2,    O_n = [P_n(x + u) - P_n(x - u)] / (2 u),    u^2 = w

are polynomials in w and obey the Legendre recurrence

    (n + 1) E_{n+1} = (2n + 1) (x E_n + w O_n) - n E_{n-1}
    (n + 1) O_{n+1} = (2n + 1) (x O_n + E_n) - n O_{n-1}

so that K = 2 Q1 E_l - 2 Q2 Q3 (p - r) O_l. The recurrence sums all orders of the (p - r) series at once,
without monomial coefficients of P_l.
"""
import numpy as np
from scipy import special

from toric_cst.exceptions import DomainException
from toric_cst.kernel import KernelPoint, QFactors


def _check_triangle(p, r, R: float):
    p, r = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(r, dtype=float))
    if np.any(p <= R) or np.any(r < R) or np.any(r > p):
        raise DomainException('Kernel needs R <= r <= p and p > R (R={})'.format(R))
    return p, r


def _q_values(p, r, R: float):
    root = np.sqrt(p * p - R * R)
    q1 = 2 * np.pi * r * r * root / (R * p * np.sqrt(p + r))
    q2 = 2 * np.pi * r / p
    q3 = root * np.sqrt(p + r) / (p * p)
    q4 = R * r / (p * p)
    return q1, q2, q3, q4


def q_factors(p: float, r: float, R: float) -> QFactors:
    p, r = _check_triangle(p, r, R)
    return QFactors(*(float(q) for q in _q_values(p, r, R)))


def direct_values(p, r, l: int, R: float) -> np.ndarray:
    """
    Vectorized direct form over broadcast arrays p, r
    """
    p, r = _check_triangle(p, r, R)
    q1, q2, q3, q4 = _q_values(p, r, R)
    s = np.sqrt(p - r)
    # sigma^l P_l(sigma x) = P_l(x)
    return (q1 - q2 * s) * special.eval_legendre(l, q4 + q3 * s) + \
        (q1 + q2 * s) * special.eval_legendre(l, q4 - q3 * s)


def _paired_legendre(l: int, x, w):
    """
    E_l and O_l of the module docstring, for any sign of w
    """
    e_previous, e = np.zeros_like(x), np.ones_like(x)
    o_previous, o = np.zeros_like(x), np.zeros_like(x)
    for n in range(l):
        e_next = ((2 * n + 1) * (x * e + w * o) - n * e_previous) / (n + 1)
        o_next = ((2 * n + 1) * (x * o + e) - n * o_previous) / (n + 1)
        e_previous, e, o_previous, o = e, e_next, o, o_next
    return e, o


def taylor_values(p, r, l: int, R: float) -> np.ndarray:
    """
    Expanded form without the triangle check: a polynomial in (p - r), defined on both sides
    of the diagonal as long as p > R
    """
    p, r = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(r, dtype=float))
    q1, q2, q3, q4 = _q_values(p, r, R)
    d = p - r
    e, o = _paired_legendre(l, q4, q3 * q3 * d)
    return 2 * q1 * e - 2 * q2 * q3 * d * o


def expanded_values(p, r, l: int, R: float) -> np.ndarray:
    p, r = _check_triangle(p, r, R)
    return taylor_values(p, r, l, R)


def diagonal_values(r, l: int, R: float) -> np.ndarray:
    """
    K_l(r, r) = sqrt(8) pi / R * sqrt(r) sqrt(r^2 - R^2) P_l(R / r)
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < R) or R <= 0:
        raise DomainException('Kernel diagonal needs r >= R > 0, got R={}, r={}'.format(R, r))
    return np.sqrt(8) * np.pi / R * np.sqrt(r) * np.sqrt(r * r - R * R) * special.eval_legendre(l, R / r)


def kernel_direct(point: KernelPoint, R: float) -> float:
    p, r, l = KernelPoint(*point).validate(R)
    return float(direct_values(p, r, l, R))


def kernel_expanded(point: KernelPoint, R: float) -> float:
    p, r, l = KernelPoint(*point).validate(R)
    return float(expanded_values(p, r, l, R))


def kernel_diagonal(r: float, l: int, R: float) -> float:
    if l < 0:
        raise DomainException('Kernel degree must be non-negative, got {}'.format(l))
    return float(diagonal_values(r, l, R))
