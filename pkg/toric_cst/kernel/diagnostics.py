"""
Numerical checks of the invertibility conditions of the radial equations.

Where the kernel diagonal vanishes (P_l(R / r0) = 0) the equations can still be inverted
provided 1 + kappa1 / (2 (kappa1 + kappa2)) > 0, (kappa1, kappa2) being the gradient of K_l at (r0, r0).
"""
import csv
import logging
from typing import List, NamedTuple

import numpy as np
from scipy import optimize, special

from toric_cst.exceptions import DegenerateGradientException, DomainException
from toric_cst.harmonics.legendre import legendre_derivative
from toric_cst.kernel.forms import taylor_values, diagonal_values

logger = logging.getLogger(__name__)

ROOT_TOLERANCE = 1e-12
RELATIVE_STEP = 1e-5


def _legendre_roots(l: int) -> List[float]:
    # roots of P_l interlace the roots of P_{l-1}, so each bracket holds exactly one
    edges = [-1.0] + (sorted(special.roots_legendre(l - 1)[0]) if l > 1 else []) + [1.0]
    return [optimize.brentq(lambda x: special.eval_legendre(l, x), a, b, xtol=ROOT_TOLERANCE)
            for a, b in zip(edges[:-1], edges[1:])]


def diagonal_roots(l: int, R: float, r_m: float, r_M: float) -> List[float]:
    """
    Radii r0 in [r_m, r_M] at which the kernel diagonal vanishes, ascending
    """
    if l < 0:
        raise DomainException('Kernel degree must be non-negative, got {}'.format(l))
    if not 0 < R < r_m <= r_M:
        raise DomainException('Expected 0 < R < r_m <= r_M, got R={}, r_m={}, r_M={}'.format(R, r_m, r_M))
    if l == 0:
        return []
    lower, upper = R / r_M, R / r_m
    return sorted(R / x for x in _legendre_roots(l) if lower <= x <= upper)


def kernel_gradient(r0: float, l: int, R: float):
    """
    (dK/dp, dK/dr) at (r0, r0) by central differences of the expanded form
    """
    h = RELATIVE_STEP * r0

    def value(p, r):
        return float(taylor_values(np.float64(p), np.float64(r), l, R))

    # the expanded form stays polynomial in (p - r) across the diagonal, only p > R is required
    kappa2 = (value(r0, r0 + h) - value(r0, r0 - h)) / (2 * h)
    if r0 - h > R:
        kappa1 = (value(r0 + h, r0) - value(r0 - h, r0)) / (2 * h)
    else:
        kappa1 = (-3 * value(r0, r0) + 4 * value(r0 + h, r0) - value(r0 + 2 * h, r0)) / (2 * h)
    return kappa1, kappa2


def gradient_closed_form(r0: float, l: int, R: float):
    """
    kappa1 = -4 pi P'(R/r0) sqrt(2 r0) sqrt(r0^2 - R^2) / r0^2, kappa2 = -kappa1 / 2
    """
    if r0 <= R:
        raise DomainException('Expected r0 > R={}, got {}'.format(R, r0))
    slope = float(legendre_derivative(l, 1, R / r0))
    kappa1 = -4 * np.pi * slope * np.sqrt(2 * r0) * np.sqrt(r0 * r0 - R * R) / r0 ** 2
    return kappa1, -kappa1 / 2


def ratio_from_gradient(kappa1: float, kappa2: float, r0: float = None, l: int = None) -> float:
    if abs(kappa1 + kappa2) <= 1e-12 * (abs(kappa1) + abs(kappa2)) or kappa1 == kappa2 == 0:
        raise DegenerateGradientException('Kernel gradient degenerates at r0={} for l={}: ({}, {})'.format(
            r0, l, kappa1, kappa2))
    return 1 + kappa1 / (2 * (kappa1 + kappa2))


def gradient_ratio(r0: float, l: int, R: float) -> float:
    return ratio_from_gradient(*kernel_gradient(r0, l, R), r0=r0, l=l)


class KernelReportRow(NamedTuple):
    l: int
    r0: float
    diagonal: float
    kappa1: float
    kappa2: float
    kappa1_closed: float
    kappa2_closed: float
    ratio: float


def kernel_report(l_max: int, R: float, r_m: float, r_M: float) -> List[KernelReportRow]:
    rows = []
    for l in range(1, l_max + 1):
        for r0 in diagonal_roots(l, R, r_m, r_M):
            kappa1, kappa2 = kernel_gradient(r0, l, R)
            closed = gradient_closed_form(r0, l, R)
            rows.append(KernelReportRow(l, r0, float(diagonal_values(r0, l, R)), kappa1, kappa2, closed[0],
                                        closed[1], ratio_from_gradient(kappa1, kappa2, r0, l)))
    logger.debug('Kernel report: {} diagonal roots for l <= {}'.format(len(rows), l_max))
    return rows


def render_report(rows: List[KernelReportRow]) -> str:
    lines = ['{:>4} {:>14} {:>12} {:>14} {:>14} {:>10}'.format('l', 'r0', 'K(r0,r0)', 'kappa1', 'kappa2', 'ratio')]
    for row in rows:
        lines.append('{:>4d} {:>14.10f} {:>12.3e} {:>14.6e} {:>14.6e} {:>10.6f}'.format(
            row.l, row.r0, row.diagonal, row.kappa1, row.kappa2, row.ratio))
    return '\n'.join(lines)


def write_report_csv(rows: List[KernelReportRow], path: str):
    with open(path, 'w', newline='') as stream:
        writer = csv.writer(stream)
        writer.writerow(KernelReportRow._fields)
        for row in rows:
            writer.writerow([row.l] + ['{:.17g}'.format(value) for value in row[1:]])
