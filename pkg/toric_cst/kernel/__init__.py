from typing import NamedTuple

from toric_cst.exceptions import DomainException


class KernelPoint(NamedTuple):
    """
    Evaluation point (p, r) of the Abel kernel of degree l
    """
    p: float
    r: float
    l: int

    def validate(self, R: float):
        if self.l < 0:
            raise DomainException('Kernel degree must be non-negative, got {}'.format(self.l))
        if not R <= self.r <= self.p:
            raise DomainException('Kernel needs R <= r <= p, got R={}, r={}, p={}'.format(R, self.r, self.p))
        if self.p <= R:
            raise DomainException('Kernel needs p > R={}, got {}'.format(R, self.p))
        return self


class QFactors(NamedTuple):
    Q1: float
    Q2: float
    Q3: float
    Q4: float
