import numpy as np

from toric_cst.harmonics import HarmonicStack
from toric_cst.projector import Volume


class ReconResult:
    """
    Reconstructed volume with the per-(l, m) solver diagnostics.

    ``residuals[l, m + N]`` holds ||A_l f_lm - g_lm||, NaN where |m| > l.
    """
    volume = None
    coefficients = None
    residuals = None
    lambdas = None
    timings = None

    def __init__(self, volume: Volume, coefficients: HarmonicStack, residuals: np.ndarray, lambdas, timings=None):
        self.volume = volume
        self.coefficients = coefficients
        self.residuals = residuals
        self.lambdas = list(lambdas)
        self.timings = timings or {}

    @property
    def lambda_(self) -> float:
        """
        Regularization weight, the first one when it varies with l
        """
        return self.lambdas[0]

    def __repr__(self):
        return '<ReconResult {} lambda={}>'.format(self.volume, self.lambda_)
