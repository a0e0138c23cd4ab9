import logging

import numpy as np

from toric_cst.exceptions import NoiseException
from toric_cst.phantoms import NoiseSpec
from toric_cst.projector import DataTensor

logger = logging.getLogger(__name__)

RNG_ALGORITHM = 'PCG64'


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def add_noise(data: DataTensor, spec: NoiseSpec):
    """
    Adds zero-mean Gaussian noise rescaled so that 10 log10(||g||^2 / ||n||^2) equals snr_db for the drawn sample
    :return: noisy data and epsilon = 100 ||n|| / ||g|| in percent
    """
    signal = float(np.linalg.norm(data.values))
    if signal == 0:
        raise NoiseException('Signal-to-noise ratio is undefined for all-zero data')
    if spec.snr_db is None or np.isposinf(spec.snr_db):
        return data.like(data.values.copy()), 0.0
    noise = make_generator(0 if spec.seed is None else spec.seed).standard_normal(data.shape)
    noise *= signal / (np.linalg.norm(noise) * 10 ** (spec.snr_db / 20))
    epsilon = 100 * float(np.linalg.norm(noise)) / signal
    logger.info('Added noise at SNR {} dB (seed {}), epsilon={:.4f}%'.format(spec.snr_db, spec.seed, epsilon))
    return data.like(data.values + noise), epsilon
