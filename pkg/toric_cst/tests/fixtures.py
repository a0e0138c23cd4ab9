import json

import numpy as np
import pytest

from toric_cst.config.loader import ConfigLoader
from toric_cst.geometry import ScanConfig
from toric_cst.projector import Volume
from toric_cst.session import Session

SMALL_SCAN = {
    'R': 0.125,
    'r_m': 0.5,
    'r_M': 1.2,
    'N': 4,
    'N_beta': 5,
    'N_p': 16,
    'N_gamma': 8,
    'N_psi': 16
}


@pytest.fixture
def scan():
    return ScanConfig(**SMALL_SCAN)


@pytest.fixture
def document():
    return {
        'scan': dict(SMALL_SCAN),
        'phantom': {'dims': [16, 16, 16]},
        'noise': {'snr_db': 20},
        'recon': {}
    }


@pytest.fixture
def run_config(document):
    return ConfigLoader.load(document)


@pytest.fixture
def session(run_config, tmp_path):
    return Session(run_config, threads=2, cache_dir=str(tmp_path / 'cache'))


@pytest.fixture
def config_path(document, tmp_path):
    path = tmp_path / 'run.json'
    path.write_text(json.dumps(document))
    return str(path)


@pytest.fixture
def centered_volume():
    """
    24^3 grid centered on the origin with spacing 0.1, covering [-1.15, 1.15]^3
    """
    return Volume(origin=[-1.15] * 3, spacing=[0.1] * 3, dims=[24, 24, 24])


def radial_bump(r, inner=0.4, outer=0.9):
    """
    sin^2 bump supported on [inner, outer], continuously differentiable
    """
    r = np.asarray(r, dtype=float)
    inside = (r >= inner) & (r <= outer)
    return np.where(inside, np.sin(np.pi * (r - inner) / (outer - inner)) ** 2, 0.0)
