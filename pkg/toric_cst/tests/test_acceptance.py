"""
Desk-scale end-to-end runs, excluded by default; run with `pytest -m slow`.
"""
import numpy as np
import pytest
from hamcrest import *

from toric_cst.config.loader import ConfigLoader
from toric_cst.geometry import ScanConfig
from toric_cst.harmonics.legendre import ylm
from toric_cst.harmonics.transform import dsht
from toric_cst.phantoms import Ball, NoiseSpec
from toric_cst.phantoms.factory import PhantomFactory
from toric_cst.phantoms.metrics import nmae, nmse
from toric_cst.projector import Volume
from toric_cst.projector.operations import coeff_forward_1d, project
from toric_cst.session import Session
from toric_cst.tests.fixtures import SMALL_SCAN, radial_bump

pytestmark = pytest.mark.slow

DESK_SCAN = {
    'R': 0.125,
    'r_m': 0.3,
    'r_M': 0.9,
    'r_M_star': 1.0,
    'N': 4,
    'N_beta': 5,
    'N_p': 32,
    'N_gamma': 32,
    'N_psi': 64,
    'lambda': 1e-4
}


@pytest.fixture(scope='module')
def desk():
    config = ConfigLoader.load({'scan': dict(DESK_SCAN), 'phantom': {'dims': [48, 48, 48]}})
    session = Session(config, threads=4)
    volume = Volume(origin=[-1.0] * 3, spacing=[2 / 47] * 3, dims=[48, 48, 48])
    radii = np.linalg.norm(volume.voxel_centers(), axis=-1)
    volume = volume.like(radial_bump(radii, 0.35, 0.85))
    data = session.projections.project(volume)
    matrices = session.matrices.build()
    shell = (radii >= 0.35) & (radii <= 0.85)
    return session, volume, data, matrices, shell


def _shell_nmse(session, volume, data, matrices, shell):
    result = session.reconstructions.reconstruct(data, matrices, target=volume.like(np.zeros(volume.dims)))
    return nmse(volume.values[shell], result.volume.values[shell])


def test_noise_free_reconstruction(desk):
    session, volume, data, matrices, shell = desk
    assert_that(_shell_nmse(session, volume, data, matrices, shell), less_than(10.0))


def test_error_grows_with_the_noise_level(desk):
    session, volume, data, matrices, shell = desk
    errors = []
    for snr_db in (40, 10):
        noisy, _ = session.phantoms.noise(data, NoiseSpec(snr_db=snr_db, seed=1))
        errors.append(_shell_nmse(session, volume, noisy, matrices, shell))
    assert_that(errors[1], greater_than(errors[0]))


def test_single_harmonic_projects_onto_its_degree():
    scan = ScanConfig(R=0.125, r_m=0.4, r_M=0.9, r_M_star=1.0, N=8, N_beta=9, N_p=8, N_gamma=32, N_psi=64)
    volume = Volume(origin=[-1.0] * 3, spacing=[2 / 95] * 3, dims=[96, 96, 96])
    centers = volume.voxel_centers()
    radii = np.linalg.norm(centers, axis=-1)
    polar = np.arccos(np.clip(centers[..., 2] / np.maximum(radii, 1e-12), -1, 1))
    azimuth = np.arctan2(centers[..., 1], centers[..., 0])
    volume = volume.like(radial_bump(radii, 0.4, 0.9) * ylm((5, 2), polar, azimuth).real)
    g = dsht(project(volume, scan, threads=4).sphere_samples(), scan.sphere_grid)
    # Re Y_5^2 = (Y_5^2 + Y_5^-2) / 2
    expected = coeff_forward_1d(lambda r: radial_bump(r, 0.4, 0.9) / 2, 5, scan.p_grid, scan)
    peak = float(np.max(np.abs(expected)))
    N = scan.N
    for m in (2, -2):
        assert_that(float(np.max(np.abs(g[:, 5, N + m] - expected))), less_than(0.015 * peak))
    g[:, 5, N + 2] = g[:, 5, N - 2] = 0
    assert_that(float(np.max(np.abs(g))), less_than(1e-3 * peak))


TWO_BALL_SCAN = dict(SMALL_SCAN, N=24, N_beta=25, N_p=96, N_gamma=32, N_psi=64)


@pytest.fixture(scope='module')
def two_balls():
    session = Session(ConfigLoader.load({'scan': dict(TWO_BALL_SCAN), 'phantom': {'dims': [32, 32, 32]}}), threads=4)
    phantom = session.phantoms.make()
    return session, phantom, session.projections.project(phantom), session.matrices.build()


def test_two_ball_reconstruction(two_balls):
    session, phantom, data, matrices = two_balls
    result = session.reconstructions.reconstruct(data, matrices)
    assert_that(nmse(phantom, result.volume), less_than(3.5))
    assert_that(nmae(phantom, result.volume), less_than(10.5))
    # z = R + 12 / 32 = 0.5 crosses the gray ball below its core and the white ball below the crack
    k = 12
    centers = phantom.voxel_centers()[:, :, k]
    gray, white = PhantomFactory.default_balls[0], PhantomFactory.default_balls[2]
    inner_gray = Ball(gray.center, gray.radius - 0.06, gray.intensity).contains(centers)
    inner_white = Ball(white.center, white.radius - 0.06, white.intensity).contains(centers)
    assert_that(int(inner_gray.sum()), greater_than(4))
    assert_that(int(inner_white.sum()), greater_than(4))
    reconstructed = result.volume.values[:, :, k]
    counts, _ = np.histogram(reconstructed[inner_gray | inner_white], bins=[0.25, 0.75, 1.25])
    assert_that(counts[0], greater_than_or_equal_to(int(inner_gray.sum()) // 2))
    assert_that(counts[1], greater_than_or_equal_to(int(inner_white.sum()) // 2))
    assert_that(float(np.median(reconstructed[inner_white]) - np.median(reconstructed[inner_gray])),
                greater_than(0.25))


def test_two_ball_error_grows_as_the_snr_drops(two_balls):
    session, phantom, data, matrices = two_balls
    document = {'scan': dict(TWO_BALL_SCAN, **{'lambda': 0.05}), 'phantom': {'dims': [32, 32, 32]}}
    regularized = Session(ConfigLoader.load(document), threads=4)
    errors = []
    for snr_db in (30, 20, 10):
        trials = []
        for seed in (1, 2, 3):
            noisy, epsilon = regularized.phantoms.noise(data, NoiseSpec(snr_db=snr_db, seed=seed))
            assert_that(epsilon, close_to(100 * 10 ** (-snr_db / 20), 1e-6))
            trials.append(nmse(phantom, regularized.reconstructions.reconstruct(noisy, matrices).volume))
        errors.append(np.mean(trials))
    assert_that(errors[1], greater_than_or_equal_to(errors[0]))
    assert_that(errors[2], greater_than_or_equal_to(errors[1]))
