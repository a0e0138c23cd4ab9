import math

import numpy as np
import pytest
from hamcrest import *

from toric_cst.exceptions import MetricException, NoiseException, ShapeMismatchException
from toric_cst.harmonics import SphereGrid
from toric_cst.phantoms import Ball, Crack, NoiseSpec, PhantomSpec
from toric_cst.phantoms.factory import PhantomFactory
from toric_cst.phantoms.metrics import nmae, nmse, sample_spherical
from toric_cst.phantoms.noise import add_noise, make_generator
from toric_cst.projector import DataTensor, Volume


@pytest.fixture
def measurements():
    generator = make_generator(21)
    return DataTensor(np.linspace(0.2, 1.0, 6), np.linspace(0, 6, 5), np.linspace(0.1, 3, 4),
                      generator.random((6, 5, 4)))


def test_ball_and_crack_membership():
    ball = Ball((0.5, 0.5, 0.5), 0.2, 1.0)
    points = np.array([[0.5, 0.5, 0.5], [0.5, 0.5, 0.71], [0.69, 0.5, 0.5]])
    assert_that(ball.contains(points).tolist(), equal_to([True, False, True]))
    crack = Crack(0, 'y', 0.5, 0.02)
    assert_that(crack.contains(points).tolist(), equal_to([True, True, True]))
    assert_that(bool(crack.contains(np.array([0.5, 0.52, 0.5]))), equal_to(False))


def test_empty_phantom(scan):
    volume = PhantomFactory.factory(PhantomSpec(dims=[8, 8, 8], balls=[]), scan)
    assert_that(volume.dims, equal_to((8, 8, 8)))
    assert_that(bool(np.all(volume.values == 0)), equal_to(True))


def test_default_geometry(scan):
    origin, spacing = PhantomFactory.geometry(PhantomSpec(), scan)
    assert_that(np.allclose(spacing, 1 / 64), equal_to(True))
    assert_that(np.allclose(origin, [1 / 64, 1 / 64, scan.R]), equal_to(True))
    origin, spacing = PhantomFactory.geometry(PhantomSpec(origin=[0, 0, 0], spacing=[0.1, 0.2, 0.3]), scan)
    assert_that(origin.tolist(), equal_to([0, 0, 0]))
    assert_that(spacing.tolist(), equal_to([0.1, 0.2, 0.3]))


def test_ball_volume_is_resolved(scan):
    spec = PhantomSpec(balls=[{'center': [0.5, 0.5, 0.6], 'radius': 0.3, 'intensity': 2.0}])
    volume = PhantomFactory.factory(spec, scan)
    measured = np.count_nonzero(volume.values) * np.prod(volume.spacing)
    assert_that(float(measured), close_to(4 / 3 * math.pi * 0.3 ** 3, 0.05 * 4 / 3 * math.pi * 0.3 ** 3))
    assert_that(sorted(set(volume.values.ravel().tolist())), equal_to([0.0, 2.0]))


def test_default_phantom(scan):
    volume = PhantomFactory.factory(PhantomSpec(), scan)
    assert_that(volume.dims, equal_to((64, 64, 64)))
    assert_that(sorted(set(volume.values.ravel().tolist())), equal_to([0.0, 0.5, 1.0]))
    # the crack plane z = 0.55 cuts the white ball at its center
    ix, iy = int(round(0.68 * 64)) - 1, int(round(0.35 * 64)) - 1
    iz = int(round((0.55 - scan.R) * 64))
    assert_that(volume.values[ix, iy, iz], equal_to(0.0))
    assert_that(volume.values[ix, iy, iz + 4], equal_to(1.0))
    radii = np.linalg.norm(volume.voxel_centers(), axis=-1)
    assert_that(float(radii[volume.values != 0].min()), greater_than(scan.R))


def test_phantoms_manager(session):
    volume = session.phantoms.make()
    assert_that(volume.dims, equal_to((16, 16, 16)))
    assert_that(session.timings, has_key('phantoms'))
    target = session.phantoms.target()
    assert_that(np.array_equal(target.origin, volume.origin), equal_to(True))
    assert_that(bool(np.all(target.values == 0)), equal_to(True))


def test_noise_level(measurements):
    noisy, epsilon = add_noise(measurements, NoiseSpec(snr_db=20, seed=3))
    assert_that(epsilon, close_to(10.0, 1e-9))
    noise = noisy.values - measurements.values
    snr = 20 * math.log10(np.linalg.norm(measurements.values) / np.linalg.norm(noise))
    assert_that(snr, close_to(20.0, 1e-9))
    assert_that(add_noise(measurements, NoiseSpec(snr_db=30, seed=3))[1], close_to(100 * 10 ** -1.5, 1e-9))


def test_noise_is_reproducible(measurements):
    first, _ = add_noise(measurements, NoiseSpec(snr_db=10, seed=8))
    second, _ = add_noise(measurements, NoiseSpec(snr_db=10, seed=8))
    other, _ = add_noise(measurements, NoiseSpec(snr_db=10, seed=9))
    assert_that(np.array_equal(first.values, second.values), equal_to(True))
    assert_that(np.array_equal(first.values, other.values), equal_to(False))


def test_noise_edge_cases(measurements):
    clean, epsilon = add_noise(measurements, NoiseSpec(snr_db=float('inf'), seed=1))
    assert_that(epsilon, equal_to(0.0))
    assert_that(np.array_equal(clean.values, measurements.values), equal_to(True))
    assert_that(clean.values, is_not(same_instance(measurements.values)))
    with pytest.raises(NoiseException):
        add_noise(measurements.like(np.zeros(measurements.shape)), NoiseSpec(snr_db=20, seed=1))


def test_noise_manager_uses_the_configured_seed(session, measurements):
    noisy, epsilon = session.phantoms.noise(measurements)
    assert_that(epsilon, close_to(10.0, 1e-9))
    expected, _ = add_noise(measurements, NoiseSpec(snr_db=20, seed=session.config.scan.seed))
    assert_that(np.array_equal(noisy.values, expected.values), equal_to(True))


def test_metrics():
    f = np.random.Generator(np.random.PCG64(2)).random((4, 5, 6)) + 0.5
    peak = float(np.abs(f).max())
    assert_that(nmse(f, f), equal_to(0.0))
    assert_that(nmae(f, f), equal_to(0.0))
    assert_that(nmse(f, f + peak), close_to(100.0, 1e-9))
    assert_that(nmae(f, f - peak), close_to(100.0, 1e-9))
    volume = Volume([0] * 3, [1] * 3, values=f)
    assert_that(nmse(volume, volume.like(f + peak)), close_to(100.0, 1e-9))


def test_metric_failures():
    with pytest.raises(MetricException):
        nmse(np.zeros((2, 2, 2)), np.ones((2, 2, 2)))
    with pytest.raises(ShapeMismatchException):
        nmae(np.ones((2, 2, 2)), np.ones((2, 2, 3)))


def test_spherical_sampling_of_a_constant():
    volume = Volume([-1.0] * 3, [0.1] * 3, values=np.full((21, 21, 21), 3.0))
    grid = SphereGrid(3)
    samples = sample_spherical(volume, [0.2, 0.5, 0.9], grid)
    assert_that(samples.shape, equal_to((3,) + grid.shape))
    assert_that(np.allclose(samples, 3.0, rtol=0, atol=1e-12), equal_to(True))
