import logging

import numpy as np

from toric_cst.geometry import ScanConfig
from toric_cst.phantoms import Ball, CUBE_SIDE, Crack, PhantomSpec
from toric_cst.projector import Volume

logger = logging.getLogger(__name__)


class PhantomFactory:
    # gray ball holding a brighter core, white ball crossed by a crack
    default_balls = [
        Ball(center=(0.30, 0.62, 0.60), radius=0.20, intensity=0.5),
        Ball(center=(0.30, 0.62, 0.60), radius=0.08, intensity=0.5),
        Ball(center=(0.68, 0.35, 0.55), radius=0.22, intensity=1.0)
    ]

    @classmethod
    def default_crack(cls, spacing: float) -> Crack:
        return Crack(ball=2, axis='z', position=0.55, thickness=2 * spacing)

    @classmethod
    def geometry(cls, spec: PhantomSpec, scan: ScanConfig):
        """
        Origin and spacing of the grid, the unit cube starting at (1/n_x, 1/n_y, R) unless given
        """
        dims = np.asarray(spec.dims, dtype=float)
        spacing = np.asarray(spec.spacing, dtype=float) if spec.spacing else CUBE_SIDE / dims
        if spec.origin:
            origin = np.asarray(spec.origin, dtype=float)
        else:
            origin = np.array([spacing[0], spacing[1], scan.R])
        return origin, spacing

    @classmethod
    def factory(cls, spec: PhantomSpec, scan: ScanConfig) -> Volume:
        """
        Sum of the intensities of the balls holding each voxel center, with the crack slab reset to zero
        :param spec:
        :param scan: provides R and the inner support radius r_m
        """
        origin, spacing = cls.geometry(spec, scan)
        volume = Volume(origin, spacing, dims=spec.dims)
        if spec.balls is None:
            balls, crack = cls.default_balls, cls.default_crack(float(spacing[2]))
        else:
            balls, crack = spec.get_balls(), spec.get_crack()
        centers = volume.voxel_centers()
        values = np.zeros(volume.dims)
        for ball in balls:
            values[ball.contains(centers)] += ball.intensity
        if crack is not None:
            values[balls[crack.ball].contains(centers) & crack.contains(centers)] = 0.0
        radii = np.linalg.norm(centers, axis=-1)
        if np.any((values != 0) & (radii < scan.r_m)):
            logger.warning('Phantom support reaches r={:.4f} below r_m={}'.format(
                float(radii[values != 0].min()), scan.r_m))
        logger.debug('Phantom {} with {} balls, {} nonzero voxels'.format(volume, len(balls),
                                                                          int(np.count_nonzero(values))))
        return volume.like(values)
