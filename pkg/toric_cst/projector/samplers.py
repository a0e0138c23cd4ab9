import numpy as np
from scipy import ndimage

from toric_cst.exceptions import ImproperlyConfiguredFieldException
from toric_cst.projector import Volume


class BaseSampler:
    """
    Reads a volume at arbitrary points. The voxel box spans half a spacing beyond the outer voxel centers
    """
    type = None
    order = None
    mode = None

    def __init__(self):
        if self.type is None:
            raise NotImplementedError('Attempted to instantiate abstract sampler class')

    def sample(self, volume: Volume, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        coordinates = volume.to_index(points.reshape(-1, 3))
        values = ndimage.map_coordinates(volume.values, coordinates, order=self.order, mode=self.mode, cval=0.0,
                                         prefilter=False)
        return self.clip(values, coordinates, volume).reshape(points.shape[:-1])

    def clip(self, values: np.ndarray, coordinates: np.ndarray, volume: Volume) -> np.ndarray:
        return values

    def __repr__(self):
        return '<{} sampler>'.format(self.type)


class TrilinearSampler(BaseSampler):
    """
    Outer voxels blend linearly into the zero background across the face shell
    """
    type: str = 'trilinear'
    order: int = 1
    mode: str = 'grid-constant'


class NearestSampler(BaseSampler):
    type: str = 'nearest'
    order: int = 0
    mode: str = 'nearest'

    def clip(self, values, coordinates, volume):
        upper = np.asarray(volume.dims, dtype=float).reshape(3, 1) - 0.5
        inside = np.all((coordinates >= -0.5) & (coordinates <= upper), axis=0)
        return np.where(inside, values, 0.0)


class SamplersManager:
    samplers = {
        TrilinearSampler.type: TrilinearSampler,
        NearestSampler.type: NearestSampler
    }

    @classmethod
    def get_sampler_by_type(cls, sampler_type: str) -> BaseSampler:
        """
        Returns sampler associated with the given type
        :param sampler_type:
        :return:
        """
        try:
            return cls.samplers[sampler_type]()
        except KeyError:
            raise ImproperlyConfiguredFieldException('"{}" sampler does not exist'.format(sampler_type))
