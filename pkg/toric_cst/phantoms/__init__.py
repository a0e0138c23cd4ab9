from typing import List, NamedTuple, Sequence

import numpy as np

from toric_cst.config import Section
from toric_cst.config.fields import ArrayField, IntegerField, NumberField, ObjectField, StringField
from toric_cst.config.model import SectionRecord
from toric_cst.exceptions import ConfigurationException

CUBE_SIDE = 1.0
DEFAULT_DIMS = 64


class Ball(NamedTuple):
    center: Sequence[float]
    radius: float
    intensity: float

    def contains(self, points: np.ndarray) -> np.ndarray:
        return np.sum((points - np.asarray(self.center)) ** 2, axis=-1) <= self.radius ** 2


class Crack(NamedTuple):
    """
    Axis-aligned slab of background intensity cut through one ball
    """
    ball: int
    axis: str
    position: float
    thickness: float

    def contains(self, points: np.ndarray) -> np.ndarray:
        coordinate = points[..., 'xyz'.index(self.axis)]
        return np.abs(coordinate - self.position) <= self.thickness / 2


_BALL_FIELDS = [
    ArrayField(name='center', item_field=NumberField(name='coordinate'), length=3),
    NumberField(name='radius', minimum=0, exclusive_minimum=True),
    NumberField(name='intensity')
]

PHANTOM_SECTION = Section(
    name='phantom',
    fields=[
        ArrayField(name='dims', item_field=IntegerField(name='count', minimum=1), length=3,
                   default=[DEFAULT_DIMS] * 3),
        ArrayField(name='origin', item_field=NumberField(name='coordinate'), length=3, optional=True),
        ArrayField(name='spacing', item_field=NumberField(name='step', minimum=0, exclusive_minimum=True), length=3,
                   optional=True),
        ArrayField(name='balls', item_field=ObjectField(name='ball', fields=_BALL_FIELDS), optional=True),
        ObjectField(name='crack', optional=True, fields=[
            IntegerField(name='ball', minimum=0),
            StringField(name='axis', default='z', choices=['x', 'y', 'z']),
            NumberField(name='position'),
            NumberField(name='thickness', minimum=0, exclusive_minimum=True)
        ])
    ]
)


class PhantomSpec(SectionRecord):
    """
    Balls and an optional crack on a voxel grid.

    Without explicit geometry the grid fills the cube of side 1 whose first voxel center sits at
    (1/n_x, 1/n_y, R); without balls the default two-ball layout is used (see PhantomFactory).
    """
    section = PHANTOM_SECTION

    dims: List[int]
    origin: List[float]
    spacing: List[float]
    balls: List[dict]
    crack: dict

    def validate(self):
        if self.crack is not None and self.balls is not None and self.crack['ball'] >= len(self.balls):
            raise ConfigurationException('Crack refers to ball {} of {}'.format(self.crack['ball'], len(self.balls)))

    def get_balls(self) -> List[Ball]:
        return [Ball(tuple(x['center']), x['radius'], x['intensity']) for x in self.balls or []]

    def get_crack(self):
        return Crack(**self.crack) if self.crack else None


NOISE_SECTION = Section(
    name='noise',
    fields=[
        NumberField(name='snr_db', optional=True),
        IntegerField(name='seed', optional=True)
    ]
)


class NoiseSpec(SectionRecord):
    """
    Additive white Gaussian noise at a prescribed signal-to-noise ratio; no snr_db means no noise
    """
    section = NOISE_SECTION

    snr_db: float
    seed: int

    def validate(self):
        if self.snr_db is not None and np.isnan(self.snr_db):
            raise ConfigurationException('snr_db must be a number')
