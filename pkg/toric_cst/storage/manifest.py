import datetime
import json
import logging

from toric_cst.config import Section
from toric_cst.config.fields import ArrayField, DateTimeField, IntegerField, ObjectField, StringField
from toric_cst.config.model import SectionRecord

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = '.manifest.json'

MANIFEST_SECTION = Section(
    name='manifest',
    fields=[
        StringField(name='stage'),
        StringField(name='version'),
        DateTimeField(name='created_at'),
        ObjectField(name='config', optional=True),
        StringField(name='config_hash', optional=True),
        ArrayField(name='inputs', item_field=StringField(name='path'), default=[]),
        ArrayField(name='outputs', item_field=StringField(name='path'), default=[]),
        ObjectField(name='rng', optional=True, fields=[
            StringField(name='algorithm'),
            IntegerField(name='seed')
        ]),
        ObjectField(name='timings', default={}),
        ObjectField(name='results', optional=True)
    ]
)


class RunManifest(SectionRecord):
    """
    Provenance of one command line stage, stored beside each of its outputs
    """
    section = MANIFEST_SECTION

    stage: str
    version: str
    created_at: datetime.datetime
    config: dict
    config_hash: str
    inputs: list
    outputs: list
    rng: dict
    timings: dict
    results: dict

    @staticmethod
    def path_for(output_path: str) -> str:
        return output_path + MANIFEST_SUFFIX

    def write(self, output_path: str) -> str:
        path = self.path_for(output_path)
        with open(path, 'w') as stream:
            json.dump(self.serialize(), stream, indent=2, sort_keys=True)
        logger.debug('Wrote manifest {}'.format(path))
        return path

    @classmethod
    def read(cls, output_path: str) -> 'RunManifest':
        with open(cls.path_for(output_path)) as stream:
            return cls(**json.load(stream))
