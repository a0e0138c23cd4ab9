import hashlib
import json
import logging

from toric_cst.config import Section
from toric_cst.config.fields import ArrayField, NumberField
from toric_cst.config.model import SectionRecord
from toric_cst.exceptions import ConfigurationException, UnknownConfigKeyException

logger = logging.getLogger(__name__)

RECON_SECTION = Section(
    name='recon',
    fields=[
        NumberField(name='lambda', optional=True, minimum=0),
        ArrayField(name='lambda_per_l', item_field=NumberField(name='lambda', minimum=0), optional=True),
        ArrayField(name='lcurve_lambdas', item_field=NumberField(name='lambda', minimum=0), optional=True)
    ]
)


class ReconConfig(SectionRecord):
    """
    Overrides of the scan regularization: a single weight or one weight per degree l
    """
    section = RECON_SECTION

    lambda_: float
    lambda_per_l: list
    lcurve_lambdas: list


class RunConfig:
    """
    The four sections of a run configuration document
    """
    scan = None
    phantom = None
    noise = None
    recon = None

    def __init__(self, scan, phantom=None, noise=None, recon=None):
        from toric_cst.phantoms import NoiseSpec, PhantomSpec
        self.scan = scan
        self.phantom = phantom or PhantomSpec()
        self.noise = noise or NoiseSpec()
        self.recon = recon or ReconConfig()
        if self.recon.lambda_ is not None:
            self.scan.lambda_ = self.recon.lambda_
        if self.noise.seed is None:
            # every random draw follows the scan seed unless the noise section sets its own
            self.noise.seed = self.scan.seed
        if self.recon.lambda_per_l is not None and len(self.recon.lambda_per_l) != self.scan.N + 1:
            raise ConfigurationException('recon.lambda_per_l needs N + 1 = {} values, got {}'.format(
                self.scan.N + 1, len(self.recon.lambda_per_l)))

    def serialize(self) -> dict:
        return {
            'scan': self.scan.serialize(),
            'phantom': self.phantom.serialize(),
            'noise': self.noise.serialize(),
            'recon': self.recon.serialize()
        }

    @property
    def hash(self) -> str:
        return ConfigLoader.hash(self.serialize())

    def __repr__(self):
        return '<RunConfig {}>'.format(self.hash[:12])


class ConfigLoader:
    sections = ('scan', 'phantom', 'noise', 'recon')

    @staticmethod
    def hash(document: dict) -> str:
        """
        sha256 of the canonical JSON text of a configuration document
        """
        canonical = json.dumps(document, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @classmethod
    def load(cls, document: dict) -> RunConfig:
        """
        Builds a run configuration from a parsed JSON document
        :param document: mapping with "scan" and optional "phantom", "noise", "recon" sections
        """
        from toric_cst.geometry import ScanConfig
        from toric_cst.phantoms import NoiseSpec, PhantomSpec
        if not isinstance(document, dict):
            raise ConfigurationException('Configuration must be a JSON object')
        unknown = set(document) - set(cls.sections)
        if unknown:
            raise UnknownConfigKeyException('Unknown configuration sections: {}'.format(sorted(unknown)))
        if 'scan' not in document:
            raise ConfigurationException('Configuration lacks the "scan" section')
        for name in cls.sections:
            if not isinstance(document.get(name, {}), dict):
                raise ConfigurationException('"{}" section must be a JSON object'.format(name))
        config = RunConfig(
            scan=ScanConfig(**document['scan']),
            phantom=PhantomSpec(**document.get('phantom', {})),
            noise=NoiseSpec(**document.get('noise', {})),
            recon=ReconConfig(**document.get('recon', {}))
        )
        logger.debug('Loaded configuration {}'.format(config))
        return config

    @classmethod
    def load_file(cls, path: str):
        """
        :return: the run configuration and the sha256 hash of the document as read
        """
        with open(path) as stream:
            try:
                document = json.load(stream)
            except ValueError as e:
                raise ConfigurationException('{} is not valid JSON: {}'.format(path, e))
        return cls.load(document), cls.hash(document)
