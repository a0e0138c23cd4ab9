import hashlib
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from toric_cst.command import Command, COMMAND_STAGE
from toric_cst.exceptions import FileFormatException
from toric_cst.geometry import ScanConfig
from toric_cst.storage import FORMAT_VERSION
from toric_cst.storage.formats import read_matrix, write_matrix
from toric_cst.system import KernelMatrixSet
from toric_cst.system.assembly import assemble

logger = logging.getLogger(__name__)


class MatricesManager:
    _base_command_name = 'matrices'

    def __init__(self, session):
        self.session = session

    @staticmethod
    def cache_key(config: ScanConfig, l: int) -> str:
        """
        Digest of everything the entries of A_l depend on
        """
        identity = [config.R, config.M, config.r_M_star, l, config.kernel_average, FORMAT_VERSION]
        return hashlib.sha256(json.dumps(identity).encode('utf-8')).hexdigest()

    def _get_cache_path(self, config: ScanConfig, l: int):
        if not self.session.cache_dir:
            return None
        return os.path.join(self.session.cache_dir, 'A_{}_{}.t3m'.format(l, self.cache_key(config, l)[:16]))

    def _load(self, path: str, config: ScanConfig, l: int):
        try:
            header, matrix = read_matrix(path)
        except (OSError, FileFormatException) as e:
            logger.warning('Ignoring unreadable matrix cache {}: {}'.format(path, e))
            return None
        expected = {'R': config.R, 'M': config.M, 'r_M_star': config.r_M_star, 'l': l,
                    'kernel_average': config.kernel_average}
        if any(header.get(key) != value for key, value in expected.items()):
            logger.warning('Matrix cache {} does not match the scan, reassembling'.format(path))
            return None
        return matrix

    def get(self, config: ScanConfig, l: int) -> np.ndarray:
        """
        Returns A_l from the cache directory, assembling and storing it when missing
        :param config:
        :param l:
        """
        path = self._get_cache_path(config, l)
        if path and os.path.exists(path):
            matrix = self._load(path, config, l)
            if matrix is not None:
                logger.debug('Matrix cache hit for l={}: {}'.format(l, path))
                return matrix
        matrix = assemble(l, config)
        if path:
            os.makedirs(self.session.cache_dir, exist_ok=True)
            partial = '{}.{}.partial'.format(path, os.getpid())
            write_matrix(partial, matrix, config.R, config.r_M_star, l, config.kernel_average)
            os.replace(partial, path)
        return matrix

    def _build(self, config: ScanConfig) -> KernelMatrixSet:
        with ThreadPoolExecutor(max_workers=self.session.threads) as executor:
            matrices = list(executor.map(lambda l: self.get(config, l), range(config.N + 1)))
        return KernelMatrixSet(config.R, config.r_M_star, np.stack(matrices), kernel_average=config.kernel_average)

    def build(self, config: ScanConfig = None) -> KernelMatrixSet:
        """
        Assembles A_0..A_N for the scan
        :param config: defaults to the session scan
        """
        return self.session.execute(
            Command(name=self._base_command_name, stage=COMMAND_STAGE.BUILD_MATRICES, func=self._build),
            config or self.session.config.scan
        )
