import logging
import os
import time
from collections import OrderedDict

import numpy as np

from toric_cst import log  # noqa: F401 attaches the package handler
from toric_cst.command import Command
from toric_cst.config.loader import RunConfig
from toric_cst.exceptions import CommandExecutionFailureException
from toric_cst.phantoms.manager import PhantomsManager
from toric_cst.projector.manager import ProjectionsManager
from toric_cst.reconstruct.manager import ReconstructionsManager
from toric_cst.system.manager import MatricesManager

logger = logging.getLogger(__name__)


class Session:
    _phantoms_manager_class = PhantomsManager
    _projections_manager_class = ProjectionsManager
    _matrices_manager_class = MatricesManager
    _reconstructions_manager_class = ReconstructionsManager

    config = None
    threads = None
    cache_dir = None

    def __init__(self, config: RunConfig, threads: int = None, cache_dir: str = None):
        self.config = config
        self.threads = max(1, threads or int(os.environ.get('TORIC_CST_THREADS', 0)) or os.cpu_count() or 1)
        self.cache_dir = cache_dir or os.environ.get('TORIC_CST_CACHE_DIR') or None
        self.timings = OrderedDict()
        self.phantoms = self._phantoms_manager_class(self)
        self.projections = self._projections_manager_class(self)
        self.matrices = self._matrices_manager_class(self)
        self.reconstructions = self._reconstructions_manager_class(self)

    def execute(self, command: Command, *args, **kwargs):
        """
        Runs one pipeline stage and records its wall-clock time under the command name
        :param command:
        """
        logger.info('Running {}'.format(command))
        started = time.perf_counter()
        try:
            return command.run(*args, **kwargs)
        except (ArithmeticError, ValueError, np.linalg.LinAlgError) as e:
            raise CommandExecutionFailureException('{} failed: {}'.format(command, e)) from e
        finally:
            elapsed = time.perf_counter() - started
            self.timings[command.name] = self.timings.get(command.name, 0.0) + elapsed
            logger.debug('{} took {:.3f}s'.format(command, elapsed))

    def __repr__(self):
        return '<Session {} threads={}>'.format(self.config, self.threads)
