from typing import Sequence

from toric_cst.command import Command, COMMAND_STAGE
from toric_cst.projector import DataTensor, Volume
from toric_cst.reconstruct import ReconResult
from toric_cst.reconstruct.pipeline import lcurve_all, reconstruct
from toric_cst.system import KernelMatrixSet


class ReconstructionsManager:
    _base_command_name = 'reconstructions'

    def __init__(self, session):
        self.session = session

    def reconstruct(self, data: DataTensor, matrices: KernelMatrixSet = None, target: Volume = None) -> ReconResult:
        """
        Inverts the data with the session scan and regularization settings
        :param matrices: built through the matrices manager when not given
        :param target: output geometry, the phantom grid by default
        """
        config = self.session.config
        matrices = matrices or self.session.matrices.build()
        return self.session.execute(
            Command(name=self._base_command_name, stage=COMMAND_STAGE.RECONSTRUCT, func=reconstruct),
            data, matrices, config.scan, target=target or self.session.phantoms.target(),
            threads=self.session.threads, lambda_per_l=config.recon.lambda_per_l
        )

    def lcurve(self, data: DataTensor, matrices: KernelMatrixSet, lambdas: Sequence[float]):
        return self.session.execute(
            Command(name='lcurve', stage=COMMAND_STAGE.RECONSTRUCT, func=lcurve_all),
            data, matrices, self.session.config.scan, lambdas
        )
