from toric_cst.command import Command, COMMAND_STAGE
from toric_cst.projector import DataTensor, Volume
from toric_cst.projector.operations import project


class ProjectionsManager:
    _base_command_name = 'projections'

    def __init__(self, session):
        self.session = session

    def project(self, volume: Volume, true_surface: bool = False) -> DataTensor:
        """
        Simulates the toric projections of the volume on the session scan grids
        :param volume:
        :param true_surface: geometric surface integrals instead of the kernel normalization
        """
        return self.session.execute(
            Command(name=self._base_command_name, stage=COMMAND_STAGE.PROJECT, func=project),
            volume, self.session.config.scan, threads=self.session.threads, true_surface=true_surface
        )
