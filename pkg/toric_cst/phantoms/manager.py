from toric_cst.command import Command, COMMAND_STAGE
from toric_cst.phantoms import NoiseSpec, PhantomSpec
from toric_cst.phantoms.factory import PhantomFactory
from toric_cst.phantoms.noise import add_noise
from toric_cst.projector import DataTensor, Volume


class PhantomsManager:
    _base_command_name = 'phantoms'

    def __init__(self, session):
        self.session = session

    def make(self, spec: PhantomSpec = None) -> Volume:
        """
        Voxelizes the phantom section of the session configuration
        :param spec: replaces the configured phantom
        """
        return self.session.execute(
            Command(name=self._base_command_name, stage=COMMAND_STAGE.PHANTOM, func=PhantomFactory.factory),
            spec or self.session.config.phantom, self.session.config.scan
        )

    def target(self) -> Volume:
        """
        Empty volume on the phantom grid, the default output geometry of reconstructions
        """
        spec = self.session.config.phantom
        origin, spacing = PhantomFactory.geometry(spec, self.session.config.scan)
        return Volume(origin, spacing, dims=spec.dims)

    def noise(self, data: DataTensor, spec: NoiseSpec = None):
        """
        :return: noisy data and the relative noise level epsilon in percent
        """
        return self.session.execute(
            Command(name='noise', stage=COMMAND_STAGE.NOISE, func=add_noise),
            data, spec or self.session.config.noise
        )
