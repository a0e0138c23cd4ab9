class COMMAND_STAGE:
    PHANTOM = 'phantom'
    PROJECT = 'project'
    NOISE = 'noise'
    BUILD_MATRICES = 'build-matrices'
    RECONSTRUCT = 'reconstruct'
    METRICS = 'metrics'
    KERNEL_CHECK = 'kernel-check'
    SHT_ROUNDTRIP = 'sht-roundtrip'
    SLICE = 'slice'

    @classmethod
    def get_available_stages(cls):
        return [value for key, value in cls.__dict__.items() if not key.startswith('__') and isinstance(value, str)]


class Command:
    name: str
    stage: str

    def __init__(self, name: str, stage: str, func):
        assert stage in COMMAND_STAGE.get_available_stages(), 'Stage must be one of the COMMAND_STAGE`s attribute'
        self.name = name
        self.stage = stage
        self.func = func

    def run(self, *args, **kwargs):
        return self.func(*args, **kwargs)

    def __repr__(self):
        return '<Command name="{}" stage="{}">'.format(self.name, self.stage)
