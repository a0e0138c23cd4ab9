FORMAT_VERSION = 1


class FILE_KIND:
    VOLUME = b'T3VOL'
    DATA = b'T3DAT'
    HARMONICS = b'T3SHS'
    MATRIX_SET = b'T3KMS'
    MATRIX = b'T3MAT'

    @classmethod
    def get_available_kinds(cls):
        return [value for key, value in cls.__dict__.items() if not key.startswith('__') and isinstance(value, bytes)]
