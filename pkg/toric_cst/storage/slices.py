"""
Export of one plane of a volume or data tensor: 16-bit binary PGM with a JSON sidecar holding the
min-max scaling, or CSV of the raw values.
"""
import json
import logging

import numpy as np

from toric_cst.exceptions import DomainException
from toric_cst.projector import DataTensor, Volume

logger = logging.getLogger(__name__)

PGM_MAXVAL = 65535
SCALING_SUFFIX = '.scaling.json'


class SLICE_FORMAT:
    PGM = 'pgm'
    CSV = 'csv'


def take_slice(source, axis: int, index: int) -> np.ndarray:
    values = source.values if isinstance(source, (Volume, DataTensor)) else np.asarray(source, dtype=float)
    if not 0 <= axis < values.ndim:
        raise DomainException('Axis {} out of range for {} dimensions'.format(axis, values.ndim))
    if not 0 <= index < values.shape[axis]:
        raise DomainException('Index {} out of range [0, {})'.format(index, values.shape[axis]))
    return np.take(values, index, axis=axis)


def write_pgm(path: str, plane: np.ndarray) -> dict:
    """
    :return: the scaling, value = minimum + level * (maximum - minimum) / 65535
    """
    minimum, maximum = float(plane.min()), float(plane.max())
    span = maximum - minimum
    levels = np.zeros(plane.shape) if span == 0 else (plane - minimum) / span * PGM_MAXVAL
    levels = np.round(levels).astype('>u2')
    # rows of the image follow the second array axis
    image = levels.T
    with open(path, 'wb') as stream:
        stream.write('P5\n{} {}\n{}\n'.format(image.shape[1], image.shape[0], PGM_MAXVAL).encode('ascii'))
        stream.write(np.ascontiguousarray(image).tobytes())
    scaling = {'minimum': minimum, 'maximum': maximum, 'maxval': PGM_MAXVAL, 'transposed': True}
    with open(path + SCALING_SUFFIX, 'w') as stream:
        json.dump(scaling, stream, indent=2)
    return scaling


def read_pgm(path: str) -> np.ndarray:
    """
    Raw 16-bit levels in the orientation they were sliced in
    """
    with open(path, 'rb') as stream:
        content = stream.read()
    tokens, offset = [], 0
    while len(tokens) < 4:
        while content[offset:offset + 1].isspace():
            offset += 1
        end = offset
        while not content[end:end + 1].isspace():
            end += 1
        tokens.append(content[offset:end].decode('ascii'))
        offset = end
    if tokens[0] != 'P5':
        raise DomainException('{} is not a binary PGM file'.format(path))
    width, height = int(tokens[1]), int(tokens[2])
    image = np.frombuffer(content, dtype='>u2', count=width * height, offset=offset + 1).reshape(height, width)
    return image.T.astype(np.uint16)


def write_csv(path: str, plane: np.ndarray):
    np.savetxt(path, plane, fmt='%.17g', delimiter=',')


def read_csv(path: str) -> np.ndarray:
    return np.loadtxt(path, delimiter=',', ndmin=2)


def slice_export(source, axis: int, index: int, path: str, fmt: str = SLICE_FORMAT.PGM):
    plane = take_slice(source, axis, index)
    if fmt == SLICE_FORMAT.PGM:
        write_pgm(path, plane)
    elif fmt == SLICE_FORMAT.CSV:
        write_csv(path, plane)
    else:
        raise DomainException('Unknown slice format "{}"'.format(fmt))
    logger.info('Exported slice {} along axis {} to {}'.format(index, axis, path))
    return plane
