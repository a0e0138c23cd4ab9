"""
Binary containers of the pipeline artifacts.

Layout: 5 magic bytes, uint32 LE format version, uint32 LE header length, UTF-8 JSON header,
then the payload as little-endian 64-bit floats (complex payloads as '<c16'), C order.
"""
import json
import logging
import struct

import numpy as np

from toric_cst.exceptions import FileFormatException, FormatVersionException
from toric_cst.harmonics import HarmonicStack
from toric_cst.projector import DataTensor, Volume
from toric_cst.storage import FILE_KIND, FORMAT_VERSION
from toric_cst.system import KernelMatrixSet

logger = logging.getLogger(__name__)

_PREAMBLE = struct.Struct('<II')


def write_container(path: str, kind: bytes, header: dict, arrays):
    header = dict(header, endianness='little', version=FORMAT_VERSION)
    encoded = json.dumps(header, sort_keys=True).encode('utf-8')
    with open(path, 'wb') as stream:
        stream.write(kind)
        stream.write(_PREAMBLE.pack(FORMAT_VERSION, len(encoded)))
        stream.write(encoded)
        for array in arrays:
            array = np.asarray(array)
            dtype = '<c16' if np.iscomplexobj(array) else '<f8'
            stream.write(np.ascontiguousarray(array, dtype=dtype).tobytes())
    logger.debug('Wrote {} file {}'.format(kind.decode(), path))


def read_container(path: str, kind: bytes):
    """
    :return: JSON header and the raw payload bytes
    """
    with open(path, 'rb') as stream:
        content = stream.read()
    if len(content) < len(kind) + _PREAMBLE.size or content[:len(kind)] != kind:
        raise FileFormatException('{} is not a {} file'.format(path, kind.decode()))
    version, header_length = _PREAMBLE.unpack_from(content, len(kind))
    if version != FORMAT_VERSION:
        raise FormatVersionException('{} has format version {}, expected {}'.format(path, version, FORMAT_VERSION))
    start = len(kind) + _PREAMBLE.size
    try:
        header = json.loads(content[start:start + header_length].decode('utf-8'))
    except ValueError:
        raise FileFormatException('{} has a corrupted header'.format(path))
    return header, content[start + header_length:]


def _split(payload: bytes, path: str, *parts):
    """
    Cuts the payload into arrays given as (shape, dtype) pairs
    """
    arrays, offset = [], 0
    for shape, dtype in parts:
        count = int(np.prod(shape))
        size = count * np.dtype(dtype).itemsize
        if offset + size > len(payload):
            raise FileFormatException('{} is truncated'.format(path))
        arrays.append(np.frombuffer(payload, dtype=dtype, count=count, offset=offset).reshape(shape).copy())
        offset += size
    if offset != len(payload):
        raise FileFormatException('{} has {} trailing bytes'.format(path, len(payload) - offset))
    return arrays


def write_volume(path: str, volume: Volume):
    write_container(path, FILE_KIND.VOLUME, {
        'dims': list(volume.dims),
        'dtype': '<f8',
        'order': 'ix,iy,iz'
    }, [volume.origin, volume.spacing, volume.values])


def read_volume(path: str) -> Volume:
    header, payload = read_container(path, FILE_KIND.VOLUME)
    origin, spacing, values = _split(payload, path, ((3,), '<f8'), ((3,), '<f8'), (tuple(header['dims']), '<f8'))
    return Volume(origin, spacing, values)


def write_data(path: str, data: DataTensor):
    write_container(path, FILE_KIND.DATA, {
        'dims': list(data.shape),
        'dtype': '<f8',
        'order': 'p,alpha,beta'
    }, [data.p, data.alpha, data.beta, data.values])


def read_data(path: str) -> DataTensor:
    header, payload = read_container(path, FILE_KIND.DATA)
    n_p, n_alpha, n_beta = header['dims']
    p, alpha, beta, values = _split(payload, path, ((n_p,), '<f8'), ((n_alpha,), '<f8'), ((n_beta,), '<f8'),
                                    ((n_p, n_alpha, n_beta), '<f8'))
    return DataTensor(p, alpha, beta, values)


def write_harmonics(path: str, stack: HarmonicStack, radii=None):
    """
    :param radii: radial positions of the stack entries, stored when given
    """
    header = {'N': stack.N, 'n_radial': stack.n_radial, 'dtype': '<c16', 'layout': 'triangular l,m=-l..l',
              'radii': radii is not None}
    arrays = [stack.pack()] if radii is None else [np.asarray(radii, dtype=float), stack.pack()]
    write_container(path, FILE_KIND.HARMONICS, header, arrays)


def read_harmonics(path: str):
    """
    :return: the stack and its radii (None when not stored)
    """
    header, payload = read_container(path, FILE_KIND.HARMONICS)
    N, n_radial = header['N'], header['n_radial']
    packed_part = ((n_radial, (N + 1) ** 2), '<c16')
    if header.get('radii'):
        radii, packed = _split(payload, path, ((n_radial,), '<f8'), packed_part)
    else:
        radii, (packed,) = None, _split(payload, path, packed_part)
    return HarmonicStack.unpack(N, packed), radii


def write_matrix_set(path: str, matrices: KernelMatrixSet):
    write_container(path, FILE_KIND.MATRIX_SET, {
        'R': matrices.R,
        'r_M_star': matrices.r_M_star,
        'N': matrices.N,
        'M': matrices.M,
        'kernel_average': matrices.kernel_average,
        'dtype': '<f8',
        'order': 'l,j,q'
    }, [matrices.matrices])


def read_matrix_set(path: str) -> KernelMatrixSet:
    header, payload = read_container(path, FILE_KIND.MATRIX_SET)
    N, M = header['N'], header['M']
    values, = _split(payload, path, ((N + 1, M, M), '<f8'))
    return KernelMatrixSet(header['R'], header['r_M_star'], values, kernel_average=header['kernel_average'])


def write_matrix(path: str, matrix: np.ndarray, R: float, r_M_star: float, l: int, kernel_average: str):
    write_container(path, FILE_KIND.MATRIX, {
        'R': R,
        'M': matrix.shape[0],
        'r_M_star': r_M_star,
        'l': l,
        'kernel_average': kernel_average,
        'dtype': '<f8',
        'order': 'row-major'
    }, [matrix])


def read_matrix(path: str):
    """
    :return: header and the (M, M) matrix
    """
    header, payload = read_container(path, FILE_KIND.MATRIX)
    M = header['M']
    matrix, = _split(payload, path, ((M, M), '<f8'))
    return header, matrix
