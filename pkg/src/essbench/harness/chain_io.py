"""Binary chain files.

Layout (little-endian): magic ``b"ESSC"``, u32 version (= 1), u32 n_chains,
u64 n_samples, then n_chains * n_samples IEEE-754 f64 values, chain-major.
"""

from __future__ import annotations

import os
import struct

import numpy as np

from ..chain import ChainSet
from ..errors import (ChainFormatError, MagicMismatchError, TruncatedPayloadError,
                      VersionMismatchError)

__all__ = ["MAGIC", "VERSION", "write_chains", "read_chains"]

MAGIC = b"ESSC"
VERSION = 1
_HEADER = struct.Struct("<4sIIQ")


def write_chains(path, chainset) -> None:
    cs = chainset if isinstance(chainset, ChainSet) else ChainSet(chainset)
    x = cs.samples
    header = _HEADER.pack(MAGIC, VERSION, x.shape[0], x.shape[1])
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(x.astype("<f8", copy=False).tobytes(order="C"))
    os.replace(tmp, path)


def read_chains(path) -> ChainSet:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < 4 or blob[:4] != MAGIC:
        raise MagicMismatchError(f"{path}: bad magic {blob[:4]!r}", offset=0)
    if len(blob) < _HEADER.size:
        raise TruncatedPayloadError(f"{path}: header is truncated", offset=len(blob))
    _, version, n_chains, n_samples = _HEADER.unpack_from(blob)
    if version != VERSION:
        raise VersionMismatchError(f"{path}: unsupported version {version}", offset=4)
    expected = n_chains * n_samples * 8
    payload = len(blob) - _HEADER.size
    if payload < expected:
        raise TruncatedPayloadError(
            f"{path}: header declares {n_chains}x{n_samples} samples but payload "
            f"holds {payload // 8} values", offset=len(blob))
    if payload > expected:
        raise ChainFormatError(f"{path}: {payload - expected} trailing bytes",
                               offset=_HEADER.size + expected)
    if n_chains == 0:
        raise ChainFormatError(f"{path}: file holds no chains", offset=8)
    x = np.frombuffer(blob, dtype="<f8", offset=_HEADER.size).astype(np.float64)
    return ChainSet(x.reshape(n_chains, n_samples))
