import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from essbench.chain import ChainSet
from essbench.errors import (ChainFormatError, MagicMismatchError, TruncatedPayloadError,
                             VersionMismatchError)
from essbench.harness.chain_io import read_chains, write_chains

finite = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=50)
@given(arrays(float, st.tuples(st.integers(1, 4), st.integers(1, 30)), elements=finite))
def test_roundtrip_bit_identical(tmp_path_factory, x):
    path = tmp_path_factory.mktemp("io") / "c.essc"
    write_chains(path, ChainSet(x))
    back = read_chains(path).samples
    assert back.shape == x.shape
    assert back.tobytes() == np.ascontiguousarray(x, dtype="<f8").tobytes()


def test_header_layout(tmp_path):
    path = tmp_path / "c.essc"
    write_chains(path, np.arange(6.0).reshape(2, 3))
    blob = path.read_bytes()
    assert blob[:4] == b"ESSC"
    assert struct.unpack("<IIQ", blob[4:20]) == (1, 2, 3)
    assert len(blob) == 20 + 6 * 8
    assert np.frombuffer(blob[20:], "<f8")[4] == 4.0


def _valid(tmp_path, chains=2, n=10):
    path = tmp_path / "c.essc"
    write_chains(path, np.ones((chains, n)))
    return path, bytearray(path.read_bytes())


def test_magic_mismatch(tmp_path):
    path, blob = _valid(tmp_path)
    blob[:4] = b"XXXX"
    path.write_bytes(bytes(blob))
    with pytest.raises(MagicMismatchError) as exc:
        read_chains(path)
    assert exc.value.offset == 0 and "byte offset 0" in str(exc.value)


def test_version_mismatch(tmp_path):
    path, blob = _valid(tmp_path)
    blob[4:8] = struct.pack("<I", 2)
    path.write_bytes(bytes(blob))
    with pytest.raises(VersionMismatchError) as exc:
        read_chains(path)
    assert exc.value.offset == 4


def test_truncated_payload(tmp_path):
    path, blob = _valid(tmp_path)
    path.write_bytes(bytes(blob[:-8]))  # 19 of 20 values
    with pytest.raises(TruncatedPayloadError) as exc:
        read_chains(path)
    assert "19" in str(exc.value) and exc.value.offset == 20 + 19 * 8
    path.write_bytes(bytes(blob[:10]))
    with pytest.raises(TruncatedPayloadError):
        read_chains(path)


def test_trailing_bytes_and_errors_are_distinct(tmp_path):
    path, blob = _valid(tmp_path)
    path.write_bytes(bytes(blob) + b"\0")
    with pytest.raises(ChainFormatError) as exc:
        read_chains(path)
    assert not isinstance(exc.value, (MagicMismatchError, VersionMismatchError,
                                      TruncatedPayloadError))
    assert len({MagicMismatchError, VersionMismatchError, TruncatedPayloadError}) == 3
