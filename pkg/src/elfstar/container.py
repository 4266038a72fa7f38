"""File container shared by batch and streaming modes.

Layout (little-endian integers)::

    "ELFS" | version u8 (=1) | mode u8 (0 batch, 1 stream)
    | block or window size u32 | total value count u64
    | { payload length u32 | payload bytes }*

Batch files hold one payload per block; stream files hold a single
payload carrying every window.
"""

import struct

from .errors import FormatError

MAGIC = b"ELFS"
VERSION = 1
MODE_BATCH = 0
MODE_STREAM = 1

_HEADER = struct.Struct("<4sBBIQ")
_LEN = struct.Struct("<I")
HEADER_SIZE = _HEADER.size


def pack_header(mode: int, size: int, count: int) -> bytes:
    return _HEADER.pack(MAGIC, VERSION, mode, size, count)


def parse_header(data: bytes):
    """Return ``(mode, size, count)`` or raise :class:`FormatError`."""
    if len(data) < HEADER_SIZE:
        raise FormatError("file too short for container header", len(data))
    magic, version, mode, size, count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}", 0)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", 4)
    if mode not in (MODE_BATCH, MODE_STREAM):
        raise FormatError(f"unknown mode byte {mode}", 5)
    if size == 0:
        raise FormatError("block/window size is zero", 6)
    return mode, size, count


def pack_payload(payload: bytes) -> bytes:
    if len(payload) >= 1 << 32:
        raise ValueError("payload exceeds 4 GiB")
    return _LEN.pack(len(payload)) + payload


def iter_payloads(data: bytes):
    """Yield ``(byte_offset, payload)`` for every payload after the header."""
    pos = HEADER_SIZE
    end = len(data)
    while pos < end:
        if pos + 4 > end:
            raise FormatError("truncated payload length", pos)
        (n,) = _LEN.unpack_from(data, pos)
        start = pos + 4
        if start + n > end:
            raise FormatError(f"payload of {n} bytes runs past end of file", pos)
        yield start, data[start : start + n]
        pos = start + n


def decompress(data: bytes):
    """Decode a container of either mode into a float64 array."""
    data = bytes(data)
    mode, _, _ = parse_header(data)
    if mode == MODE_BATCH:
        from .blockcodec import decompress_batch

        return decompress_batch(data)
    from .streamcodec import stream_decompress

    return stream_decompress(data)
