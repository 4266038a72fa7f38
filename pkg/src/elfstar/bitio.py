"""MSB-first bit writer and reader over byte buffers.

Bits are packed most-significant first within each byte, and the final
partial byte is padded with zeros.  Readers never use the padding to find
the end of a stream; every format built on top carries an explicit count.
"""

from .errors import TruncatedStreamError

_PAD = bytes(9)


class BitSink:
    """Append-only bit buffer.

    Up to 64 pending bits live in an integer accumulator and are moved
    into ``bytearray`` storage eight bytes at a time.
    """

    __slots__ = ("_buf", "_acc", "_nacc")

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._nacc = 0

    @property
    def bit_len(self) -> int:
        return (len(self._buf) << 3) + self._nacc

    def write_bits(self, value: int, count: int) -> None:
        """Append the ``count`` low-order bits of ``value``, MSB first."""
        if count <= 0:
            if count < 0:
                raise ValueError(f"negative bit count {count}")
            return
        if count > 64:
            raise ValueError(f"cannot write {count} bits at once (max 64)")
        acc = (self._acc << count) | (value & ((1 << count) - 1))
        n = self._nacc + count
        if n >= 64:
            n -= 64
            self._buf += (acc >> n).to_bytes(8, "big")
            acc &= (1 << n) - 1
        self._acc = acc
        self._nacc = n

    def write_bit(self, bit: int) -> None:
        self.write_bits(bit, 1)

    def getvalue(self) -> bytes:
        """Bytes written so far, with the trailing partial byte zero-padded.

        The sink stays usable; later writes continue after ``bit_len``.
        """
        n = self._nacc
        if n == 0:
            return bytes(self._buf)
        nbytes = (n + 7) >> 3
        tail = (self._acc << (nbytes * 8 - n)).to_bytes(nbytes, "big")
        return bytes(self._buf) + tail

    finalize = getvalue


class BitSource:
    """Sequential reader over a byte buffer.

    ``bit_len`` defaults to the whole buffer; pass a smaller value to stop
    reads before the zero padding of a payload.
    """

    __slots__ = ("_data", "_total", "cursor")

    def __init__(self, data, bit_len=None):
        data = bytes(data)
        total = len(data) * 8
        if bit_len is None:
            bit_len = total
        elif not 0 <= bit_len <= total:
            raise ValueError(f"bit_len {bit_len} outside buffer of {total} bits")
        self._data = data + _PAD
        self._total = bit_len
        self.cursor = 0

    @property
    def bit_len(self) -> int:
        return self._total

    @property
    def remaining(self) -> int:
        return self._total - self.cursor

    def read_bits(self, count: int) -> int:
        """Return the next ``count`` bits as the low bits of an integer."""
        if count <= 0:
            if count < 0:
                raise ValueError(f"negative bit count {count}")
            return 0
        if count > 64:
            raise ValueError(f"cannot read {count} bits at once (max 64)")
        pos = self.cursor
        end = pos + count
        if end > self._total:
            raise TruncatedStreamError(
                f"truncated stream: need {count} bits, {self._total - pos} left", pos
            )
        b = pos >> 3
        chunk = int.from_bytes(self._data[b : b + 9], "big")
        self.cursor = end
        return (chunk >> (72 - (pos & 7) - count)) & ((1 << count) - 1)

    def read_bit(self) -> int:
        pos = self.cursor
        if pos >= self._total:
            raise TruncatedStreamError("truncated stream: need 1 bit, 0 left", pos)
        self.cursor = pos + 1
        return (self._data[pos >> 3] >> (7 - (pos & 7))) & 1
