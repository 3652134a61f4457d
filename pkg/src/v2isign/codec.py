"""Canonical byte encoding for everything that crosses a wire or a hash.

Every encodable item is a one-byte type tag followed by a fixed layout:

* scalar     0x01 | big-endian value, scalar-width bytes
* point      0x02 | 0x00 for the identity, else SEC-style 0x02/0x03 parity
                    prefix and the big-endian x coordinate
* bytes      0x03 | 4-byte big-endian length | payload
* timestamp  0x04 | 8-byte big-endian seconds

The tag plus fixed widths (length prefix for bytes) make the encoding of a
sequence of items injective and uniquely parseable, which is what the hash
layer and the wire formats rely on.
"""

from __future__ import annotations

from .errors import ParseError
from .group import Curve, IDENTITY, Point

TAG_SCALAR = b"\x01"
TAG_POINT = b"\x02"
TAG_BYTES = b"\x03"
TAG_TIME = b"\x04"

_TIME_WIDTH = 8
_LEN_WIDTH = 4


class Timestamp(int):
    """Seconds-resolution timestamp; a distinct type so encoding can tell
    protocol timestamps apart from scalars."""


Encodable = "int | Point | bytes | Timestamp"


def scalar_bytes(curve: Curve, value: int) -> bytes:
    """Fixed-width big-endian scalar payload, without the type tag."""
    if not 0 <= value < curve.order:
        raise ValueError("scalar out of range")
    return value.to_bytes(curve.scalar_width, "big")


def point_bytes(curve: Curve, point: Point) -> bytes:
    """Compressed point payload: 0x00 for identity, else parity prefix + x."""
    if point.is_identity():
        return b"\x00"
    curve.require_on_curve(point)
    prefix = b"\x03" if point.y & 1 else b"\x02"
    return prefix + point.x.to_bytes(curve.coord_width, "big")


def encode(curve: Curve, item) -> bytes:
    """Tagged canonical encoding of one item."""
    if isinstance(item, Point):
        return TAG_POINT + point_bytes(curve, item)
    if isinstance(item, Timestamp):
        if not 0 <= item < 1 << (_TIME_WIDTH * 8):
            raise ValueError("timestamp out of range")
        return TAG_TIME + int(item).to_bytes(_TIME_WIDTH, "big")
    if isinstance(item, bool):
        raise TypeError("bool is not encodable")
    if isinstance(item, int):
        return TAG_SCALAR + scalar_bytes(curve, item)
    if isinstance(item, (bytes, bytearray)):
        payload = bytes(item)
        return TAG_BYTES + len(payload).to_bytes(_LEN_WIDTH, "big") + payload
    raise TypeError(f"cannot encode {type(item).__name__}")


def encode_items(curve: Curve, items) -> bytes:
    return b"".join(encode(curve, item) for item in items)


class Reader:
    """Sequential decoder for the canonical encoding."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0

    def _take(self, n: int) -> bytes:
        if self._pos + n > len(self._data):
            raise ParseError("truncated record")
        chunk = self._data[self._pos : self._pos + n]
        self._pos += n
        return chunk

    def _expect_tag(self, tag: bytes, what: str) -> None:
        got = self._take(1)
        if got != tag:
            raise ParseError(f"expected {what} tag, got 0x{got.hex()}")

    def read_scalar(self, curve: Curve) -> int:
        self._expect_tag(TAG_SCALAR, "scalar")
        value = int.from_bytes(self._take(curve.scalar_width), "big")
        if value >= curve.order:
            raise ParseError("scalar not reduced")
        return value

    def read_point(self, curve: Curve) -> Point:
        self._expect_tag(TAG_POINT, "point")
        head = self._take(1)[0]
        if head == 0:
            return IDENTITY
        if head not in (2, 3):
            raise ParseError(f"bad point prefix 0x{head:02x}")
        x = int.from_bytes(self._take(curve.coord_width), "big")
        try:
            return curve.lift_x(x, head & 1)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def read_bytes(self) -> bytes:
        self._expect_tag(TAG_BYTES, "bytes")
        length = int.from_bytes(self._take(_LEN_WIDTH), "big")
        return self._take(length)

    def read_timestamp(self) -> Timestamp:
        self._expect_tag(TAG_TIME, "timestamp")
        return Timestamp(int.from_bytes(self._take(_TIME_WIDTH), "big"))

    def read_raw(self, n: int) -> bytes:
        """Untagged fixed-width field (ciphertexts, identity masks)."""
        return self._take(n)

    def finish(self) -> None:
        if self._pos != len(self._data):
            raise ParseError(f"{len(self._data) - self._pos} trailing bytes")
