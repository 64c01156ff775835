"""Deterministic CBOR codec for the manifest and envelope wire formats.

Covers exactly the data model the wire needs: unsigned integers, byte
strings, UTF-8 text, arrays, and integer-keyed maps. Encoding is canonical
(definite lengths only, shortest-form heads, map keys strictly ascending),
and the decoder rejects every other encoding of the same value, so each
value has one and only one byte representation.
"""

from __future__ import annotations

import struct

MAX_UINT = 2**64 - 1

_MAJOR_UINT = 0
_MAJOR_NEGINT = 1
_MAJOR_BYTES = 2
_MAJOR_TEXT = 3
_MAJOR_ARRAY = 4
_MAJOR_MAP = 5
_MAJOR_TAG = 6
_MAJOR_SIMPLE = 7

_MAX_DEPTH = 64


class MalformedEncoding(ValueError):
    """Input is not decodable under this codec's data model."""

    def __init__(self, offset: int, reason: str):
        super().__init__(f"malformed encoding at byte {offset}: {reason}")
        self.offset = offset
        self.reason = reason


class NonCanonical(ValueError):
    """Well-formed CBOR that is not the unique canonical form."""

    def __init__(self, offset: int, reason: str):
        super().__init__(f"non-canonical encoding at byte {offset}: {reason}")
        self.offset = offset
        self.reason = reason


def _head(major: int, arg: int) -> bytes:
    base = major << 5
    if arg < 24:
        return bytes((base | arg,))
    if arg < 0x100:
        return bytes((base | 24, arg))
    if arg < 0x10000:
        return struct.pack(">BH", base | 25, arg)
    if arg < 0x100000000:
        return struct.pack(">BI", base | 26, arg)
    return struct.pack(">BQ", base | 27, arg)


def encode(value) -> bytes:
    """Encode a value into its unique canonical form."""
    out = bytearray()
    _encode_into(value, out)
    return bytes(out)


def _encode_into(value, out: bytearray) -> None:
    # bool is an int subclass; it is outside the wire data model
    if isinstance(value, bool):
        raise ValueError("booleans are not part of the wire data model")
    if isinstance(value, int):
        if not 0 <= value <= MAX_UINT:
            raise ValueError(f"integer out of unsigned 64-bit range: {value}")
        out += _head(_MAJOR_UINT, value)
    elif isinstance(value, (bytes, bytearray, memoryview)):
        data = bytes(value)
        out += _head(_MAJOR_BYTES, len(data))
        out += data
    elif isinstance(value, str):
        data = value.encode("utf-8")
        out += _head(_MAJOR_TEXT, len(data))
        out += data
    elif isinstance(value, (list, tuple)):
        out += _head(_MAJOR_ARRAY, len(value))
        for item in value:
            _encode_into(item, out)
    elif isinstance(value, dict):
        entries = []
        for key, item in value.items():
            if isinstance(key, bool) or not isinstance(key, int):
                raise ValueError(f"map keys must be integers, got {key!r}")
            entries.append((encode(key), encode(item)))
        entries.sort(key=lambda kv: kv[0])
        out += _head(_MAJOR_MAP, len(entries))
        for key_bytes, value_bytes in entries:
            out += key_bytes
            out += value_bytes
    else:
        raise ValueError(f"unsupported value type: {type(value).__name__}")


class _Decoder:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _take(self, count: int, offset: int) -> bytes:
        if self.pos + count > len(self.data):
            raise MalformedEncoding(offset, "truncated input")
        chunk = self.data[self.pos : self.pos + count]
        self.pos += count
        return chunk

    def _read_head(self) -> tuple[int, int, int]:
        offset = self.pos
        first = self._take(1, offset)[0]
        major = first >> 5
        info = first & 0x1F
        if major == _MAJOR_NEGINT:
            raise MalformedEncoding(offset, "negative integers are unsupported")
        if major == _MAJOR_TAG:
            raise MalformedEncoding(offset, "tags are unsupported")
        if major == _MAJOR_SIMPLE:
            raise MalformedEncoding(offset, "simple values and floats are unsupported")
        if info == 31:
            raise NonCanonical(offset, "indefinite-length items are forbidden")
        if info in (28, 29, 30):
            raise MalformedEncoding(offset, f"reserved additional-information value {info}")
        if info < 24:
            return major, info, offset
        width, fmt, minimum = {
            24: (1, ">B", 24),
            25: (2, ">H", 0x100),
            26: (4, ">I", 0x10000),
            27: (8, ">Q", 0x100000000),
        }[info]
        arg = struct.unpack(fmt, self._take(width, offset))[0]
        if arg < minimum:
            raise NonCanonical(offset, f"integer argument {arg} not in shortest form")
        return major, arg, offset

    def decode_item(self, depth: int = 0):
        if depth > _MAX_DEPTH:
            raise MalformedEncoding(self.pos, "nesting too deep")
        major, arg, offset = self._read_head()
        if major == _MAJOR_UINT:
            return arg
        if major == _MAJOR_BYTES:
            return self._take(arg, offset)
        if major == _MAJOR_TEXT:
            raw = self._take(arg, offset)
            try:
                return raw.decode("utf-8")
            except UnicodeDecodeError:
                raise MalformedEncoding(offset, "invalid UTF-8 in text string") from None
        if major == _MAJOR_ARRAY:
            return [self.decode_item(depth + 1) for _ in range(arg)]
        # map: keys must be integers, strictly ascending by encoded form
        result = {}
        previous_key = b""
        for _ in range(arg):
            key_offset = self.pos
            key = self.decode_item(depth + 1)
            if isinstance(key, bool) or not isinstance(key, int):
                raise MalformedEncoding(key_offset, "map keys must be integers")
            key_bytes = self.data[key_offset : self.pos]
            if key_bytes <= previous_key:
                reason = "duplicate map key" if key_bytes == previous_key else "map keys not ascending"
                raise NonCanonical(key_offset, reason)
            previous_key = key_bytes
            result[key] = self.decode_item(depth + 1)
        return result


def decode(data) -> object:
    """Decode one complete canonical item; trailing bytes are an error."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise TypeError("decode expects a bytes-like object")
    decoder = _Decoder(bytes(data))
    value = decoder.decode_item()
    if decoder.pos != len(decoder.data):
        raise MalformedEncoding(decoder.pos, "trailing bytes after value")
    return value
