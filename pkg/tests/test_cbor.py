"""Canonical codec: golden encodings, round-trips, and rejection of every
non-canonical or malformed shape the decoder must refuse."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suitpq import cbor
from suitpq.cbor import MalformedEncoding, NonCanonical

GOLDEN = [
    (0, "00"),
    (1, "01"),
    (23, "17"),
    (24, "1818"),
    (255, "18ff"),
    (256, "190100"),
    (65535, "19ffff"),
    (65536, "1a00010000"),
    (2**32 - 1, "1affffffff"),
    (2**32, "1b0000000100000000"),
    (2**64 - 1, "1bffffffffffffffff"),
    (b"", "40"),
    (b"\x01\x02", "420102"),
    ("", "60"),
    ("a", "6161"),
    ("ü", "62c3bc"),
    ([], "80"),
    ([1, [2, 3]], "8201820203"),
    ({}, "a0"),
    ({1: 2, 3: 4}, "a201020304"),
]


@pytest.mark.parametrize("value,expected_hex", GOLDEN)
def test_golden_encodings(value, expected_hex):
    assert cbor.encode(value).hex() == expected_hex
    assert cbor.decode(bytes.fromhex(expected_hex)) == value


def test_map_keys_sorted_on_encode():
    assert cbor.encode({3: 0, 1: 0, 2: 0}) == cbor.encode({1: 0, 2: 0, 3: 0})


_scalars = st.one_of(
    st.integers(min_value=0, max_value=2**64 - 1),
    st.binary(max_size=48),
    st.text(max_size=24),
)
_values = st.recursive(
    _scalars,
    lambda children: st.one_of(
        st.lists(children, max_size=6),
        st.dictionaries(st.integers(min_value=0, max_value=2**32), children, max_size=6),
    ),
    max_leaves=25,
)


@settings(max_examples=300, deadline=None)
@given(_values)
def test_round_trip_and_reencode_stability(value):
    encoded = cbor.encode(value)
    decoded = cbor.decode(encoded)
    assert cbor.encode(decoded) == encoded


def test_encode_rejects_out_of_model_values():
    for bad in (-1, 2**64, True, False, None, 1.5, {"x": 1}, {(1,): 2}, object()):
        with pytest.raises(ValueError):
            cbor.encode(bad)


@pytest.mark.parametrize(
    "data_hex,reason_fragment",
    [
        ("5f42010242030442ff", "indefinite"),  # indefinite-length bytes
        ("9f0102ff", "indefinite"),            # indefinite-length array
        ("1801", "shortest"),                  # 1 in a one-byte argument
        ("190001", "shortest"),                # 1 in a two-byte argument
        ("1a00000100", "shortest"),            # 256 in a four-byte argument
        ("1b0000000000010000", "shortest"),    # 65536 in an eight-byte argument
        ("a202000100", "ascending"),           # keys 2,1
        ("a201000101", "duplicate"),           # key 1 twice
    ],
)
def test_non_canonical_rejected(data_hex, reason_fragment):
    with pytest.raises(NonCanonical, match=reason_fragment):
        cbor.decode(bytes.fromhex(data_hex))


@pytest.mark.parametrize(
    "data_hex,reason_fragment",
    [
        ("", "truncated"),
        ("18", "truncated"),
        ("42ff", "truncated"),
        ("8201", "truncated"),
        ("0000", "trailing"),
        ("20", "negative"),
        ("c102", "tags"),
        ("f5", "simple"),            # boolean true
        ("f93c00", "simple"),        # half-precision float
        ("61ff", "UTF-8"),
        ("1c", "reserved"),
        ("a161610ا".encode().hex(), None),  # text map key
    ],
)
def test_malformed_rejected(data_hex, reason_fragment):
    with pytest.raises(MalformedEncoding):
        cbor.decode(bytes.fromhex(data_hex) if reason_fragment else b"\xa1\x61\x61\x00")


def test_text_map_key_rejected():
    # {"a": 0} is valid CBOR but map keys must be integers here
    with pytest.raises(MalformedEncoding, match="integer"):
        cbor.decode(bytes.fromhex("a1616100"))


def test_error_offsets():
    err = None
    try:
        cbor.decode(bytes.fromhex("820020"))  # [0, -1]
    except MalformedEncoding as exc:
        err = exc
    assert err is not None and err.offset == 2

    try:
        cbor.decode(bytes.fromhex("821801 00".replace(" ", "")))  # [24-non-minimal, 0]
    except NonCanonical as exc:
        assert exc.offset == 1


def test_nesting_depth_bounded():
    deep = b"\x81" * 200 + b"\x00"
    with pytest.raises(MalformedEncoding, match="deep"):
        cbor.decode(deep)


def test_decode_type_check():
    with pytest.raises(TypeError):
        cbor.decode("00")
