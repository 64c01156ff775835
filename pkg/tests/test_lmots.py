"""One-time signature internals: parameter derivation, digits, checksum, chains."""

from __future__ import annotations

import random

import pytest

from suitpq.lms.ots import (
    coef,
    lmots_checksum,
    message_hash,
    ots_public_candidate,
    ots_public_key,
    ots_sign,
    signature_digits,
)
from suitpq.lms.params import (
    lmots_params,
    lmots_params_from_code,
    lmots_signature_size,
)

# registered (p, ls, type code) values for the 32-byte-hash family
REGISTERED = {1: (265, 7, 1), 2: (133, 6, 2), 4: (67, 4, 3), 8: (34, 0, 4)}


@pytest.mark.parametrize("w", sorted(REGISTERED))
def test_parameter_derivation_matches_registry(w):
    params = lmots_params(w)
    assert (params.p, params.ls, params.type_code) == REGISTERED[w]
    assert params.n == 32
    assert params.message_digits + params.checksum_digits == params.p
    assert lmots_params_from_code(params.type_code) == params


def test_invalid_width_rejected():
    for w in (0, 3, 16):
        with pytest.raises(ValueError):
            lmots_params(w)
    with pytest.raises(ValueError):
        lmots_params_from_code(99)


def test_coef_extracts_msb_first():
    data = bytes([0xAB, 0x3C])
    assert [coef(data, i, 4) for i in range(4)] == [0xA, 0xB, 0x3, 0xC]
    assert [coef(data, i, 2) for i in range(8)] == [2, 2, 2, 3, 0, 3, 3, 0]
    assert [coef(data, i, 1) for i in range(8)] == [1, 0, 1, 0, 1, 0, 1, 1]
    assert coef(data, 0, 8) == 0xAB and coef(data, 1, 8) == 0x3C


def test_checksum_all_max_digits_is_zero():
    for w in REGISTERED:
        params = lmots_params(w)
        digits = [params.max_digit] * params.message_digits
        assert lmots_checksum(digits, params) == 0


def test_checksum_all_zero_digits_w4():
    params = lmots_params(4)
    assert lmots_checksum([0] * 64, params) == 960 << params.ls


@pytest.mark.parametrize("w", sorted(REGISTERED))
def test_checksum_matches_direct_sum_oracle(w):
    params = lmots_params(w)
    rng = random.Random(w)
    for _ in range(20):
        digits = [rng.randrange(params.max_digit + 1) for _ in range(params.message_digits)]
        brute = sum(params.max_digit - d for d in digits)
        assert lmots_checksum(digits, params) == brute << params.ls


def test_checksum_rejects_out_of_range_digit():
    params = lmots_params(4)
    with pytest.raises(ValueError):
        lmots_checksum([16], params)


@pytest.mark.parametrize("w", [4, 8])
def test_signature_digits_cover_all_chains(w):
    params = lmots_params(w)
    digits = signature_digits(params, bytes(range(32)))
    assert len(digits) == params.p
    assert all(0 <= d <= params.max_digit for d in digits)


@pytest.mark.parametrize("w", [2, 4, 8])
def test_sign_then_candidate_recovers_public_key(w):
    params = lmots_params(w)
    identifier, seed = b"\x11" * 16, b"\x22" * 32
    public = ots_public_key(params, identifier, q=3, seed=seed)
    signature = ots_sign(params, identifier, 3, seed, b"payload", b"\x33" * 32)
    assert len(signature) == lmots_signature_size(params)
    assert ots_public_candidate(params, identifier, 3, b"payload", signature) == public
    # the wrong message walks the chains to different endpoints
    assert ots_public_candidate(params, identifier, 3, b"payloae", signature) != public


def test_message_hash_binds_identifier_leaf_and_randomizer():
    base = message_hash(b"\x00" * 16, 0, b"\x01" * 32, b"m")
    assert message_hash(b"\x01" + b"\x00" * 15, 0, b"\x01" * 32, b"m") != base
    assert message_hash(b"\x00" * 16, 1, b"\x01" * 32, b"m") != base
    assert message_hash(b"\x00" * 16, 0, b"\x02" + b"\x01" * 31, b"m") != base
