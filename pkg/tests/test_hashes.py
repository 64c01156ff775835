"""Digest conformance against the published standard vectors, plus properties."""

from __future__ import annotations

import random

import pytest

from suitpq.hashes import Digest, DigestAlg, bench_hash, digest, hasher

# Published standard vectors (empty, "abc", and the classic two-block
# message), cross-checked against an independent validated implementation
# before being frozen here.
VECTORS = {
    (DigestAlg.SHA2_256, b""): "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
    (DigestAlg.SHA2_256, b"abc"): "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
    (
        DigestAlg.SHA2_256,
        b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
    ): "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1",
    (DigestAlg.SHA3_256, b""): "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a",
    (DigestAlg.SHA3_256, b"abc"): "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532",
    (
        DigestAlg.SHA3_256,
        b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
    ): "41c0dba2a9d6240849100376a8235e2c82e1b9998a999e21db32dd97496d3376",
}


@pytest.mark.parametrize("alg,message", sorted(VECTORS, key=lambda k: (k[0].value, k[1])))
def test_standard_vectors(alg, message):
    assert digest(alg, message).hex() == VECTORS[(alg, message)]


@pytest.mark.parametrize("alg", list(DigestAlg))
def test_deterministic(alg):
    rng = random.Random(7)
    for _ in range(20):
        message = rng.randbytes(rng.randrange(0, 300))
        assert digest(alg, message) == digest(alg, message)


@pytest.mark.parametrize("alg", list(DigestAlg))
def test_single_bit_flip_changes_digest(alg):
    rng = random.Random(11)
    message = rng.randbytes(512)
    reference = digest(alg, message).value
    for _ in range(100):
        position = rng.randrange(len(message) * 8)
        flipped = bytearray(message)
        flipped[position // 8] ^= 1 << (position % 8)
        assert digest(alg, bytes(flipped)).value != reference


@pytest.mark.parametrize("alg", list(DigestAlg))
def test_streaming_matches_one_shot(alg):
    message = b"stream me " * 1000
    ctx = hasher(alg)
    for start in range(0, len(message), 97):
        ctx.update(message[start : start + 97])
    assert ctx.digest() == digest(alg, message).value


def test_wire_codes_round_trip():
    for alg in DigestAlg:
        assert DigestAlg.from_wire(alg.wire_code) is alg
        assert DigestAlg.from_label(alg.label) is alg
    assert DigestAlg.from_wire(1) is DigestAlg.SHA2_256
    assert DigestAlg.from_wire(2) is DigestAlg.SHA3_256
    assert alg.output_len == 32


@pytest.mark.parametrize("name", ["sha2-224", "sha2-384", "sha2-512", "sha3-512", "sha384"])
def test_non_256_variants_rejected(name):
    with pytest.raises(ValueError, match="256"):
        DigestAlg.from_label(name)


def test_unknown_alg_rejected():
    with pytest.raises(ValueError):
        DigestAlg.from_wire(3)
    with pytest.raises(ValueError):
        DigestAlg.from_label("md5")


def test_digest_length_enforced():
    with pytest.raises(ValueError):
        Digest(DigestAlg.SHA2_256, b"short")


def test_bench_hash_schema():
    rows = bench_hash(DigestAlg.SHA2_256, [64, 1024, 16384], repetitions=5)
    assert [row.input_size for row in rows] == [64, 1024, 16384]
    assert all(row.mean_seconds > 0 for row in rows)
    assert all(row.throughput_bps > 0 for row in rows)


def test_bench_hash_empty_and_validation():
    assert bench_hash(DigestAlg.SHA3_256, [], repetitions=3) == []
    with pytest.raises(ValueError):
        bench_hash(DigestAlg.SHA3_256, [64], repetitions=0)


def test_bench_hash_comparable_tables():
    sizes = [64, 1024]
    sha2 = bench_hash(DigestAlg.SHA2_256, sizes, repetitions=3)
    sha3 = bench_hash(DigestAlg.SHA3_256, sizes, repetitions=3)
    assert [r.input_size for r in sha2] == [r.input_size for r in sha3]
