"""One-time signatures: hash chains over w-bit digits of a randomized digest.

All hashing goes through the package digest module (SHA2-256, the hash the
registered parameter families are defined over). Chain secrets are derived
pseudorandomly from (identifier, leaf, chain index, seed), so a private key
is just one 32-byte seed.
"""

from __future__ import annotations

import struct

from ..hashes import DigestAlg, raw_digest
from .params import LmotsParams

# domain-separation tags, u16 wire position (standard values)
D_PBLC = 0x8080
D_MESG = 0x8181
D_LEAF = 0x8282
D_INTR = 0x8383

# private derivation tags; chosen outside both the chain-index range (< p)
# and the D_* block so derived inputs can never collide with chain hashing
SECRET_TAG = 0xFF       # u8, marks chain-secret derivation
D_RANDOMIZER = 0xFFFD   # per-signature message randomizer (deterministic mode)
D_CHILD_SEED = 0xFFFE   # child-tree seed in a multi-level hierarchy
D_CHILD_ID = 0xFFFF     # child-tree identifier


def _sha(data: bytes) -> bytes:
    return raw_digest(DigestAlg.SHA2_256, data)


def u32(value: int) -> bytes:
    return struct.pack(">I", value)


def u16(value: int) -> bytes:
    return struct.pack(">H", value)


def coef(data: bytes, index: int, w: int) -> int:
    """index-th w-bit digit of data, most significant bits first."""
    per_byte = 8 // w
    shift = 8 - w * (index % per_byte + 1)
    return (data[index // per_byte] >> shift) & ((1 << w) - 1)


def lmots_checksum(digits, params: LmotsParams) -> int:
    """Checksum over a digit sequence, shifted into its 16-bit wire position.

    Increasing any digit decreases the sum, so no digit can be advanced
    along its chain without breaking the checksum digits.
    """
    top = params.max_digit
    total = 0
    for digit in digits:
        if not 0 <= digit <= top:
            raise ValueError(f"digit {digit} out of range for w={params.w}")
        total += top - digit
    return total << params.ls


def signature_digits(params: LmotsParams, randomized_hash: bytes) -> list[int]:
    """Chain depths for all p chains: message digits then checksum digits."""
    digits = [coef(randomized_hash, i, params.w) for i in range(params.message_digits)]
    checksum_bytes = u16(lmots_checksum(digits, params))
    digits.extend(coef(checksum_bytes, i, params.w) for i in range(params.checksum_digits))
    return digits


def chain_secret(identifier: bytes, q: int, i: int, seed: bytes) -> bytes:
    """Pseudorandom start value of chain i for leaf q."""
    return _sha(identifier + u32(q) + u16(i) + bytes((SECRET_TAG,)) + seed)


def message_hash(identifier: bytes, q: int, randomizer: bytes, message: bytes) -> bytes:
    return _sha(identifier + u32(q) + u16(D_MESG) + randomizer + message)


def _walk(prefix: bytes, start: int, stop: int, value: bytes) -> bytes:
    sha = _sha
    for j in range(start, stop):
        value = sha(prefix + bytes((j,)) + value)
    return value


def ots_public_key(params: LmotsParams, identifier: bytes, q: int, seed: bytes) -> bytes:
    """K for leaf q: hash of every chain iterated to its end."""
    base = identifier + u32(q)
    ends = []
    for i in range(params.p):
        prefix = base + u16(i)
        value = chain_secret(identifier, q, i, seed)
        ends.append(_walk(prefix, 0, params.max_digit, value))
    return _sha(base + u16(D_PBLC) + b"".join(ends))


def ots_sign(
    params: LmotsParams,
    identifier: bytes,
    q: int,
    seed: bytes,
    message: bytes,
    randomizer: bytes,
) -> bytes:
    """type code || randomizer || one partially-iterated chain value per digit."""
    if len(randomizer) != params.n:
        raise ValueError(f"randomizer must be {params.n} bytes")
    digits = signature_digits(params, message_hash(identifier, q, randomizer, message))
    base = identifier + u32(q)
    parts = [u32(params.type_code), randomizer]
    for i, depth in enumerate(digits):
        value = chain_secret(identifier, q, i, seed)
        parts.append(_walk(base + u16(i), 0, depth, value))
    return b"".join(parts)


def ots_public_candidate(
    params: LmotsParams, identifier: bytes, q: int, message: bytes, signature: bytes
) -> bytes:
    """Finish the chains from a signature body; equals K iff it is genuine.

    The caller must have validated the length (4 + n + p*n) and type code.
    """
    n = params.n
    randomizer = signature[4 : 4 + n]
    digits = signature_digits(params, message_hash(identifier, q, randomizer, message))
    base = identifier + u32(q)
    ends = []
    offset = 4 + n
    for i, depth in enumerate(digits):
        value = signature[offset : offset + n]
        offset += n
        ends.append(_walk(base + u16(i), depth, params.max_digit, value))
    return _sha(base + u16(D_PBLC) + b"".join(ends))
