"""Parameter sets and closed-form sizes for the hash-based signature scheme.

Type codes and derivations follow the RFC 8554 registry entries for the
SHA-256 / 32-byte-node families, so serialized keys and signatures match
the standard wire format byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

HASH_LEN = 32  # bytes per hash output and per tree node

LMOTS_WIDTHS = (1, 2, 4, 8)
LMS_HEIGHTS = (5, 10, 15)
MAX_LEVELS = 2

IDENTIFIER_LEN = 16
SEED_LEN = 32

_LMOTS_TYPE_BY_WIDTH = {1: 1, 2: 2, 4: 3, 8: 4}  # LMOTS_SHA256_N32_W{1,2,4,8}
_LMS_TYPE_BY_HEIGHT = {5: 5, 10: 6, 15: 7}       # LMS_SHA256_M32_H{5,10,15}


@dataclass(frozen=True)
class LmotsParams:
    """One-time signature parameters: w-bit digits over 32-byte hashes."""

    w: int          # Winternitz width, bits per digit
    n: int          # hash output bytes
    p: int          # hash chains per signature (message + checksum digits)
    ls: int         # checksum left shift
    type_code: int  # registered wire code

    @property
    def message_digits(self) -> int:
        return (8 * self.n + self.w - 1) // self.w

    @property
    def checksum_digits(self) -> int:
        return self.p - self.message_digits

    @property
    def max_digit(self) -> int:
        return (1 << self.w) - 1


@lru_cache(maxsize=None)
def lmots_params(w: int) -> LmotsParams:
    if w not in LMOTS_WIDTHS:
        raise ValueError(f"unsupported Winternitz width {w!r}; choose from {LMOTS_WIDTHS}")
    n = HASH_LEN
    u = math.ceil(8 * n / w)
    v = math.ceil((((1 << w) - 1) * u).bit_length() / w)
    return LmotsParams(w=w, n=n, p=u + v, ls=16 - v * w, type_code=_LMOTS_TYPE_BY_WIDTH[w])


def lmots_params_from_code(code: int) -> LmotsParams:
    for w, registered in _LMOTS_TYPE_BY_WIDTH.items():
        if registered == code:
            return lmots_params(w)
    raise ValueError(f"unknown one-time signature type code {code!r}")


@dataclass(frozen=True)
class LmsParams:
    """Merkle tree shape: 2^h one-time leaves, 32-byte nodes."""

    h: int
    m: int
    type_code: int

    @property
    def leaf_count(self) -> int:
        return 1 << self.h


@lru_cache(maxsize=None)
def lms_params(h: int) -> LmsParams:
    if h not in _LMS_TYPE_BY_HEIGHT:
        raise ValueError(f"unsupported tree height {h!r}; choose from {LMS_HEIGHTS}")
    return LmsParams(h=h, m=HASH_LEN, type_code=_LMS_TYPE_BY_HEIGHT[h])


def lms_params_from_code(code: int) -> LmsParams:
    for h, registered in _LMS_TYPE_BY_HEIGHT.items():
        if registered == code:
            return lms_params(h)
    raise ValueError(f"unknown tree type code {code!r}")


@dataclass(frozen=True)
class HssParams:
    """One- or two-level hierarchy; each level is a (tree, one-time) pair."""

    levels: tuple[tuple[LmsParams, LmotsParams], ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.levels) <= MAX_LEVELS:
            raise ValueError(f"level count must be 1..{MAX_LEVELS}, got {len(self.levels)}")
        for entry in self.levels:
            lms, ots = entry
            if not isinstance(lms, LmsParams) or not isinstance(ots, LmotsParams):
                raise ValueError("each level must be an (LmsParams, LmotsParams) pair")

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def total_signatures(self) -> int:
        total = 1
        for lms, _ in self.levels:
            total *= lms.leaf_count
        return total

    @classmethod
    def create(cls, levels: int = 2, height: int = 5, width: int = 4) -> "HssParams":
        """Uniform hierarchy helper: same tree shape at every level."""
        return cls(tuple((lms_params(height), lmots_params(width)) for _ in range(levels)))


# The two-level H5/W4 hierarchy reproduces the published 60-byte public key
# and 4756-byte signature of the reference evaluation.
DEFAULT_PARAMS = HssParams.create(levels=2, height=5, width=4)


LMS_PUBLIC_KEY_LEN = 4 + 4 + IDENTIFIER_LEN + HASH_LEN  # type codes, identifier, root
HSS_PUBLIC_KEY_LEN = 4 + LMS_PUBLIC_KEY_LEN             # level-count prefix


def lmots_signature_size(ots: LmotsParams) -> int:
    return 4 + ots.n + ots.p * ots.n


def lms_signature_size(lms: LmsParams, ots: LmotsParams) -> int:
    return 4 + lmots_signature_size(ots) + 4 + lms.h * lms.m


def signature_size(params: HssParams) -> int:
    """Serialized signature length for a parameter set (closed form)."""
    total = 4 + (params.depth - 1) * LMS_PUBLIC_KEY_LEN
    for lms, ots in params.levels:
        total += lms_signature_size(lms, ots)
    return total


def public_key_size(params: HssParams) -> int:
    """Serialized public key length; constant across all parameter sets."""
    if not isinstance(params, HssParams):
        raise ValueError("expected HssParams")
    return HSS_PUBLIC_KEY_LEN
