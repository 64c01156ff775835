"""The two update-metadata digest functions, plus a throughput micro-benchmark.

Only the 256-bit members of the SHA-2 and SHA-3 families are usable for
update metadata at the 128-bit security target; every other output length
is rejected at parse time.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

DIGEST_LEN = 32


class DigestAlg(Enum):
    """Approved digest functions, by stable wire code."""

    SHA2_256 = 1
    SHA3_256 = 2

    @property
    def wire_code(self) -> int:
        return self.value

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def output_len(self) -> int:
        return DIGEST_LEN

    @classmethod
    def from_wire(cls, code: int) -> "DigestAlg":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"unknown digest algorithm code {code!r}") from None

    @classmethod
    def from_label(cls, name: str) -> "DigestAlg":
        key = name.strip().lower()
        if key in _REJECTED_LENGTHS:
            raise ValueError(f"{name}: only 256-bit digests are supported")
        try:
            return _BY_LABEL[key]
        except KeyError:
            raise ValueError(f"unknown digest algorithm {name!r}") from None


_LABELS = {DigestAlg.SHA2_256: "sha2-256", DigestAlg.SHA3_256: "sha3-256"}

_BY_LABEL = {
    "sha2-256": DigestAlg.SHA2_256,
    "sha256": DigestAlg.SHA2_256,
    "sha-256": DigestAlg.SHA2_256,
    "sha3-256": DigestAlg.SHA3_256,
    "sha3256": DigestAlg.SHA3_256,
}

_REJECTED_LENGTHS = frozenset(
    f"{family}-{bits}"
    for family in ("sha2", "sha", "sha3")
    for bits in (224, 384, 512)
) | frozenset(("sha224", "sha384", "sha512"))

_CONSTRUCTORS = {
    DigestAlg.SHA2_256: hashlib.sha256,
    DigestAlg.SHA3_256: hashlib.sha3_256,
}


@dataclass(frozen=True)
class Digest:
    """A 32-byte digest tagged with the function that produced it."""

    alg: DigestAlg
    value: bytes

    def __post_init__(self) -> None:
        if len(self.value) != DIGEST_LEN:
            raise ValueError(f"digest must be {DIGEST_LEN} bytes, got {len(self.value)}")

    def hex(self) -> str:
        return self.value.hex()


def hasher(alg: DigestAlg):
    """Streaming context (init/update/final) for incremental hashing.

    Contexts are single-owner; do not share one mid-stream.
    """
    return _CONSTRUCTORS[alg]()


def raw_digest(alg: DigestAlg, data) -> bytes:
    """One-shot digest without the wrapper object (hot-path helper)."""
    return _CONSTRUCTORS[alg](data).digest()


def digest(alg: DigestAlg, data) -> Digest:
    """Hash a byte sequence; empty input is allowed."""
    return Digest(alg, raw_digest(alg, data))


def digest_file(alg: DigestAlg, path, chunk_size: int = 1 << 20) -> Digest:
    """Hash a file without buffering it whole."""
    ctx = hasher(alg)
    with open(path, "rb") as fh:
        while chunk := fh.read(chunk_size):
            ctx.update(chunk)
    return Digest(alg, ctx.digest())


@dataclass(frozen=True)
class HashBenchRow:
    input_size: int
    mean_seconds: float
    throughput_bps: float


def bench_hash(
    alg: DigestAlg, input_sizes: Iterable[int], repetitions: int = 100
) -> list[HashBenchRow]:
    """Measure one-shot hashing time per input size; one row per size."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    rows = []
    for size in input_sizes:
        payload = b"\xa5" * size
        start = time.perf_counter()
        for _ in range(repetitions):
            raw_digest(alg, payload)
        mean = (time.perf_counter() - start) / repetitions
        rows.append(HashBenchRow(size, mean, size / mean if mean > 0 else 0.0))
    return rows
