"""Private signing state and its commit-before-release persistence.

A one-time leaf must be durably marked used *before* its signature leaves
the signer; the store's high-water mark makes stale handles and rolled-back
state files detectable. File-backed stores write atomically and fsync, the
in-memory store exists for tests and throwaway keys.
"""

from __future__ import annotations

import os
import struct
import zlib
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

from .errors import CorruptState, StaleState, StorageFailure, VersionMismatch
from .params import (
    HssParams,
    IDENTIFIER_LEN,
    LMS_PUBLIC_KEY_LEN,
    SEED_LEN,
    HssParams as _HssParams,
    lms_params,
    lms_signature_size,
    lmots_params,
)

STATE_MAGIC = b"SQHS"
STATE_VERSION = 1

_FLAG_DETERMINISTIC = 0x01


@dataclass(frozen=True)
class LevelState:
    """Active tree at one level: identity, seed, next unused leaf."""

    identifier: bytes
    seed: bytes
    next_leaf: int


@dataclass(frozen=True)
class HssPrivateState:
    """Complete signer state; immutable, every sign returns a successor.

    `signed_chain` caches, per non-top level, the parent signature over the
    active child public key. Reusing the cached bytes (instead of re-signing
    with a fresh randomizer) is what keeps the parent leaf one-time even
    when randomizers are drawn from system randomness.
    """

    params: HssParams
    levels: tuple[LevelState, ...]
    signed_chain: tuple[tuple[bytes, bytes], ...]  # (parent signature, child public key)
    generation: int
    deterministic: bool

    @property
    def signatures_remaining(self) -> int:
        counts = [lms.leaf_count for lms, _ in self.params.levels]
        remaining = counts[-1] - self.levels[-1].next_leaf
        below = 1
        for i in range(len(counts) - 2, -1, -1):
            below *= counts[i + 1]
            remaining += (counts[i] - self.levels[i].next_leaf) * below
        return remaining


class StateStore(ABC):
    """Durable home of a private state blob plus a generation high-water mark."""

    @abstractmethod
    def load(self) -> bytes | None:
        """Return the persisted blob, or None if nothing was stored yet."""

    @abstractmethod
    def store(self, blob: bytes, generation: int) -> None:
        """Persist the blob durably; raise StorageFailure if that cannot be guaranteed."""

    @abstractmethod
    def high_water_mark(self) -> int:
        """Highest generation ever stored here (0 if none)."""


class MemoryStateStore(StateStore):
    def __init__(self) -> None:
        self._blob: bytes | None = None
        self._hwm = 0

    def load(self) -> bytes | None:
        return self._blob

    def store(self, blob: bytes, generation: int) -> None:
        self._blob = bytes(blob)
        self._hwm = max(self._hwm, generation)

    def high_water_mark(self) -> int:
        return self._hwm


class FileStateStore(StateStore):
    """State blob at `path`; high-water mark in a `<path>.gen` sidecar.

    The sidecar only ratchets upward, so copying an old state file over the
    current one is caught on import.
    """

    def __init__(self, path) -> None:
        self.path = Path(path)
        self.mark_path = Path(str(path) + ".gen")

    def load(self) -> bytes | None:
        try:
            return self.path.read_bytes()
        except FileNotFoundError:
            return None
        except OSError as exc:
            raise StorageFailure(f"cannot read state file: {exc}") from exc

    def store(self, blob: bytes, generation: int) -> None:
        try:
            self._write_atomic(self.path, bytes(blob))
            if generation > self.high_water_mark():
                self._write_atomic(self.mark_path, str(generation).encode("ascii"))
        except OSError as exc:
            raise StorageFailure(f"cannot persist state: {exc}") from exc

    def high_water_mark(self) -> int:
        try:
            return int(self.mark_path.read_text("ascii").strip())
        except FileNotFoundError:
            return 0
        except (OSError, ValueError) as exc:
            raise StorageFailure(f"unreadable high-water mark: {exc}") from exc

    @staticmethod
    def _write_atomic(path: Path, data: bytes) -> None:
        tmp = path.with_name(path.name + ".tmp")
        fd = os.open(tmp, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
        try:
            os.write(fd, data)
            os.fsync(fd)
        finally:
            os.close(fd)
        os.replace(tmp, path)


def serialize_state(state: HssPrivateState) -> bytes:
    """Binary blob: header, per-level trees, cached chain, CRC-32 trailer."""
    depth = state.params.depth
    flags = _FLAG_DETERMINISTIC if state.deterministic else 0
    out = bytearray()
    out += STATE_MAGIC
    out += struct.pack(">HBB", STATE_VERSION, flags, depth)
    for lms, ots in state.params.levels:
        out += struct.pack(">BB", lms.h, ots.w)
    out += struct.pack(">Q", state.generation)
    for level in state.levels:
        out += level.identifier
        out += level.seed
        out += struct.pack(">Q", level.next_leaf)
    out += struct.pack(">B", len(state.signed_chain))
    for signature, public in state.signed_chain:
        out += struct.pack(">I", len(signature))
        out += signature
        out += public
    out += struct.pack(">I", zlib.crc32(bytes(out)))
    return bytes(out)


def deserialize_state(blob: bytes) -> HssPrivateState:
    if len(blob) < 12:
        raise CorruptState("state blob too short")
    body, trailer = blob[:-4], blob[-4:]
    if zlib.crc32(body) != struct.unpack(">I", trailer)[0]:
        raise CorruptState("integrity checksum mismatch")
    if body[:4] != STATE_MAGIC:
        raise CorruptState("bad magic")
    version, flags, depth = struct.unpack(">HBB", body[4:8])
    if version != STATE_VERSION:
        raise VersionMismatch(f"state version {version}, expected {STATE_VERSION}")
    if flags & ~_FLAG_DETERMINISTIC:
        raise CorruptState(f"unknown flag bits 0x{flags:02x}")

    cursor = 8
    try:
        shapes = []
        for _ in range(depth):
            h, w = struct.unpack_from(">BB", body, cursor)
            cursor += 2
            shapes.append((lms_params(h), lmots_params(w)))
        params = _HssParams(tuple(shapes))
        (generation,) = struct.unpack_from(">Q", body, cursor)
        cursor += 8
        levels = []
        for lms, _ in shapes:
            identifier = body[cursor : cursor + IDENTIFIER_LEN]
            cursor += IDENTIFIER_LEN
            seed = body[cursor : cursor + SEED_LEN]
            cursor += SEED_LEN
            (next_leaf,) = struct.unpack_from(">Q", body, cursor)
            cursor += 8
            if len(identifier) != IDENTIFIER_LEN or len(seed) != SEED_LEN:
                raise CorruptState("truncated level record")
            if next_leaf > lms.leaf_count:
                raise CorruptState(f"leaf index {next_leaf} exceeds tree capacity")
            levels.append(LevelState(identifier, seed, next_leaf))
        (chain_count,) = struct.unpack_from(">B", body, cursor)
        cursor += 1
        if chain_count != depth - 1:
            raise CorruptState("cached chain length does not match hierarchy depth")
        chain = []
        for i in range(chain_count):
            (sig_len,) = struct.unpack_from(">I", body, cursor)
            cursor += 4
            expected = lms_signature_size(*shapes[i])
            if sig_len != expected:
                raise CorruptState("cached chain signature has the wrong length")
            signature = body[cursor : cursor + sig_len]
            cursor += sig_len
            public = body[cursor : cursor + LMS_PUBLIC_KEY_LEN]
            cursor += LMS_PUBLIC_KEY_LEN
            if len(signature) != sig_len or len(public) != LMS_PUBLIC_KEY_LEN:
                raise CorruptState("truncated chain record")
            chain.append((signature, public))
    except (struct.error, ValueError) as exc:
        raise CorruptState(f"unparseable state blob: {exc}") from exc
    if cursor != len(body):
        raise CorruptState("trailing bytes in state blob")

    return HssPrivateState(
        params=params,
        levels=tuple(levels),
        signed_chain=tuple(chain),
        generation=generation,
        deterministic=bool(flags & _FLAG_DETERMINISTIC),
    )


def export_state(state: HssPrivateState, store: StateStore) -> None:
    """Persist the state through the store (ratchets the high-water mark)."""
    store.store(serialize_state(state), state.generation)


def import_state(store: StateStore) -> HssPrivateState:
    """Load, validate, and staleness-check a persisted state."""
    blob = store.load()
    if blob is None:
        raise CorruptState("store holds no persisted state")
    state = deserialize_state(blob)
    mark = store.high_water_mark()
    if state.generation < mark:
        raise StaleState(
            f"state generation {state.generation} is older than the high-water mark {mark}"
        )
    return state
