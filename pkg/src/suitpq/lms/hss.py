"""Multi-level signing hierarchy: keygen, stateful signing, verification.

A two-level hierarchy multiplies signing capacity: the top tree signs the
public keys of child trees, each child signs messages. All material at
every level derives from one 32-byte seed, so the private key stays small
and key generation is reproducible under a fixed seed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import KeyExhausted, StaleState
from .ots import D_CHILD_ID, D_CHILD_SEED, D_RANDOMIZER, SECRET_TAG, _sha, u16, u32
from .params import (
    HSS_PUBLIC_KEY_LEN,
    HssParams,
    IDENTIFIER_LEN,
    LMS_PUBLIC_KEY_LEN,
    SEED_LEN,
    DEFAULT_PARAMS,
    lmots_params_from_code,
    lmots_signature_size,
    lms_params_from_code,
    lms_signature_size,
)
from .state import HssPrivateState, LevelState, StateStore, serialize_state
from .tree import lms_public_key_bytes, lms_root, lms_root_candidate, lms_sign, parse_lms_public_key

_ROOT_PARENT_ID = bytes(IDENTIFIER_LEN)


@dataclass(frozen=True)
class HssPublicKey:
    """60-byte verification key: level count plus the top tree's public key."""

    levels: int
    lms_type: int
    ots_type: int
    identifier: bytes
    root: bytes

    def to_bytes(self) -> bytes:
        return u32(self.levels) + u32(self.lms_type) + u32(self.ots_type) + self.identifier + self.root

    @classmethod
    def from_bytes(cls, data: bytes) -> "HssPublicKey":
        if len(data) != HSS_PUBLIC_KEY_LEN:
            raise ValueError(f"public key must be {HSS_PUBLIC_KEY_LEN} bytes, got {len(data)}")
        levels = int.from_bytes(data[0:4], "big")
        lms, ots, identifier, root = parse_lms_public_key(data[4:])
        if not 1 <= levels <= 2:
            raise ValueError(f"unsupported level count {levels}")
        return cls(levels, lms.type_code, ots.type_code, identifier, root)


@dataclass(frozen=True)
class HssSignature:
    """Parsed signature: per-level signed child keys, then the message signature."""

    signed_keys: tuple[tuple[bytes, bytes], ...]  # (tree signature, child public key)
    final_signature: bytes

    @property
    def leaf_indices(self) -> tuple[int, ...]:
        """Leaf index consumed at each level, top tree first."""
        parts = [sig for sig, _ in self.signed_keys] + [self.final_signature]
        return tuple(int.from_bytes(part[0:4], "big") for part in parts)

    def to_bytes(self) -> bytes:
        out = [u32(len(self.signed_keys))]
        for signature, public in self.signed_keys:
            out.append(signature)
            out.append(public)
        out.append(self.final_signature)
        return b"".join(out)


@dataclass(frozen=True)
class VerifyResult:
    accepted: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


def _derive_child_seed(parent: LevelState, child_leaf: int) -> bytes:
    return _sha(
        parent.identifier + u32(child_leaf) + u16(D_CHILD_SEED) + bytes((SECRET_TAG,)) + parent.seed
    )


def _derive_child_identifier(parent: LevelState, child_leaf: int) -> bytes:
    digest = _sha(
        parent.identifier + u32(child_leaf) + u16(D_CHILD_ID) + bytes((SECRET_TAG,)) + parent.seed
    )
    return digest[:IDENTIFIER_LEN]


def _randomizer(state: HssPrivateState, level: LevelState, q: int) -> bytes:
    if state.deterministic:
        return _sha(level.identifier + u32(q) + u16(D_RANDOMIZER) + bytes((SECRET_TAG,)) + level.seed)
    return os.urandom(SEED_LEN)


def _advance(state: HssPrivateState) -> HssPrivateState:
    """Replace exhausted child trees, consuming parent leaves as needed.

    Top-level exhaustion surfaces as KeyExhausted; intermediate rotation is
    invisible to callers.
    """
    params = state.params
    levels = list(state.levels)
    chain = list(state.signed_chain)

    # discard exhausted non-top trees so they get recreated below
    while len(levels) > 1 and levels[-1].next_leaf >= params.levels[len(levels) - 1][0].leaf_count:
        levels.pop()
        chain.pop()

    while len(levels) < params.depth:
        parent_index = len(levels) - 1
        parent = levels[parent_index]
        parent_lms, parent_ots = params.levels[parent_index]
        if parent.next_leaf >= parent_lms.leaf_count:
            if parent_index == 0:
                raise KeyExhausted("no one-time leaves left in the hierarchy")
            levels.pop()
            chain.pop()
            continue
        child_leaf = parent.next_leaf
        child_lms, child_ots = params.levels[parent_index + 1]
        child_seed = _derive_child_seed(parent, child_leaf)
        child_id = _derive_child_identifier(parent, child_leaf)
        child_root = lms_root(child_lms, child_ots, child_id, child_seed)
        child_public = lms_public_key_bytes(child_lms, child_ots, child_id, child_root)
        signature = lms_sign(
            parent_lms,
            parent_ots,
            parent.identifier,
            parent.seed,
            child_leaf,
            child_public,
            _randomizer(state, parent, child_leaf),
        )
        levels[parent_index] = replace(parent, next_leaf=child_leaf + 1)
        levels.append(LevelState(child_id, child_seed, 0))
        chain.append((signature, child_public))

    if levels == list(state.levels):
        return state
    return replace(state, levels=tuple(levels), signed_chain=tuple(chain))


def hss_keygen(
    params: HssParams = DEFAULT_PARAMS, seed: bytes | None = None
) -> tuple[HssPublicKey, HssPrivateState]:
    """Generate a key pair; a fixed seed makes the result fully reproducible.

    With an explicit seed the signer also draws message randomizers from the
    seed stream, so signatures for a given (message, leaf) are reproducible.
    """
    if not isinstance(params, HssParams):
        raise ValueError("expected HssParams")
    deterministic = seed is not None
    if seed is None:
        seed = os.urandom(SEED_LEN)
    if len(seed) != SEED_LEN:
        raise ValueError(f"seed must be {SEED_LEN} bytes, got {len(seed)}")

    top = LevelState(
        identifier=_sha(
            _ROOT_PARENT_ID + u32(0) + u16(D_CHILD_ID) + bytes((SECRET_TAG,)) + seed
        )[:IDENTIFIER_LEN],
        seed=seed,
        next_leaf=0,
    )
    top_lms, top_ots = params.levels[0]
    public = HssPublicKey(
        levels=params.depth,
        lms_type=top_lms.type_code,
        ots_type=top_ots.type_code,
        identifier=top.identifier,
        root=lms_root(top_lms, top_ots, top.identifier, seed),
    )
    state = HssPrivateState(
        params=params,
        levels=(top,),
        signed_chain=(),
        generation=0,
        deterministic=deterministic,
    )
    return public, _advance(state)


def hss_sign(
    state: HssPrivateState, message: bytes, store: StateStore
) -> tuple[bytes, HssPrivateState]:
    """Sign a message, committing the consumed leaf to the store first.

    The successor state is persisted *before* the signature is returned; on
    a StorageFailure no signature escapes, and a crash after the persist
    only wastes the leaf. A handle whose generation lags the store's
    high-water mark gets StaleState and never reuses a leaf.
    """
    if state.signatures_remaining <= 0:
        raise KeyExhausted("no one-time leaves left in the hierarchy")
    mark = store.high_water_mark()
    if mark != state.generation:
        raise StaleState(
            f"handle generation {state.generation} does not match persisted generation {mark}"
        )

    state = _advance(state)
    bottom_index = state.params.depth - 1
    bottom = state.levels[bottom_index]
    bottom_lms, bottom_ots = state.params.levels[bottom_index]
    final = lms_sign(
        bottom_lms,
        bottom_ots,
        bottom.identifier,
        bottom.seed,
        bottom.next_leaf,
        message,
        _randomizer(state, bottom, bottom.next_leaf),
    )
    signature = HssSignature(signed_keys=state.signed_chain, final_signature=final).to_bytes()

    levels = list(state.levels)
    levels[bottom_index] = replace(bottom, next_leaf=bottom.next_leaf + 1)
    successor = replace(state, levels=tuple(levels), generation=state.generation + 1)
    store.store(serialize_state(successor), successor.generation)  # commit before release
    return signature, successor


def parse_hss_signature(data: bytes) -> HssSignature:
    """Strict structural parse; every length and type code must be exact."""
    view = memoryview(data)

    def read(count: int) -> bytes:
        nonlocal offset
        if offset + count > len(view):
            raise ValueError("truncated signature")
        chunk = bytes(view[offset : offset + count])
        offset += count
        return chunk

    def read_tree_signature() -> bytes:
        start = offset
        header = read(8)
        ots = lmots_params_from_code(int.from_bytes(header[4:8], "big"))
        read(lmots_signature_size(ots) - 4)
        lms = lms_params_from_code(int.from_bytes(read(4), "big"))
        read(lms.h * lms.m)
        return bytes(view[start:offset])

    offset = 0
    signed_count = int.from_bytes(read(4), "big")
    if signed_count > 1:
        raise ValueError(f"unsupported hierarchy depth {signed_count + 1}")
    signed_keys = []
    for _ in range(signed_count):
        signature = read_tree_signature()
        public = read(LMS_PUBLIC_KEY_LEN)
        parse_lms_public_key(public)
        signed_keys.append((signature, public))
    final = read_tree_signature()
    if offset != len(view):
        raise ValueError("trailing bytes after signature")
    return HssSignature(signed_keys=tuple(signed_keys), final_signature=final)


def hss_verify(public: HssPublicKey, message: bytes, signature: bytes) -> VerifyResult:
    """Stateless verification; malformed input rejects rather than raises."""
    try:
        parsed = parse_hss_signature(signature)
    except ValueError:
        return VerifyResult(False, "malformed")
    if len(parsed.signed_keys) + 1 != public.levels:
        return VerifyResult(False, "malformed")

    try:
        lms = lms_params_from_code(public.lms_type)
        ots = lmots_params_from_code(public.ots_type)
    except ValueError:
        return VerifyResult(False, "malformed")
    identifier, root = public.identifier, public.root

    for tree_signature, child_public in parsed.signed_keys:
        candidate = lms_root_candidate(lms, ots, identifier, child_public, tree_signature)
        if candidate is None:
            return VerifyResult(False, "malformed")
        if candidate != root:
            return VerifyResult(False, "bad-signature")
        lms, ots, identifier, root = parse_lms_public_key(child_public)

    candidate = lms_root_candidate(lms, ots, identifier, message, parsed.final_signature)
    if candidate is None:
        return VerifyResult(False, "malformed")
    if candidate != root:
        return VerifyResult(False, "bad-signature")
    return VerifyResult(True)
