"""A single Merkle tree over one-time keys: root, signing, verification.

The tree is never stored: leaves derive from the seed, so the root and any
authentication path can be recomputed on demand. That keeps private state
tiny at the cost of an O(2^h) pass per signature, which mirrors how
memory-tight signers behave on embedded targets.
"""

from __future__ import annotations

from .ots import (
    D_INTR,
    D_LEAF,
    _sha,
    ots_public_candidate,
    ots_public_key,
    ots_sign,
    u16,
    u32,
)
from .params import (
    IDENTIFIER_LEN,
    LmotsParams,
    LmsParams,
    lmots_params_from_code,
    lmots_signature_size,
    lms_params_from_code,
    lms_signature_size,
    LMS_PUBLIC_KEY_LEN,
)


def leaf_node(identifier: bytes, index: int, ots_pub: bytes) -> bytes:
    return _sha(identifier + u32(index) + u16(D_LEAF) + ots_pub)


def inner_node(identifier: bytes, index: int, left: bytes, right: bytes) -> bytes:
    return _sha(identifier + u32(index) + u16(D_INTR) + left + right)


def _tree_nodes(
    lms: LmsParams, ots: LmotsParams, identifier: bytes, seed: bytes
) -> list[bytes]:
    """Full node array, 1-indexed: node r has children 2r and 2r+1."""
    count = lms.leaf_count
    nodes: list[bytes] = [b""] * (2 * count)
    for i in range(count):
        nodes[count + i] = leaf_node(
            identifier, count + i, ots_public_key(ots, identifier, i, seed)
        )
    for r in range(count - 1, 0, -1):
        nodes[r] = inner_node(identifier, r, nodes[2 * r], nodes[2 * r + 1])
    return nodes


def lms_root(lms: LmsParams, ots: LmotsParams, identifier: bytes, seed: bytes) -> bytes:
    return _tree_nodes(lms, ots, identifier, seed)[1]


def lms_sign(
    lms: LmsParams,
    ots: LmotsParams,
    identifier: bytes,
    seed: bytes,
    q: int,
    message: bytes,
    randomizer: bytes,
) -> bytes:
    """leaf index || one-time signature || tree type || authentication path."""
    if not 0 <= q < lms.leaf_count:
        raise ValueError(f"leaf index {q} out of range for height {lms.h}")
    ots_sig = ots_sign(ots, identifier, q, seed, message, randomizer)
    nodes = _tree_nodes(lms, ots, identifier, seed)
    path = []
    r = lms.leaf_count + q
    while r > 1:
        path.append(nodes[r ^ 1])
        r >>= 1
    return u32(q) + ots_sig + u32(lms.type_code) + b"".join(path)


def lms_public_key_bytes(
    lms: LmsParams, ots: LmotsParams, identifier: bytes, root: bytes
) -> bytes:
    return u32(lms.type_code) + u32(ots.type_code) + identifier + root


def parse_lms_public_key(data: bytes) -> tuple[LmsParams, LmotsParams, bytes, bytes]:
    if len(data) != LMS_PUBLIC_KEY_LEN:
        raise ValueError(f"tree public key must be {LMS_PUBLIC_KEY_LEN} bytes")
    lms = lms_params_from_code(int.from_bytes(data[0:4], "big"))
    ots = lmots_params_from_code(int.from_bytes(data[4:8], "big"))
    identifier = data[8 : 8 + IDENTIFIER_LEN]
    root = data[8 + IDENTIFIER_LEN :]
    return lms, ots, identifier, root


def lms_root_candidate(
    lms: LmsParams,
    ots: LmotsParams,
    identifier: bytes,
    message: bytes,
    signature: bytes,
) -> bytes | None:
    """Recompute the root a signature implies, or None on structural mismatch.

    The caller compares the result against the trusted root; equality is
    the accept condition.
    """
    if len(signature) != lms_signature_size(lms, ots):
        return None
    q = int.from_bytes(signature[0:4], "big")
    if q >= lms.leaf_count:
        return None
    if int.from_bytes(signature[4:8], "big") != ots.type_code:
        return None
    ots_len = lmots_signature_size(ots)
    offset = 4 + ots_len
    if int.from_bytes(signature[offset : offset + 4], "big") != lms.type_code:
        return None
    ots_sig = signature[4:offset]
    path = signature[offset + 4 :]

    candidate = ots_public_candidate(ots, identifier, q, message, ots_sig)
    r = lms.leaf_count + q
    node = leaf_node(identifier, r, candidate)
    for i in range(lms.h):
        sibling = path[i * lms.m : (i + 1) * lms.m]
        if r & 1:
            node = inner_node(identifier, r >> 1, sibling, node)
        else:
            node = inner_node(identifier, r >> 1, node, sibling)
        r >>= 1
    return node
