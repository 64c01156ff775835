"""Stateful hash-based signatures: one-time chains, Merkle trees, hierarchies.

Wire formats (keys, signatures, type codes) follow the RFC 8554 layout for
the SHA-256/32-byte parameter families. Signing is stateful: every
signature consumes a one-time leaf, and the persistence layer guarantees a
leaf is durably retired before its signature is released.
"""

from .errors import (
    CorruptState,
    KeyExhausted,
    LmsError,
    StaleState,
    StorageFailure,
    VersionMismatch,
)
from .hss import (
    HssPublicKey,
    HssSignature,
    VerifyResult,
    hss_keygen,
    hss_sign,
    hss_verify,
    parse_hss_signature,
)
from .ots import coef, lmots_checksum
from .params import (
    DEFAULT_PARAMS,
    HSS_PUBLIC_KEY_LEN,
    HssParams,
    LMS_PUBLIC_KEY_LEN,
    LmotsParams,
    LmsParams,
    lmots_params,
    lms_params,
    public_key_size,
    signature_size,
)
from .state import (
    FileStateStore,
    HssPrivateState,
    LevelState,
    MemoryStateStore,
    StateStore,
    deserialize_state,
    export_state,
    import_state,
    serialize_state,
)

__all__ = [
    "CorruptState",
    "DEFAULT_PARAMS",
    "FileStateStore",
    "HSS_PUBLIC_KEY_LEN",
    "HssParams",
    "HssPrivateState",
    "HssPublicKey",
    "HssSignature",
    "KeyExhausted",
    "LevelState",
    "LMS_PUBLIC_KEY_LEN",
    "LmotsParams",
    "LmsError",
    "LmsParams",
    "MemoryStateStore",
    "StaleState",
    "StateStore",
    "StorageFailure",
    "VerifyResult",
    "VersionMismatch",
    "coef",
    "deserialize_state",
    "export_state",
    "hss_keygen",
    "hss_sign",
    "hss_verify",
    "import_state",
    "lmots_checksum",
    "lmots_params",
    "lms_params",
    "parse_hss_signature",
    "public_key_size",
    "serialize_state",
    "signature_size",
]
