"""Failure modes of the stateful signing machinery."""


class LmsError(Exception):
    """Base class for stateful-signature errors."""


class KeyExhausted(LmsError):
    """Every one-time leaf in the hierarchy has been consumed."""


class StaleState(LmsError):
    """In-memory state is older than what the store has persisted."""


class StorageFailure(LmsError):
    """The state could not be durably persisted; no signature was released."""


class CorruptState(LmsError):
    """A persisted state blob failed its integrity or structure checks."""


class VersionMismatch(LmsError):
    """A persisted state blob uses an unknown serialization version."""
