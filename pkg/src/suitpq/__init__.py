"""suitpq: a secure software-update pipeline with pre- and post-quantum signatures.

The package covers the full update path: digest functions, a native
stateful hash-based signature scheme, a uniform signature-scheme registry,
a deterministic manifest codec with a signed envelope, the publish/fetch/
verify/install workflow, and a cost model over recorded embedded-target
constants.
"""

__version__ = "0.1.0"

from .hashes import Digest, DigestAlg, digest

__all__ = ["Digest", "DigestAlg", "digest", "__version__"]
