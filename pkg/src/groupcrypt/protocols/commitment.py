"""Hash commitments ("locked boxes")."""

from __future__ import annotations

import hashlib
import hmac
import random
from dataclasses import dataclass

DEFAULT_HASH = "sha256"
COMMIT_TAG = b"groupcrypt/commit/v1"
NONCE_BYTES = 16


@dataclass(frozen=True)
class CommitmentBox:
    digest: bytes

    def hex(self) -> str:
        return self.digest.hex()


@dataclass(frozen=True)
class Opening:
    payload: bytes
    nonce: bytes


def _digest(payload: bytes, nonce: bytes, hash_name: str) -> bytes:
    h = hashlib.new(hash_name)
    h.update(COMMIT_TAG)
    h.update(payload)
    h.update(nonce)
    return h.digest()


def commit(payload: bytes, rng: random.Random, hash_name: str = DEFAULT_HASH):
    """Return ``(box, opening)`` for ``payload`` with a fresh 16-byte nonce."""
    nonce = rng.randbytes(NONCE_BYTES)
    return CommitmentBox(_digest(payload, nonce, hash_name)), Opening(payload, nonce)


def verify_opening(box: CommitmentBox, opening: Opening, hash_name: str = DEFAULT_HASH) -> bool:
    if len(opening.nonce) != NONCE_BYTES:
        return False
    return hmac.compare_digest(box.digest, _digest(opening.payload, opening.nonce, hash_name))
