"""Conjugacy-based digital signature over Z^2 ⋊_M Z.

Exponent notation is conjugation throughout: ``x = (g^n)^s = s^-1 g^n s`` and
``y = (g^{n_i})^t``. Verification checks ``(y^{n_j})^alpha = x^(h' y)``, which
expands to an identity for honest signatures whatever ``t`` is.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import MalformedSignature
from ..polycyclic.platforms import (
    HeisenbergLikeElement,
    MetabelianPlatform,
    heis_conj,
    heis_inv,
    heis_mul,
    heis_pow,
)
from ..serialize import heis_from_json, heis_to_json, int_to_str, platform_from_json, platform_to_json, str_to_int
from .commitment import DEFAULT_HASH

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)
MAX_N = 2**16
SHIFT_BOUND = 2**10
HASH_SHIFT_BOUND = 2**16


@dataclass(frozen=True)
class PublicKey:
    g: HeisenbergLikeElement
    x: HeisenbergLikeElement

    def to_json(self) -> dict:
        return {"platform": platform_to_json(self.g.platform), "g": heis_to_json(self.g), "x": heis_to_json(self.x)}

    @classmethod
    def from_json(cls, d: dict) -> "PublicKey":
        platform = platform_from_json(d["platform"])
        return cls(heis_from_json(platform, d["g"]), heis_from_json(platform, d["x"]))


@dataclass(frozen=True)
class SignatureKeys:
    g: HeisenbergLikeElement
    x: HeisenbergLikeElement
    s: HeisenbergLikeElement
    n: int
    factors: Tuple[int, ...]

    @property
    def public(self) -> PublicKey:
        return PublicKey(self.g, self.x)

    def to_json(self) -> dict:
        d = self.public.to_json()
        d["private"] = {
            "s": heis_to_json(self.s),
            "n": int_to_str(self.n),
            "factors": [int_to_str(f) for f in self.factors],
        }
        return d

    @classmethod
    def from_json(cls, d: dict) -> "SignatureKeys":
        pub = PublicKey.from_json(d)
        priv = d["private"]
        return cls(
            pub.g,
            pub.x,
            heis_from_json(pub.g.platform, priv["s"]),
            str_to_int(priv["n"]),
            tuple(str_to_int(f) for f in priv["factors"]),
        )


@dataclass(frozen=True)
class SignatureValue:
    y: HeisenbergLikeElement
    alpha: HeisenbergLikeElement
    n_j: int

    def to_json(self) -> dict:
        return {"y": heis_to_json(self.y), "alpha": heis_to_json(self.alpha), "n_j": int_to_str(self.n_j)}

    @classmethod
    def from_json(cls, platform: MetabelianPlatform, d: dict) -> "SignatureValue":
        try:
            return cls(heis_from_json(platform, d["y"]), heis_from_json(platform, d["alpha"]), str_to_int(d["n_j"]))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise MalformedSignature(f"cannot parse signature: {exc}") from exc


def encode_element(y: HeisenbergLikeElement) -> bytes:
    """The public encoding ``f: G -> {0,1}*``."""
    return y.to_bytes()


def hash_to_group(platform: MetabelianPlatform, data: bytes, hash_name: str = DEFAULT_HASH) -> HeisenbergLikeElement:
    """``H: {0,1}* -> G``; vector entries below 2^64, shift in ``[1, 2^16]``."""
    d = hashlib.new(hash_name, b"groupcrypt/H/v1" + data).digest()
    if len(d) < 18:
        raise ValueError(f"hash {hash_name} is too short for hashing to the group")
    a = int.from_bytes(d[0:8], "big")
    b = int.from_bytes(d[8:16], "big")
    shift = 1 + int.from_bytes(d[16:18], "big") % HASH_SHIFT_BOUND
    return platform.element((a, b), shift)


def message_hash(platform: MetabelianPlatform, message: bytes, y: HeisenbergLikeElement, hash_name: str = DEFAULT_HASH):
    """``H(m || f(y))`` with the message length-prefixed."""
    return hash_to_group(platform, len(message).to_bytes(8, "big") + message + encode_element(y), hash_name)


def _highly_composite(rng: random.Random) -> Tuple[int, ...]:
    while True:
        factors = tuple(sorted(rng.choice(SMALL_PRIMES) for _ in range(rng.randint(4, 8))))
        prod = 1
        for f in factors:
            prod *= f
        if prod <= MAX_N:
            return factors


def sig_keygen(
    rng: random.Random,
    bits: int = 64,
    platform: Optional[MetabelianPlatform] = None,
    s: Optional[HeisenbergLikeElement] = None,
) -> SignatureKeys:
    """Key pair: ``g = ((0,0), 1)`` (centralizer ``<g>``), random ``s`` and composite ``n``."""
    platform = platform or MetabelianPlatform()
    g = platform.element((0, 0), 1)
    factors = _highly_composite(rng)
    n = 1
    for f in factors:
        n *= f
    if s is None:
        vec = (rng.getrandbits(bits), rng.getrandbits(bits))
        shift = rng.choice((1, -1)) * rng.randint(1, SHIFT_BOUND)
        s = platform.element(vec, shift)
    x = heis_conj(heis_pow(g, n), s)
    return SignatureKeys(g, x, s, n, factors)


def split_exponent(factors: Tuple[int, ...], rng: random.Random) -> Tuple[int, int]:
    """Random ``n = n_i * n_j`` with both parts > 1, by splitting the prime factors."""
    k = len(factors)
    if k < 2:
        raise ValueError("need at least two prime factors to split")
    while True:
        mask = rng.getrandbits(k)
        if 0 < mask < (1 << k) - 1:
            break
    n_i = n_j = 1
    for idx, f in enumerate(factors):
        if mask >> idx & 1:
            n_i *= f
        else:
            n_j *= f
    return n_i, n_j


def sig_sign(
    keys: SignatureKeys, message: bytes, rng: random.Random, hash_name: str = DEFAULT_HASH, bits: int = 64
) -> SignatureValue:
    platform = keys.g.platform
    n_i, n_j = split_exponent(keys.factors, rng)
    t = platform.element(
        (rng.getrandbits(bits), rng.getrandbits(bits)), rng.choice((1, -1)) * rng.randint(1, SHIFT_BOUND)
    )
    y = heis_conj(heis_pow(keys.g, n_i), t)
    h = message_hash(platform, message, y, hash_name)
    alpha = heis_mul(heis_mul(heis_mul(heis_inv(t), keys.s), h), y)
    return SignatureValue(y, alpha, n_j)


def sig_verify(
    g: HeisenbergLikeElement,
    x: HeisenbergLikeElement,
    message: bytes,
    sig: SignatureValue,
    hash_name: str = DEFAULT_HASH,
) -> bool:
    if not isinstance(sig.n_j, int) or sig.n_j <= 0:
        raise MalformedSignature(f"n_j must be a positive integer, got {sig.n_j!r}")
    if sig.y.platform != g.platform or sig.alpha.platform != g.platform:
        raise MalformedSignature("signature elements live on a different platform")
    h = message_hash(g.platform, message, sig.y, hash_name)
    lhs = heis_conj(heis_pow(sig.y, sig.n_j), sig.alpha)
    rhs = heis_conj(x, heis_mul(h, sig.y))
    return lhs == rhs
