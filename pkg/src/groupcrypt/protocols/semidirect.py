"""Key exchange in the semidirect product of a (semi)group with its endomorphisms.

Pairs multiply as ``(g, φ^r)(h, φ^s) = (φ^s(g) h, φ^{r+s})``. Each party
raises ``(g, φ)`` to a private power and publishes only the first component.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Any, Callable, Optional, Tuple

from ..errors import PlatformLawViolation
from .transcript import Transcript, encode_json


@dataclass
class SemidirectPlatform:
    """A semigroup with a public element ``g`` and endomorphism ``phi``.

    ``phi_power(a, s)`` computes ``φ^s(a)``; supply a fast version when ``s``
    can be large. ``sample`` draws random elements for the law checks and
    ``encode`` turns elements into bytes for the transcript.
    """

    mul: Callable[[Any, Any], Any]
    phi: Callable[[Any], Any]
    g: Any
    encode: Callable[[Any], bytes]
    phi_power: Optional[Callable[[Any, int], Any]] = None
    sample: Optional[Callable[[random.Random], Any]] = None
    name: str = "custom"

    def __post_init__(self):
        if self.phi_power is None:
            self.phi_power = self._iterate_phi

    def _iterate_phi(self, a, s: int):
        for _ in range(s):
            a = self.phi(a)
        return a

    def pair_mul(self, x: Tuple[Any, int], y: Tuple[Any, int]) -> Tuple[Any, int]:
        (a, r), (b, s) = x, y
        return (self.mul(self.phi_power(a, s), b), r + s)

    def pair_power(self, m: int) -> Tuple[Any, int]:
        """``(g, φ)^m`` by square-and-multiply on pairs."""
        if m < 1:
            raise ValueError("exponent must be positive")
        result = None
        base = (self.g, 1)
        while m:
            if m & 1:
                result = base if result is None else self.pair_mul(result, base)
            m >>= 1
            if m:
                base = self.pair_mul(base, base)
        return result

    def check_laws(self, rng: random.Random, trials: int = 4) -> None:
        if self.sample is None:
            return
        for _ in range(trials):
            a, b, c = self.sample(rng), self.sample(rng), self.sample(rng)
            if self.phi(self.mul(a, b)) != self.mul(self.phi(a), self.phi(b)):
                raise PlatformLawViolation(f"{self.name}: phi is not multiplicative")
            r, s, t = (rng.randint(0, 5) for _ in range(3))
            x, y, z = (a, r), (b, s), (c, t)
            if self.pair_mul(self.pair_mul(x, y), z) != self.pair_mul(x, self.pair_mul(y, z)):
                raise PlatformLawViolation(f"{self.name}: pair multiplication is not associative")


@dataclass
class KexResult:
    alice_key: Any
    bob_key: Any
    transcript: Transcript

    @property
    def agreed(self) -> bool:
        return self.alice_key == self.bob_key


def semidirect_kex(
    platform: SemidirectPlatform, m: int, n: int, rng: Optional[random.Random] = None
) -> KexResult:
    if m < 1 or n < 1:
        raise ValueError("private exponents must be positive")
    if rng is not None:
        platform.check_laws(rng)
    transcript = Transcript("semidirect-kex")
    a, _ = platform.pair_power(m)
    transcript.append("Alice", "a", platform.encode(a))
    b, _ = platform.pair_power(n)
    transcript.append("Bob", "b", platform.encode(b))
    k_a = platform.mul(platform.phi_power(b, m), a)
    k_b = platform.mul(platform.phi_power(a, n), b)
    return KexResult(k_a, k_b, transcript)


# --- shipped platforms ---------------------------------------------------------

Mat = Tuple[Tuple[int, ...], ...]


def _mat_mul(x: Mat, y: Mat, q: int) -> Mat:
    k = len(x)
    return tuple(tuple(sum(x[i][t] * y[t][j] for t in range(k)) % q for j in range(k)) for i in range(k))


def _mat_pow(x: Mat, e: int, q: int) -> Mat:
    k = len(x)
    result = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    while e:
        if e & 1:
            result = _mat_mul(result, x, q)
        e >>= 1
        if e:
            x = _mat_mul(x, x, q)
    return result


def _det3(a: Mat) -> int:
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def _inv3(a: Mat, q: int) -> Mat:
    det_inv = pow(_det3(a) % q, -1, q)
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c for c in range(3) if c != j]
            minor = a[rows[0]][cols[0]] * a[rows[1]][cols[1]] - a[rows[0]][cols[1]] * a[rows[1]][cols[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    # inverse = adjugate / det, adjugate = transpose of cofactors
    return tuple(tuple(cof[j][i] * det_inv % q for j in range(3)) for i in range(3))


def _random_matrix(rng: random.Random, q: int) -> Mat:
    return tuple(tuple(rng.randrange(q) for _ in range(3)) for _ in range(3))


def matrix_conjugation_platform(rng: random.Random, modulus: int = 100) -> SemidirectPlatform:
    """3x3 matrices over Z_q with ``φ(X) = H^-1 X H`` for a random invertible ``H``."""
    while True:
        h = _random_matrix(rng, modulus)
        if gcd(_det3(h) % modulus, modulus) == 1:
            break
    h_inv = _inv3(h, modulus)

    @lru_cache(maxsize=256)
    def powers(s: int) -> Tuple[Mat, Mat]:
        return _mat_pow(h_inv, s, modulus), _mat_pow(h, s, modulus)

    def phi_power(x: Mat, s: int) -> Mat:
        left, right = powers(s)
        return _mat_mul(_mat_mul(left, x, modulus), right, modulus)

    return SemidirectPlatform(
        mul=lambda x, y: _mat_mul(x, y, modulus),
        phi=lambda x: phi_power(x, 1),
        g=_random_matrix(rng, modulus),
        encode=lambda x: encode_json([list(r) for r in x]),
        phi_power=phi_power,
        sample=lambda r: _random_matrix(r, modulus),
        name=f"M3(Z_{modulus}) conjugation",
    )


def modular_power_platform(p: int, g: int, e: int = 1) -> SemidirectPlatform:
    """Multiplicative group mod prime ``p`` with ``φ(x) = x^e``; ``e = 1`` is the identity map."""
    order = p - 1
    return SemidirectPlatform(
        mul=lambda x, y: x * y % p,
        phi=lambda x: pow(x, e, p),
        g=g % p,
        encode=lambda x: encode_json(str(x)),
        phi_power=lambda x, s: pow(x, pow(e, s, order), p),
        sample=lambda r: r.randrange(1, p),
        name=f"Z_{p}^* with x -> x^{e}",
    )
