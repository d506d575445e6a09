"""Multiparty key exchanges from iterated commutators in U_m(F_p).

In a nilpotent group of class ``c`` the weight-``c`` commutator is
multilinear, ``[g1^a1, ..., gc^ac] = [g1, ..., gc]^(a1...ac)``, which lets
every user reach the same key from published powers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..errors import DegeneratePlatform
from ..polycyclic.commutators import commutator, engel_word
from ..polycyclic.platforms import UnitriangularMatrix
from ..serialize import unitri_to_json
from .transcript import Transcript, encode_json


@dataclass
class MultipartyResult:
    keys: List[UnitriangularMatrix]
    closed_form: UnitriangularMatrix
    transcript: Transcript
    exponents: List[int]

    @property
    def agreed(self) -> bool:
        return all(k == self.closed_form for k in self.keys)


def _private_exponents(rng: random.Random, count: int, p: int) -> List[int]:
    return [rng.randint(1, p * p) for _ in range(count)]


def _product(xs: Sequence[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def ktt_exchange(
    p: int,
    n: int,
    rng: random.Random,
    exponents: Optional[Sequence[int]] = None,
    x: Optional[UnitriangularMatrix] = None,
    g: Optional[UnitriangularMatrix] = None,
) -> MultipartyResult:
    """``n + 1`` users agree on ``[x, _n g]^(a_1 ... a_{n+1})`` in U_{n+2}(F_p)."""
    if n < 1:
        raise ValueError("need n >= 1")
    m = n + 2
    if x is None or g is None:
        for _ in range(1000):
            x, g = UnitriangularMatrix.random(rng, m, p), UnitriangularMatrix.random(rng, m, p)
            if not engel_word(x, g, n).is_identity():
                break
    base = engel_word(x, g, n)
    if base.is_identity():
        raise DegeneratePlatform(f"[x, _{n} g] is trivial")
    a = list(exponents) if exponents is not None else _private_exponents(rng, n + 1, p)
    if len(a) != n + 1 or any(v == 0 for v in a):
        raise ValueError(f"need {n + 1} nonzero private exponents")

    transcript = Transcript("ktt-multiparty")
    transcript.append("public", "x", encode_json(unitri_to_json(x)))
    transcript.append("public", "g", encode_json(unitri_to_json(g)))
    published = []
    for j, aj in enumerate(a, 1):
        gj = g ** aj
        published.append(gj)
        transcript.append(f"User_{j}", f"g^a{j}", encode_json(unitri_to_json(gj)))

    keys = []
    for j in range(len(a)):
        others = published[:j] + published[j + 1:]
        keys.append(commutator(x ** a[j], *others))
    return MultipartyResult(keys, base ** _product(a), transcript, a)


def ks_slot_exponents(k: int, n: int) -> List[int]:
    """Indices (0-based) of the exponents user ``k`` places in slots ``1..n``.

    Slot ``i`` takes ``a_i``, except that user ``k``'s own slot takes ``a_{n+1}``.
    """
    return [n if i == k else i for i in range(n)]


def ks_nike(
    p: int,
    n: int,
    rng: random.Random,
    exponents: Optional[Sequence[int]] = None,
    gens: Optional[Sequence[UnitriangularMatrix]] = None,
) -> MultipartyResult:
    """Non-interactive exchange for ``n + 1`` users in U_{n+1}(F_p) (class ``n``).

    User ``k`` computes ``[g_1^{a_.}, ..., g_n^{a_.}]^{a_k}`` from the published
    powers ``g_i^{a_j}``; all users reach ``[g_1, ..., g_n]^(a_1 ... a_{n+1})``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    m = n + 1
    if gens is None:
        for _ in range(1000):
            gens = [UnitriangularMatrix.random(rng, m, p) for _ in range(n)]
            if not commutator(*gens).is_identity():
                break
    gens = list(gens)
    base = commutator(*gens)
    if base.is_identity():
        raise DegeneratePlatform("[g_1, ..., g_n] is trivial")
    a = list(exponents) if exponents is not None else _private_exponents(rng, n + 1, p)
    if len(a) != n + 1:
        raise ValueError(f"need {n + 1} private exponents")

    transcript = Transcript("ks-nike")
    for i, gi in enumerate(gens, 1):
        transcript.append("public", f"g{i}", encode_json(unitri_to_json(gi)))
    # the single round: everyone publishes g_i^{a_j}
    shared = [[gi ** aj for aj in a] for gi in gens]
    for j in range(n + 1):
        payload = [unitri_to_json(shared[i][j]) for i in range(n)]
        transcript.append(f"User_{j + 1}", f"powers{j + 1}", encode_json(payload))

    keys = []
    for k in range(n + 1):
        slots = [shared[i][e] for i, e in enumerate(ks_slot_exponents(k, n))]
        keys.append(commutator(*slots) ** a[k])
    return MultipartyResult(keys, base ** _product(a), transcript, a)
