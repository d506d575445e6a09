"""Iterated commutators and Engel checks, for any elements with ``*``, ``inv`` and ``is_identity``."""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from ..errors import SizeLimit

EXHAUSTIVE_LIMIT = 10**6


def commutator(*xs):
    """Left-normed ``[x1, ..., xn] = [[x1, ..., x_{n-1}], xn]`` with ``[x, y] = x^-1 y^-1 x y``.

    A single argument is returned unchanged.
    """
    if not xs:
        raise ValueError("commutator needs at least one element")
    acc = xs[0]
    for y in xs[1:]:
        acc = acc.inv() * y.inv() * acc * y
    return acc


def engel_word(x, y, n: int):
    """``[x, _n y] = [x, y, ..., y]`` with ``n`` copies of ``y``."""
    if n < 1:
        raise ValueError("Engel length must be at least 1")
    return commutator(x, *([y] * n))


def is_n_engel(elements: Iterable, n: int, sample: Optional[Sequence] = None, limit: int = EXHAUSTIVE_LIMIT) -> bool:
    """Check ``[x, _n y] = 1`` over all pairs.

    With ``sample`` given, ``x`` ranges over ``elements`` and ``y`` over the
    sample (a falsification test only); otherwise ``elements`` must be the whole
    group and the answer is a decision.
    """
    xs = list(elements)
    if sample is None and len(xs) > limit:
        raise SizeLimit(f"exhaustive Engel check limited to groups of order {limit}")
    ys = xs if sample is None else list(sample)
    return all(engel_word(x, y, n).is_identity() for x, y in itertools.product(xs, ys))
