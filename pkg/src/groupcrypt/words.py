"""Group words over indexed generators.

A word is a tuple of letters ``(generator, sign)`` with ``sign`` in ``{+1, -1}``.
The text form is whitespace-separated tokens: ``a2`` is generator 2 and ``A2``
its inverse.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence, Tuple

Letter = Tuple[int, int]
Word = Tuple[Letter, ...]


def word(letters: Iterable[Sequence[int]]) -> Word:
    return tuple((int(g), int(s)) for g, s in letters)


def parse_word(text: str) -> Word:
    """Parse ``"a0 a1 A0"`` into a word. Empty or whitespace-only text is the identity."""
    letters = []
    for token in text.split():
        head, index = token[0], token[1:]
        if head not in "aA" or not index.isdigit():
            raise ValueError(f"bad word token {token!r}; expected a<index> or A<index>")
        letters.append((int(index), 1 if head == "a" else -1))
    return tuple(letters)


def format_word(w: Sequence[Letter]) -> str:
    return " ".join(f"{'a' if s > 0 else 'A'}{g}" for g, s in w)


def invert(w: Sequence[Letter]) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def power(w: Sequence[Letter], k: int) -> Word:
    if k < 0:
        return tuple(invert(w)) * (-k)
    return tuple(w) * k


def free_reduce_letters(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, s in w:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def random_word(rng: random.Random, n_generators: int, length: int, reduced: bool = False) -> Word:
    """Uniform random word; with ``reduced=True`` no letter is followed by its inverse."""
    letters: list[Letter] = []
    while len(letters) < length:
        letter = (rng.randrange(n_generators), rng.choice((1, -1)))
        if reduced and letters and letters[-1] == (letter[0], -letter[1]):
            continue
        letters.append(letter)
    return tuple(letters)


def exponent_sums(w: Iterable[Letter], n_generators: int) -> Tuple[int, ...]:
    sums = [0] * n_generators
    for g, s in w:
        sums[g] += s
    return tuple(sums)
