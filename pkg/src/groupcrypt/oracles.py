"""Brute-force oracles used to audit the fast algorithms.

None of these share code with the piling machinery in :mod:`groupcrypt.raag`;
they work directly on words with rewriting moves. Each one answers definitely
or raises :class:`OracleExhausted` when its budget runs out.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import OracleExhausted
from .graphs import SimplicialGraph
from .words import Letter, Word, exponent_sums, invert, power


@dataclass(frozen=True)
class OracleBudget:
    max_word_length: int = 40
    max_exponent: int = 8
    max_group_size: int = 10**6
    step_ceiling: int = 2_000_000

    def __post_init__(self):
        for name in ("max_word_length", "max_exponent", "max_group_size", "step_ceiling"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_BUDGET = OracleBudget()


def _cancel_in_class(graph: SimplicialGraph, w: Word, budget: OracleBudget, spent: List[int]) -> Optional[Word]:
    """Breadth-first search of the commutation class of ``w`` for an adjacent ``x x^-1``.

    Returns that word with the pair deleted, or ``None`` if the class has none.
    """
    seen = {w}
    queue = deque([w])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            (g, s), (h, t) = cur[i], cur[i + 1]
            if g == h and s == -t:
                return cur[:i] + cur[i + 2:]
        for i in range(len(cur) - 1):
            (g, _), (h, _) = cur[i], cur[i + 1]
            if g != h and graph.has_edge(g, h):
                nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2:]
                if nxt not in seen:
                    spent[0] += 1
                    if spent[0] > budget.step_ceiling:
                        raise OracleExhausted("word oracle closure exceeded its step ceiling")
                    seen.add(nxt)
                    queue.append(nxt)
    return None


def _cancel_by_dependency(graph: SimplicialGraph, w: Word, budget: OracleBudget, spent: List[int]) -> Optional[Word]:
    """Same answer as :func:`_cancel_in_class` without enumerating the class.

    Positions ``i < j`` can be made adjacent by commuting swaps exactly when no
    position ``k`` between them is forced there, i.e. ``i -> k -> j`` in the
    dependency order (letters that do not commute keep their relative order).
    """
    n = len(w)
    reach = [0] * n
    for i in range(n - 1, -1, -1):
        g = w[i][0]
        acc = 0
        for j in range(i + 1, n):
            h = w[j][0]
            if g == h or not graph.has_edge(g, h):
                acc |= (1 << j) | reach[j]
        reach[i] = acc
    spent[0] += n * n
    if spent[0] > budget.step_ceiling:
        raise OracleExhausted("word oracle exceeded its step ceiling")
    for i in range(n):
        g, s = w[i]
        for j in range(i + 1, n):
            if w[j][0] != g:
                continue
            # the next occurrence of g; anything later is blocked by it
            if w[j][1] == -s and not any(reach[i] >> k & 1 and reach[k] >> j & 1 for k in range(i + 1, j)):
                return w[:i] + w[i + 1:j] + w[j + 1:]
            break
    return None


def word_oracle(
    graph: SimplicialGraph,
    w: Sequence[Letter],
    budget: OracleBudget = DEFAULT_BUDGET,
    method: str = "dependency",
) -> bool:
    """Decide triviality by closure under commuting swaps and free cancellation.

    The rewriting system (swap adjacent commuting letters, delete ``x x^-1``) is
    confluent modulo swaps, so it is enough to delete any reachable pair and
    continue; the word is trivial exactly when the empty word is reached.
    ``method="bfs"`` enumerates each commutation class literally;
    ``"dependency"`` finds the same pairs from the dependency order.
    """
    cancel = {"bfs": _cancel_in_class, "dependency": _cancel_by_dependency}[method]
    w = tuple(w)
    if len(w) > budget.max_word_length:
        raise OracleExhausted(f"word length {len(w)} exceeds budget {budget.max_word_length}")
    if any(exponent_sums(w, graph.n)):
        return False
    spent = [0]
    while w:
        w = cancel(graph, w, budget, spent)
        if w is None:
            return False
    return True


def _words_up_to(n_generators: int, length: int):
    """Freely reduced words in order of length, then lexicographically."""
    letters = [(g, s) for g in range(n_generators) for s in (1, -1)]
    yield ()
    frontier: List[Word] = [()]
    for _ in range(length):
        nxt = []
        for w in frontier:
            for letter in letters:
                if w and w[-1] == (letter[0], -letter[1]):
                    continue
                nxt.append(w + (letter,))
        yield from nxt
        frontier = nxt


def conjugacy_oracle(
    graph: SimplicialGraph,
    w1: Sequence[Letter],
    w2: Sequence[Letter],
    max_conj_len: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Optional[Word]:
    """First conjugator ``c`` (shortest, then lexicographic) with ``c^-1 w1 c = w2``, else ``None``.

    ``None`` only means no conjugator of length ``<= max_conj_len`` exists.
    """
    w1, w2 = tuple(w1), tuple(w2)
    # conjugates share exponent sums; skip the scan when they differ
    if exponent_sums(w1, graph.n) != exponent_sums(w2, graph.n):
        return None
    target = invert(w2)
    for c in _words_up_to(graph.n, max_conj_len):
        if word_oracle(graph, invert(c) + w1 + c + target, budget):
            return c
    return None


def gdlp_bruteforce(
    xs: Sequence,
    orders: Sequence[int],
    y,
    identity,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Optional[Tuple[int, ...]]:
    """Exhaustive search for ``a`` with ``x_1^{a_1} ... x_n^{a_n} = y``, ``0 <= a_i < |x_i|``."""
    total = 1
    for r in orders:
        total *= r
    if total > budget.max_group_size:
        raise OracleExhausted(f"search space {total} exceeds budget {budget.max_group_size}")
    powers = []
    for x, r in zip(xs, orders):
        row, acc = [], identity
        for _ in range(r):
            row.append(acc)
            acc = acc * x
        powers.append(row)
    for a in itertools.product(*(range(r) for r in orders)):
        acc = identity
        for row, e in zip(powers, a):
            acc = acc * row[e]
        if acc == y:
            return a
    return None


def power_match_oracle(
    graph: SimplicialGraph,
    x: Sequence[Letter],
    y: Sequence[Letter],
    max_exp: int,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> Optional[Tuple[int, int]]:
    """Smallest ``(k, l)`` in scan order with ``x^k = y^l`` and ``1 <= k, l <= max_exp``."""
    if max_exp > budget.max_exponent:
        raise OracleExhausted(f"exponent bound {max_exp} exceeds budget {budget.max_exponent}")
    for k in range(1, max_exp + 1):
        for l in range(1, max_exp + 1):
            if word_oracle(graph, power(x, k) + power(y, -l), budget):
                return (k, l)
    return None
