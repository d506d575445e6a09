"""Right-angled Artin groups A(Γ): pilings, normal forms and the decision problems.

The piling of a word keeps one stack per generator. Pushing ``x_v^±`` puts the
sign on stack ``v`` and a ``0`` on the stack of every generator not commuting
with ``v``; if stack ``v`` already shows the opposite sign the letter cancels
instead. Everything above ``v``'s top letter on a blocking stack is then a
``0``, so the cancellation pops exactly one token from each of those stacks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, Iterable, List, Sequence, Tuple

from . import graphs
from .errors import GeneratorOutOfRange, SizeLimit
from .graphs import SimplicialGraph
from .words import Letter, Word, free_reduce_letters, invert

CONJUGACY_ORBIT_LIMIT = 200_000


@dataclass(frozen=True)
class RaagGroup:
    graph: SimplicialGraph

    @property
    def rank(self) -> int:
        return self.graph.n

    def blockers(self, v: int) -> Tuple[int, ...]:
        """Generators other than ``v`` that do not commute with it."""
        return _blockers(self.graph)[v]

    def check(self, w: Iterable[Letter]) -> Word:
        w = tuple(w)
        for g, s in w:
            if not 0 <= g < self.graph.n:
                raise GeneratorOutOfRange(f"generator {g} not in 0..{self.graph.n - 1}")
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
        return w


_BLOCKER_CACHE: Dict[SimplicialGraph, Tuple[Tuple[int, ...], ...]] = {}


def _blockers(graph: SimplicialGraph) -> Tuple[Tuple[int, ...], ...]:
    table = _BLOCKER_CACHE.get(graph)
    if table is None:
        table = tuple(
            tuple(u for u in range(graph.n) if u != v and not graph.has_edge(u, v)) for v in range(graph.n)
        )
        if len(_BLOCKER_CACHE) > 4096:
            _BLOCKER_CACHE.clear()
        _BLOCKER_CACHE[graph] = table
    return table


class Piling:
    """Per-generator stacks with entries in {+1, -1, 0}; the top is the end of each list."""

    def __init__(self, group: RaagGroup):
        self.group = group
        self.stacks: List[List[int]] = [[] for _ in range(group.rank)]
        self._blockers = _blockers(group.graph)

    @classmethod
    def of(cls, group: RaagGroup, w: Iterable[Letter]) -> "Piling":
        p = cls(group)
        p.push_word(w)
        return p

    def push(self, v: int, sign: int) -> None:
        stacks = self.stacks
        own = stacks[v]
        if own and own[-1] == -sign:
            own.pop()
            for u in self._blockers[v]:
                stacks[u].pop()
        else:
            own.append(sign)
            for u in self._blockers[v]:
                stacks[u].append(0)

    def push_word(self, w: Iterable[Letter]) -> None:
        stacks, blockers = self.stacks, self._blockers
        for v, sign in w:
            own = stacks[v]
            if own and own[-1] == -sign:
                own.pop()
                for u in blockers[v]:
                    stacks[u].pop()
            else:
                own.append(sign)
                for u in blockers[v]:
                    stacks[u].append(0)

    def is_empty(self) -> bool:
        return not any(self.stacks)

    def size(self) -> int:
        """Number of letters (nonzero tokens) in the piling."""
        return sum(1 for s in self.stacks for t in s if t)

    def snapshot(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(s) for s in self.stacks)

    def minimal_letters(self) -> List[Letter]:
        """Letters that can start a geodesic for this element."""
        return [(v, s[0]) for v, s in enumerate(self.stacks) if s and s[0]]

    def read(self) -> Word:
        """Lexicographically least geodesic: repeatedly take the least exposed bottom letter."""
        stacks = [deque(s) for s in self.stacks]
        return _depile(stacks, self._blockers)

    def cyclically_reduce(self) -> None:
        """Cancel letters that are simultaneously first and, inverted, last."""
        stacks = [deque(s) for s in self.stacks]
        blockers = self._blockers
        changed = True
        while changed:
            changed = False
            for v, s in enumerate(stacks):
                if len(s) >= 2 and s[0] and s[0] == -s[-1]:
                    s.popleft()
                    s.pop()
                    for u in blockers[v]:
                        stacks[u].popleft()
                        stacks[u].pop()
                    changed = True
                    break
        self.stacks = [list(s) for s in stacks]


def _depile(stacks: List[Deque[int]], blockers) -> Word:
    out: List[Letter] = []
    while True:
        for v, s in enumerate(stacks):
            if s and s[0]:
                out.append((v, s.popleft()))
                for u in blockers[v]:
                    stacks[u].popleft()
                break
        else:
            return tuple(out)


def push_letter(p: Piling, v: int, sign: int) -> Piling:
    """Functional form of :meth:`Piling.push`; the input piling is left untouched."""
    q = Piling(p.group)
    q.stacks = [list(s) for s in p.stacks]
    q.push(v, sign)
    return q


def free_reduce(g: RaagGroup, w: Sequence[Letter]) -> Word:
    return free_reduce_letters(g.check(w))


def is_trivial(g: RaagGroup, w: Sequence[Letter]) -> bool:
    """Word problem, linear in ``len(w)`` for a fixed graph."""
    return Piling.of(g, g.check(w)).is_empty()


def normal_form(g: RaagGroup, w: Sequence[Letter]) -> Word:
    """Lexicographically least geodesic under ``x0 < x0^-1 < x1 < ...``."""
    return Piling.of(g, g.check(w)).read()


def geodesic_length(g: RaagGroup, w: Sequence[Letter]) -> int:
    return Piling.of(g, g.check(w)).size()


def equal(g: RaagGroup, w1: Sequence[Letter], w2: Sequence[Letter]) -> bool:
    return is_trivial(g, tuple(w1) + invert(w2))


def cyclic_reduction(g: RaagGroup, w: Sequence[Letter]) -> Word:
    """Normal form of a cyclically reduced conjugate of ``w``."""
    p = Piling.of(g, g.check(w))
    p.cyclically_reduce()
    return p.read()


def conjugacy_orbit(g: RaagGroup, w: Sequence[Letter], limit: int = CONJUGACY_ORBIT_LIMIT) -> set:
    """Normal forms reachable from a cyclically reduced ``w`` by cyclic shifts and commutations.

    Each step moves one minimal letter from the front to the back.
    """
    start = cyclic_reduction(g, w)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        p = Piling.of(g, cur)
        for letter in p.minimal_letters():
            nxt = normal_form(g, ((letter[0], -letter[1]),) + cur + (letter,))
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise SizeLimit(f"conjugacy orbit exceeds {limit} elements")
                queue.append(nxt)
    return seen


def are_conjugate(
    g: RaagGroup, w1: Sequence[Letter], w2: Sequence[Letter], limit: int = CONJUGACY_ORBIT_LIMIT
) -> bool:
    c1, c2 = cyclic_reduction(g, w1), cyclic_reduction(g, w2)
    if len(c1) != len(c2):
        return False
    if sorted(c1) != sorted(c2):
        return False
    if c1 == c2:
        return True
    return c2 in conjugacy_orbit(g, c1, limit)


def raag_isomorphic(g1: RaagGroup, g2: RaagGroup, bound: int = graphs.HOMOMORPHISM_BOUND) -> bool:
    """A(Γ1) ≅ A(Γ2) exactly when Γ1 ≅ Γ2."""
    return graphs.are_isomorphic(g1.graph, g2.graph, bound)


def direct_product_decomposition(g: RaagGroup) -> List[RaagGroup]:
    """Indecomposable direct factors, one per join factor of the graph."""
    if g.rank == 0:
        return [g]
    return [RaagGroup(g.graph.induced(f)) for f in graphs.join_decompose(g.graph).factors]


@dataclass(frozen=True)
class CohomologyTriple:
    """(H^1, H^2, cup) over the two-element field.

    ``pairing[i][j]`` is 0 or the 1-based W-coordinate of edge ``{i, j}``; edges
    are numbered in sorted order.
    """

    dim_v: int
    dim_w: int
    pairing: Tuple[Tuple[int, ...], ...]

    @property
    def basis_labels(self) -> List[str]:
        return [f"v{i}*" for i in range(self.dim_v)]

    def cup(self, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
        """Bilinear pairing of two F2-vectors in V, as an F2-vector in W."""
        out = [0] * self.dim_w
        for i in range(self.dim_v):
            if not x[i]:
                continue
            for j in range(self.dim_v):
                k = self.pairing[i][j]
                if k and y[j]:
                    out[k - 1] ^= 1
        return tuple(out)


def cohomology_triple(g: RaagGroup) -> CohomologyTriple:
    n = g.rank
    table = [[0] * n for _ in range(n)]
    edges = g.graph.sorted_edges()
    for k, (u, v) in enumerate(edges, 1):
        table[u][v] = table[v][u] = k
    return CohomologyTriple(n, len(edges), tuple(map(tuple, table)))


def is_hamiltonian_triple(t: CohomologyTriple, bound: int = graphs.HAMILTONIAN_BOUND) -> bool:
    """Is there a cyclic ordering of the standard basis with every consecutive cup product nonzero?

    Held-Karp over subsets of basis vectors, evaluating the pairing itself.
    """
    n = t.dim_v
    if n > bound:
        raise SizeLimit(f"Hamiltonian triple check limited to {bound} basis vectors, got {n}")
    if n < 3:
        return False
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    linked = [[any(t.cup(basis[i], basis[j])) for j in range(n)] for i in range(n)]
    # reach[mask] = bitset of end vertices of paths from 0 covering mask
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, 1 << n):
        ends = reach[mask]
        if not ends or not mask & 1:
            continue
        for v in range(n):
            if not ends >> v & 1:
                continue
            for u in range(n):
                if not mask >> u & 1 and linked[v][u]:
                    reach[mask | 1 << u] |= 1 << u
    full = reach[(1 << n) - 1]
    return any(full >> v & 1 and linked[v][0] for v in range(1, n))
