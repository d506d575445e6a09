"""Finite simplicial graphs and the exhaustive graph searches the group layer reduces to.

Vertices are the integers ``0..n-1``. All searches visit vertices in ascending
order, so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from random import Random
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import SizeLimit

Edge = Tuple[int, int]

HOMOMORPHISM_BOUND = 12
HAMILTONIAN_BOUND = 10


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimplicialGraph:
    n: int
    edges: FrozenSet[Edge] = frozenset()
    _adj: Tuple[FrozenSet[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normed = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v in normed:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> "SimplicialGraph":
        return cls(n, frozenset(_norm(int(u), int(v)) for u, v in edges))

    @classmethod
    def complete(cls, n: int) -> "SimplicialGraph":
        return cls(n, frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> "SimplicialGraph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "SimplicialGraph":
        return cls(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))

    @classmethod
    def random(cls, rng: Random, n: int, p: float = 0.5) -> "SimplicialGraph":
        return cls(n, frozenset(e for e in itertools.combinations(range(n), 2) if rng.random() < p))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def induced(self, vertices: Sequence[int]) -> "SimplicialGraph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        return SimplicialGraph(
            len(vertices),
            frozenset(_norm(index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def relabel(self, perm: Sequence[int]) -> "SimplicialGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return SimplicialGraph(self.n, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges))

    # text format: first line n, then "u v" per edge, '#' comments
    def to_text(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SimplicialGraph":
        rows = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append((lineno, line.split()))
        if not rows:
            raise ValueError("graph file is empty")
        lineno, head = rows[0]
        if len(head) != 1 or not head[0].isdigit():
            raise ValueError(f"line {lineno}: expected vertex count, got {' '.join(head)!r}")
        edges = []
        for lineno, parts in rows[1:]:
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise ValueError(f"line {lineno}: expected 'u v', got {' '.join(parts)!r}")
            edges.append((int(parts[0]), int(parts[1])))
        return cls.from_edges(int(head[0]), edges)


@dataclass(frozen=True)
class GraphMap:
    source: SimplicialGraph
    target: SimplicialGraph
    image: Tuple[int, ...]

    def is_valid(self) -> bool:
        if len(self.image) != self.source.n:
            return False
        if any(not 0 <= x < self.target.n for x in self.image):
            return False
        return all(
            self.image[u] != self.image[v] and self.target.has_edge(self.image[u], self.image[v])
            for u, v in self.source.edges
        )

    def is_induced_embedding(self) -> bool:
        if not self.is_valid() or len(set(self.image)) != len(self.image):
            return False
        return all(
            self.source.has_edge(u, v) == self.target.has_edge(self.image[u], self.image[v])
            for u, v in itertools.combinations(range(self.source.n), 2)
        )

    def compose(self, after: "GraphMap") -> "GraphMap":
        """``after ∘ self``: first apply this map, then ``after``."""
        return GraphMap(self.source, after.target, tuple(after.image[x] for x in self.image))


@dataclass(frozen=True)
class JoinDecomposition:
    factors: Tuple[Tuple[int, ...], ...]


def complement(g: SimplicialGraph) -> SimplicialGraph:
    return SimplicialGraph(
        g.n, frozenset(e for e in itertools.combinations(range(g.n), 2) if e not in g.edges)
    )


def connected_components(g: SimplicialGraph) -> List[Tuple[int, ...]]:
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(tuple(sorted(comp)))
    return comps


def join_decompose(g: SimplicialGraph) -> JoinDecomposition:
    """Split ``g`` into join factors: the connected components of its complement."""
    if g.n < 1:
        raise ValueError("join decomposition needs at least one vertex")
    return JoinDecomposition(tuple(connected_components(complement(g))))


def join(*graphs: SimplicialGraph) -> Tuple[SimplicialGraph, List[Tuple[int, ...]]]:
    """Join of graphs, with each input occupying a consecutive block of vertices."""
    offset, blocks, edges = 0, [], set()
    for h in graphs:
        block = tuple(range(offset, offset + h.n))
        edges.update((u + offset, v + offset) for u, v in h.edges)
        for prev in blocks:
            edges.update((u, v) for u in prev for v in block)
        blocks.append(block)
        offset += h.n
    return SimplicialGraph(offset, frozenset(edges)), blocks


def _check_bound(n: int, bound: int, what: str) -> None:
    if n > bound:
        raise SizeLimit(f"{what} limited to {bound} vertices, got {n}")


def find_graph_homomorphism(
    src: SimplicialGraph, dst: SimplicialGraph, bound: int = HOMOMORPHISM_BOUND
) -> Optional[GraphMap]:
    """Backtracking search for a vertex map sending edges to edges, or ``None``."""
    _check_bound(src.n, bound, "homomorphism search")
    image = [-1] * src.n

    def extend(v: int) -> bool:
        if v == src.n:
            return True
        earlier = [u for u in src.neighbors(v) if u < v]
        for x in range(dst.n):
            if all(dst.has_edge(image[u], x) for u in earlier):
                image[v] = x
                if extend(v + 1):
                    return True
        image[v] = -1
        return False

    return GraphMap(src, dst, tuple(image)) if extend(0) else None


def find_induced_embedding(
    sub: SimplicialGraph, host: SimplicialGraph, bound: int = HOMOMORPHISM_BOUND
) -> Optional[GraphMap]:
    """Injective map preserving both edges and non-edges, or ``None``."""
    _check_bound(sub.n, bound, "embedding search")
    if sub.n > host.n:
        return None
    image = [-1] * sub.n
    used = [False] * host.n

    def extend(v: int) -> bool:
        if v == sub.n:
            return True
        for x in range(host.n):
            if used[x]:
                continue
            if all(sub.has_edge(u, v) == host.has_edge(image[u], x) for u in range(v)):
                image[v], used[x] = x, True
                if extend(v + 1):
                    return True
                used[x] = False
        image[v] = -1
        return False

    return GraphMap(sub, host, tuple(image)) if extend(0) else None


def hamiltonian_cycle(g: SimplicialGraph, bound: int = HAMILTONIAN_BOUND) -> Optional[Tuple[int, ...]]:
    """A Hamiltonian cycle starting at vertex 0, or ``None`` if none exists.

    Graphs with fewer than three vertices have no cycle.
    """
    _check_bound(g.n, bound, "Hamiltonian search")
    if g.n < 3:
        return None
    if any(g.degree(v) < 2 for v in range(g.n)):
        return None
    path = [0]
    on_path = [False] * g.n
    on_path[0] = True

    def extend() -> bool:
        if len(path) == g.n:
            return g.has_edge(path[-1], 0)
        for x in sorted(g.neighbors(path[-1])):
            if not on_path[x]:
                on_path[x] = True
                path.append(x)
                if extend():
                    return True
                path.pop()
                on_path[x] = False
        return False

    return tuple(path) if extend() else None


def is_hamiltonian_cycle(g: SimplicialGraph, cycle: Sequence[int]) -> bool:
    if len(cycle) != g.n or sorted(cycle) != list(range(g.n)) or g.n < 3:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


def are_isomorphic(g1: SimplicialGraph, g2: SimplicialGraph, bound: int = HOMOMORPHISM_BOUND) -> bool:
    """Exhaustive graph isomorphism test with degree pruning."""
    _check_bound(max(g1.n, g2.n), bound, "isomorphism search")
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    if sorted(map(g1.degree, range(g1.n))) != sorted(map(g2.degree, range(g2.n))):
        return False
    image = [-1] * g1.n
    used = [False] * g2.n

    def extend(v: int) -> bool:
        if v == g1.n:
            return True
        for x in range(g2.n):
            if used[x] or g2.degree(x) != g1.degree(v):
                continue
            if all(g1.has_edge(u, v) == g2.has_edge(image[u], x) for u in range(v)):
                image[v], used[x] = x, True
                if extend(v + 1):
                    return True
                used[x] = False
        return False

    return extend(0)
