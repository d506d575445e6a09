"""Secret sharing with graph groups.

Scheme 1 hides each participant's bit vector in words that are trivial or not
in that participant's private graph group. Scheme 2 hides bits in whether a
private graph is a nontrivial join, and the secret is ``f(0)`` for the monic
degree-``n`` polynomial through ``(i, b_i)`` over F_p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .. import graphs
from ..errors import DealerCertificationFailure
from ..graphs import SimplicialGraph
from ..raag import RaagGroup, is_trivial
from ..words import Word, format_word, free_reduce_letters, invert, parse_word, random_word


@dataclass(frozen=True)
class Share:
    """Everything participant ``j`` holds: private relators, private vector, public words."""

    relators: Tuple[Tuple[int, int], ...]
    vector: Tuple[int, ...]
    words: Tuple[Word, ...]

    def to_json(self) -> dict:
        return {
            "relators": [list(e) for e in self.relators],
            "vector": list(self.vector),
            "words": [format_word(w) for w in self.words],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Share":
        return cls(
            tuple((int(u), int(v)) for u, v in d["relators"]),
            tuple(int(b) for b in d["vector"]),
            tuple(parse_word(w) for w in d["words"]),
        )


@dataclass(frozen=True)
class ShareBundle:
    n_generators: int
    shares: Tuple[Share, ...]

    def group(self, j: int) -> RaagGroup:
        return RaagGroup(SimplicialGraph.from_edges(self.n_generators, self.shares[j].relators))

    def to_json(self) -> dict:
        return {"generators": self.n_generators, "shares": [s.to_json() for s in self.shares]}

    @classmethod
    def from_json(cls, d: dict) -> "ShareBundle":
        return cls(int(d["generators"]), tuple(Share.from_json(s) for s in d["shares"]))


def _relator(u: int, v: int) -> Word:
    return ((u, 1), (v, 1), (u, -1), (v, -1))


def trivial_word(group: RaagGroup, rng: random.Random) -> Word:
    """Product of 3-10 conjugated relators with conjugators of length <= 6, freely reduced."""
    edges = group.graph.sorted_edges()
    if not edges:
        raise DealerCertificationFailure("a participant group has no relators")
    out: List = []
    for _ in range(rng.randint(3, 10)):
        c = random_word(rng, group.rank, rng.randint(0, 6))
        r = _relator(*rng.choice(edges))
        if rng.random() < 0.5:
            r = invert(r)
        out.extend(invert(c) + r + c)
    return free_reduce_letters(out)


def nontrivial_word(group: RaagGroup, rng: random.Random, tries: int = 1000) -> Word:
    """Random reduced word of length 8-16, resampled until it is nontrivial."""
    for _ in range(tries):
        w = random_word(rng, group.rank, rng.randint(8, 16), reduced=True)
        if not is_trivial(group, w):
            return w
    raise DealerCertificationFailure("could not sample a nontrivial word")


def ss_scheme1_deal(
    k: int, n_participants: int, secret: Sequence[int], n_generators: int, rng: random.Random
) -> ShareBundle:
    secret = tuple(int(b) for b in secret)
    if len(secret) != k or any(b not in (0, 1) for b in secret):
        raise ValueError(f"secret must be a {k}-vector of bits")
    if n_participants < 1:
        raise ValueError("need at least one participant")
    if n_generators < 2:
        raise ValueError("need at least two generators to form commutators")
    vectors = [tuple(rng.randrange(2) for _ in range(k)) for _ in range(n_participants - 1)]
    last = list(secret)
    for v in vectors:
        last = [a ^ b for a, b in zip(last, v)]
    vectors.append(tuple(last))

    shares = []
    for vec in vectors:
        while True:
            graph = SimplicialGraph.random(rng, n_generators)
            if graph.edges:
                break
        group = RaagGroup(graph)
        words = []
        for bit in vec:
            w = trivial_word(group, rng) if bit else nontrivial_word(group, rng)
            if is_trivial(group, w) != bool(bit):
                raise DealerCertificationFailure(f"word {format_word(w)} failed its certification")
            words.append(w)
        shares.append(Share(tuple(graph.sorted_edges()), vec, tuple(words)))
    return ShareBundle(n_generators, tuple(shares))


def decode_share(bundle: ShareBundle, j: int) -> Tuple[int, ...]:
    """Participant ``j`` reads off its vector by solving the word problem."""
    group = bundle.group(j)
    return tuple(int(is_trivial(group, w)) for w in bundle.shares[j].words)


def ss_scheme1_recover(bundle: ShareBundle, participants: Sequence[int] = None) -> Tuple[int, ...]:
    """XOR of the decoded vectors of the given participants (default: all)."""
    idx = range(len(bundle.shares)) if participants is None else participants
    acc = None
    for j in idx:
        v = decode_share(bundle, j)
        acc = v if acc is None else tuple(a ^ b for a, b in zip(acc, v))
    return acc if acc is not None else ()


# --- scheme 2 ------------------------------------------------------------------


def is_nontrivial_join(g: SimplicialGraph) -> bool:
    return len(graphs.join_decompose(g).factors) > 1


def random_join(rng: random.Random, n: int) -> SimplicialGraph:
    """Random graph on ``n >= 2`` vertices that is a nontrivial join, randomly relabelled."""
    k = rng.randint(1, n - 1)
    g, _ = graphs.join(SimplicialGraph.random(rng, k), SimplicialGraph.random(rng, n - k))
    perm = list(range(n))
    rng.shuffle(perm)
    return g.relabel(perm)


def random_indecomposable(rng: random.Random, n: int) -> SimplicialGraph:
    """Random graph whose complement is connected (not a nontrivial join)."""
    while True:
        g = SimplicialGraph.random(rng, n)
        if not is_nontrivial_join(g):
            return g


def monic_interpolation_at_zero(values: Sequence[int], p: int) -> int:
    """``f(0)`` for the monic degree-``n`` ``f`` over F_p with ``f(i) = values[i-1]``.

    ``f = (x-1)...(x-n) + L`` where ``L`` is the Lagrange interpolant of degree < n.
    """
    n = len(values)
    if p <= n:
        raise ValueError("prime must exceed the number of points")
    xs = list(range(1, n + 1))
    lead = 1
    for x in xs:
        lead = lead * (-x) % p
    acc = 0
    for i, (xi, yi) in enumerate(zip(xs, values)):
        num, den = 1, 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * (-xj) % p
                den = den * (xi - xj) % p
        acc = (acc + yi * num * pow(den, -1, p)) % p
    return (lead + acc) % p


@dataclass(frozen=True)
class JoinShares:
    prime: int
    graphs: Tuple[SimplicialGraph, ...]

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "graphs": [{"n": g.n, "edges": [list(e) for e in g.sorted_edges()]} for g in self.graphs],
        }

    @classmethod
    def from_json(cls, d: dict) -> "JoinShares":
        return cls(int(d["prime"]), tuple(SimplicialGraph.from_edges(g["n"], g["edges"]) for g in d["graphs"]))


def ss_scheme2_deal(
    n_participants: int, p: int, rng: random.Random, bits: Sequence[int] = None, graph_size: int = 6
) -> Tuple[JoinShares, int, Tuple[int, ...]]:
    """Returns ``(shares, secret, bits)``; bit ``b_i = 0`` iff participant ``i``'s graph is a join."""
    if p <= n_participants:
        raise ValueError("prime must exceed the number of participants")
    if graph_size < 2:
        raise ValueError("graphs need at least two vertices")
    if bits is None:
        bits = [rng.randrange(2) for _ in range(n_participants)]
    bits = tuple(int(b) for b in bits)
    if len(bits) != n_participants:
        raise ValueError("one bit per participant")
    dealt = []
    for b in bits:
        g = random_indecomposable(rng, graph_size) if b else random_join(rng, graph_size)
        if is_nontrivial_join(g) == bool(b):
            raise DealerCertificationFailure("graph does not encode its bit")
        dealt.append(g)
    return JoinShares(p, tuple(dealt)), monic_interpolation_at_zero(bits, p), bits


def ss_scheme2_recover(shares: JoinShares) -> int:
    bits = [0 if is_nontrivial_join(g) else 1 for g in shares.graphs]
    return monic_interpolation_at_zero(bits, shares.prime)
