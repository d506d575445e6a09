"""Authentication by a secret homomorphism between two public graphs.

Alice's public key is a pair of graphs ``Γ1, Γ2``; her private key is a graph
map ``α: Γ1 -> Γ2``. Each round she commits to a graph ``Γ`` with a map
``β: Γ -> Γ1``, Bob flips a coin and she reveals either ``β`` or ``α∘β``.
Someone without ``α`` can prepare for only one of the two challenges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Tuple

from ..graphs import GraphMap, SimplicialGraph
from .transcript import ProtocolResult, Transcript, encode_json


def graph_to_json(g: SimplicialGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(d: dict) -> SimplicialGraph:
    return SimplicialGraph.from_edges(int(d["n"]), d["edges"])


@dataclass(frozen=True)
class AuthPublicKey:
    gamma1: SimplicialGraph
    gamma2: SimplicialGraph

    def to_json(self) -> dict:
        return {"gamma1": graph_to_json(self.gamma1), "gamma2": graph_to_json(self.gamma2)}

    @classmethod
    def from_json(cls, d: dict) -> "AuthPublicKey":
        return cls(graph_from_json(d["gamma1"]), graph_from_json(d["gamma2"]))


@dataclass(frozen=True)
class AuthKeys:
    public: AuthPublicKey
    alpha: GraphMap

    def to_json(self) -> dict:
        d = self.public.to_json()
        d["alpha"] = list(self.alpha.image)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "AuthKeys":
        pub = AuthPublicKey.from_json(d)
        return cls(pub, GraphMap(pub.gamma1, pub.gamma2, tuple(int(x) for x in d["alpha"])))


def auth_keygen(rng: random.Random, n1: int = 6, n2: int = 8, density: float = 0.5) -> AuthKeys:
    """Random ``Γ1``, random ``α``, and ``Γ2`` = random graph plus the image edges of ``α``."""
    if n1 < 1 or n2 < 2:
        raise ValueError("need n1 >= 1 and n2 >= 2")
    gamma1 = SimplicialGraph.random(rng, n1, density)
    # adjacent vertices need distinct images, since Γ2 has no loops
    while True:
        image = [rng.randrange(n2) for _ in range(n1)]
        if all(image[u] != image[v] for u, v in gamma1.edges):
            break
    noise = SimplicialGraph.random(rng, n2, density)
    edges = set(noise.edges) | {(image[u], image[v]) for u, v in gamma1.edges}
    gamma2 = SimplicialGraph.from_edges(n2, edges)
    alpha = GraphMap(gamma1, gamma2, tuple(image))
    assert alpha.is_valid()
    return AuthKeys(AuthPublicKey(gamma1, gamma2), alpha)


def pullback_graph(rng: random.Random, target: SimplicialGraph, size: int) -> Tuple[SimplicialGraph, GraphMap]:
    """Random ``β: [size] -> target`` and the graph of all edges ``β`` can carry."""
    image = tuple(rng.randrange(target.n) for _ in range(size))
    edges = [
        (u, v)
        for u in range(size)
        for v in range(u + 1, size)
        if image[u] != image[v] and target.has_edge(image[u], image[v])
    ]
    g = SimplicialGraph.from_edges(size, edges)
    return g, GraphMap(g, target, image)


def default_commit_size(public: AuthPublicKey) -> int:
    # twice |Γ1| keeps a random forged map from passing by luck
    return 2 * public.gamma1.n


class HonestAuthProver:
    def __init__(self, keys: AuthKeys, commit_size: Optional[int] = None):
        self.keys = keys
        self.commit_size = commit_size or default_commit_size(keys.public)

    def commit(self, rng: random.Random):
        g, beta = pullback_graph(rng, self.keys.public.gamma1, self.commit_size)
        return g, beta

    def respond(self, state: GraphMap, c: int, rng: random.Random) -> Tuple[int, ...]:
        return state.image if c == 0 else state.compose(self.keys.alpha).image


class CheatingAuthProver:
    """Knows only the public key: guesses the challenge and forges the other branch."""

    def __init__(self, public: AuthPublicKey, commit_size: Optional[int] = None):
        self.public = public
        self.commit_size = commit_size or default_commit_size(public)

    def commit(self, rng: random.Random):
        guess = rng.randrange(2)
        target = self.public.gamma1 if guess == 0 else self.public.gamma2
        g, m = pullback_graph(rng, target, self.commit_size)
        return g, (guess, m)

    def respond(self, state, c: int, rng: random.Random) -> Tuple[int, ...]:
        guess, m = state
        if c == guess:
            return m.image
        target = self.public.gamma1 if c == 0 else self.public.gamma2
        return tuple(rng.randrange(target.n) for _ in range(m.source.n))


def check_reveal(public: AuthPublicKey, g: SimplicialGraph, c: int, image) -> bool:
    target = public.gamma1 if c == 0 else public.gamma2
    try:
        image = tuple(int(x) for x in image)
    except (TypeError, ValueError):
        return False
    return GraphMap(g, target, image).is_valid()


def auth_protocol(
    public: AuthPublicKey, prover, rounds: int, rng: random.Random, verifier_rng: Optional[random.Random] = None
) -> ProtocolResult:
    """Run ``rounds`` rounds; Bob stops at the first invalid reveal."""
    if rounds < 1:
        raise ValueError("need at least one round")
    verifier_rng = verifier_rng or rng
    transcript = Transcript("graph-homomorphism-auth")
    for r in range(1, rounds + 1):
        g, state = prover.commit(rng)
        transcript.append("Alice", f"commit{r}", encode_json(graph_to_json(g)))
        c = verifier_rng.randrange(2)
        transcript.append("Bob", f"challenge{r}", encode_json(c))
        image = prover.respond(state, c, rng)
        transcript.append("Alice", f"reveal{r}", encode_json(list(image)))
        if not check_reveal(public, g, c, image):
            return ProtocolResult(False, transcript, r, r, f"InvalidReveal: map fails edge preservation (c={c})")
    return ProtocolResult(True, transcript, rounds)
