"""Proof of knowledge of a Hamiltonian cycle in the cup-product triple of a graph group.

The public data is ``(V, W, q)`` over F_2. The prover knows a cyclic order of
the standard basis of ``V`` with every consecutive pairing nonzero. Each
round she changes basis by a random permutation matrix ``A`` and commits to:

* ``B_i``: the new basis vectors ``x_i``,
* ``N_ij``: the pairings ``q(x_i, x_j)``,
* ``S_ij``: the indicators ``[q(x_i, x_j) != 0]``,
* ``T``: the matrix ``A``.

On challenge 1 she opens the ``B`` boxes and the indicators along her cycle.
On challenge 0 she opens ``B``, ``N``, ``T`` and ``S`` so Bob can recompute
everything from the public pairing.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import CommitmentMismatch
from ..graphs import SimplicialGraph, is_hamiltonian_cycle
from ..raag import CohomologyTriple, RaagGroup, cohomology_triple
from .auth import graph_from_json, graph_to_json
from .commitment import CommitmentBox, Opening, commit, verify_opening
from .transcript import ProtocolResult, Transcript, encode_json

CHEAT_MODES = ("noncycle", "forge")


@dataclass(frozen=True)
class ZkpProverState:
    graph: SimplicialGraph
    cycle: Tuple[int, ...]

    @property
    def triple(self) -> CohomologyTriple:
        return cohomology_triple(RaagGroup(self.graph))

    def to_json(self) -> dict:
        return {"graph": graph_to_json(self.graph), "cycle": list(self.cycle)}

    @classmethod
    def from_json(cls, d: dict) -> "ZkpProverState":
        g = graph_from_json(d["graph"])
        cycle = tuple(int(v) for v in d["cycle"])
        if not is_hamiltonian_cycle(g, cycle):
            raise ValueError("stored cycle is not a Hamiltonian cycle of the graph")
        return cls(g, cycle)


def zkp_keygen(rng: random.Random, n: int = 6, chords: int = 2) -> ZkpProverState:
    """A hidden Hamiltonian cycle on ``n >= 3`` vertices plus a few random chords."""
    if n < 3:
        raise ValueError("a Hamiltonian cycle needs at least 3 vertices")
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n)}
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(missing)
    edges.update(missing[:chords])
    return ZkpProverState(SimplicialGraph.from_edges(n, edges), tuple(order))


def basis_vector(n: int, i: int) -> Tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def permutation_matrix(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """Column ``i`` is the standard vector ``e_{perm[i]}``."""
    n = len(perm)
    return tuple(tuple(int(perm[c] == r) for c in range(n)) for r in range(n))


def is_permutation_matrix(a) -> bool:
    n = len(a)
    if any(len(row) != n for row in a):
        return False
    if any(x not in (0, 1) for row in a for x in row):
        return False
    return all(sum(row) == 1 for row in a) and all(sum(a[r][c] for r in range(n)) == 1 for c in range(n))


def _pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _key(i: int, j: int) -> str:
    return f"{min(i, j)},{max(i, j)}"


@dataclass
class RoundCommitment:
    boxes: Dict[str, CommitmentBox]
    openings: Dict[str, Opening]
    sigma: Tuple[int, ...]

    def digests(self) -> Dict[str, str]:
        return {k: b.hex() for k, b in sorted(self.boxes.items())}


def _box(rng, boxes, openings, name, value):
    box, opening = commit(encode_json(value), rng)
    boxes[name] = box
    openings[name] = opening


class ZkpProver:
    """Honest by default; ``cheat`` simulates a prover who knows no cycle."""

    def __init__(self, state: ZkpProverState, cheat: Optional[str] = None, tamper_nonce: bool = False):
        if cheat is not None and cheat not in CHEAT_MODES:
            raise ValueError(f"unknown cheat mode {cheat!r}; choose from {CHEAT_MODES}")
        self.state = state
        self.triple = state.triple
        self.cheat = cheat
        self.tamper_nonce = tamper_nonce

    def _sigma(self, perm: Sequence[int], rng: random.Random) -> Tuple[int, ...]:
        n = len(perm)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        if self.cheat != "noncycle":
            # x_{σ(k)} = v*_{cycle[k]}
            return tuple(inv[v] for v in self.state.cycle)
        # claims an order whose images are not a Hamiltonian cycle
        g = self.state.graph
        while True:
            order = list(range(n))
            rng.shuffle(order)
            if not is_hamiltonian_cycle(g, order):
                return tuple(inv[v] for v in order)

    def commit(self, rng: random.Random) -> RoundCommitment:
        t = self.triple
        n = t.dim_v
        perm = list(range(n))
        rng.shuffle(perm)
        a = permutation_matrix(perm)
        basis = [basis_vector(n, perm[i]) for i in range(n)]
        boxes: Dict[str, CommitmentBox] = {}
        openings: Dict[str, Opening] = {}
        for i in range(n):
            _box(rng, boxes, openings, f"B{i}", list(basis[i]))
        for i, j in _pairs(n):
            pairing = t.cup(basis[i], basis[j])
            indicator = 1 if self.cheat == "forge" else int(any(pairing))
            _box(rng, boxes, openings, f"N{_key(i, j)}", list(pairing))
            _box(rng, boxes, openings, f"S{_key(i, j)}", indicator)
        _box(rng, boxes, openings, "T", [list(r) for r in a])
        return RoundCommitment(boxes, openings, self._sigma(perm, rng))

    def open(self, rc: RoundCommitment, c: int) -> Dict[str, Opening]:
        n = self.triple.dim_v
        names = [f"B{i}" for i in range(n)]
        if c == 1:
            names += [f"S{_key(rc.sigma[k], rc.sigma[(k + 1) % n])}" for k in range(n)]
        else:
            names += [f"N{_key(i, j)}" for i, j in _pairs(n)]
            names += [f"S{_key(i, j)}" for i, j in _pairs(n)]
            names.append("T")
        out = {name: rc.openings[name] for name in names}
        if self.tamper_nonce:
            name = names[0]
            o = out[name]
            out[name] = Opening(o.payload, bytes([o.nonce[0] ^ 1]) + o.nonce[1:])
        return out


def _open(boxes: Dict[str, CommitmentBox], openings: Dict[str, Opening], name: str):
    if name not in boxes or name not in openings:
        raise CommitmentMismatch(f"box {name} was not opened")
    if not verify_opening(boxes[name], openings[name]):
        raise CommitmentMismatch(f"opening of box {name} does not match its digest")
    return json.loads(openings[name].payload)


def zkp_verify_round(
    triple: CohomologyTriple, boxes: Dict[str, CommitmentBox], c: int, openings: Dict[str, Opening]
) -> Optional[str]:
    """``None`` if the round passes, otherwise the reason for rejecting it.

    Raises CommitmentMismatch if any opened box fails its digest check.
    """
    n = triple.dim_v
    basis = [tuple(_open(boxes, openings, f"B{i}")) for i in range(n)]
    if any(len(b) != n or any(x not in (0, 1) for x in b) for b in basis):
        return "basis box is not an F2-vector of the right size"
    if c == 1:
        opened = [name for name in openings if name.startswith("S")]
        links = []
        for name in opened:
            if _open(boxes, openings, name) != 1:
                return f"indicator {name} is not 1"
            i, j = (int(x) for x in name[1:].split(","))
            links.append((i, j))
        if not _is_single_cycle(n, links):
            return "opened indicators do not form one n-cycle"
        return None
    a = _open(boxes, openings, "T")
    if not is_permutation_matrix(a):
        return "T is not in the allowed basis-change set"
    for i in range(n):
        if tuple(a[r][i] for r in range(n)) != basis[i]:
            return f"basis vector {i} is not column {i} of A"
    for i, j in _pairs(n):
        pairing = triple.cup(basis[i], basis[j])
        if tuple(_open(boxes, openings, f"N{_key(i, j)}")) != pairing:
            return f"pairing box N{_key(i, j)} is wrong"
        if _open(boxes, openings, f"S{_key(i, j)}") != int(any(pairing)):
            return f"indicator box S{_key(i, j)} disagrees with the pairing"
    return None


def _is_single_cycle(n: int, links: List[Tuple[int, int]]) -> bool:
    if len(links) != n or len(set(links)) != n:
        return False
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for i, j in links:
        if i == j or not (0 <= i < n and 0 <= j < n):
            return False
        adj[i].append(j)
        adj[j].append(i)
    if any(len(nb) != 2 for nb in adj.values()):
        return False
    seen, prev, cur = {0}, None, 0
    while True:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        if nxt == 0:
            break
        seen.add(nxt)
        prev, cur = cur, nxt
    return len(seen) == n


def _openings_json(openings: Dict[str, Opening]) -> dict:
    return {k: {"payload": o.payload.hex(), "nonce": o.nonce.hex()} for k, o in sorted(openings.items())}


def zkp_hamiltonicity(
    triple: CohomologyTriple,
    prover: ZkpProver,
    rounds: int,
    rng: random.Random,
    verifier_rng: Optional[random.Random] = None,
) -> ProtocolResult:
    if rounds < 1:
        raise ValueError("need at least one round")
    if triple.dim_v < 3:
        raise ValueError("the triple needs at least 3 basis vectors")
    verifier_rng = verifier_rng or rng
    transcript = Transcript("hamiltonian-triple-zkp")
    for r in range(1, rounds + 1):
        rc = prover.commit(rng)
        transcript.append("Alice", f"boxes{r}", encode_json(rc.digests()))
        c = verifier_rng.randrange(2)
        transcript.append("Bob", f"challenge{r}", encode_json(c))
        openings = prover.open(rc, c)
        transcript.append("Alice", f"open{r}", encode_json(_openings_json(openings)))
        try:
            reason = zkp_verify_round(triple, rc.boxes, c, openings)
        except CommitmentMismatch as exc:
            reason = f"CommitmentMismatch: {exc}"
        except (ValueError, TypeError, KeyError, IndexError) as exc:
            reason = f"malformed opening: {exc}"
        if reason is not None:
            return ProtocolResult(False, transcript, r, r, f"challenge {c}: {reason}")
    return ProtocolResult(True, transcript, rounds)
