import json
import random

import pytest

from groupcrypt.graphs import GraphMap, SimplicialGraph
from groupcrypt.protocols.auth import (
    AuthKeys,
    AuthPublicKey,
    CheatingAuthProver,
    HonestAuthProver,
    auth_keygen,
    auth_protocol,
    check_reveal,
    pullback_graph,
)


def test_keygen_produces_valid_homomorphism():
    rng = random.Random(0)
    for _ in range(50):
        keys = auth_keygen(rng)
        assert keys.alpha.is_valid()
        assert AuthKeys.from_json(json.loads(json.dumps(keys.to_json()))) == keys


def test_pullback_map_is_homomorphism():
    rng = random.Random(1)
    target = SimplicialGraph.random(rng, 6)
    for _ in range(20):
        g, beta = pullback_graph(rng, target, 10)
        assert beta.is_valid() and beta.source == g


def test_honest_runs_accept():
    rng = random.Random(2)
    for _ in range(10):
        keys = auth_keygen(rng)
        res = auth_protocol(keys.public, HonestAuthProver(keys), 128, rng)
        assert res.accepted and res.rounds_run == 128 and res.failed_round is None
        assert len(res.transcript) == 3 * 128


def test_cheater_single_round_rate():
    rng = random.Random(3)
    keys = auth_keygen(rng)
    cheat = CheatingAuthProver(keys.public)
    trials = 1000
    accepted = sum(auth_protocol(keys.public, cheat, 1, rng).accepted for _ in range(trials))
    assert 0.45 <= accepted / trials <= 0.55


def test_cheater_caught_over_many_rounds():
    rng = random.Random(4)
    keys = auth_keygen(rng)
    res = auth_protocol(keys.public, CheatingAuthProver(keys.public), 64, rng)
    assert not res.accepted and res.reason.startswith("InvalidReveal")
    assert res.transcript.labels()[-1] == f"reveal{res.failed_round}"


def test_single_vertex_source():
    # K_1 maps anywhere, so even a guesser passes: the protocol gives no assurance here
    rng = random.Random(5)
    pub = AuthPublicKey(SimplicialGraph(1), SimplicialGraph.from_edges(2, [(0, 1)]))
    keys = AuthKeys(pub, GraphMap(pub.gamma1, pub.gamma2, (0,)))
    assert auth_protocol(pub, HonestAuthProver(keys, commit_size=3), 32, rng).accepted


def test_check_reveal_rejects_garbage():
    rng = random.Random(6)
    keys = auth_keygen(rng)
    g, beta = pullback_graph(rng, keys.public.gamma1, 5)
    assert check_reveal(keys.public, g, 0, beta.image)
    assert not check_reveal(keys.public, g, 0, ["x"] * 5)
    with pytest.raises(ValueError):
        auth_protocol(keys.public, HonestAuthProver(keys), 0, rng)
