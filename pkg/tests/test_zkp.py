import json
import random

import pytest

from groupcrypt.errors import CommitmentMismatch
from groupcrypt.graphs import is_hamiltonian_cycle
from groupcrypt.protocols.zkp import (
    ZkpProver,
    ZkpProverState,
    is_permutation_matrix,
    permutation_matrix,
    zkp_hamiltonicity,
    zkp_keygen,
    zkp_verify_round,
    _is_single_cycle,
)
from groupcrypt.raag import is_hamiltonian_triple


def test_keygen():
    rng = random.Random(0)
    for n in range(3, 9):
        st = zkp_keygen(rng, n)
        assert is_hamiltonian_cycle(st.graph, st.cycle)
        assert is_hamiltonian_triple(st.triple)
        assert ZkpProverState.from_json(json.loads(json.dumps(st.to_json()))) == st
    with pytest.raises(ValueError):
        zkp_keygen(rng, 2)


def test_permutation_matrices():
    a = permutation_matrix([2, 0, 1])
    assert is_permutation_matrix(a)
    assert [[a[r][c] for r in range(3)].index(1) for c in range(3)] == [2, 0, 1]
    assert not is_permutation_matrix(((1, 1), (0, 1)))
    assert not is_permutation_matrix(((1, 0), (0, 2)))


def test_single_cycle_check():
    assert _is_single_cycle(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert not _is_single_cycle(4, [(0, 1), (0, 1), (2, 3), (2, 3)])
    assert not _is_single_cycle(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def test_honest_prover_always_accepted():
    rng = random.Random(1)
    for _ in range(10):
        st = zkp_keygen(rng, rng.randint(4, 7))
        res = zkp_hamiltonicity(st.triple, ZkpProver(st), 128, rng)
        assert res.accepted and res.rounds_run == 128


def test_both_challenges_pass_for_honest_rounds():
    rng = random.Random(2)
    st = zkp_keygen(rng, 6)
    prover = ZkpProver(st)
    for c in (0, 1):
        rc = prover.commit(rng)
        assert zkp_verify_round(st.triple, rc.boxes, c, prover.open(rc, c)) is None


@pytest.mark.parametrize("mode,caught_on", [("noncycle", 1), ("forge", 0)])
def test_cheater_rates(mode, caught_on):
    rng = random.Random(3)
    st = zkp_keygen(rng, 6)
    prover = ZkpProver(st, cheat=mode)
    trials = 1000
    accepted = 0
    for _ in range(trials):
        res = zkp_hamiltonicity(st.triple, prover, 1, rng)
        accepted += res.accepted
        if not res.accepted:
            assert res.reason.startswith(f"challenge {caught_on}")
    assert 0.45 <= accepted / trials <= 0.55


def test_tampered_nonce_is_caught():
    rng = random.Random(4)
    st = zkp_keygen(rng, 5)
    prover = ZkpProver(st, tamper_nonce=True)
    rc = prover.commit(rng)
    with pytest.raises(CommitmentMismatch):
        zkp_verify_round(st.triple, rc.boxes, 1, prover.open(rc, 1))
    res = zkp_hamiltonicity(st.triple, prover, 8, rng)
    assert not res.accepted and res.failed_round == 1 and "CommitmentMismatch" in res.reason


def test_bad_arguments():
    rng = random.Random(5)
    st = zkp_keygen(rng, 4)
    with pytest.raises(ValueError):
        ZkpProver(st, cheat="bogus")
    with pytest.raises(ValueError):
        zkp_hamiltonicity(st.triple, ZkpProver(st), 0, rng)
