import random

import pytest
from hypothesis import given, strategies as st

from conftest import graph_corpus
from groupcrypt.errors import OracleExhausted
from groupcrypt.graphs import SimplicialGraph
from groupcrypt.oracles import (
    OracleBudget,
    conjugacy_oracle,
    gdlp_bruteforce,
    power_match_oracle,
    word_oracle,
)
from groupcrypt.polycyclic import UnitriangularMatrix as U
from groupcrypt.words import invert, parse_word, random_word

EDGE = SimplicialGraph.from_edges(2, [(0, 1)])
FREE2 = SimplicialGraph(2)


class Zn:
    """Additive Z_n written multiplicatively, just enough for the gdlp scan."""

    def __init__(self, v, n):
        self.v, self.n = v % n, n

    def __mul__(self, other):
        return Zn(self.v + other.v, self.n)

    def __eq__(self, other):
        return self.v == other.v


@pytest.mark.parametrize("method", ["bfs", "dependency"])
def test_word_oracle_examples(method):
    for g in (EDGE, FREE2):
        assert word_oracle(g, parse_word("a0 A0"), method=method)
    assert word_oracle(EDGE, parse_word("a0 a1 A0 A1"), method=method)
    assert not word_oracle(FREE2, parse_word("a0 a1 A0 A1"), method=method)
    assert word_oracle(FREE2, (), method=method)


def test_bfs_and_dependency_agree():
    rng = random.Random(11)
    for g in graph_corpus(5, 80, seed=2):
        if g.n == 0:
            continue
        for _ in range(15):
            u = random_word(rng, g.n, rng.randint(0, 5))
            v = random_word(rng, g.n, rng.randint(0, 4))
            # u v u^-1 with v often empty or a relator, so trivial words are common
            if g.edges and rng.random() < 0.5:
                a, b = rng.choice(sorted(g.edges))
                v = parse_word(f"a{a} a{b} A{a} A{b}")
            w = u + v + invert(u)
            assert word_oracle(g, w, method="bfs") == word_oracle(g, w, method="dependency")


def test_word_oracle_budget():
    w = parse_word("a0 A0") * 30
    with pytest.raises(OracleExhausted):
        word_oracle(EDGE, w, OracleBudget(max_word_length=10))
    with pytest.raises(OracleExhausted):
        word_oracle(EDGE, parse_word("a0 a1 a0 A1 A0 A0"), OracleBudget(step_ceiling=1), method="bfs")
    with pytest.raises(ValueError):
        OracleBudget(max_exponent=0)


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_budget_monotone(seed, extra):
    rng = random.Random(seed)
    g = SimplicialGraph.random(rng, 4)
    w = random_word(rng, 4, rng.randint(0, 10))
    small = OracleBudget(max_word_length=max(len(w), 1))
    big = OracleBudget(max_word_length=len(w) + extra, step_ceiling=10**7)
    assert word_oracle(g, w, small) == word_oracle(g, w, big)


def test_conjugacy_oracle_examples():
    w = parse_word("a0 a1 A0")
    assert conjugacy_oracle(FREE2, w, w, 3) == ()
    c = conjugacy_oracle(FREE2, parse_word("a0 a1"), parse_word("a1 a0"), 2)
    assert c == parse_word("a0")
    assert conjugacy_oracle(EDGE, parse_word("a0"), parse_word("a1"), 6) is None


def test_conjugacy_oracle_returns_valid_conjugator():
    rng = random.Random(5)
    g = SimplicialGraph.from_edges(3, [(0, 1)])
    for _ in range(20):
        w = random_word(rng, 3, rng.randint(1, 4))
        c0 = random_word(rng, 3, rng.randint(0, 2))
        w2 = invert(c0) + w + c0
        c = conjugacy_oracle(g, w, w2, 2)
        assert c is not None and len(c) <= len(c0)
        assert word_oracle(g, invert(c) + w + c + invert(w2))


def test_gdlp_examples():
    g = Zn(1, 7)
    assert gdlp_bruteforce([g], [7], Zn(0, 7), Zn(0, 7)) == (0,)
    assert gdlp_bruteforce([g], [7], Zn(3, 7), Zn(0, 7)) == (3,)


def test_gdlp_unitriangular_recovers_exponents():
    p = 3
    gens = [U.elementary(3, p, {(1, 2): 1}), U.elementary(3, p, {(2, 3): 1}), U.elementary(3, p, {(1, 3): 1})]
    ident = U.identity(3, p)
    rng = random.Random(8)
    for _ in range(20):
        a = tuple(rng.randrange(p) for _ in gens)
        y = gens[0] ** a[0] * gens[1] ** a[1] * gens[2] ** a[2]
        assert gdlp_bruteforce(gens, [p] * 3, y, ident) == a
    with pytest.raises(OracleExhausted):
        gdlp_bruteforce(gens, [p] * 3, ident, ident, OracleBudget(max_group_size=26))


def test_power_match_examples():
    a = parse_word("a0")
    assert power_match_oracle(FREE2, a, a, 8) == (1, 1)
    assert power_match_oracle(FREE2, a, a + a, 8) == (2, 1)
    assert power_match_oracle(FREE2, a, parse_word("a1"), 8) is None
    with pytest.raises(OracleExhausted):
        power_match_oracle(FREE2, a, a, 9)
