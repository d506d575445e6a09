import itertools
import random

import pytest
from hypothesis import given, strategies as st

from groupcrypt.errors import SizeLimit
from groupcrypt.polycyclic import (
    MetabelianPlatform,
    UnitriangularMatrix,
    commutator,
    engel_word,
    enumerate_unitriangular,
    heis_conj,
    heis_inv,
    heis_mul,
    heis_pow,
    is_n_engel,
    unitriangular_order,
)

P = MetabelianPlatform()
U = UnitriangularMatrix


def slow_matrix_power(m, k):
    (a, b), (c, d) = m
    if k < 0:
        det = a * d - b * c
        m, k = ((d * det, -b * det), (-c * det, a * det)), -k
    out = ((1, 0), (0, 1))
    for _ in range(k):
        (p, q), (r, s) = out
        (a, b), (c, d) = m
        out = ((p * a + q * c, p * b + q * d), (r * a + s * c, r * b + s * d))
    return out


@pytest.mark.parametrize("k", [0, 1, 2, 5, 17, -1, -3, -12])
def test_matrix_power_fibonacci_and_generic_paths(k):
    expect = slow_matrix_power(((2, 1), (1, 1)), k)
    assert tuple(tuple(int(v) for v in row) for row in P.matrix_power(k)) == expect
    other = MetabelianPlatform(((1, 1), (0, 1)))
    assert tuple(tuple(int(v) for v in row) for row in other.matrix_power(k)) == slow_matrix_power(((1, 1), (0, 1)), k)


def test_platform_rejects_non_unimodular():
    with pytest.raises(ValueError):
        MetabelianPlatform(((2, 0), (0, 1)))


def test_heis_examples():
    x = P.element((3, -4), 2)
    assert heis_mul(x, heis_inv(x)).is_identity()
    g = P.element((0, 0), 1)
    assert heis_pow(g, 12345) == P.element((0, 0), 12345)
    assert P.element((1, 0), 0) * P.element((1, 0), 1) == P.element((2, 0), 1)


def _affine(x):
    (a, b), (c, d) = x.platform.matrix_power(x.shift)
    return ((int(a), int(b), x.vec[0]), (int(c), int(d), x.vec[1]), (0, 0, 1))


def _mul3(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)) for i in range(3))


elems = st.builds(
    lambda a, b, k: P.element((a, b), k),
    st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(-30, 30),
)


@given(elems, elems, elems)
def test_heis_group_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x * x.inv()).is_identity() and (x.inv() * x).is_identity()
    assert x * P.identity() == x
    # agrees with the affine matrix [[M^k, a], [0, 1]]
    assert _affine(x * y) == _mul3(_affine(x), _affine(y))


@given(elems, st.integers(-200, 200), st.integers(-200, 200))
def test_heis_pow_additive(x, a, b):
    x = P.element(x.vec, x.shift % 4)
    assert heis_pow(x, a + b) == heis_pow(x, a) * heis_pow(x, b)


@given(elems, elems, st.integers(0, 500))
def test_conjugation_is_automorphism(g, s, n):
    assert heis_conj(heis_pow(g, n), s) == heis_pow(heis_conj(g, s), n)


@given(elems, elems)
def test_to_bytes_is_injective_on_samples(x, y):
    assert (x.to_bytes() == y.to_bytes()) == (x == y)


# --- unitriangular ----------------------------------------------------------------


def test_unitriangular_basics():
    e12 = U.elementary(3, 5, {(1, 2): 1})
    assert e12.entry(1, 2) == 1 and e12.entry(2, 1) == 0
    assert (e12 * e12.inv()).is_identity()
    assert e12 ** 5 == U.identity(3, 5)
    assert e12 ** -1 == e12.inv()
    with pytest.raises(ValueError):
        U(((1, 1), (1, 1)), 5)


def test_commutator_examples():
    x = U.elementary(3, 5, {(1, 2): 1})
    y = U.elementary(3, 5, {(2, 3): 1})
    assert commutator(x, x).is_identity()
    e13 = U.elementary(3, 5, {(1, 3): 1})
    assert commutator(x, y) == e13
    assert commutator(x ** 2, y ** 3) == e13  # 6 = 1 mod 5


def test_engel_examples():
    x = U.elementary(4, 3, {(1, 2): 1})
    y = U.elementary(4, 3, {(2, 3): 1, (3, 4): 1})
    assert engel_word(x, y, 1) == commutator(x, y)
    assert engel_word(x, y, 2).entry(1, 4) != 0
    ident = U.identity(4, 3)
    for n in (1, 2, 3):
        assert engel_word(ident, y, n).is_identity()


def test_is_n_engel():
    z = [U.elementary(2, 5, {(1, 2): k}) for k in range(5)]
    assert is_n_engel(z, 1)
    u3 = list(enumerate_unitriangular(3, 2))
    assert len(u3) == 8 == unitriangular_order(3, 2)
    assert is_n_engel(u3, 2)
    u4 = list(enumerate_unitriangular(4, 3))
    x = U.elementary(4, 3, {(1, 2): 1})
    y = U.elementary(4, 3, {(2, 3): 1, (3, 4): 1})
    assert not is_n_engel([x], 2, sample=[y])
    assert not is_n_engel(u4, 2)
    with pytest.raises(SizeLimit):
        is_n_engel(u3, 2, limit=4)


@pytest.mark.parametrize("m,p", list(itertools.product((3, 4, 5), (3, 5))))
def test_multilinear_commutator_identity(m, p):
    rng = random.Random(m * 10 + p)
    for _ in range(50):
        gs = [U.random(rng, m, p) for _ in range(m - 1)]
        a = [rng.randint(1, p * p) for _ in gs]
        prod = 1
        for v in a:
            prod *= v
        lhs = commutator(*(g ** e for g, e in zip(gs, a)))
        assert lhs == commutator(*gs) ** prod


@pytest.mark.parametrize("m,p", [(3, 3), (4, 2)])
def test_unitriangular_group_axioms(m, p):
    rng = random.Random(1)
    for _ in range(300):
        x, y, z = (U.random(rng, m, p) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x * x.inv()).is_identity()


def test_class_bound_kills_longer_commutators():
    rng = random.Random(3)
    for m in (3, 4, 5):
        gs = [U.random(rng, m, 5) for _ in range(m)]
        assert commutator(*gs).is_identity()
