import itertools
import random

import pytest
from hypothesis import given, strategies as st

from groupcrypt.errors import InconsistentPresentation
from groupcrypt.polycyclic import presentation as pc
from groupcrypt.words import parse_word


def W(text):
    return parse_word(text)


# --- independent representations ---------------------------------------------


def perm_mul(p, q):
    """Apply p then q (right action, matching left-to-right words)."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_word(gens, w, size):
    acc = tuple(range(size))
    for g, s in w:
        acc = perm_mul(acc, gens[g] if s > 0 else perm_inv(gens[g]))
    return acc


# S3: a a transposition, b a 3-cycle, with a^-1 b a = b^2
S3_GENS = [(1, 0, 2), (1, 2, 0)]
# D4 acting on the square's corners: s a reflection, r a quarter turn, c = r^2
D8_GENS = [(0, 3, 2, 1), (1, 2, 3, 0), (2, 3, 0, 1)]


def words_up_to(n, length):
    letters = [(g, s) for g in range(n) for s in (1, -1)]
    for k in range(length + 1):
        yield from itertools.product(letters, repeat=k)


@pytest.mark.parametrize("pres_fn,gens,size", [(pc.symmetric3, S3_GENS, 3), (pc.dihedral8, D8_GENS, 4)])
def test_collection_matches_permutations(pres_fn, gens, size):
    pres = pres_fn()
    for w in words_up_to(pres.n, 5):
        e = pc.collect(pres, w)
        assert perm_word(gens, e.word(), size) == perm_word(gens, w, size)


@pytest.mark.parametrize("pres_fn,gens,size,order", [
    (pc.symmetric3, S3_GENS, 3, 6),
    (pc.dihedral8, D8_GENS, 4, 8),
])
def test_finite_presentations_are_consistent(pres_fn, gens, size, order):
    pres = pres_fn()
    ranges = [range(r) for r in pres.rel_orders]
    elements = [pres.element(e) for e in itertools.product(*ranges)]
    assert len(elements) == order
    images = {perm_word(gens, x.word(), size) for x in elements}
    assert len(images) == order  # normal forms are distinct group elements
    for x, y in itertools.product(elements, repeat=2):
        xy = x * y
        assert perm_word(gens, xy.word(), size) == perm_mul(perm_word(gens, x.word(), size), perm_word(gens, y.word(), size))
    for x, y, z in itertools.product(elements, repeat=3):
        assert (x * y) * z == x * (y * z)


# Z^2 x|_M Z as 3x3 affine integer matrices [[M^k, a], [0, 1]]
M = ((2, 1), (1, 1))
M_INV = ((1, -1), (-1, 2))


def mat3_mul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def affine(mat, vec):
    return ((mat[0][0], mat[0][1], vec[0]), (mat[1][0], mat[1][1], vec[1]), (0, 0, 1))


ID2 = ((1, 0), (0, 1))
AFF = {
    # conjugating a translation by diag(P) gives the translation by P^-1 v
    (0, 1): affine(M, (0, 0)),
    (0, -1): affine(M_INV, (0, 0)),
    (1, 1): affine(ID2, (1, 0)),
    (1, -1): affine(ID2, (-1, 0)),
    (2, 1): affine(ID2, (0, 1)),
    (2, -1): affine(ID2, (0, -1)),
}


def affine_word(w):
    acc = affine(ID2, (0, 0))
    for letter in w:
        acc = mat3_mul(acc, AFF[letter])
    return acc


def test_affine_representation_satisfies_relations():
    # t^-1 e_j t = M^-1 e_j  and  t e_j t^-1 = M e_j
    for j, col in ((1, 0), (2, 1)):
        lhs = affine_word(((0, -1), (j, 1), (0, 1)))
        expect = (M_INV[0][col], M_INV[1][col])
        assert (lhs[0][2], lhs[1][2]) == expect
        lhs = affine_word(((0, 1), (j, 1), (0, -1)))
        assert (lhs[0][2], lhs[1][2]) == (M[0][col], M[1][col])


def test_z2_by_z_collection_matches_affine_maps():
    pres = pc.z2_by_z()
    for w in words_up_to(3, 4):
        e = pc.collect(pres, w)
        assert affine_word(e.word()) == affine_word(w)
    rng = random.Random(4)
    for _ in range(300):
        w = tuple((rng.randrange(3), rng.choice((1, -1))) for _ in range(5))
        assert affine_word(pc.collect(pres, w).word()) == affine_word(w)


def test_collect_examples():
    s3 = pc.symmetric3()
    assert pc.collect(s3, W("a1 a0")).exponents == (1, 2)
    assert pc.collect(s3, ()).exponents == (0, 0)
    assert pc.collect(s3, W("a0 a0")).exponents == (0, 0)


def test_arithmetic_examples():
    s3 = pc.symmetric3()
    a, b = s3.generator(0), s3.generator(1)
    assert (a * a.inv()).is_identity()
    assert pc.pc_pow(s3, b, 3).is_identity()
    assert pc.pc_mul(s3, a, b) != pc.pc_mul(s3, b, a)


def test_hirsch_length():
    assert pc.hirsch_length(pc.symmetric3()) == 0
    assert pc.hirsch_length(pc.free_abelian(2)) == 2
    assert pc.hirsch_length(pc.z2_by_z()) == 3


@given(st.integers(0, 2**64), st.integers(0, 2**64), st.integers(0, 5), st.integers(0, 3))
def test_pc_pow_is_additive_on_finite_groups(a, b, i, j):
    for pres in (pc.symmetric3(), pc.dihedral8()):
        ranges = [range(r) for r in pres.rel_orders]
        elements = [pres.element(e) for e in itertools.product(*ranges)]
        x = elements[(i * 3 + j) % len(elements)]
        assert pc.pc_pow(pres, x, a + b) == pc.pc_pow(pres, x, a) * pc.pc_pow(pres, x, b)


# exponents of the Z^2 part grow like Fibonacci numbers and collection is
# letter by letter, so keep powers small here
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_pc_pow_is_additive_on_z2_by_z(a, b):
    pres = pc.z2_by_z()
    x = pres.element((1, 1, -1))
    assert pc.pc_pow(pres, x, a + b) == pc.pc_pow(pres, x, a) * pc.pc_pow(pres, x, b)


def test_group_axioms_on_random_triples():
    rng = random.Random(6)
    pres = pc.z2_by_z()
    for _ in range(200):
        x, y, z = (pres.element([rng.randint(-2, 2) for _ in range(3)]) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x * x.inv()).is_identity() and (x.inv() * x).is_identity()
        assert x * pres.identity() == x


def test_text_round_trip():
    for pres in (pc.symmetric3(), pc.dihedral8(), pc.free_abelian(3), pc.z2_by_z()):
        back = pc.PcPresentation.from_text(pres.to_text())
        assert back.rel_orders == pres.rel_orders
        assert back.conj_up == pres.conj_up and back.conj_down == pres.conj_down and back.powers == pres.powers
        assert back.to_text() == pres.to_text()


def test_text_format_parses_comments_and_reports_lines():
    text = "2  # S3\norder 2\norder 3\nconj 0 1 -> a1 a1\n"
    pres = pc.PcPresentation.from_text(text)
    assert pc.collect(pres, W("a1 a0")).exponents == (1, 2)
    with pytest.raises(ValueError, match="line 3"):
        pc.PcPresentation.from_text("2\norder 2\nbogus\n")


@pytest.mark.parametrize("kwargs", [
    dict(n=2, rel_orders=(2,)),
    dict(n=2, rel_orders=(2, 1)),
    dict(n=2, rel_orders=(2, 3), conj_up={(1, 0): ((0, 1),)}),
    dict(n=2, rel_orders=(2, 3), conj_up={(0, 1): ((0, 1),)}),
    dict(n=2, rel_orders=(None, None), conj_up={(0, 1): ((1, 1),)}),
    dict(n=1, rel_orders=(None,), powers={0: ()}),
])
def test_bad_presentations_rejected(kwargs):
    with pytest.raises(ValueError):
        pc.PcPresentation(**kwargs)


def test_step_budget():
    pres = pc.z2_by_z()
    with pytest.raises(InconsistentPresentation):
        pc.collect(pres, W("a1 a0 a0 a0 a0 a0 a0"), budget=10)


def test_generator_out_of_range():
    with pytest.raises(ValueError):
        pc.collect(pc.symmetric3(), W("a2"))
