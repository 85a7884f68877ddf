import random

import pytest

import oracles as O
from surgery_calc import lattice as L
from surgery_calc.lattice import AmbientDiagonalForm, IntLattice


def e1_gram():
    labels, vectors = L.example_e1_vectors()
    return L.gram_from_vectors(AmbientDiagonalForm.blowup(9), vectors, labels)


def k3_form():
    m = L.standard_form("minusE8")
    h = L.standard_form("H")
    return L.direct_sum(m, m, h, h, h)


def test_gram_from_vectors_pairings():
    g = e1_gram()
    assert g.pairing("f", "f") == 0
    assert g.pairing("f", "e9") == 1
    assert g.pairing("e9", "e9") == -1
    assert L.gram_from_vectors(AmbientDiagonalForm((1,)), [(1,)]).gram == ((1,),)


def test_gram_rank_mismatch():
    with pytest.raises(L.LatticeError):
        L.gram_from_vectors(AmbientDiagonalForm.blowup(2), [(1, 0)])


def test_e1_lattice_certificate():
    c = L.classify_form(e1_gram())
    assert c.signature == (1, 9, 0)
    assert abs(c.determinant) == 1
    assert not c.even


def test_milnor_fiber_is_minus_e8():
    g = e1_gram()
    m = g.restrict(g.labels[2:])
    c = L.classify_form(m)
    assert (c.rank, c.signature, c.determinant, c.even) == (8, (0, 8, 0), 1, True)
    assert m.gram == L.standard_form("minusE8").gram


def test_direct_sum_examples():
    m = L.standard_form("minusE8")
    assert L.signature(L.direct_sum(m, m)) == (0, 16, 0)
    c = L.classify_form(k3_form())
    assert (c.rank, c.signature[:2], c.determinant, c.even, c.unimodular) == (22, (3, 19), -1, True, True)
    assert L.direct_sum(m, IntLattice((), ())) == m


def test_standard_forms():
    assert L.signature(L.standard_form("E8")) == (8, 0, 0)
    assert L.signature(L.standard_form("minusE8")) == (0, 8, 0)
    h = L.classify_form(L.standard_form("H"))
    assert h.determinant == -1 and h.even and h.signature == (1, 1, 0)
    with pytest.raises(L.LatticeError):
        L.standard_form("E7")


def test_empty_lattice():
    c = L.classify_form(IntLattice((), ()))
    assert (c.rank, c.signature, c.even, c.unimodular) == (0, (0, 0, 0), True, True)


def test_asymmetric_gram_rejected():
    with pytest.raises(L.LatticeError):
        IntLattice(("a", "b"), ((0, 1), (2, 0)))


def test_zero_diagonal_uses_hyperbolic_blocks():
    g = [[0, 2, 0], [2, 0, 0], [0, 0, 0]]
    assert L.signature(g) == (1, 1, 1)


def _random_unimodular(n, rng, steps=12):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        u[0][0] = rng.choice([1, -1])
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        e = [[int(a == b) for b in range(n)] for a in range(n)]
        e[i][j] = k
        u = O.matmul(u, e)
    return u


@pytest.mark.parametrize("seed", range(25))
def test_invariants_under_gl_n_z_congruence(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
    g = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
    u = _random_unimodular(n, rng)
    h = O.matmul(O.matmul(O.transpose(u), g), u)
    assert L.determinant(h) == L.determinant(g) == O.exact_det(g)
    assert L.signature(h) == L.signature(g)
    assert L.signature(g) == O.eigen_inertia(g)


@pytest.mark.parametrize("seed", range(10))
def test_gram_from_random_vectors_symmetric(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 10)
    amb = AmbientDiagonalForm(tuple(rng.choice([1, -1]) for _ in range(k)))
    vecs = [tuple(rng.randint(-3, 3) for _ in range(k)) for _ in range(rng.randint(1, 6))]
    g = L.gram_from_vectors(amb, vecs)
    assert all(g.gram[i][j] == g.gram[j][i] for i in range(g.rank) for j in range(g.rank))


@pytest.mark.parametrize("seed", range(10))
def test_direct_sum_additive(seed):
    rng = random.Random(seed)

    def rand_form():
        n = rng.randint(1, 4)
        a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        return IntLattice(tuple(f"x{seed}{i}{rng.random()}" for i in range(n)),
                          tuple(tuple(a[i][j] + a[j][i] for j in range(n)) for i in range(n)))

    a, b = rand_form(), rand_form()
    s = L.direct_sum(a, b)
    assert L.determinant(s) == L.determinant(a) * L.determinant(b)
    sa, sb = L.signature(a), L.signature(b)
    assert L.signature(s) == tuple(x + y for x, y in zip(sa, sb))
