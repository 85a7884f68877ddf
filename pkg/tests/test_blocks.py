import pytest

import models
from surgery_calc import blocks as B, fpgroup as fp
from surgery_calc.lattice import classify_form


def test_surfaces():
    t = B.surface(1)
    assert t.chern.euler == 0 and t.betti == (1, 2, 1)
    assert fp.abelian_invariants(t.pi1) == fp.AbelianInvariants(2, ())
    s = B.surface(0)
    assert s.chern.euler == 2 and s.pi1.ngens == 0
    g2 = B.surface(2)
    assert g2.chern.euler == -2 and fp.abelian_invariants(g2.pi1).free_rank == 4
    with pytest.raises(B.ModelError):
        B.surface(-1)


def test_rational_surfaces():
    r9 = B.rational_surface(9)
    assert (r9.chern.c1_sq, r9.chern.c2, r9.signature) == (0, 12, -8)
    r0 = B.rational_surface(0)
    assert (r0.chern.c1_sq, r0.chern.c2) == (9, 3)
    r13 = B.rational_surface(13)
    assert (r13.chern.c1_sq, r13.chern.c2) == (-4, 16)
    assert r13.betti == (1, 0, 14, 0, 1)


def test_hyperelliptic_fiber_marking():
    m = B.rational_surface(13, fibration_genus=2)
    mk = m.marking("F")
    # fiber class (g+2)h - g e1 - e2 - ... - e13 has square 0 and genus 2 by adjunction
    f = [4, -2] + [-1] * 12
    square = f[0] ** 2 - sum(x * x for x in f[1:])
    c1_dot = 3 * f[0] + sum(f[1:])
    assert square == 0 and c1_dot == 2 - 2 * 2
    assert mk.class_dots["e13"] == 1 and mk.sphere == "e13"
    with pytest.raises(B.ModelError):
        B.rational_surface(12, fibration_genus=2)


def test_elliptic_surface_n1():
    e1 = B.elliptic_surface(1)
    assert e1.cls("e9").c1_eval == 1
    assert all(e1.cls(x).c1_eval == 0 for x in models.MILNOR)
    assert e1.cls("f").c1_eval == 0
    c = classify_form(e1.form)
    assert c.signature[:2] == (1, 9) and abs(c.determinant) == 1


def test_elliptic_surface_n2():
    e2 = B.elliptic_surface(2)
    assert len(e2.h2_basis) == 22 and e2.betti[2] == 22
    assert all(c.c1_eval == 0 for c in e2.h2_basis)
    c = classify_form(e2.form)
    assert (c.rank, c.signature[:2], c.even, c.unimodular) == (22, (3, 19), True, True)
    assert sum(c.kind == "torus" for c in e2.h2_basis) == 3


def test_elliptic_surface_large_n():
    e5 = B.elliptic_surface(5)
    assert e5.h2_basis == () and not e5.basis_complete
    assert (e5.chern.c2, e5.signature) == (60, -40)
    with pytest.raises(B.ModelError):
        B.elliptic_surface(0)


def test_product_e1_t2():
    w = models.W()
    assert w.chern.as_tuple() == (0, 0, 0)
    assert w.betti == (1, 2, 11, 20, 11, 2, 1)
    assert w.basis_complete and len(w.h2_basis) == 11
    assert w.cls("pt x T2").c1_eval == 0


def test_product_rational_by_genus_two():
    p = B.product(B.rational_surface(13), B.surface(2))
    assert p.chern.as_tuple() == (24, -24, -32)
    assert p.basis_complete and len(p.h2_basis) == p.betti[2] == 15
    assert not B.product(B.surface_product(B.surface(1, ("u", "v")), B.surface(1)),
                         B.surface(1, ("s", "t"))).basis_complete  # H1 x H1 terms unlisted


def test_product_dimension_errors():
    with pytest.raises(B.ModelError):
        B.product(B.surface(1), B.elliptic_surface(1))


def test_complement_via_sphere():
    w = models.W()
    pres, images = B.complement_pi1_via_sphere(w, "FxT2")
    assert pres.generators == ("c", "d")
    assert images["a"] == () and images["b"] == () and images["mu"] == ()
    assert images["c"] == ((0, 1),) and images["d"] == ((1, 1),)
    pres, images = B.complement_pi1_via_sphere(B.elliptic_surface(1), "F")
    assert pres.ngens == 0


def test_complement_without_sphere_refused():
    w = models.W()
    mk = B.SubmanifoldMarking("T", B.torus4(), 0, w.pi1,
                              {"a": (), "b": (), "c": ((0, 1),), "d": ((1, 1),), "mu": ((0, 1),)}, False)
    with pytest.raises(B.ModelError):
        B.complement_pi1_via_sphere(w, mk)


def test_marking_invariants():
    t = B.torus4()
    with pytest.raises(B.ModelError, match="need"):
        B.SubmanifoldMarking("X", t, 0, fp.trivial_presentation(), {"a": ()}, True)
    with pytest.raises(B.ModelError, match="transverse sphere"):
        B.SubmanifoldMarking("X", t, 0, fp.free_abelian(["m"]),
                             {"a": (), "b": (), "c": (), "d": (), "mu": ((0, 1),)}, True)


def test_declare_block():
    ok = B.declare_block({"name": "E2K", "dim": 4, "betti": [1, 0, 22, 0, 1],
                          "chern": {"c1_sq": 0, "c2": 24}, "signature": -16})
    assert ok.chern.c2 == 24 and "declared" in ok.provenance[0]
    with pytest.raises(B.ModelError):
        B.declare_block({"name": "bad", "dim": 4, "betti": [1, 0, 2, 0, 1], "chern": {"c1_sq": 0, "c2": 5}})
    with pytest.raises(B.ModelError):
        B.declare_block({"name": "bad6", "dim": 6, "betti": [1, 0, 1, 0, 1, 0, 1],
                         "chern": {"c1_cubed": 0, "c1c2": 0, "c3": 0}})


@pytest.mark.parametrize("m", models.all_models(), ids=lambda m: m.name)
def test_poincare_and_euler(m):
    assert B.check_invariants(m) == []
    if m.dim == 4:
        assert m.chern.c1_sq == 2 * m.chern.c2 + 3 * m.signature
    if m.basis_complete:
        assert m.betti[2] == len(m.essential_classes)


@pytest.mark.parametrize("k", range(0, 31))
def test_rational_noether(k):
    assert B.check_constructed(B.rational_surface(k)) == []


@pytest.mark.parametrize("n", range(1, 6))
def test_elliptic_noether(n):
    assert B.check_constructed(B.elliptic_surface(n)) == []


@pytest.mark.parametrize("m4", [B.rational_surface(3), B.elliptic_surface(1), B.elliptic_surface(3),
                                B.surface_product(B.surface(2, ("p1", "q1", "p2", "q2")), B.surface(1))], ids=lambda m: m.name)
@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_kunneth(m4, g):
    s = B.surface(g, B.surface_generator_names(g, "u", "v"))
    p = B.product(m4, s)
    for k in range(7):
        assert p.betti[k] == sum(m4.betti[i] * s.betti[k - i] for i in range(5) if 0 <= k - i <= 2)
    chi = 2 - 2 * g
    assert p.chern.c3 == m4.chern.c2 * chi == p.euler
