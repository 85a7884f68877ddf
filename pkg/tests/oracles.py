"""Brute-force reference implementations used as test oracles.

None of these share code with the package: group orders come from closing
concrete permutation representations, Smith invariants from gcds of minors,
Chern numbers from textbook formulas written out again here.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

# ---------------------------------------------------------------------------
# words


def naive_reduce(letters):
    """Repeated single-pass cancellation until nothing changes."""
    w = list(letters)
    changed = True
    while changed:
        changed = False
        out = []
        i = 0
        while i < len(w):
            if i + 1 < len(w) and w[i][0] == w[i + 1][0] and w[i][1] == -w[i + 1][1]:
                i += 2
                changed = True
            else:
                out.append(w[i])
                i += 1
        w = out
    return tuple(w)


# ---------------------------------------------------------------------------
# permutation groups


def perm_mul(p, q):
    """Apply p then q."""
    return tuple(q[i] for i in p)


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def evaluate(word, perms):
    n = len(perms[0])
    cur = tuple(range(n))
    for g, s in word:
        cur = perm_mul(cur, perms[g] if s > 0 else perm_inv(perms[g]))
    return cur


def closure_order(perms):
    """Size of the group generated by ``perms`` (breadth-first closure)."""
    ident = tuple(range(len(perms[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for p in perms:
                y = perm_mul(x, p)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def multiplication_table(perms):
    """Elements and full Cayley table of the generated group."""
    ident = tuple(range(len(perms[0])))
    elems = [ident]
    index = {ident: 0}
    k = 0
    while k < len(elems):
        for p in perms:
            y = perm_mul(elems[k], p)
            if y not in index:
                index[y] = len(elems)
                elems.append(y)
        k += 1
    table = [[index[perm_mul(a, b)] for b in elems] for a in elems]
    return elems, table


def cycle(n, shift=1):
    return tuple((i + shift) % n for i in range(n))


def _on(n, mapping):
    return tuple(mapping.get(i, i) for i in range(n))


def group_corpus():
    """(label, generator names, relator strings, faithful permutation images, order).

    Each permutation tuple satisfies the relators and generates a group of the
    listed order; the presentations are standard ones for these groups.
    """
    out = []
    for n in (1, 2, 3, 5, 7, 12, 24):
        out.append((f"Z_{n}", "a", [f"a^{n}"], [cycle(n)], n))
    for n in (3, 4, 5, 6, 12):
        # dihedral of order 2n acting on an n-gon
        r = cycle(n)
        s = tuple((-i) % n for i in range(n))
        out.append((f"D_{n}", "rs", [f"r^{n}", "s^2", "(s*r)^2"], [r, s], 2 * n))
    # Z_2 x Z_3 on 5 points, Z_2 x Z_2, Z_2 x Z_4, Z_3 x Z_3 on disjoint supports
    def disjoint(n1, n2):
        a = tuple((i + 1) % n1 if i < n1 else i for i in range(n1 + n2))
        b = tuple(i if i < n1 else n1 + (i - n1 + 1) % n2 for i in range(n1 + n2))
        return a, b
    for n1, n2 in ((2, 3), (2, 2), (2, 4), (3, 3), (2, 6), (4, 6)):
        a, b = disjoint(n1, n2)
        out.append((f"Z_{n1} x Z_{n2}", "cd", ["[c,d]", f"c^{n1}", f"d^{n2}"], [a, b], n1 * n2))
    # S_4 as a Coxeter group
    s1, s2, s3 = _on(4, {0: 1, 1: 0}), _on(4, {1: 2, 2: 1}), _on(4, {2: 3, 3: 2})
    out.append(("S_4", "xyz", ["x^2", "y^2", "z^2", "(x*y)^3", "(y*z)^3", "(x*z)^2"],
                [s1, s2, s3], 24))
    # A_4 = <a, b | a^2, b^3, (ab)^3>
    a = _on(4, {0: 1, 1: 0, 2: 3, 3: 2})
    b = _on(4, {0: 1, 1: 2, 2: 0})
    out.append(("A_4", "ab", ["a^2", "b^3", "(a*b)^3"], [a, b], 12))
    # quaternion group Q_8 = <i, j | i^4, i^2 j^-2, j i j^-1 i> acting on itself
    q8 = _quaternion_regular()
    out.append(("Q_8", "ij", ["i^4", "i^2*j^-2", "j*i*j^-1*i"], q8, 8))
    # dicyclic group of order 12: <x, y | x^6, x^3 y^-2, y x y^-1 x>
    dic = _dicyclic12_regular()
    out.append(("Dic_3", "xy", ["x^6", "x^3*y^-2", "y*x*y^-1*x"], dic, 12))
    # trivial group from redundant relators
    out.append(("trivial", "ab", ["a", "b*a^-1"], [(0,), (0,)], 1))
    # Z_2 x Z_2 x Z_2 on 6 points
    e1 = _on(6, {0: 1, 1: 0})
    e2 = _on(6, {2: 3, 3: 2})
    e3 = _on(6, {4: 5, 5: 4})
    out.append(("Z_2^3", "uvw", ["u^2", "v^2", "w^2", "[u,v]", "[u,w]", "[v,w]"], [e1, e2, e3], 8))
    return out


def _quaternion_regular():
    # elements as (sign, unit) with unit in 1, i, j, k
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    idx = {e: n for n, e in enumerate(elems)}

    def right(g):
        out = []
        for s, u in elems:
            s2, u2 = mult[(u, g)]
            out.append(idx[(s * s2, u2)])
        return tuple(out)
    return [right("i"), right("j")]


def _dicyclic12_regular():
    # elements x^a y^b, a in Z_6, b in {0,1};  y x = x^-1 y,  y^2 = x^3
    elems = [(a, b) for b in (0, 1) for a in range(6)]
    idx = {e: n for n, e in enumerate(elems)}

    def mul(p, q):
        a1, b1 = p
        a2, b2 = q
        a2 = a2 if b1 == 0 else -a2
        a = a1 + a2
        b = b1 + b2
        if b == 2:
            a += 3
            b = 0
        return (a % 6, b)

    return [tuple(idx[mul(e, g)] for e in elems) for g in ((1, 0), (0, 1))]


# ---------------------------------------------------------------------------
# integer matrices


def exact_det(m):
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return int(det)


def minor_gcd(m, r):
    """gcd of all r x r minors."""
    rows, cols = len(m), len(m[0]) if m else 0
    g = 0
    for ri in combinations(range(rows), r):
        for ci in combinations(range(cols), r):
            g = gcd(g, exact_det([[m[i][j] for j in ci] for i in ri]))
    return g


def smith_by_minors(m):
    """Invariant factors d_k = D_k / D_{k-1} with D_k the minor gcds."""
    if not m or not m[0]:
        return ()
    out = []
    prev = 1
    for r in range(1, min(len(m), len(m[0])) + 1):
        d = minor_gcd(m, r)
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return tuple(out)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def eigen_inertia(gram):
    """(pos, neg, zero) by counting sign changes of the characteristic polynomial's
    roots via numpy eigenvalues on small, well-conditioned integer matrices."""
    import numpy as np
    if not gram:
        return (0, 0, 0)
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    tol = 1e-8
    return (int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum()))


# ---------------------------------------------------------------------------
# symplectic linear algebra


def sym_form(u, v):
    g = len(u) // 2
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def apply_twist(v, z):
    """z + <z, v> v."""
    k = sym_form(z, v)
    return [a + k * b for a, b in zip(z, v)]
