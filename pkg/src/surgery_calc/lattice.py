"""Integer symmetric bilinear forms (intersection forms).

Everything is exact: signatures come from a symmetric congruence
diagonalization over the rationals, determinants from Bareiss elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "AmbientDiagonalForm",
    "IntLattice",
    "FormClass",
    "gram_from_vectors",
    "direct_sum",
    "signature",
    "determinant",
    "classify_form",
    "standard_form",
    "example_e1_vectors",
]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class AmbientDiagonalForm:
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if not signs or any(s not in (1, -1) for s in signs):
            raise LatticeError("ambient form needs a nonempty sequence of +1/-1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def blowup(cls, k: int) -> "AmbientDiagonalForm":
        """<+1, -1^k>: H_2 of CP^2 blown up k times, basis h, e_1..e_k."""
        return cls((1,) + (-1,) * k)

    @property
    def rank(self) -> int:
        return len(self.signs)


@dataclass(frozen=True)
class IntLattice:
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(labels)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise LatticeError(f"gram must be {n}x{n} to match the labels")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"gram is not symmetric at ({i},{j})")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "gram", gram)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def pairing(self, a: str, b: str) -> int:
        return self.gram[self.labels.index(a)][self.labels.index(b)]

    def restrict(self, labels: Sequence[str]) -> "IntLattice":
        idx = [self.labels.index(x) for x in labels]
        return IntLattice(tuple(labels), tuple(tuple(self.gram[i][j] for j in idx) for i in idx))


def gram_from_vectors(ambient: AmbientDiagonalForm, vectors: Sequence[Sequence[int]],
                      labels: Sequence[str] | None = None) -> IntLattice:
    vecs = [tuple(int(x) for x in v) for v in vectors]
    for v in vecs:
        if len(v) != ambient.rank:
            raise LatticeError(f"vector of length {len(v)} in ambient of rank {ambient.rank}")
    if labels is None:
        labels = [f"v{i}" for i in range(len(vecs))]
    if len(labels) != len(vecs):
        raise LatticeError("one label per vector")
    s = ambient.signs
    gram = [[sum(s[k] * u[k] * v[k] for k in range(len(s))) for v in vecs] for u in vecs]
    return IntLattice(tuple(labels), tuple(map(tuple, gram)))


def direct_sum(*lattices: IntLattice) -> IntLattice:
    labels: list[str] = []
    n = sum(L.rank for L in lattices)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        labels.extend(L.labels)
        for i, row in enumerate(L.gram):
            gram[off + i][off:off + L.rank] = row
        off += L.rank
    return IntLattice(tuple(labels), tuple(map(tuple, gram)))


def signature(L: IntLattice | Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia counts."""
    gram = L.gram if isinstance(L, IntLattice) else L
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    pos = neg = zero = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                _swap(a, k, j)
            else:
                pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
                if pair is None:
                    zero += n - k
                    break
                # zero diagonal: split off a hyperbolic 2x2 block [[0, b], [b, 0]]
                i, j = pair
                _swap(a, k, i)
                _swap(a, k + 1, j)
                b = a[k][k + 1]
                for r in range(k + 2, n):
                    for c in range(k + 2, n):
                        a[r][c] -= (a[r][k] * a[k + 1][c] + a[r][k + 1] * a[k][c]) / b
                for r in range(k + 2, n):
                    a[r][k] = a[k][r] = a[r][k + 1] = a[k + 1][r] = Fraction(0)
                pos += 1
                neg += 1
                k += 2
                continue
        piv = a[k][k]
        for r in range(k + 1, n):
            if a[r][k]:
                f = a[r][k] / piv
                for c in range(k + 1, n):
                    a[r][c] -= f * a[k][c]
                a[r][k] = Fraction(0)
        for c in range(k + 1, n):
            a[k][c] = Fraction(0)
        if piv > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return pos, neg, zero


def _swap(a, i, j):
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def determinant(L: IntLattice | Sequence[Sequence[int]]) -> int:
    gram = L.gram if isinstance(L, IntLattice) else L
    a = [[int(x) for x in row] for row in gram]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            r = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if r is None:
                return 0
            a[k], a[r] = a[r], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class FormClass:
    rank: int
    signature: tuple[int, int, int]
    determinant: int
    even: bool
    unimodular: bool

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "signature": list(self.signature[:2]),
            "nullity": self.signature[2],
            "determinant": self.determinant,
            "even": self.even,
            "unimodular": self.unimodular,
        }


def classify_form(L: IntLattice) -> FormClass:
    det = determinant(L)
    return FormClass(
        rank=L.rank,
        signature=signature(L),
        determinant=det,
        even=all(L.gram[i][i] % 2 == 0 for i in range(L.rank)),
        unimodular=abs(det) == 1,
    )


# Dynkin order: chain 1-2-...-7, node 8 hangs off node 5.
_E8_EDGES = [(i, i + 1) for i in range(6)] + [(4, 7)]


def standard_form(name: str) -> IntLattice:
    if name in ("E8", "minusE8"):
        s = 1 if name == "E8" else -1
        gram = [[0] * 8 for _ in range(8)]
        for i in range(8):
            gram[i][i] = 2 * s
        for i, j in _E8_EDGES:
            gram[i][j] = gram[j][i] = -s
        prefix = "E8" if s > 0 else "-E8"
        return IntLattice(tuple(f"{prefix}.{i + 1}" for i in range(8)), tuple(map(tuple, gram)))
    if name == "H":
        return IntLattice(("H.1", "H.2"), ((0, 1), (1, 0)))
    raise LatticeError(f"unknown standard form {name!r}")


def example_e1_vectors() -> tuple[tuple[str, ...], tuple[tuple[int, ...], ...]]:
    """The elliptic-fibration basis of H_2(E(1)) in coordinates (h, e_1, ..., e_9).

    Order: fiber f = 3h - sum e_i, section e_9, then the eight -2 spheres
    e_1-e_2, ..., e_7-e_8, -h+e_6+e_7+e_8 spanning a -E8.
    """
    def vec(h=0, **es):
        v = [h] + [0] * 9
        for key, val in es.items():
            v[int(key[1:])] = val
        return tuple(v)

    labels = ["f", "e9"]
    vectors = [tuple([3] + [-1] * 9), vec(e9=1)]
    for i in range(1, 8):
        labels.append(f"e{i}-e{i + 1}")
        vectors.append(vec(**{f"e{i}": 1, f"e{i + 1}": -1}))
    labels.append("-h+e6+e7+e8")
    vectors.append(vec(-1, e6=1, e7=1, e8=1))
    return tuple(labels), tuple(vectors)
