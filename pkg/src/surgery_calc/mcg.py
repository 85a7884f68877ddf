"""Dehn-twist words acting on H_1(Sigma_g) through Sp(2g, Z).

Coordinates are ordered (x_1..x_g, y_1..y_g) with <x_i, y_i> = +1, and a
twist along a curve of class v acts by z -> z + <z, v> v.  Matrices use
numpy object arrays so entries stay exact Python integers.

Equality in Sp(2g, Z) is only a necessary condition for a mapping class
identity; reports label these checks "H1-faithful only".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

H1_QUALIFIER = "H1-faithful only"


class MonodromyError(ValueError):
    pass


def symplectic_j(g: int) -> np.ndarray:
    j = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        j[i, g + i] = 1
        j[g + i, i] = -1
    return j


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    g = len(u) // 2
    return int(sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g)))


@dataclass(frozen=True)
class ChainClasses:
    genus: int
    vectors: tuple[tuple[int, ...], ...]

    def __getitem__(self, i: int) -> tuple[int, ...]:
        """1-based access to v_i."""
        return self.vectors[i - 1]


def chain_classes(g: int) -> ChainClasses:
    """Homology classes of the standard chain a_1, ..., a_{2g+1}."""
    if g < 1:
        raise MonodromyError("genus must be >= 1")

    def x(i):
        v = [0] * (2 * g)
        v[i - 1] = 1
        return v

    def y(i):
        v = [0] * (2 * g)
        v[g + i - 1] = 1
        return v

    vecs = [x(1)]
    for i in range(1, g + 1):
        vecs.append(y(i))
        if i < g:
            vecs.append([a + b for a, b in zip(x(i), x(i + 1))])
    vecs.append(x(g))
    return ChainClasses(g, tuple(tuple(v) for v in vecs))


def transvection_matrix(v: Sequence[int], g: int | None = None) -> np.ndarray:
    if g is None:
        g = len(v) // 2
    if len(v) != 2 * g:
        raise MonodromyError(f"vector of length {len(v)} for genus {g}")
    col = np.array([int(a) for a in v], dtype=object).reshape(-1, 1)
    # z + <z, v> v  with  <z, v> = z^T J v
    return np.identity(2 * g, dtype=object) + col @ (symplectic_j(g) @ col).T


def transvection_inverse(v: Sequence[int], g: int | None = None) -> np.ndarray:
    if g is None:
        g = len(v) // 2
    col = np.array([int(a) for a in v], dtype=object).reshape(-1, 1)
    return np.identity(2 * g, dtype=object) - col @ (symplectic_j(g) @ col).T


@dataclass(frozen=True)
class TwistWord:
    genus: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, s in self.letters:
            if not 1 <= i <= 2 * self.genus + 1 or s not in (1, -1):
                raise MonodromyError(f"letter {(i, s)} out of range for genus {self.genus}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(f"a{i}" if s > 0 else f"a{i}^-1" for i, s in self.letters)


def word_matrix(w: TwistWord) -> np.ndarray:
    """Product T_{l_1} T_{l_2} ... T_{l_n} (letter i with sign -1 uses T^-1)."""
    chain = chain_classes(w.genus)
    twists = {i: transvection_matrix(chain[i]) for i in range(1, 2 * w.genus + 2)}
    inverses = {i: transvection_inverse(chain[i]) for i in range(1, 2 * w.genus + 2)}
    m = np.identity(2 * w.genus, dtype=object)
    for i, s in w.letters:
        m = m @ (twists[i] if s > 0 else inverses[i])
    return m


def is_symplectic(m: np.ndarray) -> bool:
    g = m.shape[0] // 2
    j = symplectic_j(g)
    return bool(np.array_equal(m.T @ j @ m, j))


def is_identity(m: np.ndarray) -> bool:
    return bool(np.array_equal(m, np.identity(m.shape[0], dtype=object)))


def _word(g: int, indices: Sequence[int]) -> TwistWord:
    return TwistWord(g, tuple((i, 1) for i in indices))


def half_word_x(g: int) -> TwistWord:
    """a_1 a_2 ... a_{2g} a_{2g+1}^2 a_{2g} ... a_1 (the hyperelliptic involution)."""
    up = list(range(1, 2 * g + 2))
    return _word(g, up + up[::-1])


def relator_family(family: str, g: int) -> TwistWord:
    """The hyperelliptic relator words X, Y, Z in genus ``g``."""
    if g < 1:
        raise MonodromyError("genus must be >= 1")
    if family == "X":
        return _word(g, [i for i, _ in half_word_x(g).letters] * 2)
    if family == "Y":
        return _word(g, list(range(1, 2 * g + 2)) * (2 * g + 2))
    if family == "Z":
        return _word(g, list(range(1, 2 * g + 1)) * (4 * g + 2))
    raise MonodromyError(f"unknown relator family {family!r}")


def lefschetz_euler(g: int, n_crit: int, base_genus: int = 0) -> int:
    """Euler characteristic of a genus-g Lefschetz fibration over S^2."""
    if n_crit < 0:
        raise MonodromyError("number of critical points must be >= 0")
    if base_genus != 0:
        raise MonodromyError("only fibrations over S^2 are supported")
    return 2 * (2 - 2 * g) + n_crit


@dataclass(frozen=True)
class FamilyCheck:
    family: str
    genus: int
    length: int
    identity_on_h1: bool
    symplectic: bool
    half_word_is_minus_identity: bool | None
    euler: int

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "genus": self.genus,
            "length": self.length,
            "identity_on_h1": self.identity_on_h1,
            "symplectic": self.symplectic,
            "half_word_minus_identity": self.half_word_is_minus_identity,
            "lefschetz_euler": self.euler,
            "qualifier": H1_QUALIFIER,
        }


def check_family(family: str, g: int) -> FamilyCheck:
    w = relator_family(family, g)
    m = word_matrix(w)
    half = None
    if family == "X":
        h = word_matrix(half_word_x(g))
        half = bool(np.array_equal(h, -np.identity(2 * g, dtype=object)))
    return FamilyCheck(family, g, len(w), is_identity(m), is_symplectic(m), half,
                       lefschetz_euler(g, len(w)))
