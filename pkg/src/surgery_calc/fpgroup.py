"""Finitely presented groups: word arithmetic, abelianization, coset enumeration.

A word is a tuple of ``(generator_index, sign)`` letters with sign ``+1`` or
``-1``; the empty tuple is the identity.  Presentations keep their relators
freely and cyclically reduced.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

import numpy as np


Letter = tuple[int, int]
Word = tuple[Letter, ...]

DEFAULT_MAX_COSETS = 100_000
TIETZE_PASSES = 256


class PresentationError(ValueError):
    pass


def default_max_cosets() -> int:
    raw = os.environ.get("SURGERY_CALC_MAX_COSETS")
    if raw is None:
        return DEFAULT_MAX_COSETS
    value = int(raw)
    if value < 1:
        raise ValueError("SURGERY_CALC_MAX_COSETS must be >= 1")
    return value


# ---------------------------------------------------------------------------
# words


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, s in w:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def cyclic_reduce(w: Iterable[Letter]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w) - 1
    while i < j and w[i][0] == w[j][0] and w[i][1] == -w[j][1]:
        i += 1
        j -= 1
    return w[i:j + 1]


def inverse(w: Sequence[Letter]) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def power(w: Sequence[Letter], n: int) -> Word:
    base = tuple(w) if n >= 0 else inverse(w)
    return free_reduce(base * abs(n))


def commutator(x: Sequence[Letter], y: Sequence[Letter]) -> Word:
    """``x y x^-1 y^-1``."""
    return free_reduce(tuple(x) + tuple(y) + inverse(x) + inverse(y))


def generator(i: int, sign: int = 1) -> Word:
    return ((i, sign),)


def substitute(w: Sequence[Letter], images: Mapping[int, Sequence[Letter]]) -> Word:
    out: list[Letter] = []
    for g, s in w:
        try:
            img = images[g]
        except KeyError:
            raise PresentationError(f"no image for generator {g}") from None
        out.extend(img if s > 0 else inverse(img))
    return free_reduce(out)


def exponent_sums(w: Sequence[Letter], ngens: int) -> list[int]:
    row = [0] * ngens
    for g, s in w:
        row[g] += s
    return row


def _canonical_cyclic(w: Word) -> Word:
    """Least rotation of ``w`` or ``w^-1``; identifies relators that define the
    same normal closure trivially."""
    if not w:
        return w
    candidates = []
    for v in (w, inverse(w)):
        for k in range(len(v)):
            candidates.append(v[k:] + v[:k])
    return min(candidates)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise PresentationError(f"duplicate generator names in {gens}")
        rels = []
        for r in self.relators:
            for g, s in r:
                if not 0 <= g < len(gens) or s not in (1, -1):
                    raise PresentationError(f"bad letter {(g, s)} for {len(gens)} generators")
            rels.append(cyclic_reduce(r))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, w: Sequence[Letter]) -> str:
        return format_word(w, self.generators)

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def __str__(self):
        rels = ", ".join(self.format_word(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


def trivial_presentation() -> Presentation:
    return Presentation(())


def free_abelian(names: Sequence[str]) -> Presentation:
    k = len(names)
    rels = [commutator(generator(i), generator(j)) for i in range(k) for j in range(i + 1, k)]
    return Presentation(tuple(names), tuple(rels))


def direct_product(p: Presentation, q: Presentation) -> Presentation:
    """Presentation of ``p x q`` (generator names must be disjoint)."""
    shift = p.ngens
    gens = p.generators + q.generators
    if len(set(gens)) != len(gens):
        raise PresentationError(f"generator names collide: {p.generators} / {q.generators}")
    rels = list(p.relators)
    rels += [tuple((g + shift, s) for g, s in r) for r in q.relators]
    rels += [commutator(generator(i), generator(j + shift))
             for i in range(p.ngens) for j in range(q.ngens)]
    return Presentation(gens, tuple(rels))


def free_product(p: Presentation, q: Presentation) -> Presentation:
    shift = p.ngens
    rels = list(p.relators) + [tuple((g + shift, s) for g, s in r) for r in q.relators]
    return Presentation(p.generators + q.generators, tuple(rels))


# ---------------------------------------------------------------------------
# word syntax: "c d c^-1", "[c,d]", "mu'^-1", "(a b)^3", "1"

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<one>1(?![0-9]))|(?P<op>[\[\](),^*])|(?P<int>-?\d+))")


def parse_word(text: str, generators: Sequence[str]) -> Word:
    index = {name: i for i, name in enumerate(generators)}
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"cannot parse word {text!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))

    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else (None, None)

    def take(expected=None):
        nonlocal k
        tok = peek()
        if tok[0] is None or (expected is not None and tok[1] != expected):
            raise PresentationError(f"malformed word {text!r}: expected {expected or 'token'}")
        k += 1
        return tok

    def atom() -> Word:
        kind, val = peek()
        if kind == "name":
            take()
            if val not in index:
                raise PresentationError(f"unknown generator {val!r} in word {text!r}")
            return generator(index[val])
        if kind == "one":
            take()
            return ()
        if val == "(":
            take("(")
            w = product()
            take(")")
            return w
        if val == "[":
            take("[")
            x = product()
            take(",")
            y = product()
            take("]")
            return commutator(x, y)
        raise PresentationError(f"malformed word {text!r}")

    def factor() -> Word:
        w = atom()
        while peek()[1] == "^":
            take("^")
            kind, val = take()
            if kind not in ("int", "one"):
                raise PresentationError(f"exponent must be an integer in {text!r}")
            w = power(w, int(val))
        return w

    def product() -> Word:
        parts: list[Letter] = []
        while True:
            kind, val = peek()
            if val == "*":
                take("*")
                continue
            if kind in ("name", "one") or val in ("(", "["):
                parts.extend(factor())
            else:
                break
        return free_reduce(parts)

    w = product()
    if k != len(tokens):
        raise PresentationError(f"trailing input in word {text!r}")
    return w


def format_word(w: Sequence[Letter], generators: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        g, s = w[i]
        n = 1
        while i + n < len(w) and w[i + n] == (g, s):
            n += 1
        e = s * n
        parts.append(generators[g] if e == 1 else f"{generators[g]}^{e}")
        i += n
    return " ".join(parts)


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0 or any(t < 2 for t in self.torsion):
            raise ValueError(f"invalid abelian invariants {self}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def describe(self) -> str:
        if self.is_trivial:
            return "trivial"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z_{t}" for t in self.torsion]
        return " x ".join(parts)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]

        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the corner
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return tuple(diag)


def relation_matrix(p: Presentation) -> list[list[int]]:
    return [exponent_sums(r, p.ngens) for r in p.relators]


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    d = smith_normal_form(relation_matrix(p)) if p.relators and p.ngens else ()
    return AbelianInvariants(p.ngens - len(d), tuple(x for x in d if x > 1))


# ---------------------------------------------------------------------------
# coset enumeration


@dataclass(frozen=True)
class Index:
    n: int
    cosets_defined: int = 0


@dataclass(frozen=True)
class Exceeded:
    max_cosets: int


def _pack(words: Sequence[Word]) -> tuple[np.ndarray, np.ndarray]:
    letters = [2 * g + (0 if s > 0 else 1) for w in words for g, s in w]
    offsets = np.zeros(len(words) + 1, dtype=np.int64)
    np.cumsum([len(w) for w in words], out=offsets[1:])
    return np.asarray(letters, dtype=np.int64), offsets


def todd_coxeter(p: Presentation, subgroup: Sequence[Word] = (),
                 max_cosets: int | None = None) -> Index | Exceeded:
    """Index of ``subgroup`` in ``p`` by HLT enumeration, or ``Exceeded``.

    Relators are scanned in stored order and new cosets take the first free
    row, so the table is reproducible run to run.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets()
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    for w in subgroup:
        for g, _ in w:
            if not 0 <= g < p.ngens:
                raise PresentationError(f"subgroup word uses unknown generator {g}")
    rel_letters, rel_offsets = _pack([r for r in p.relators if r])
    sub_letters, sub_offsets = _pack([free_reduce(w) for w in subgroup if w])
    from ._coset_kernel import hlt_enumerate  # deferred: loads numba when enabled

    done, index, defined = hlt_enumerate(2 * p.ngens, rel_letters, rel_offsets,
                                         sub_letters, sub_offsets, int(max_cosets))
    if not done:
        return Exceeded(int(max_cosets))
    return Index(int(index), int(defined))


# ---------------------------------------------------------------------------
# Tietze simplification


def _drop_generator(rels: list[Word], x: int) -> list[Word]:
    return [tuple((g - 1 if g > x else g, s) for g, s in r) for r in rels]


def _tidy(rels: Iterable[Word]) -> list[Word]:
    out: list[Word] = []
    seen: set[Word] = set()
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = _canonical_cyclic(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def _find_elimination(rels: list[Word], ngens: int) -> tuple[int, int] | None:
    order = sorted(range(len(rels)), key=lambda k: (len(rels[k]), k))
    for k in order:
        counts = [0] * ngens
        for g, _ in rels[k]:
            counts[g] += 1
        # later generators go first so earlier (unprimed) names survive
        for x in reversed(range(ngens)):
            if counts[x] == 1:
                return k, x
    return None


def tietze_simplify(p: Presentation, budget: int = TIETZE_PASSES) -> Presentation:
    """Shrink a presentation by removing trivial and duplicate relators and
    eliminating generators that occur exactly once in some relator."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    gens = list(p.generators)
    rels = list(p.relators)
    for _ in range(budget):
        rels = _tidy(rels)
        found = _find_elimination(rels, len(gens))
        if found is None:
            break
        k, x = found
        r = rels.pop(k)
        pos = next(i for i, (g, _) in enumerate(r) if g == x)
        rotated = r[pos:] + r[:pos]
        rest = rotated[1:]
        value = inverse(rest) if rotated[0][1] > 0 else rest
        images = {g: generator(g) for g in range(len(gens))}
        images[x] = value
        rels = _drop_generator([substitute(w, images) for w in rels], x)
        del gens[x]
    return Presentation(tuple(gens), tuple(_tidy(rels)))


# ---------------------------------------------------------------------------
# classification


class Triviality(str, Enum):
    PROVED_TRIVIAL = "ProvedTrivial"
    PROVED_NONTRIVIAL = "ProvedNontrivial"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class GroupVerdict:
    triviality: Triviality
    finite_index: int | None
    abelian: AbelianInvariants
    structure: str = "unknown"
    simplified: Presentation = field(default_factory=trivial_presentation)
    coset_run: Index | Exceeded | None = None

    def __post_init__(self):
        if self.triviality is Triviality.PROVED_TRIVIAL:
            if self.finite_index != 1 or not self.abelian.is_trivial:
                raise ValueError("ProvedTrivial requires order 1 and trivial abelianization")
        if self.triviality is Triviality.PROVED_NONTRIVIAL:
            if self.abelian.is_trivial and not (self.finite_index and self.finite_index > 1):
                raise ValueError("ProvedNontrivial needs a witness")


def is_visibly_abelian(p: Presentation) -> bool:
    """True when every pair of generators has its commutator among the relators."""
    if p.ngens <= 1:
        return True
    have = {_canonical_cyclic(r) for r in p.relators}
    for i in range(p.ngens):
        for j in range(i + 1, p.ngens):
            if _canonical_cyclic(commutator(generator(i), generator(j))) not in have:
                return False
    return True


def classify_group(p: Presentation, budget: int | None = None) -> GroupVerdict:
    """Combine Tietze reduction, abelianization and coset enumeration.

    ``budget`` is the coset limit.  Coset enumeration is skipped when the
    abelianization already has positive free rank (the group is infinite).
    """
    max_cosets = default_max_cosets() if budget is None else budget
    ab = abelian_invariants(p)
    simple = tietze_simplify(p)

    run = None
    order = None
    if ab.free_rank == 0:
        # enumerate the presentation as given; the simplified one is a fallback
        run = todd_coxeter(p, (), max_cosets)
        if isinstance(run, Exceeded) and simple.ngens < p.ngens:
            run = todd_coxeter(simple, (), max_cosets)
        if isinstance(run, Index):
            order = run.n
    if simple.ngens == 0:
        return GroupVerdict(Triviality.PROVED_TRIVIAL, 1, ab, "trivial", simple, run)

    abelian = is_visibly_abelian(simple) or (order is not None and order == ab.order)
    if abelian:
        structure = ab.describe()
    elif order is not None:
        structure = f"finite nonabelian, order {order}"
    else:
        structure = "unknown"

    if order == 1:
        return GroupVerdict(Triviality.PROVED_TRIVIAL, 1, ab, "trivial", simple, run)
    if order is not None or not ab.is_trivial:
        return GroupVerdict(Triviality.PROVED_NONTRIVIAL, order, ab, structure, simple, run)
    return GroupVerdict(Triviality.UNKNOWN, None, ab, structure, simple, run)
