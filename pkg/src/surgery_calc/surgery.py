"""Symplectic fiber sums, coisotropic Luttinger surgery and the Calabi-Yau test.

Chern numbers follow the sum formula c_I(X1 # X2) = c_I(X1) + c_I(X2) -
c_I(Y x S^2); pi_1 is assembled by Seifert-Van Kampen from the two
complements and an explicit generator table for the gluing; c_1 on sewn
classes uses c_1(C1) + c_1(C2) - Y.C1 - Y.C2 and vanishes on rim classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Mapping, Sequence

from . import fpgroup as fp
from . import blocks
from .blocks import (
    DECLARED, DERIVED, EXACT, ESSENTIAL,
    Chern4, Chern6, ClassRecord, ManifoldModel, SubmanifoldMarking,
)
from .fpgroup import Presentation, Word
from .lattice import IntLattice, determinant
from .mcg import lefschetz_euler, relator_family

MERIDIAN = "mu"
MERIDIAN_RULE = "mu'^-1"
RIM_JUSTIFICATION = (
    "a rim torus gamma x mu survives with a dual sphere exactly when gamma bounds "
    "a disk on both sides of the gluing")


class SurgeryError(ValueError):
    pass


def prime(name: str) -> str:
    return name + "'"


# ---------------------------------------------------------------------------
# Chern arithmetic


def chern_sum_6(x1: Chern6, x2: Chern6, y: Chern4) -> Chern6:
    return Chern6(
        x1.c1_cubed + x2.c1_cubed - 6 * y.c1_sq,
        x1.c1c2 + x2.c1c2 - 2 * (y.c1_sq + y.c2),
        x1.c3 + x2.c3 - 2 * y.c2,
    )


def c1_eval_sewn(c1_c1: int, c1_c2: int, y_dot_c1: int, y_dot_c2: int) -> int:
    return c1_c1 + c1_c2 - y_dot_c1 - y_dot_c2


# ---------------------------------------------------------------------------
# gluing maps


def _rank(rows: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class GluingMap:
    """Images of the side-1 submanifold generators as words in the side-2
    (primed) generators.  The meridian always goes to mu'^-1."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    images: Mapping[str, Word]

    def __post_init__(self):
        if set(self.images) != set(self.source):
            raise SurgeryError(
                f"gluing must give images for exactly {list(self.source)}, got {sorted(self.images)}")
        k = len(self.source)
        if len(self.target) != k:
            raise SurgeryError("gluing between submanifolds with different pi_1 ranks")
        det = determinant(self.matrix())
        if abs(det) != 1:
            raise SurgeryError(
                f"abelianized gluing matrix has determinant {det}; it is not induced by a diffeomorphism")

    def matrix(self) -> list[list[int]]:
        """Column j = exponent sums of the image of source generator j."""
        cols = [fp.exponent_sums(self.images[g], len(self.target)) for g in self.source]
        return [[cols[j][i] for j in range(len(cols))] for i in range(len(self.target))]

    @classmethod
    def from_table(cls, table: Mapping[str, str], source: Sequence[str],
                   target: Sequence[str]) -> "GluingMap":
        table = dict(table)
        if MERIDIAN not in table:
            raise SurgeryError("gluing table must state the meridian rule mu -> mu'^-1")
        if "".join(str(table.pop(MERIDIAN)).split()) != MERIDIAN_RULE:
            raise SurgeryError("the meridian must map to mu'^-1 (orientation reversal); "
                               "gluings mixing mu into other generators are not supported")
        images = {}
        for g, text in table.items():
            images[g] = fp.parse_word(str(text), target)
        return cls(tuple(source), tuple(target), images)

    @classmethod
    def identity(cls, source: Sequence[str]) -> "GluingMap":
        target = tuple(prime(g) for g in source)
        return cls(tuple(source), target, {g: fp.generator(i) for i, g in enumerate(source)})

    def table(self) -> dict[str, str]:
        out = {g: fp.format_word(self.images[g], self.target) for g in self.source}
        out[MERIDIAN] = MERIDIAN_RULE
        return out


# ---------------------------------------------------------------------------
# Seifert-Van Kampen


@dataclass(frozen=True)
class Complement:
    """pi_1 of X - Y together with the images of pi_1(Y) generators and mu."""

    pi1: Presentation
    images: Mapping[str, Word]


def complement_of(m: ManifoldModel, mk: SubmanifoldMarking) -> Complement:
    if mk.has_transverse_sphere:
        pres, images = blocks.complement_pi1_via_sphere(m, mk)
        return Complement(pres, images)
    return Complement(mk.complement_pi1, dict(mk.boundary_images))


def primed_complement(c: Complement) -> Complement:
    return Complement(
        Presentation(tuple(prime(g) for g in c.pi1.generators), c.pi1.relators),
        {prime(k): w for k, w in c.images.items()})


def van_kampen_fiber_sum(comp1: Complement, comp2: Complement, glue: GluingMap) -> Presentation:
    """pi_1 of the glued manifold.

    ``comp2`` must already use the primed names that ``glue`` targets.
    """
    shift = comp1.pi1.ngens
    gens = comp1.pi1.generators + comp2.pi1.generators
    if len(set(gens)) != len(gens):
        raise SurgeryError(f"complement generators collide: {gens}")
    for g in glue.source:
        if g not in comp1.images:
            raise SurgeryError(f"side 1 has no boundary image for {g}")
    for g in glue.target:
        if g not in comp2.images:
            raise SurgeryError(f"side 2 has no boundary image for {g}")
    if MERIDIAN not in comp1.images or prime(MERIDIAN) not in comp2.images:
        raise SurgeryError("both complements need a meridian image")

    def lift2(w: Word) -> Word:
        return tuple((g + shift, s) for g, s in w)

    side2 = {i: comp2.images[t] for i, t in enumerate(glue.target)}
    rels = list(comp1.pi1.relators) + [lift2(r) for r in comp2.pi1.relators]
    for g in glue.source:
        across = lift2(fp.substitute(glue.images[g], side2))
        rels.append(fp.free_reduce(comp1.images[g] + fp.inverse(across)))
    # mu = mu'^-1
    rels.append(fp.free_reduce(comp1.images[MERIDIAN] + lift2(comp2.images[prime(MERIDIAN)])))
    return Presentation(gens, tuple(r for r in rels if r))


def bounds_on_both_sides(comp1: Complement, comp2: Complement, glue: GluingMap, gen: str) -> bool:
    side2 = {i: comp2.images[t] for i, t in enumerate(glue.target)}
    return (not fp.free_reduce(comp1.images[gen])
            and not fp.substitute(glue.images[gen], side2))


def rim_rank(comp1: Complement, comp2: Complement, glue: GluingMap) -> int:
    """Rank of the classes in H_1(Y) dying in both complements (rationally).

    Each such class contributes a rim torus with a dual sphere.
    """
    k = len(glue.source)
    side2 = {i: comp2.images[t] for i, t in enumerate(glue.target)}
    n1, n2 = comp1.pi1.ngens, comp2.pi1.ngens
    a1 = [fp.exponent_sums(comp1.images[g], n1) for g in glue.source]
    a2 = [fp.exponent_sums(fp.substitute(glue.images[g], side2), n2) for g in glue.source]
    r1 = fp.relation_matrix(comp1.pi1)
    r2 = fp.relation_matrix(comp2.pi1)
    # unknowns (x in Q^k, y1, y2):  A1 x = R1^T y1,  A2 x = R2^T y2
    rows = []
    for i in range(n1):
        rows.append([a1[j][i] for j in range(k)] + [-r[i] for r in r1] + [0] * len(r2))
    for i in range(n2):
        rows.append([a2[j][i] for j in range(k)] + [0] * len(r1) + [-r[i] for r in r2])
    return k - _rank(rows) + _rank(r1) + _rank(r2)


# ---------------------------------------------------------------------------
# H_2 bookkeeping


@dataclass(frozen=True)
class H2Directive:
    op: str                       # keep | sew | rim
    labels: tuple[str, ...]
    side: int = 1
    name: str | None = None       # output label (keep/sew); rim torus label
    sphere: str | None = None     # rim: dual sphere label
    status: str = ESSENTIAL       # rim: essential | nullhomologous
    kind: str | None = None
    sphere_square: int = -2

    @classmethod
    def from_raw(cls, raw: Mapping[str, Any]) -> list["H2Directive"]:
        if "keep" in raw:
            labels = raw["keep"]
            labels = [labels] if isinstance(labels, str) else list(labels)
            side = int(raw.get("side", 1))
            if "as" in raw and len(labels) != 1:
                raise SurgeryError("'as' renames a single kept class")
            return [cls("keep", (lab,), side=side, name=raw.get("as")) for lab in labels]
        if "sew" in raw:
            pair = tuple(raw["sew"])
            if len(pair) != 2:
                raise SurgeryError("sew takes [side-1 class, side-2 class]")
            return [cls("sew", pair, name=raw.get("as"), kind=raw.get("kind"))]
        if "rim" in raw:
            status = raw.get("status", ESSENTIAL)
            if status not in (ESSENTIAL, "nullhomologous"):
                raise SurgeryError(f"rim status must be essential or nullhomologous, not {status!r}")
            return [cls("rim", (raw["rim"],), name=raw.get("torus"), sphere=raw.get("sphere"),
                        status=status, sphere_square=int(raw.get("sphere_square", -2)))]
        raise SurgeryError(f"unknown H_2 directive {dict(raw)}")

    def to_raw(self) -> dict:
        if self.op == "keep":
            out = {"keep": self.labels[0]}
            if self.side != 1:
                out["side"] = self.side
            if self.name:
                out["as"] = self.name
            return out
        if self.op == "sew":
            out = {"sew": list(self.labels)}
            if self.name:
                out["as"] = self.name
            if self.kind:
                out["kind"] = self.kind
            return out
        out = {"rim": self.labels[0], "status": self.status}
        if self.name:
            out["torus"] = self.name
        if self.sphere:
            out["sphere"] = self.sphere
        if self.sphere_square != -2:
            out["sphere_square"] = self.sphere_square
        return out


@dataclass
class _Assembled:
    classes: list[ClassRecord] = field(default_factory=list)
    combos: list[Any] = field(default_factory=list)
    dots: dict[str, int] = field(default_factory=dict)
    rim_essential: int = 0


def _assemble_h2(m1: ManifoldModel, mk1: SubmanifoldMarking, m2: ManifoldModel,
                 mk2: SubmanifoldMarking, comp1: Complement, comp2: Complement,
                 glue: GluingMap, directives: Sequence[H2Directive], dim: int) -> _Assembled:
    out = _Assembled()
    sides = {1: (m1, mk1), 2: (m2, mk2)}

    def lookup(side: int, label: str) -> tuple[ClassRecord, int]:
        m, mk = sides[side]
        c = m.cls(label)
        if not c.essential:
            raise SurgeryError(f"class {label!r} of {m.name} is {c.status}")
        if label not in mk.class_dots:
            raise SurgeryError(f"marking {mk.name} has no intersection data for class {label!r}")
        return c, mk.class_dots[label]

    def add(rec: ClassRecord, combo, dot: int):
        if any(c.label == rec.label for c in out.classes):
            raise SurgeryError(f"duplicate class label {rec.label!r} in the sum")
        out.classes.append(rec)
        out.combos.append(combo)
        out.dots[rec.label] = dot

    for d in directives:
        if d.op == "keep":
            c, dot = lookup(d.side, d.labels[0])
            if dot != 0:
                raise SurgeryError(
                    f"class {c.label!r} meets the gluing locus ({dot} points); sew it instead of keeping it")
            label = d.name or (c.label if d.side == 1 else prime(c.label))
            add(replace(c, label=label, self_pairing=c.self_pairing if dim == 4 else None,
                        note=f"kept from side {d.side}"), {(d.side, c.label): 1}, 0)
        elif d.op == "sew":
            c1, dot1 = lookup(1, d.labels[0])
            c2, dot2 = lookup(2, d.labels[1])
            if dot1 != dot2:
                raise SurgeryError(
                    f"cannot sew {c1.label!r} and {c2.label!r}: they meet the locus in {dot1} and {dot2} points")
            if dot1 == 0:
                raise SurgeryError(f"{c1.label!r} misses the gluing locus; keep it instead")
            square = None
            if dim == 4:
                square = c1.self_pairing + c2.self_pairing
            rec = ClassRecord(
                d.name or f"{c1.label}#{c2.label}", d.kind or c1.kind,
                c1_eval_sewn(c1.c1_eval, c2.c1_eval, dot1, dot2), square,
                note=f"sewn from {c1.label} and {c2.label}")
            add(rec, {(1, c1.label): 1, (2, c2.label): 1}, dot1)
        else:
            gen = d.labels[0]
            if gen not in glue.source:
                raise SurgeryError(f"rim directive names {gen!r}, not a generator of the gluing locus")
            bounds = bounds_on_both_sides(comp1, comp2, glue, gen)
            essential = d.status == ESSENTIAL
            if essential != bounds:
                why = "bounds a disk on both sides" if bounds else "does not bound a disk on both sides"
                raise SurgeryError(
                    f"rim class over {gen!r} cannot be declared {d.status}: {gen} {why} ({RIM_JUSTIFICATION})")
            if essential:
                tname = d.name or f"rim({gen})"
                sname = d.sphere or f"dual({gen})"
                add(ClassRecord(tname, "torus", 0, 0 if dim == 4 else None,
                                note=f"rim torus {gen} x mu; c1 vanishes on rim classes"),
                    ("rim", tname, sname), 0)
                add(ClassRecord(sname, "sphere", 0, d.sphere_square if dim == 4 else None,
                                note=f"dual sphere from vanishing disks of {gen}"),
                    ("rim", tname, sname), 0)
                out.rim_essential += 1
    return out


def _assembled_form(asm: _Assembled, m1: ManifoldModel, m2: ManifoldModel) -> IntLattice | None:
    if m1.form is None or m2.form is None:
        return None
    forms = {1: m1.form, 2: m2.form}
    n = len(asm.classes)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            a, b = asm.combos[i], asm.combos[j]
            if isinstance(a, tuple) or isinstance(b, tuple):
                # rim torus and dual sphere: a hyperbolic-type block, orthogonal to the rest
                if a == b:
                    gram[i][j] = asm.classes[i].self_pairing if i == j else 1
                continue
            gram[i][j] = sum(ca * cb * forms[sa].pairing(la, lb)
                             for (sa, la), ca in a.items()
                             for (sb, lb), cb in b.items() if sa == sb)
    return IntLattice(tuple(c.label for c in asm.classes), tuple(map(tuple, gram)))


# ---------------------------------------------------------------------------
# fiber sums


def _check_sum_inputs(m1, mk1, m2, mk2):
    y1, y2 = mk1.submanifold, mk2.submanifold
    if y1.dim != y2.dim or y1.chern != y2.chern or y1.betti != y2.betti:
        raise SurgeryError(f"submanifolds {y1.name} and {y2.name} do not agree")
    if mk1.normal_euler + mk2.normal_euler != 0:
        raise SurgeryError(
            f"normal Euler numbers {mk1.normal_euler} + {mk2.normal_euler} != 0; the sum is undefined")


def _prepare(m1, mk1, m2, mk2, glue):
    if isinstance(mk1, str):
        mk1 = m1.marking(mk1)
    if isinstance(mk2, str):
        mk2 = m2.marking(mk2)
    _check_sum_inputs(m1, mk1, m2, mk2)
    comp1 = complement_of(m1, mk1)
    comp2 = primed_complement(complement_of(m2, mk2))
    src = mk1.submanifold.pi1.generators
    if glue is None:
        glue = GluingMap.identity(src)
    if glue.source != src:
        raise SurgeryError(f"gluing source {glue.source} != locus generators {src}")
    want = tuple(prime(g) for g in mk2.submanifold.pi1.generators)
    if set(glue.target) != set(want):
        raise SurgeryError(f"gluing targets {glue.target}, expected {want}")
    return mk1, mk2, comp1, comp2, glue


@dataclass(frozen=True)
class SumRecord:
    """Side data of a fiber sum kept for reports."""

    euler_from_betti: int
    rim_rank: int
    gluing: Mapping[str, str]


def fiber_sum_6(m1: ManifoldModel, marking1, m2: ManifoldModel, marking2,
                glue: GluingMap | None = None, h2_directives: Sequence[H2Directive] = (),
                complete: bool = False, name: str | None = None) -> ManifoldModel:
    if m1.dim != 6 or m2.dim != 6:
        raise SurgeryError("fiber_sum_6 needs two 6-manifolds")
    mk1, mk2, comp1, comp2, glue = _prepare(m1, marking1, m2, marking2, glue)
    y = mk1.submanifold
    if y.dim != 4:
        raise SurgeryError("the gluing locus of a 6-dimensional sum must be a 4-manifold")

    chern = chern_sum_6(m1.chern, m2.chern, y.chern)
    euler = m1.euler + m2.euler - 2 * y.euler
    if chern.c3 != euler:
        raise SurgeryError(f"c3 = {chern.c3} disagrees with the Euler count {euler}")

    pi1 = van_kampen_fiber_sum(comp1, comp2, glue)
    asm = _assemble_h2(m1, mk1, m2, mk2, comp1, comp2, glue, h2_directives, 6)
    rank = rim_rank(comp1, comp2, glue)
    if complete and asm.rim_essential != rank:
        raise SurgeryError(
            f"basis declared complete but lists {asm.rim_essential} essential rim pairs; "
            f"the gluing leaves {rank}")

    b1 = fp.abelian_invariants(pi1).free_rank
    b2 = len(asm.classes)
    b3 = 2 - 2 * b1 + 2 * b2 - euler
    if b3 < 0:
        raise SurgeryError(f"declared H_2 basis of {b2} classes forces b_3 = {b3} < 0")
    betti = (1, b1, b2, b3, b2, b1, 1)
    flags = (EXACT, EXACT, DECLARED, DERIVED, DECLARED, EXACT, EXACT)
    label = name or f"{m1.name} #_{mk1.name} {m2.name}"
    return ManifoldModel(
        name=label, dim=6, chern=chern, betti=betti, betti_flags=flags, pi1=pi1,
        h2_basis=tuple(asm.classes), basis_complete=complete,
        provenance=(f"fiber_sum_6({m1.name}, {m2.name}; along {y.name}; "
                    f"glue {glue.table()}; rim rank {rank})",))


def fiber_sum_4(m1: ManifoldModel, m2: ManifoldModel, fiber_genus: int,
                glue: GluingMap | None = None, h2_directives: Sequence[H2Directive] = (),
                complete: bool = False, name: str | None = None, marking: str = "F") -> ManifoldModel:
    """Sum of two 4-manifolds along genus-g fibers; the result keeps a fiber marking."""
    if m1.dim != 4 or m2.dim != 4:
        raise SurgeryError("fiber_sum_4 needs two 4-manifolds")
    mk1, mk2, comp1, comp2, glue = _prepare(m1, marking, m2, marking, glue)
    for mk in (mk1, mk2):
        if mk.submanifold.dim != 2 or (2 - mk.submanifold.chern.euler) // 2 != fiber_genus:
            raise SurgeryError(f"marking {mk.name} is not a genus-{fiber_genus} surface")
        if mk.normal_euler != 0:
            raise SurgeryError("fiber markings must have trivial normal bundle")
    chi_y = 2 - 2 * fiber_genus
    c2 = m1.chern.c2 + m2.chern.c2 - 2 * chi_y
    sigma = m1.signature + m2.signature
    chern = Chern4(2 * c2 + 3 * sigma, c2)

    pi1 = van_kampen_fiber_sum(comp1, comp2, glue)
    b1 = fp.abelian_invariants(pi1).free_rank
    b2 = c2 - 2 + 2 * b1
    asm = _assemble_h2(m1, mk1, m2, mk2, comp1, comp2, glue, h2_directives, 4)
    form = _assembled_form(asm, m1, m2) if asm.classes else None
    if complete:
        if len(asm.classes) != b2:
            raise SurgeryError(f"basis declared complete with {len(asm.classes)} classes but b_2 = {b2}")
        if form is None or abs(determinant(form)) != 1:
            raise SurgeryError("declared complete basis is not unimodular")

    markings = {}
    if mk1.has_transverse_sphere and mk2.has_transverse_sphere:
        images = {g: comp1.images[g] for g in mk1.submanifold.pi1.generators}
        images[MERIDIAN] = ()
        dots = {c.label: asm.dots[c.label] for c in asm.classes}
        sewn = next((c.label for c in asm.classes if asm.dots[c.label]), None)
        markings[mk1.name] = SubmanifoldMarking(mk1.name, mk1.submanifold, 0, pi1, images, True,
                                                dots, sphere=sewn)
    label = name or f"{m1.name} #_{mk1.submanifold.name} {m2.name}"
    return ManifoldModel(
        name=label, dim=4, chern=chern, signature=sigma, betti=(1, b1, b2, b1, 1), pi1=pi1,
        h2_basis=tuple(asm.classes), basis_complete=complete, form=form, markings=markings,
        provenance=(f"fiber_sum_4({m1.name}, {m2.name}; genus {fiber_genus}; glue {glue.table()})",))


# ---------------------------------------------------------------------------
# Luttinger surgery


@dataclass(frozen=True)
class LuttingerSpec:
    torus: str
    curve: str
    p: int
    sign: int = 1
    killed_pair: tuple[str, str] | None = None

    def __post_init__(self):
        if self.p < 0:
            raise SurgeryError("surgery coefficient p must be >= 0")
        if self.sign not in (1, -1):
            raise SurgeryError("framing sign must be +1 or -1")


def luttinger(m: ManifoldModel, spec: LuttingerSpec, name: str | None = None) -> ManifoldModel:
    """Coisotropic Luttinger surgery on a marked 4-torus.

    pi_1 gains curve^p * mu^sign; with a transverse sphere mu is trivial and
    the relation is curve^p.  Chern numbers are unchanged.
    """
    if m.dim != 6:
        raise SurgeryError("coisotropic Luttinger surgery acts on 6-manifolds")
    mk = m.marking(spec.torus)
    if mk.submanifold.dim != 4:
        raise SurgeryError(f"marking {mk.name} is not a 4-torus")
    if spec.curve not in mk.submanifold.pi1.generators:
        raise SurgeryError(
            f"{spec.curve!r} is not a generator of the torus {mk.name} {mk.submanifold.pi1.generators}")
    op = f"luttinger({mk.name},{spec.curve}^{spec.p})"

    comp = complement_of(m, mk)
    notes = []
    if spec.p == 0:
        relation: Word = ()
        notes.append("p = 0: only the framing changes, no new relation")
    else:
        relation = fp.free_reduce(
            fp.power(comp.images[spec.curve], spec.p) + fp.power(comp.images[MERIDIAN], spec.sign))
    pi1 = comp.pi1.with_relators([relation]) if relation else comp.pi1

    basis = list(m.h2_basis)
    killed = 0
    if spec.killed_pair is not None:
        for lab in spec.killed_pair:
            c = m.cls(lab)
            if not c.essential:
                raise SurgeryError(f"class {lab!r} is already {c.status}")
            basis = [replace(x, status=f"killed_by:{op}") if x.label == lab else x for x in basis]
            killed += 1

    b1 = fp.abelian_invariants(pi1).free_rank
    b2 = m.betti[2] - killed
    b3 = 2 - 2 * b1 + 2 * b2 - m.chern.c3
    if b3 < 0:
        raise SurgeryError(f"surgery result would have b_3 = {b3} < 0")
    markings = {}
    for other in m.markings.values():
        if other.name == mk.name or not other.has_transverse_sphere:
            continue
        markings[other.name] = replace(other, complement_pi1=pi1)
    flags = (EXACT, EXACT, m.betti_flags[2], DERIVED, m.betti_flags[2], EXACT, EXACT)
    return ManifoldModel(
        name=name or f"{m.name} / {op}", dim=6, chern=m.chern, betti=(1, b1, b2, b3, b2, b1, 1),
        betti_flags=flags, pi1=pi1, h2_basis=tuple(basis), basis_complete=m.basis_complete,
        markings=markings, provenance=m.provenance + (op,) + tuple(notes))


# ---------------------------------------------------------------------------
# Calabi-Yau verdict


CY_CERTIFIED = "CY_certified"
CY_ON_DECLARED_BASIS = "CY_on_declared_basis"
NOT_CY = "NotCY"


@dataclass(frozen=True)
class CYVerdict:
    chern_zero: bool
    c1_evals_zero: bool
    basis_complete: bool
    verdict: str
    nonzero_classes: tuple[str, ...] = ()

    @property
    def positive(self) -> bool:
        return self.verdict != NOT_CY

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "chern_zero": self.chern_zero,
            "c1_evals_zero": self.c1_evals_zero,
            "basis_complete": self.basis_complete,
            "nonzero_classes": list(self.nonzero_classes),
        }


def cy_check(m: ManifoldModel) -> CYVerdict:
    if m.dim != 6:
        raise SurgeryError("cy_check is defined for 6-manifolds")
    chern_zero = m.chern.c1_cubed == 0 and m.chern.c1c2 == 0
    bad = tuple(c.label for c in m.essential_classes if c.c1_eval != 0)
    if bad or not chern_zero:
        verdict = NOT_CY
    elif m.basis_complete:
        verdict = CY_CERTIFIED
    else:
        verdict = CY_ON_DECLARED_BASIS
    return CYVerdict(chern_zero, not bad, m.basis_complete, verdict, bad)


# ---------------------------------------------------------------------------
# the hyperelliptic family


def remark42_closed_form(g: int) -> tuple[int, int, int]:
    return (24 * (g - 1) ** 2, 24 * (1 - g), 8 * (g + 2) * (1 - g))


def chern_congruences_hold(t: Sequence[int]) -> bool:
    return t[0] % 2 == 0 and t[1] % 24 == 0 and t[2] % 2 == 0


@dataclass(frozen=True)
class FamilyRow:
    genus: int
    n: int
    block_euler: int
    block: tuple[int, int, int]
    sum: tuple[int, int, int]
    closed_form: tuple[int, int, int]
    sum_matches_closed_form: bool
    block_matches_closed_form: bool
    congruences: bool
    lefschetz_euler: int

    def as_dict(self) -> dict:
        return {
            "g": self.genus,
            "n": self.n,
            "block_c2": self.block_euler,
            "block_triple": list(self.block),
            "sum_triple": list(self.sum),
            "closed_form": list(self.closed_form),
            "sum_matches_closed_form": self.sum_matches_closed_form,
            "block_matches_closed_form": self.block_matches_closed_form,
            "congruences_ok": self.congruences,
            "lefschetz_euler": self.lefschetz_euler,
        }


def family_remark42(g: int, n: int = 1) -> list[FamilyRow]:
    """Chern triples for X(k, g) x Sigma_g and their sums along Sigma_g x Sigma_g,
    k = 1..n, next to the closed form 24(g-1)^2, 24(1-g), 8(g+2)(1-g).

    X(1, g) = CP2 # (4g+5) CP2bar; X(k, g) is the k-fold fiber sum.
    """
    if g < 1 or n < 1:
        raise SurgeryError("family needs g >= 1 and n >= 1")
    base = blocks.rational_surface(4 * g + 5, fibration_genus=g)
    sigma = blocks.surface(g)
    y = blocks.surface_product(sigma, blocks.surface(g, blocks.surface_generator_names(g, "u", "v")))
    n_crit = len(relator_family("X", g))
    rows = []
    x = base
    for k in range(1, n + 1):
        if k > 1:
            x = fiber_sum_4(x, base, g)
        block = blocks.product(x, sigma).chern
        total = chern_sum_6(block, block, y.chern)
        closed = remark42_closed_form(g)
        rows.append(FamilyRow(
            genus=g, n=k, block_euler=x.chern.c2, block=block.as_tuple(), sum=total.as_tuple(),
            closed_form=closed,
            sum_matches_closed_form=total.as_tuple() == closed,
            block_matches_closed_form=block.as_tuple() == closed,
            congruences=chern_congruences_hold(block.as_tuple()) and chern_congruences_hold(total.as_tuple()),
            lefschetz_euler=k * lefschetz_euler(g, n_crit) - (k - 1) * 2 * (2 - 2 * g),
        ))
    return rows
