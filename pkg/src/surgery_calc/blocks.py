"""Manifold models: invariant records for surfaces, rational and elliptic
surfaces, products and user-declared blocks.

A model never carries geometry, only the data the surgery formulas consume:
Chern numbers, Betti numbers, a pi_1 presentation, a (possibly partial)
declared H_2 basis with c_1 evaluations, and codimension-2 markings that
describe how a submanifold's pi_1 sits in its complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Sequence

from . import fpgroup as fp
from .fpgroup import Presentation, Word
from .lattice import AmbientDiagonalForm, IntLattice, direct_sum, gram_from_vectors, example_e1_vectors

EXACT = "exact"
DECLARED = "declared-basis"
DERIVED = "derived-under-assumption"

ESSENTIAL = "essential"


class ModelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Chern records


@dataclass(frozen=True)
class Chern2:
    euler: int

    @property
    def top(self) -> int:
        return self.euler

    def as_dict(self):
        return {"euler": self.euler}


@dataclass(frozen=True)
class Chern4:
    c1_sq: int
    c2: int

    @property
    def top(self) -> int:
        return self.c2

    def as_dict(self):
        return {"c1_sq": self.c1_sq, "c2": self.c2}


@dataclass(frozen=True)
class Chern6:
    c1_cubed: int
    c1c2: int
    c3: int

    @property
    def top(self) -> int:
        return self.c3

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c1_cubed, self.c1c2, self.c3)

    def as_dict(self):
        return {"c1_cubed": self.c1_cubed, "c1c2": self.c1c2, "c3": self.c3}


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class ClassRecord:
    label: str
    kind: str                      # sphere | torus | genus<g> | four_torus
    c1_eval: int
    self_pairing: int | None = None
    status: str = ESSENTIAL        # or "killed_by:<operation>"
    note: str = ""

    @property
    def essential(self) -> bool:
        return self.status == ESSENTIAL


@dataclass(frozen=True)
class SubmanifoldMarking:
    """A codimension-2 submanifold with the data Van Kampen needs.

    ``boundary_images`` sends every pi_1 generator of the submanifold, and
    ``"mu"`` (the meridian), to a word in ``complement_pi1``.
    ``class_dots`` holds the intersection number of the submanifold with
    each class of the ambient declared basis.
    """

    name: str
    submanifold: "ManifoldModel"
    normal_euler: int
    complement_pi1: Presentation
    boundary_images: Mapping[str, Word]
    has_transverse_sphere: bool
    class_dots: Mapping[str, int] = field(default_factory=dict)
    sphere: str | None = None

    def __post_init__(self):
        want = set(self.submanifold.pi1.generators) | {"mu"}
        have = set(self.boundary_images)
        if have != want:
            raise ModelError(
                f"marking {self.name}: boundary images cover {sorted(have)}, need {sorted(want)}")
        n = self.complement_pi1.ngens
        for key, w in self.boundary_images.items():
            if any(not 0 <= g < n for g, _ in w):
                raise ModelError(f"marking {self.name}: image of {key} leaves the complement group")
        if self.has_transverse_sphere and fp.free_reduce(self.boundary_images["mu"]):
            raise ModelError(f"marking {self.name}: a transverse sphere forces mu to be trivial")

    def image(self, gen: str) -> Word:
        return self.boundary_images[gen]


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    dim: int
    chern: Chern2 | Chern4 | Chern6
    betti: tuple[int, ...]
    pi1: Presentation
    signature: int | None = None
    betti_flags: tuple[str, ...] = ()
    h2_basis: tuple[ClassRecord, ...] = ()
    basis_complete: bool = False
    form: IntLattice | None = None
    markings: Mapping[str, SubmanifoldMarking] = field(default_factory=dict)
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim not in (2, 4, 6):
            raise ModelError(f"dimension {self.dim} not supported")
        expected = {2: Chern2, 4: Chern4, 6: Chern6}[self.dim]
        if not isinstance(self.chern, expected):
            raise ModelError(f"{self.name}: dimension {self.dim} needs {expected.__name__}")
        if len(self.betti) != self.dim + 1:
            raise ModelError(f"{self.name}: need {self.dim + 1} Betti numbers")
        if not self.betti_flags:
            object.__setattr__(self, "betti_flags", (EXACT,) * (self.dim + 1))
        labels = [c.label for c in self.h2_basis]
        if len(set(labels)) != len(labels):
            raise ModelError(f"{self.name}: duplicate class labels in H_2 basis")

    @property
    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    @property
    def essential_classes(self) -> tuple[ClassRecord, ...]:
        return tuple(c for c in self.h2_basis if c.essential)

    def cls(self, label: str) -> ClassRecord:
        for c in self.h2_basis:
            if c.label == label:
                return c
        raise ModelError(f"{self.name} has no class {label!r}")

    def marking(self, name: str) -> SubmanifoldMarking:
        try:
            return self.markings[name]
        except KeyError:
            raise ModelError(f"{self.name} has no marking {name!r} "
                             f"(have {sorted(self.markings)})") from None


def check_invariants(m: ManifoldModel) -> list[str]:
    """Poincare duality, Euler consistency and (dim 4) Noether-type checks."""
    problems = []
    b = m.betti
    if any(x < 0 for x in b):
        problems.append("negative Betti number")
    if b != b[::-1]:
        problems.append(f"Poincare duality fails for betti {b}")
    if m.euler != m.chern.top:
        problems.append(f"alternating Betti sum {m.euler} != top Chern number {m.chern.top}")
    if m.dim == 4 and m.signature is not None and abs(m.signature) > b[2]:
        problems.append("signature exceeds b_2")
    return problems


def check_constructed(m: ManifoldModel) -> list[str]:
    problems = check_invariants(m)
    if m.dim == 4 and m.chern.c1_sq != 2 * m.chern.c2 + 3 * m.signature:
        problems.append("c1^2 != 2 c2 + 3 sigma")
    return problems


# ---------------------------------------------------------------------------
# helpers


def _surface_kind(g: int) -> str:
    return {0: "sphere", 1: "torus"}.get(g, f"genus{g}")


def surface_generator_names(g: int, a: str = "c", b: str = "d") -> tuple[str, ...]:
    if g == 1:
        return (a, b)
    return tuple(n for i in range(1, g + 1) for n in (f"{a}{i}", f"{b}{i}"))


def surface_group(g: int, names: Sequence[str] | None = None) -> Presentation:
    names = tuple(names) if names is not None else surface_generator_names(g)
    if len(names) != 2 * g:
        raise ModelError(f"genus {g} surface needs {2 * g} generator names")
    if g == 0:
        return fp.trivial_presentation()
    rel: list = []
    for i in range(g):
        rel.extend(fp.commutator(fp.generator(2 * i), fp.generator(2 * i + 1)))
    return Presentation(names, (tuple(rel),))


def _identity_images(names: Sequence[str], target: Presentation) -> dict[str, Word]:
    return {n: fp.generator(target.index(n)) for n in names}


def _genus(model: ManifoldModel) -> int:
    if model.dim != 2:
        raise ModelError(f"{model.name} is not a surface")
    return (2 - model.chern.euler) // 2


# ---------------------------------------------------------------------------
# constructors


def surface(g: int, names: Sequence[str] | None = None, name: str | None = None) -> ManifoldModel:
    if g < 0:
        raise ModelError("genus must be >= 0")
    if name is None:
        name = {0: "S2", 1: "T2"}.get(g, f"Sigma_{g}")
    return ManifoldModel(
        name=name, dim=2, chern=Chern2(2 - 2 * g), betti=(1, 2 * g, 1),
        pi1=surface_group(g, names), provenance=(f"surface(g={g})",))


def surface_product(s1: ManifoldModel, s2: ManifoldModel, name: str | None = None) -> ManifoldModel:
    """Sigma_a x Sigma_b as a 4-manifold (T^4 when both are tori)."""
    if s1.dim != 2 or s2.dim != 2:
        raise ModelError("surface_product needs two surfaces")
    e1, e2 = s1.chern.euler, s2.chern.euler
    b1, b2 = s1.betti, s2.betti
    betti = tuple(sum(b1[i] * b2[k - i] for i in range(3) if 0 <= k - i <= 2) for k in range(5))
    if name is None:
        name = "T4" if e1 == e2 == 0 else f"{s1.name} x {s2.name}"
    return ManifoldModel(
        name=name, dim=4, chern=Chern4(2 * e1 * e2, e1 * e2), signature=0, betti=betti,
        pi1=fp.direct_product(s1.pi1, s2.pi1),
        provenance=(f"surface_product({s1.name}, {s2.name})",))


def torus4(names: Sequence[str] = ("a", "b", "c", "d")) -> ManifoldModel:
    names = tuple(names)
    return surface_product(surface(1, names[:2]), surface(1, names[2:]), name="T4")


def rational_surface(k: int, fibration_genus: int | None = None) -> ManifoldModel:
    """CP^2 # k (-CP^2) in the basis h, e_1..e_k with c_1 = 3h - sum e_i.

    With ``fibration_genus = g`` (requires k = 4g + 5) the model carries the
    genus-g fiber marking ``F`` of class (g+2)h - g e_1 - e_2 - ... - e_k, with
    the exceptional sphere e_k as a section.
    """
    if k < 0:
        raise ModelError("number of blow-ups must be >= 0")
    labels = ["h"] + [f"e{i}" for i in range(1, k + 1)]
    ambient = AmbientDiagonalForm.blowup(k)
    form = IntLattice(tuple(labels), tuple(
        tuple(ambient.signs[i] if i == j else 0 for j in range(k + 1)) for i in range(k + 1)))
    basis = [ClassRecord("h", "sphere", 3, 1)] + [
        ClassRecord(f"e{i}", "sphere", 1, -1) for i in range(1, k + 1)]
    model = ManifoldModel(
        name=f"CP2#{k}CP2bar", dim=4, chern=Chern4(9 - k, 3 + k), signature=1 - k,
        betti=(1, 0, 1 + k, 0, 1), pi1=fp.trivial_presentation(),
        h2_basis=tuple(basis), basis_complete=True, form=form,
        provenance=(f"rational_surface(k={k})",))
    if fibration_genus is None:
        return model
    g = fibration_genus
    if g < 1 or k != 4 * g + 5:
        raise ModelError(f"a genus-{g} hyperelliptic fibration lives on CP2#{4 * g + 5}CP2bar, not k={k}")
    fiber = [g + 2, -g] + [-1] * (k - 1)
    dots = {lab: ambient.signs[i] * fiber[i] * 1 for i, lab in enumerate(labels)}
    fiber_model = surface(g, surface_generator_names(g, "a", "b"), name="F")
    images = {n: () for n in fiber_model.pi1.generators}
    images["mu"] = ()
    mark = SubmanifoldMarking("F", fiber_model, 0, model.pi1, images, True, dots, sphere=f"e{k}")
    return replace(model, markings={"F": mark},
                   provenance=model.provenance + (f"fiber marking genus {g}",))


def _e1_form() -> IntLattice:
    labels, vectors = example_e1_vectors()
    return gram_from_vectors(AmbientDiagonalForm.blowup(9), vectors, labels)


_E1_KINDS = {"f": "torus"}


def elliptic_surface(n: int) -> ManifoldModel:
    """E(n) with c_1 = (2 - n) f.  Bases are declared for n = 1, 2 only."""
    if n < 1:
        raise ModelError("E(n) needs n >= 1")
    form = None
    basis: tuple[ClassRecord, ...] = ()
    sphere = None
    if n == 1:
        form = _e1_form()
        sphere = "e9"
    elif n == 2:
        e1 = _e1_form().restrict(_e1_form().labels[2:])
        milnor1 = IntLattice(e1.labels, e1.gram)
        milnor2 = IntLattice(tuple(f"{x}'" for x in e1.labels), e1.gram)
        nucleus = IntLattice(("f", "sigma"), ((0, 1), (1, -2)))
        rim1 = IntLattice(("r1", "s1"), ((0, 1), (1, -2)))
        rim2 = IntLattice(("r2", "s2"), ((0, 1), (1, -2)))
        form = direct_sum(milnor1, milnor2, nucleus, rim1, rim2)
        sphere = "sigma"
    if form is not None:
        kinds = dict(_E1_KINDS, r1="torus", r2="torus")
        basis = tuple(
            ClassRecord(lab, kinds.get(lab, "sphere"), (2 - n) * form.pairing("f", lab),
                        form.pairing(lab, lab))
            for lab in form.labels)
    pi1 = fp.trivial_presentation()
    model = ManifoldModel(
        name=f"E({n})", dim=4, chern=Chern4(0, 12 * n), signature=-8 * n,
        betti=(1, 0, 12 * n - 2, 0, 1), pi1=pi1, h2_basis=basis,
        basis_complete=form is not None, form=form,
        provenance=(f"elliptic_surface(n={n})",))
    dots = {lab: form.pairing("f", lab) for lab in form.labels} if form is not None else {}
    fiber = surface(1, ("a", "b"), name="F")
    images = {"a": (), "b": (), "mu": ()}
    mark = SubmanifoldMarking("F", fiber, 0, pi1, images, True, dots, sphere=sphere)
    return replace(model, markings={"F": mark})


def product(m: ManifoldModel, s: ManifoldModel, name: str | None = None) -> ManifoldModel:
    """M^4 x S^2 with Whitney-product Chern numbers and Kunneth Betti numbers.

    Fiber markings ``F`` of M become markings ``FxS`` (e.g. ``FxT2``) whose
    complement is (M - F) x S.
    """
    if m.dim == 2 and s.dim == 2:
        return surface_product(m, s, name)
    if m.dim != 4 or s.dim != 2:
        raise ModelError(f"product needs a 4-manifold and a surface, got dims {m.dim}, {s.dim}")
    chi = s.chern.euler
    c1sq, c2 = m.chern.c1_sq, m.chern.c2
    chern = Chern6(3 * c1sq * chi, (c1sq + c2) * chi, c2 * chi)
    betti = tuple(sum(m.betti[i] * s.betti[k - i] for i in range(5) if 0 <= k - i <= 2)
                  for k in range(7))
    pi1 = fp.direct_product(m.pi1, s.pi1)
    name = name or f"{m.name} x {s.name}"

    pt_label = f"pt x {s.name}"
    basis = tuple(replace(c, self_pairing=None) for c in m.h2_basis)
    basis += (ClassRecord(pt_label, _surface_kind(_genus(s)), chi,
                          note="push-off disjoint from every F x S marking"),)
    complete = (m.basis_complete and m.betti[1] * s.betti[1] == 0
                and len(basis) == betti[2])

    markings = {}
    for mk in m.markings.values():
        if mk.submanifold.dim != 2:
            continue
        sub = surface_product(mk.submanifold, s)
        comp = fp.direct_product(mk.complement_pi1, s.pi1)
        images = dict(mk.boundary_images)
        for j, gname in enumerate(s.pi1.generators):
            images[gname] = fp.generator(mk.complement_pi1.ngens + j)
        dots = dict(mk.class_dots)
        dots[pt_label] = 0
        mname = f"{mk.name}x{s.name}"
        markings[mname] = SubmanifoldMarking(
            mname, sub, mk.normal_euler, comp, images, mk.has_transverse_sphere, dots,
            sphere=mk.sphere)

    return ManifoldModel(
        name=name, dim=6, chern=chern, betti=betti, pi1=pi1,
        h2_basis=basis, basis_complete=complete, markings=markings,
        provenance=m.provenance + s.provenance + (f"product({m.name}, {s.name})",))


def complement_pi1_via_sphere(m: ManifoldModel, marking: SubmanifoldMarking | str
                              ) -> tuple[Presentation, dict[str, Word]]:
    """pi_1 of the complement of a marked submanifold that has a transverse sphere.

    The inclusion of the complement is then a pi_1 isomorphism and the
    meridian bounds a disk in the punctured sphere.
    """
    mk = m.marking(marking) if isinstance(marking, str) else marking
    if not mk.has_transverse_sphere:
        raise ModelError(f"marking {mk.name} has no transverse sphere; complement pi_1 unknown")
    images = dict(mk.boundary_images)
    images["mu"] = ()
    return m.pi1, images


def add_marking(m: ManifoldModel, mk: SubmanifoldMarking, name: str | None = None) -> ManifoldModel:
    if mk.name in m.markings:
        raise ModelError(f"{m.name} already has a marking {mk.name!r}")
    markings = dict(m.markings)
    markings[mk.name] = mk
    return replace(m, name=name or m.name, markings=markings,
                   provenance=m.provenance + (f"mark({mk.name})",))


# ---------------------------------------------------------------------------
# declared blocks


def _chern_from_raw(dim: int, raw: Mapping[str, Any]):
    try:
        if dim == 2:
            return Chern2(int(raw["euler"]))
        if dim == 4:
            return Chern4(int(raw["c1_sq"]), int(raw["c2"]))
        return Chern6(int(raw["c1_cubed"]), int(raw["c1c2"]), int(raw["c3"]))
    except KeyError as e:
        raise ModelError(f"missing Chern number {e.args[0]!r} for a {dim}-manifold") from None


def presentation_from_raw(raw: Mapping[str, Any] | None) -> Presentation:
    if not raw:
        return fp.trivial_presentation()
    gens = tuple(raw.get("generators", ()))
    rels = tuple(fp.parse_word(r, gens) for r in raw.get("relators", ()))
    return Presentation(gens, rels)


def marking_from_raw(ambient: ManifoldModel, raw: Mapping[str, Any]) -> SubmanifoldMarking:
    """Build a marking from a plain record.

    Keys: name, submanifold ({"surface": g} | {"torus4": [names]} | {"genus":
    g}), generators (optional names), normal_euler, transverse_sphere
    (bool or the sphere's label), images (generator -> word text, plus
    "mu"), complement (presentation record, needed without a sphere),
    class_dots.
    """
    sub_raw = raw.get("submanifold", {"surface": raw.get("genus", 1)})
    gens = raw.get("generators")
    if "torus4" in sub_raw:
        sub = torus4(sub_raw["torus4"])
    elif "surface" in sub_raw:
        g = int(sub_raw["surface"])
        sub = surface(g, gens or surface_generator_names(g, "a", "b"), name="F")
    else:
        raise ModelError(f"unsupported submanifold description {dict(sub_raw)}")
    if sub.dim != ambient.dim - 2:
        raise ModelError(f"marking in a {ambient.dim}-manifold must have dimension {ambient.dim - 2}")
    sphere = raw.get("transverse_sphere", False)
    has_sphere = bool(sphere)
    if has_sphere:
        comp = ambient.pi1
    elif "complement" in raw:
        comp = presentation_from_raw(raw["complement"])
    else:
        raise ModelError(f"marking {raw.get('name')}: no transverse sphere and no complement given")
    images = {k: fp.parse_word(str(v), comp.generators) for k, v in raw.get("images", {}).items()}
    if has_sphere:
        images.setdefault("mu", ())
    dots = {str(k): int(v) for k, v in raw.get("class_dots", {}).items()}
    for lab in dots:
        ambient.cls(lab)
    sphere_label = sphere if isinstance(sphere, str) else None
    if sphere_label is not None:
        ambient.cls(sphere_label)
    return SubmanifoldMarking(raw["name"], sub, int(raw.get("normal_euler", 0)), comp, images,
                              has_sphere, dots, sphere=sphere_label)


def declare_block(raw: Mapping[str, Any]) -> ManifoldModel:
    """Accept a user-described building block after consistency checks."""
    try:
        name = raw["name"]
        dim = int(raw["dim"])
        betti = tuple(int(b) for b in raw["betti"])
    except KeyError as e:
        raise ModelError(f"declared block needs field {e.args[0]!r}") from None
    chern = _chern_from_raw(dim, raw.get("chern", raw))
    classes = tuple(
        ClassRecord(c["label"], c.get("kind", "sphere"), int(c.get("c1_eval", 0)),
                    c.get("self_pairing"))
        for c in raw.get("h2_basis", ()))
    model = ManifoldModel(
        name=name, dim=dim, chern=chern, betti=betti, pi1=presentation_from_raw(raw.get("pi1")),
        signature=raw.get("signature"), h2_basis=classes,
        basis_complete=bool(raw.get("basis_complete", False)),
        provenance=("declared",))
    problems = check_invariants(model)
    if problems:
        raise ModelError(f"declared block {name} rejected: " + "; ".join(problems))
    for mraw in raw.get("markings", ()):
        model = add_marking(model, marking_from_raw(model, mraw))
    return replace(model, provenance=("declared",))
