"""Execute construction scripts and collect reportable facts."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from . import blocks, fpgroup as fp, mcg, surgery
from .blocks import ManifoldModel
from .lattice import classify_form, determinant
from .script import Script, ScriptError, Statement, substitute_params

SCHEMA = "surgery-calc-report/1"


@dataclass(frozen=True)
class Gluing:
    locus: str
    glue: surgery.GluingMap


@dataclass(frozen=True)
class AssertionOutcome:
    name: str
    that: str
    expected: Any
    actual: Any
    passed: bool
    line: int


@dataclass
class Report:
    source: str = "<empty>"
    params: dict = field(default_factory=dict)
    sections: list = field(default_factory=list)
    assertions: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(a.passed for a in self.assertions)

    @property
    def failed(self) -> int:
        return len(self.assertions) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _group_facts(p: fp.Presentation, verdict: fp.GroupVerdict) -> dict:
    run = verdict.coset_run
    if isinstance(run, fp.Index):
        coset = {"result": "index", "index": run.n, "cosets_defined": run.cosets_defined}
    elif isinstance(run, fp.Exceeded):
        coset = {"result": "exceeded", "max_cosets": run.max_cosets}
    else:
        coset = {"result": "skipped", "reason": "infinite abelianization"}
    return {
        "triviality": verdict.triviality.value,
        "order": verdict.finite_index,
        "abelian": {"free_rank": verdict.abelian.free_rank, "torsion": list(verdict.abelian.torsion)},
        "abelian_text": verdict.abelian.describe(),
        "coset_enumeration": coset,
        "presentation": str(p),
        "simplified": str(verdict.simplified),
    }


def model_facts(m: ManifoldModel, verdict: fp.GroupVerdict) -> dict:
    facts: dict[str, Any] = {"kind": "model", "name": m.name, "dim": m.dim,
                             "chern": m.chern.as_dict(), "euler": m.euler}
    if m.dim == 4:
        facts["signature"] = m.signature
    facts["betti"] = list(m.betti)
    facts["betti_flags"] = list(m.betti_flags)
    facts["pi1"] = verdict.structure if verdict.triviality is not fp.Triviality.UNKNOWN else "unknown"
    facts["pi1_group"] = _group_facts(m.pi1, verdict)
    facts["h2"] = {
        "declared": len(m.essential_classes),
        "complete": m.basis_complete,
        "classes": [{"label": c.label, "kind": c.kind, "c1_eval": c.c1_eval, "status": c.status}
                    for c in m.h2_basis],
        "killed": [c.label for c in m.h2_basis if not c.essential],
        "c1_evals_zero": all(c.c1_eval == 0 for c in m.essential_classes),
    }
    if m.form is not None:
        facts["form"] = classify_form(m.form).as_dict()
    if m.dim == 6:
        facts["cy"] = surgery.cy_check(m).as_dict()
    facts["markings"] = sorted(m.markings)
    facts["provenance"] = list(m.provenance)
    return facts


def gluing_facts(name: str, g: Gluing) -> dict:
    return {
        "kind": "gluing", "name": name, "locus": g.locus, "table": g.glue.table(),
        "matrix": g.glue.matrix(), "determinant": determinant(g.glue.matrix()),
    }


class Runner:
    """Executes statements in order; module errors become ScriptError."""

    def __init__(self, script: Script, params: Mapping[str, Any] | None = None,
                 max_cosets: int | None = None):
        self.script = script
        self.max_cosets = max_cosets
        self.entities: dict[str, Any] = {}
        self.facts_cache: dict[str, dict] = {}
        self.params = dict(script.params())
        for k, v in (params or {}).items():
            if k not in self.params:
                raise ScriptError(f"script has no parameter {k!r} (have {sorted(self.params)})")
            self.params[k] = v
        for k, v in self.params.items():
            if v is None:
                raise ScriptError(f"parameter {k!r} has no default and was not given")
        self.shown: list[str] = []
        self.assertions: list[AssertionOutcome] = []

    # -- lookup helpers

    def model(self, ref: str, st: Statement) -> ManifoldModel:
        obj = self.entities.get(ref)
        if not isinstance(obj, ManifoldModel):
            raise ScriptError(f"{ref!r} is not a manifold model", st.line, st.column)
        return obj

    def locus(self, ref: str, st: Statement) -> tuple[ManifoldModel, str]:
        if not isinstance(ref, str) or "." not in ref:
            raise ScriptError(f"expected '<model>.<marking>', got {ref!r}", st.line, st.column)
        mname, mark = ref.split(".", 1)
        m = self.model(mname, st)
        m.marking(mark)
        return m, mark

    def facts(self, name: str) -> dict:
        if name not in self.facts_cache:
            obj = self.entities[name]
            if isinstance(obj, ManifoldModel):
                verdict = fp.classify_group(obj.pi1, self.max_cosets)
                self.facts_cache[name] = model_facts(obj, verdict)
            elif isinstance(obj, Gluing):
                self.facts_cache[name] = gluing_facts(name, obj)
            else:
                self.facts_cache[name] = obj
        return self.facts_cache[name]

    # -- statements

    def run(self) -> Report:
        for st in self.script:
            args = substitute_params(st.args, self.params)
            try:
                getattr(self, f"do_{st.kind}")(st, args)
            except ScriptError:
                raise
            except (ValueError, KeyError, TypeError) as e:
                msg = e.args[0] if isinstance(e, KeyError) and e.args else e
                raise ScriptError(f"{st.kind} {st.name}: {msg}", st.line, st.column) from e
        hidden = ("param", "assertion", "report")
        shown = self.shown or [n for n, e in self.entities.items()
                               if not (isinstance(e, dict) and e.get("kind") in hidden)]
        sections = [self.facts(n) for n in dict.fromkeys(shown)]
        return Report(self.script.source, dict(self.params), sections, self.assertions)

    def do_param(self, st, args):
        self.entities[st.name] = {"kind": "param", "name": st.name, "value": self.params[st.name]}

    def do_block(self, st, args):
        if "surface" in args:
            g = int(args["surface"])
            m = blocks.surface(g, args.get("generators"))
        elif "rational" in args:
            m = blocks.rational_surface(int(args["rational"]), args.get("fibration_genus"))
        elif "elliptic" in args:
            m = blocks.elliptic_surface(int(args["elliptic"]))
        elif "torus4" in args:
            m = blocks.torus4(args["torus4"])
        elif "declared" in args:
            m = blocks.declare_block(dict(args["declared"], name=st.name))
        else:
            raise ScriptError(f"block {st.name}: unknown block description {sorted(args)}",
                              st.line, st.column)
        self.entities[st.name] = replace(m, name=st.name)

    def do_product(self, st, args):
        of = args.get("of", [])
        if len(of) != 2:
            raise ScriptError("product needs 'of': [model, surface]", st.line, st.column)
        m, s = (self.model(x, st) for x in of)
        self.entities[st.name] = blocks.product(m, s, name=st.name)

    def do_mark(self, st, args):
        m = self.model(args["on"], st)
        mk = blocks.marking_from_raw(m, args["marking"])
        self.entities[st.name] = blocks.add_marking(m, mk, name=st.name)

    def _gluing(self, st, m: ManifoldModel, mark: str, table) -> surgery.GluingMap:
        src = m.marking(mark).submanifold.pi1.generators
        tgt = tuple(surgery.prime(g) for g in src)
        return surgery.GluingMap.from_table(table, src, tgt)

    def do_glue(self, st, args):
        m, mark = self.locus(args["locus"], st)
        self.entities[st.name] = Gluing(args["locus"], self._gluing(st, m, mark, args["map"]))

    def do_fiber_sum(self, st, args):
        m1, mk1 = self.locus(args["left"], st)
        m2, mk2 = self.locus(args["right"], st)
        glue = args.get("glue")
        if isinstance(glue, str):
            g = self.entities[glue]
            if not isinstance(g, Gluing):
                raise ScriptError(f"{glue!r} is not a gluing", st.line, st.column)
            glue = g.glue
        elif isinstance(glue, dict):
            glue = self._gluing(st, m1, mk1, glue)
        directives = [d for raw in args.get("h2", []) for d in surgery.H2Directive.from_raw(raw)]
        complete = bool(args.get("complete", False))
        if m1.dim == 6:
            out = surgery.fiber_sum_6(m1, mk1, m2, mk2, glue, directives, complete, name=st.name)
        else:
            if mk1 != mk2:
                raise ScriptError("4-dimensional sums use the same fiber marking on both sides",
                                  st.line, st.column)
            fiber = m1.marking(mk1).submanifold
            genus = (2 - fiber.chern.euler) // 2
            out = surgery.fiber_sum_4(m1, m2, genus, glue, directives, complete,
                                      name=st.name, marking=mk1)
        self.entities[st.name] = out

    def do_luttinger(self, st, args):
        m = self.model(args["on"], st)
        kills = args.get("kills")
        spec = surgery.LuttingerSpec(args["torus"], args["curve"], int(args["p"]),
                                     int(args.get("sign", 1)), tuple(kills) if kills else None)
        self.entities[st.name] = surgery.luttinger(m, spec, name=st.name)

    def do_family(self, st, args):
        genera = args.get("genera", [args.get("genus", 1)])
        n = int(args.get("n", 1))
        rows = [r.as_dict() for g in genera for r in surgery.family_remark42(int(g), n)]
        g1 = [r for r in rows if r["g"] == 1]
        self.entities[st.name] = {
            "kind": "family", "name": st.name, "rows": rows,
            "g1_sum_matches_closed_form": all(r["sum_matches_closed_form"] for r in g1) if g1 else None,
            "congruences_ok": all(r["congruences_ok"] for r in rows),
            "mismatches": [[r["g"], r["n"]] for r in rows if not r["sum_matches_closed_form"]],
        }

    def do_mcg_check(self, st, args):
        families = args.get("families", ["X", "Y", "Z"])
        genera = args.get("genera", [1, 2, 3])
        checks = [mcg.check_family(f, int(g)).as_dict() for f in families for g in genera]
        self.entities[st.name] = {
            "kind": "mcg", "name": st.name, "qualifier": mcg.H1_QUALIFIER, "checks": checks,
            "all_identity": all(c["identity_on_h1"] for c in checks),
            "all_symplectic": all(c["symplectic"] for c in checks),
        }

    def do_assert(self, st, args):
        that = args["that"]
        if "equals" not in args:
            raise ScriptError("assert needs 'equals'", st.line, st.column)
        head, *path = that.split(".")
        actual: Any = self.facts(head)
        for part in path:
            if isinstance(actual, dict) and part in actual:
                actual = actual[part]
            elif isinstance(actual, list) and part.lstrip("-").isdigit():
                actual = actual[int(part)]
            else:
                raise ScriptError(f"assert {st.name}: {that!r} has no field {part!r}",
                                  st.line, st.column)
        expected = args["equals"]
        self.assertions.append(
            AssertionOutcome(st.name, that, expected, actual, actual == expected, st.line))
        self.entities[st.name] = {"kind": "assertion", "name": st.name}

    def do_report(self, st, args):
        self.shown.extend(args.get("show", []))
        self.entities[st.name] = {"kind": "report", "name": st.name}


def run_script(script: Script, params: Mapping[str, Any] | None = None,
               max_cosets: int | None = None) -> Report:
    return Runner(script, params, max_cosets).run()
