"""Construction scripts: parsing, validation and canonical formatting.

A script is a sequence of statements

    <kind> <name> <JSON object>

where the object may span several lines.  ``#`` starts a comment outside
the JSON part.  A whole-file JSON document ``{"statements": [{"kind": ...,
"name": ..., "args": {...}}]}`` is accepted as an alternative.

String values of the form ``"$p"`` refer to a ``param`` statement.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterator

KINDS = (
    "param", "block", "product", "mark", "glue", "fiber_sum", "luttinger",
    "family", "mcg_check", "assert", "report",
)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_PARAM = re.compile(r"^\$([A-Za-z_][A-Za-z0-9_]*)$")


class ScriptError(ValueError):
    """Syntax or validation error with a source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Statement:
    kind: str
    name: str
    args: dict
    line: int = 0
    column: int = 0

    def key(self) -> tuple:
        return (self.kind, self.name, json.dumps(self.args, sort_keys=True))


@dataclass
class Script:
    statements: list[Statement] = field(default_factory=list)
    source: str = "<string>"

    def __len__(self):
        return len(self.statements)

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)

    def params(self) -> dict[str, Any]:
        return {s.name: s.args.get("default") for s in self.statements if s.kind == "param"}


# ---------------------------------------------------------------------------
# references


def _model_ref(text: Any) -> str | None:
    """'W.FxT2' -> 'W';  'W' -> 'W'."""
    if not isinstance(text, str) or text.startswith("$"):
        return None
    return text.split(".", 1)[0]


def _param_refs(obj: Any) -> Iterator[str]:
    if isinstance(obj, str):
        m = _PARAM.match(obj)
        if m:
            yield m.group(1)
    elif isinstance(obj, dict):
        for v in obj.values():
            yield from _param_refs(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _param_refs(v)


def references(st: Statement) -> list[str]:
    """Names a statement depends on."""
    a = st.args
    refs: list[str | None] = []
    if st.kind == "product":
        refs += [_model_ref(x) for x in a.get("of", [])]
    elif st.kind in ("mark", "luttinger"):
        refs.append(_model_ref(a.get("on")))
    elif st.kind == "glue":
        refs.append(_model_ref(a.get("locus")))
    elif st.kind == "fiber_sum":
        refs += [_model_ref(a.get("left")), _model_ref(a.get("right"))]
        if isinstance(a.get("glue"), str):
            refs.append(a["glue"])
    elif st.kind == "assert":
        refs.append(_model_ref(a.get("that")))
    elif st.kind == "report":
        refs += [_model_ref(x) for x in a.get("show", [])]
    refs += list(_param_refs(a))
    return [r for r in refs if r]


def validate(script: Script) -> Script:
    defined: dict[str, Statement] = {}
    for st in script:
        if st.kind not in KINDS:
            raise ScriptError(f"unknown statement kind {st.kind!r}", st.line, st.column)
        if not _NAME.fullmatch(st.name):
            raise ScriptError(f"bad statement name {st.name!r}", st.line, st.column)
        for ref in references(st):
            if ref not in defined:
                raise ScriptError(f"{st.kind} {st.name} refers to undefined name {ref!r}",
                                  st.line, st.column)
        if st.name in defined:
            first = defined[st.name]
            raise ScriptError(f"name {st.name!r} already defined on line {first.line}",
                              st.line, st.column)
        defined[st.name] = st
    return script


# ---------------------------------------------------------------------------
# parsing


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _skip_blank(text: str, i: int) -> int:
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
        elif text[i] == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j + 1
        else:
            break
    return i


def _parse_document(text: str, source: str) -> Script:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScriptError(f"invalid JSON document: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("statements"), list):
        raise ScriptError("JSON document needs a 'statements' list", 1, 1)
    out = []
    for k, raw in enumerate(doc["statements"], 1):
        if not isinstance(raw, dict) or not {"kind", "name"} <= set(raw):
            raise ScriptError(f"statement {k} needs 'kind' and 'name'", k, None)
        args = raw.get("args", {})
        if not isinstance(args, dict):
            raise ScriptError(f"statement {k}: 'args' must be an object", k, None)
        out.append(Statement(str(raw["kind"]), str(raw["name"]), args, k, 0))
    return Script(out, source)


def parse_script(text: str, source: str = "<string>") -> Script:
    """Parse and validate a script; raises ScriptError with line/column."""
    start = _skip_blank(text, 0)
    if start < len(text) and text[start] == "{":
        return validate(_parse_document(text, source))

    decoder = json.JSONDecoder()
    statements = []
    i = start
    n = len(text)
    while i < n:
        line, col = _position(text, i)
        m = re.compile(r"([^\s{#]+)[ \t]+([^\s{#]+)[ \t]*").match(text, i)
        if not m:
            raise ScriptError("expected '<kind> <name> {...}'", line, col)
        kind, name = m.group(1), m.group(2)
        if kind not in KINDS:
            raise ScriptError(f"unknown statement kind {kind!r}", line, col)
        j = _skip_blank(text, m.end())
        if j >= n or text[j] != "{":
            jl, jc = _position(text, j) if j < n else (line, col)
            raise ScriptError(f"{kind} {name}: expected a JSON object", jl, jc)
        try:
            args, end = decoder.raw_decode(text, j)
        except json.JSONDecodeError as e:
            el, ec = _position(text, e.pos)
            raise ScriptError(f"{kind} {name}: {e.msg}", el, ec) from None
        statements.append(Statement(kind, name, args, line, col))
        rest = _skip_blank(text, end)
        if rest < n and text.rfind("\n", end, rest) < 0:
            rl, rc = _position(text, rest)
            raise ScriptError("statements must start on a new line", rl, rc)
        i = rest
    return validate(Script(statements, source))


def format_script(script: Script) -> str:
    """Canonical text form; parse_script(format_script(s)) reproduces s."""
    lines = []
    for st in script:
        body = json.dumps(st.args, ensure_ascii=False)
        if len(body) > 88:
            body = json.dumps(st.args, ensure_ascii=False, indent=2)
        lines.append(f"{st.kind} {st.name} {body}")
    return "\n".join(lines) + ("\n" if lines else "")


def script_keys(script: Script) -> list[tuple]:
    return [st.key() for st in script]


def substitute_params(obj: Any, values: dict[str, Any]) -> Any:
    if isinstance(obj, str):
        m = _PARAM.match(obj)
        if m:
            return values[m.group(1)]
        return obj
    if isinstance(obj, dict):
        return {k: substitute_params(v, values) for k, v in obj.items()}
    if isinstance(obj, list):
        return [substitute_params(v, values) for v in obj]
    return obj
