"""Deterministic report rendering (JSON and aligned text)."""

from __future__ import annotations

import json

from .runner import SCHEMA, Report


def report_document(r: Report) -> dict:
    return {
        "schema": SCHEMA,
        "source": r.source,
        "params": r.params,
        "sections": r.sections,
        "assertions": [
            {"name": a.name, "that": a.that, "expected": a.expected, "actual": a.actual,
             "passed": a.passed, "line": a.line}
            for a in r.assertions
        ],
        "summary": {"assertions": len(r.assertions), "passed": r.passed, "failed": r.failed},
    }


def _table(rows: list[tuple]) -> list[str]:
    if not rows:
        return []
    widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
    return ["  " + "  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]


def _compact(v) -> str:
    return json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v


def _model_text(s: dict) -> list[str]:
    out = [f"model {s['name']} (dim {s['dim']})"]
    rows = [(k, v) for k, v in s["chern"].items()]
    rows.append(("euler", s["euler"]))
    if "signature" in s:
        rows.append(("signature", s["signature"]))
    flags = s["betti_flags"]
    rows.append(("betti", " ".join(f"{b}" + ("*" if f == "derived-under-assumption" else
                                             "+" if f == "declared-basis" else "")
                                   for b, f in zip(s["betti"], flags))))
    g = s["pi1_group"]
    coset = g["coset_enumeration"]
    how = {"index": f"coset index {coset.get('index')}", "exceeded": "coset budget exceeded",
           "skipped": "coset enumeration skipped"}[coset["result"]]
    rows.append(("pi1", f"{s['pi1']} [{g['triviality']}; {how}]"))
    rows.append(("pi1 simplified", g["simplified"]))
    h2 = s["h2"]
    rows.append(("h2 classes", f"{h2['declared']} essential"
                 + (", complete" if h2["complete"] else ", declared basis only")
                 + (f", killed {', '.join(h2['killed'])}" if h2["killed"] else "")))
    rows.append(("c1 on basis", "all zero" if h2["c1_evals_zero"] else
                 ", ".join(f"{c['label']}={c['c1_eval']}" for c in h2["classes"] if c["c1_eval"])))
    if "form" in s:
        f = s["form"]
        rows.append(("form", f"rank {f['rank']}, signature ({f['signature'][0]},{f['signature'][1]}), "
                             f"det {f['determinant']}, {'even' if f['even'] else 'odd'}"))
    if "cy" in s:
        rows.append(("CY verdict", s["cy"]["verdict"]))
    if s["markings"]:
        rows.append(("markings", ", ".join(s["markings"])))
    out += _table(rows)
    return out


def _section_text(s: dict) -> list[str]:
    kind = s.get("kind")
    if kind == "model":
        return _model_text(s)
    if kind == "gluing":
        rows = [(k, v) for k, v in s["table"].items()] + [("det", s["determinant"])]
        return [f"gluing {s['name']} on {s['locus']}"] + _table(rows)
    if kind == "mcg":
        rows = [("family", "g", "length", "id on H1", "symplectic", "half = -I", "euler")]
        for c in s["checks"]:
            half = "-" if c["half_word_minus_identity"] is None else c["half_word_minus_identity"]
            rows.append((c["family"], c["genus"], c["length"], c["identity_on_h1"], c["symplectic"],
                         half, c["lefschetz_euler"]))
        return [f"monodromy {s['name']} ({s['qualifier']})"] + _table(rows)
    if kind == "family":
        rows = [("g", "n", "block", "sum along Y", "closed form", "sum = closed", "congruences")]
        for r in s["rows"]:
            rows.append((r["g"], r["n"], tuple(r["block_triple"]), tuple(r["sum_triple"]),
                         tuple(r["closed_form"]), r["sum_matches_closed_form"], r["congruences_ok"]))
        lines = [f"family {s['name']}"] + _table(rows)
        if s["mismatches"]:
            lines.append("  mismatch with closed form at (g, n): "
                         + ", ".join(f"({g}, {n})" for g, n in s["mismatches"]))
        return lines
    return [f"{kind} {s.get('name')}"]


def emit_report(r: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(report_document(r), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"{SCHEMA}  source: {r.source}"]
    if r.params:
        lines.append("params: " + ", ".join(f"{k}={_compact(v)}" for k, v in r.params.items()))
    for s in r.sections:
        lines.append("")
        lines += _section_text(s)
    if r.assertions:
        lines.append("")
        lines.append("assertions")
        rows = [("PASS" if a.passed else "FAIL", a.name, a.that,
                 _compact(a.actual) if a.passed else f"{_compact(a.actual)} != {_compact(a.expected)}")
                for a in r.assertions]
        lines += _table(rows)
    lines.append("")
    lines.append(f"{r.passed} passed, {r.failed} failed")
    return ("\n".join(lines) + "\n").encode("utf-8")
