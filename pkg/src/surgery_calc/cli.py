"""Command line entry point: ``surgery-calc run|check|list``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .report import emit_report
from .runner import run_script
from .script import ScriptError, parse_script

EXIT_OK, EXIT_ASSERT, EXIT_ERROR = 0, 1, 2


def bundled_scenarios() -> list[str]:
    root = resources.files("surgery_calc") / "scenarios"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".scn"))


def read_script_text(ref: str) -> tuple[str, str]:
    """Path on disk, or the name of a bundled scenario (with or without .scn)."""
    path = Path(ref)
    if path.is_file():
        return path.read_text(encoding="utf-8"), str(path)
    name = ref[:-4] if ref.endswith(".scn") else ref
    res = resources.files("surgery_calc") / "scenarios" / f"{name}.scn"
    if res.is_file():
        return res.read_text(encoding="utf-8"), f"{name}.scn"
    raise FileNotFoundError(f"no script file or bundled scenario named {ref!r}")


def _param(text: str) -> tuple[str, object]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    k, v = text.split("=", 1)
    try:
        return k.strip(), json.loads(v)
    except json.JSONDecodeError:
        return k.strip(), v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="surgery-calc",
                                 description="Invariant calculator for symplectic surgeries.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a construction script and print its report")
    run.add_argument("script", help="script path or bundled scenario name")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--max-cosets", type=int, default=None,
                     help="coset enumeration budget (default: $SURGERY_CALC_MAX_COSETS or 100000)")
    run.add_argument("--out", type=Path, default=None, help="write the report here")
    run.add_argument("--param", type=_param, action="append", default=[], metavar="KEY=VALUE")

    check = sub.add_parser("check", help="parse and validate a script without running it")
    check.add_argument("script")

    sub.add_parser("list", help="list bundled scenarios")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        print("\n".join(bundled_scenarios()))
        return EXIT_OK
    try:
        text, source = read_script_text(args.script)
        script = parse_script(text, source)
        if args.command == "check":
            print(f"{source}: {len(script)} statements ok")
            return EXIT_OK
        if args.max_cosets is not None and args.max_cosets < 1:
            raise ScriptError("--max-cosets must be >= 1")
        report = run_script(script, dict(args.param), args.max_cosets)
    except (ScriptError, FileNotFoundError) as e:
        print(f"surgery-calc: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    data = emit_report(report, args.format)
    if args.out is not None:
        args.out.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK if report.ok else EXIT_ASSERT


if __name__ == "__main__":
    sys.exit(main())
