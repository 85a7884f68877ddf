"""Compare the numba and pure-Python coset enumeration kernels.

Each backend runs in its own interpreter because the choice is fixed at
import time by SURGERY_CALC_NUMBA.

    python benchmarks/bench_coset.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
from surgery_calc import fpgroup as fp
from surgery_calc._jit import backend

def pres(gens, rels):
    return fp.Presentation(tuple(gens), tuple(fp.parse_word(r, gens) for r in rels))

cases = {
    "Z_2 x Z_3": pres("cd", ["[c,d]", "c^2", "d^3"]),
    "PSL(2,7)": pres("ab", ["a^2", "b^3", "(a*b)^7", "[a,b]^4"]),
    "S_6 Coxeter": pres("xyzuv", ["x^2", "y^2", "z^2", "u^2", "v^2", "(x*y)^3", "(y*z)^3",
                                  "(z*u)^3", "(u*v)^3", "(x*z)^2", "(x*u)^2", "(x*v)^2",
                                  "(y*u)^2", "(y*v)^2", "(z*v)^2"]),
    "Z_4000": pres("a", ["a^4000"]),
}
repeat = int(sys.argv[1])
fp.todd_coxeter(cases["Z_2 x Z_3"])  # warm-up (numba compile or cache load)
out = {"backend": backend(), "results": {}}
for name, p in cases.items():
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        r = fp.todd_coxeter(p)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    out["results"][name] = {"index": r.n, "seconds": best}
print(json.dumps(out))
"""


def run(flag: str, repeat: int) -> dict:
    env = dict(os.environ, SURGERY_CALC_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit, py = run("1", args.repeat), run("0", args.repeat)
    print(f"{'group':<14}{'index':>7}{jit['backend']:>12}{py['backend']:>12}{'speedup':>10}")
    for name, r in jit["results"].items():
        p = py["results"][name]
        assert r["index"] == p["index"], (name, r, p)
        print(f"{name:<14}{r['index']:>7}{r['seconds']:>12.5f}{p['seconds']:>12.5f}"
              f"{p['seconds'] / max(r['seconds'], 1e-9):>9.1f}x")


if __name__ == "__main__":
    main()
