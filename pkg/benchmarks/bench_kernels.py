"""Compare the compiled kernels with the pure-Python fallback.

Each workload runs in a fresh interpreter, once with the default backend and
once with AFFSCHUR_PURE=1, and the best of a few repeats is reported.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "poly_mul": """
from affschur.kernels import poly_mul, poly_add
a = (-7, tuple(range(1, 16)))
b = (3, tuple((-1) ** k * k for k in range(1, 12)))
acc = (0, ())
for _ in range(20000):
    acc = poly_add(*acc, *poly_mul(*a, *b))
""",
    "kl_affine_A2": """
from affschur.rootdatum import build_root_datum
from affschur.weyl import WeylUniverse
from affschur.hecke import HeckeAlgebra
U = WeylUniverse(build_root_datum("A", 2), "affine", 7)
H = HeckeAlgebra(U)
H.kl_all()
""",
    "products_affine_A1": """
from affschur.rootdatum import build_root_datum
from affschur.weyl import WeylUniverse
from affschur.hecke import HeckeAlgebra
U = WeylUniverse(build_root_datum("A", 1), "affine", 14)
H = HeckeAlgebra(U)
for x, y in H.pairs_within(14):
    H.struct(x, y)
""",
}

TIMER = """
import time, sys
t = time.perf_counter()
exec(compile(sys.argv[1], "<workload>", "exec"))
from affschur.kernels import BACKEND
print(BACKEND, time.perf_counter() - t)
"""


def run_once(code: str, pure: bool) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("AFFSCHUR_PURE", None)
    if pure:
        env["AFFSCHUR_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", TIMER, code], env=env, capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for name, code in WORKLOADS.items():
        best = {}
        for pure in (False, True):
            times = [run_once(code, pure) for _ in range(args.repeat)]
            best[times[0][0] if not pure else "python"] = min(t for _, t in times)
        default = next(k for k in best if k != "python") if len(best) > 1 else "python"
        rows.append({"workload": name, "backend": default, "seconds": best})
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    print(f"{'workload':<22}{'compiled':>10}{'python':>10}{'speedup':>9}")
    for r in rows:
        s = r["seconds"]
        fast = s.get("cython")
        slow = s["python"]
        if fast is None:
            print(f"{r['workload']:<22}{'n/a':>10}{slow:>10.3f}{'':>9}")
        else:
            print(f"{r['workload']:<22}{fast:>10.3f}{slow:>10.3f}{slow / fast:>8.2f}x")


if __name__ == "__main__":
    main()
