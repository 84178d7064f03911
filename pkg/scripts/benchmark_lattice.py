#!/usr/bin/env python3
"""Benchmark the double-lattice kernel: compiled (numba) vs pure-numpy backend.

Runs each backend in a fresh subprocess (backend selection happens at import
time, controlled by the EISENLAB_PURE_NUMPY environment variable), times
``eisenlab._lattice.lattice_sum`` over a grid of cutoffs, and checks that the
two backends agree to near machine precision.

Usage:
    python scripts/benchmark_lattice.py [--y 1.0] [--s 2.0]
        [--cutoffs 500 1000 2000 4000] [--repeats 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

_CHILD_SNIPPET = r"""
import json, sys, time
from eisenlab import _lattice

y = float(sys.argv[1])
s = complex(sys.argv[2])
if s.imag == 0.0:
    s = s.real
cutoffs = [int(c) for c in sys.argv[3].split(",")]
repeats = int(sys.argv[4])

# Warm-up (trigger any JIT compilation outside the timed region).
_lattice.lattice_sum(y, s, 64)

rows = []
for cutoff in cutoffs:
    best = None
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = _lattice.lattice_sum(y, s, cutoff)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    rows.append({
        "cutoff": cutoff,
        "seconds": best,
        "value_re": float(value.real),
        "value_im": float(getattr(value, "imag", 0.0)),
    })

print(json.dumps({"backend": _lattice.kernel_backend(), "rows": rows}))
"""


def _run_backend(pure_numpy: bool, y: float, s: str, cutoffs: list[int], repeats: int) -> dict:
    env = dict(os.environ)
    if pure_numpy:
        env["EISENLAB_PURE_NUMPY"] = "1"
    else:
        env.pop("EISENLAB_PURE_NUMPY", None)
    out = subprocess.run(
        [sys.executable, "-c", _CHILD_SNIPPET, str(y), s,
         ",".join(str(c) for c in cutoffs), str(repeats)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--y", type=float, default=1.0, help="imaginary part of the lattice point")
    ap.add_argument("--s", type=str, default="2.0", help="exponent (real or complex, e.g. 2.5+0.5j)")
    ap.add_argument("--cutoffs", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    ap.add_argument("--repeats", type=int, default=3, help="best-of-N timing per cutoff")
    args = ap.parse_args(argv)

    results = {}
    for pure in (False, True):
        data = _run_backend(pure, args.y, args.s, args.cutoffs, args.repeats)
        results[data["backend"]] = data["rows"]

    backends = sorted(results)
    if len(backends) == 1:
        print(f"only one backend available: {backends[0]} "
              "(numba missing or disabled); timings below.")
        for row in results[backends[0]]:
            print(f"  cutoff={row['cutoff']:>6}  {row['seconds'] * 1e3:9.2f} ms")
        return 0

    print(f"lattice_sum benchmark  y={args.y}  s={args.s}  "
          f"(best of {args.repeats} runs per cutoff)")
    print(f"{'cutoff':>8} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>9} {'agreement':>11}")
    worst_gap = 0.0
    for np_row, nb_row in zip(results["numpy"], results["numba"]):
        assert np_row["cutoff"] == nb_row["cutoff"]
        a = complex(np_row["value_re"], np_row["value_im"])
        b = complex(nb_row["value_re"], nb_row["value_im"])
        gap = abs(a - b) / max(abs(a), 1e-300)
        worst_gap = max(worst_gap, gap)
        speed = np_row["seconds"] / nb_row["seconds"] if nb_row["seconds"] > 0 else float("inf")
        print(f"{np_row['cutoff']:>8} {np_row['seconds'] * 1e3:>12.2f} "
              f"{nb_row['seconds'] * 1e3:>12.2f} {speed:>8.2f}x {gap:>11.2e}")
    print(f"worst relative disagreement between backends: {worst_gap:.2e}")
    if worst_gap > 1e-12:
        print("WARNING: backends disagree beyond 1e-12", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
