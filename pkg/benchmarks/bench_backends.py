"""Compare the two kernel backends on representative workloads.

The backend is fixed at import time by ROOTSPLIT_NO_NUMBA, so each side
runs in its own subprocess and reports timings as JSON on stdout. Output
bytes are identical either way; this script only measures speed.

Usage: python3 benchmarks/bench_backends.py [--reps N]
"""

import argparse
import json
import os
import subprocess
import sys
from time import perf_counter


def run_workloads(reps: int) -> dict:
    import warnings

    warnings.simplefilter("ignore")
    from rootsplit.backend import backend_name
    from rootsplit.scheme import keygen
    from rootsplit.search import brute_force_invert, uniqueness_survey

    # warm up so JIT compilation and cache loading stay out of the timings
    keygen(101, 0)
    brute_force_invert(keygen(7, 0).public)
    uniqueness_survey(5, "balanced", "unordered")

    times = {}

    start = perf_counter()
    for r in range(10 * reps):
        keygen(401, r)
    times[f"keygen p=401 x{10 * reps}"] = perf_counter() - start

    target = keygen(23, 7).public
    start = perf_counter()
    for _ in range(reps):
        brute_force_invert(target)
    times[f"attack p=23 x{reps}"] = perf_counter() - start

    start = perf_counter()
    for _ in range(reps):
        uniqueness_survey(17, "balanced", "unordered")
    times[f"survey p=17 balanced unordered x{reps}"] = perf_counter() - start

    return {"backend": backend_name(), "times": times}


def run_child(pure: bool, reps: int) -> dict:
    env = dict(os.environ)
    if pure:
        env["ROOTSPLIT_NO_NUMBA"] = "1"
    else:
        env.pop("ROOTSPLIT_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--child", str(reps)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=1)
    parser.add_argument("--child", type=int, metavar="REPS", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.child is not None:
        print(json.dumps(run_workloads(args.child)))
        return 0

    pure = run_child(pure=True, reps=args.reps)
    jit = run_child(pure=False, reps=args.reps)
    width = max(len(k) for k in pure["times"])
    print(f"{'workload':<{width}}  {pure['backend']:>10}  {jit['backend']:>10}  speedup")
    for key, pure_s in pure["times"].items():
        jit_s = jit["times"][key]
        print(f"{key:<{width}}  {pure_s:>9.3f}s  {jit_s:>9.3f}s  {pure_s / jit_s:>6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
