"""Compare the numba and numpy kernel backends.

Each backend runs in its own interpreter because the choice is fixed at import
time.  Timings are the best of ``--repeat`` warm runs; the first (cold) run is
reported separately since it includes JIT compilation for numba.

    python3 benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
import numpy as np
from fanoqsm import backend, kernels
from fanoqsm.familydb import load_family_db
from fanoqsm.gf import field
from fanoqsm.verify import OracleConfig, verify_many

repeat = int(sys.argv[1])
db = load_family_db()
base = [(r.base, r.d) for r in db if r.w_pos is not None]
F = field(2, 3)
rng = np.random.default_rng(0)
mats = [rng.integers(0, F.q, size=(5, 6)).astype(np.int64) for _ in range(2000)]


def enum():
    for w, d in base:
        kernels.monomials_of_degree(w, d)


def search():
    for w, d in base:
        lam = kernels.monomials_of_degree(w, d)
        on = [i for i, a in enumerate(w) if a > 1][:3]
        mask = np.array([int(i in on) for i in range(4)], dtype=np.int64)
        kernels.find_monomial_minor(lam, [-1] + [i for i in range(4) if i not in on][: len(on) - 1], mask, 2)


def rank():
    for m in mats:
        kernels.gfq_rank(m, 2, 3, F.exp_table, F.log_table)


def sweep():
    verify_many(db)


def oracle_sweep():
    verify_many([r for r in db if r.klass == "TYPE1"], OracleConfig(samples=20))


out = {"backend": backend()}
for name, fn in [("enumerate", enum), ("minor-search", search), ("gfq-rank", rank),
                 ("verify-all", sweep), ("verify-typeI+oracle", oracle_sweep)]:
    t0 = time.perf_counter(); fn(); cold = time.perf_counter() - t0
    warm = []
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); warm.append(time.perf_counter() - t0)
    out[name] = {"cold": cold, "warm": min(warm)}
print(json.dumps(out))
"""


def run(backend: str, repeat: int) -> dict:
    env = dict(os.environ, FANOQSM_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw results")
    args = ap.parse_args()
    t0 = time.perf_counter()
    results = {b: run(b, args.repeat) for b in ("numpy", "numba")}
    if args.json:
        print(json.dumps(results, indent=1))
        return
    names = [k for k in results["numpy"] if k != "backend"]
    print(f"{'workload':22} {'numpy warm':>11} {'numba warm':>11} {'numba cold':>11} {'speedup':>8}")
    for name in names:
        a, b = results["numpy"][name], results["numba"][name]
        print(f"{name:22} {a['warm']:10.3f}s {b['warm']:10.3f}s {b['cold']:10.3f}s {a['warm'] / b['warm']:7.1f}x")
    print(f"(actual backends: {results['numpy']['backend']}, {results['numba']['backend']}; "
          f"total {time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
