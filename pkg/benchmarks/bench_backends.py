"""Time the compiled kernels against the pure-numpy fallback.

Run from the repo root:

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --scale 2   # heavier inputs

Each kernel is timed on identical inputs; the table reports best-of-3
wall time per backend plus the speedup.  The end-to-end row re-runs the
full recognizer on a long path in a subprocess per backend so the
import-time selection stays honest.
"""

import argparse
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, "src")

from dtg import _kernels_py as pure  # noqa: E402
from dtg.graph import Graph  # noqa: E402

try:
    from dtg import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    u, v = np.triu_indices(n, 1)
    keep = rng.random(u.size) < p
    return Graph(n, np.column_stack([u[keep], v[keep]]))


def build_cases(scale):
    g_mid = random_graph(1200 * scale, 0.05, 1)
    g_perm = random_graph(400 * scale, 0.5, 2)
    bits_mid = np.array(pure.build_bit_rows(g_mid.n, g_mid.indptr, g_mid.indices))
    bits_perm = np.array(pure.build_bit_rows(g_perm.n, g_perm.indptr, g_perm.indices))
    vals = np.random.default_rng(3).permutation(500_000 * scale).astype(np.int64)

    cases = [
        ("build_bit_rows (n=%d m=%d)" % (g_mid.n, g_mid.m),
         lambda mod: mod.build_bit_rows(g_mid.n, g_mid.indptr, g_mid.indices)),
        ("popcount_rows (%dx%d)" % bits_mid.shape,
         lambda mod: mod.popcount_rows(bits_mid)),
        ("bits_to_indices (%d rows)" % g_mid.n,
         lambda mod: [mod.bits_to_indices(bits_mid[i], g_mid.n)
                      for i in range(g_mid.n)]),
        ("bfs_distances (n=%d)" % g_mid.n,
         lambda mod: mod.bfs_distances(g_mid.indptr, g_mid.indices, 0)),
        ("count_inversions (k=%d)" % vals.size,
         lambda mod: mod.count_inversions(vals)),
        ("complement_orientation (n=%d)" % g_perm.n,
         lambda mod: mod.complement_orientation(g_perm.indptr, g_perm.indices,
                                                bits_perm)),
    ]
    return cases


def bench_recognize(n, env_extra):
    script = ("import sys, time\n"
              "sys.path.insert(0, 'src')\n"
              "import numpy as np\n"
              "from dtg import core, BACKEND\n"
              "from dtg.graph import Graph\n"
              "n = %d\n"
              "g = Graph(n, np.column_stack([np.arange(n - 1), np.arange(1, n)]))\n"
              "t0 = time.perf_counter()\n"
              "res = core.recognize(g)\n"
              "assert res.certificate is not None\n"
              "print('%%s %%.3f' %% (BACKEND, time.perf_counter() - t0))\n" % n)
    env = {"PATH": "/usr/bin:/bin"}
    env.update(env_extra)
    out = subprocess.run([sys.executable, "-c", script], capture_output=True,
                         text=True, env=env, check=True)
    tag, secs = out.stdout.split()
    return tag, float(secs)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scale", type=int, default=1)
    ap.add_argument("--path-n", type=int, default=200_000,
                    help="path length for the end-to-end recognize row")
    args = ap.parse_args()

    if compiled is None:
        print("compiled kernels not built; run pip install -e . first",
              file=sys.stderr)
        return 1

    print("%-38s %12s %12s %9s" % ("kernel", "compiled", "pure", "speedup"))
    for label, runner in build_cases(args.scale):
        tc = best_of(lambda: runner(compiled))
        tp = best_of(lambda: runner(pure))
        print("%-38s %10.1f ms %10.1f ms %8.1fx" % (label, tc * 1e3, tp * 1e3,
                                                    tp / max(tc, 1e-9)))

    tag_c, tc = bench_recognize(args.path_n, {})
    tag_p, tp = bench_recognize(args.path_n, {"DTG_PURE": "1"})
    assert tag_c == "compiled" and tag_p == "pure", (tag_c, tag_p)
    print("%-38s %10.1f ms %10.1f ms %8.1fx"
          % ("recognize path n=%d" % args.path_n, tc * 1e3, tp * 1e3, tp / tc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
