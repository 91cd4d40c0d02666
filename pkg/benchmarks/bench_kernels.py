"""Compare the numba and numpy counting kernels on a few fixed workloads.

    python3 benchmarks/bench_kernels.py --repeat 3

Both backends run in one process (the env flag only picks the default), and
every workload asserts that they agree before reporting timings.
"""

import argparse
import time

from feynquad import count as K
from feynquad.graph import complete

WORKLOADS = [
    ("brute", complete(3), 2, 3),
    ("brute", complete(4), 2, 2),
    ("fibrewise", complete(3), 2, 23),
    ("fibrewise", complete(3), 2, 47),
    ("fibrewise", complete(4), 2, 5),
]


def run_once(algo, g, d, q, backend):
    fn = K.brute_force_count if algo == "brute" else K.fibrewise_count
    t0 = time.perf_counter()
    c = fn(g, d, q, backend=backend, budget=1 << 40).count
    return c, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--quick", action="store_true", help="skip the q = 47 workload")
    args = ap.parse_args()

    # compile (or load cached) numba kernels outside the timed region
    run_once("brute", complete(2), 1, 2, "numba")
    run_once("fibrewise", complete(2), 1, 2, "numba")

    print(f"{'algo':<10} {'graph':<12} {'d':>2} {'q':>3} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for algo, g, d, q in WORKLOADS:
        if args.quick and q > 30:
            continue
        best = {}
        counts = set()
        for backend in ("numba", "numpy"):
            times = []
            for _ in range(args.repeat):
                c, t = run_once(algo, g, d, q, backend)
                counts.add(c)
                times.append(t)
            best[backend] = min(times)
        assert len(counts) == 1, f"backends disagree on {algo} {g} q={q}: {counts}"
        ratio = best["numpy"] / best["numba"]
        print(
            f"{algo:<10} {str(g):<12} {d:>2} {q:>3} {best['numba']:>9.3f} {best['numpy']:>9.3f} {ratio:>7.1f}x"
        )


if __name__ == "__main__":
    main()
