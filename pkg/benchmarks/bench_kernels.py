"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--sizes 32,64,128,256] [--repeat 3]
"""

import argparse
import time

import numpy as np

from centrality_pruning import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="32,64,128,256")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = sorted(kernels.BACKENDS)
    rng = np.random.default_rng(args.seed)

    print(f"{'kernel':<14}{'n':>6}" + "".join(f"{b:>14}" for b in backends) + f"{'speedup':>10}  identical")
    for n in sizes:
        R = rng.standard_normal((n, 9))
        zero = np.zeros(n, dtype=np.uint8)
        D = rng.uniform(0.05, 1.0, (n, n))
        D = np.ascontiguousarray(np.triu(D, 1) + np.triu(D, 1).T)
        cases = {
            "abscos": lambda k: k.abscos_matrix(R, zero),
            "brandes": lambda k: k.brandes(D, 1e-12),
        }
        m = min(n, 18)
        Wsub = np.ascontiguousarray(1.0 - D[:m, :m])
        cases[f"subset(m={m})"] = lambda k: k.subset_search(Wsub, m // 2, 1e-12)
        for name, call in cases.items():
            results = {b: best_of(lambda: call(kernels.get(b)), args.repeat) for b in backends}
            row = f"{name:<14}{n:>6}" + "".join(f"{results[b][0]:>13.4f}s" for b in backends)
            if len(backends) == 2:
                speed = results["python"][0] / results["compiled"][0]
                a, b = (results[x][1] for x in backends)
                same = a == b if isinstance(a, tuple) else np.array_equal(a, b)
                row += f"{speed:>9.1f}x  {same}"
            print(row)


if __name__ == "__main__":
    main()
