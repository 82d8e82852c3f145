"""Time the compiled and pure-Python kernels on the same random inputs.

Usage: python benchmarks/bench_kernels.py [--n 8] [--count 300] [--seed 1]
"""

from __future__ import annotations

import argparse
import random
import time

from reconlab import _kernels_py

try:
    from reconlab import _kernels
except ImportError:
    _kernels = None


def random_rows(rng: random.Random, n: int, p: float) -> list[int]:
    return [sum(1 << j for j in range(n) if j != i and rng.random() < p) for i in range(n)]


def timed(fn, inputs) -> tuple[float, list]:
    start = time.perf_counter()
    out = [fn(*args) for args in inputs]
    return time.perf_counter() - start, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    hosts = [random_rows(rng, args.n, 0.4) for _ in range(args.count)]
    patterns = [random_rows(rng, 4, 0.4) for _ in range(args.count)]
    workloads = {
        "canon": [(args.n, rows) for rows in hosts],
        "count_embeddings": [(4, p, args.n, h, True) for p, h in zip(patterns, hosts)],
    }
    backends = {"python": _kernels_py}
    if _kernels is not None:
        backends["cython"] = _kernels
    else:
        print("compiled extension not built; timing the Python fallback only")
    print(f"n={args.n} inputs={args.count} seed={args.seed}")
    for name, inputs in workloads.items():
        times, results = {}, {}
        for b, mod in backends.items():
            times[b], results[b] = timed(getattr(mod, name), inputs)
        line = "  ".join(f"{b}={t * 1000:.1f}ms" for b, t in times.items())
        if "cython" in times:
            same = results["cython"] == results["python"]
            line += f"  speedup={times['python'] / times['cython']:.1f}x  identical={same}"
        print(f"{name:17s} {line}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
