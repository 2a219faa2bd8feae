"""Time the compiled and NumPy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Every workload is run on each available backend; outputs are compared for
equality before any timing is reported.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from linset.field import make_field
from linset.kernels import available_backends
from linset.linear_sets import make_spec
from linset.poly import gcd_index_table


def workloads():
    F = make_field(2, 1, 6)
    spec = make_spec(F, 6, (2, 3, 4))
    basis = np.array(spec.source_basis(), dtype=np.int64)
    scalars = np.array(F.base, dtype=np.int64)
    T = F.tables
    yield ("combination_keys q=2 k=9 (2,3,4)",
           lambda b: b.combination_keys(basis, scalars, T.add, T.mul, T.inv, T.N))

    F3 = make_field(3, 1, 6)
    spec3 = make_spec(F3, 6, (3, 3, 3))
    basis3 = np.array(spec3.source_basis(), dtype=np.int64)
    T3 = F3.tables
    yield ("combination_keys q=3 k=9 (3,3,3)",
           lambda b: b.combination_keys(basis3, np.array(F3.base), T3.add, T3.mul, T3.inv, T3.N))

    rng = np.random.default_rng(0)
    N = F.order
    pts = np.array([[1, int(x), int(y)] for x, y in rng.integers(0, N, size=(97, 2))], dtype=np.int64)
    yield ("lines_through 97 points of PG(2,64)",
           lambda b: b.lines_through(pts, T.add, T.mul, T.inv, T.neg, T.N))

    for q, sizes in [(2, (5, 5, 5)), (3, (4, 4, 4)), (3, (5, 5, 5))]:
        Fq = make_field(q, 1, 1)
        table, monic = gcd_index_table(Fq, max(sizes))
        arr = np.array([q ** t for t in sizes], dtype=np.int64)
        yield (f"count_reduced q={q} bounds={sizes}",
               lambda b, arr=arr, table=table, monic=monic: b.count_reduced(arr, table, monic))


def timed(fn, repeat: int) -> float:
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'workload':42s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in workloads():
        outs = [fn(backends[n]) for n in names]
        for o in outs[1:]:
            same = np.array_equal(outs[0], o) if isinstance(o, np.ndarray) else outs[0] == o
            if not same:
                raise SystemExit(f"backends disagree on {label}")
        times = {n: timed(lambda n=n: fn(backends[n]), args.repeat) for n in names}
        row = f"{label:42s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
