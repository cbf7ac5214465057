"""Time the numpy and numba kernel backends on representative workloads.

Each workload mirrors a hot path of the library: quadratic annihilator
scans call ``batch_sq_kills``, degree scans call ``batch_minpoly_deg``,
and both lean on ``batch_rank`` and ``rref_mod_p`` for filtering.  The
numba backend is warmed up before timing so compilation cost is reported
separately from steady-state throughput.

Usage:
    python benchmarks/bench_kernels.py [--block 200000] [--repeat 3]

Select the default backend for the library itself with the
``LIELAB_NUMBA`` environment variable (auto / 0 / 1); this script always
times both when both are available.
"""

import argparse
import time

import numpy as np

from lielab import kernels
from lielab.algebra import matrix_algebra, minus, upper_triangular
from lielab.exactlin import Field


def build_workloads(p, block, rng):
    f = Field.prime(p)
    m3 = matrix_algebra(f, 3)
    t3 = minus(upper_triangular(f, 3))
    elems9 = kernels.decode_block(0, block, p, 9)
    elems6 = kernels.decode_block(0, min(block, p**6), p, 6)
    stacks = rng.integers(0, p, size=(block // 8, 4, 4)).astype(np.int64)
    square = rng.integers(0, p, size=(300, 300)).astype(np.int64)
    return [
        (
            "batch_sq_kills  t(3) scan",
            lambda: kernels.batch_sq_kills(elems6, t3.bracket_tensor, np.eye(6, dtype=np.int64), p),
        ),
        (
            "batch_sq_kills  M_3 scan",
            lambda: kernels.batch_sq_kills(elems9, m3.bracket_tensor, np.eye(9, dtype=np.int64), p),
        ),
        (
            "batch_minpoly   M_3 scan",
            lambda: kernels.batch_minpoly_deg(elems9, m3.table, m3.unit, p),
        ),
        (
            "batch_rank      4x4 stack",
            lambda: kernels.batch_rank(stacks, p),
        ),
        (
            "rref_mod_p      300x300",
            lambda: kernels.rref_mod_p(square, p),
        ),
    ]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def check_agreement(p):
    """Both backends must produce identical results on a small slice."""
    f = Field.prime(p)
    m3 = matrix_algebra(f, 3)
    elems = kernels.decode_block(12345, 2000, p, 9)
    probes = {
        "sq_kills": lambda: kernels.batch_sq_kills(elems, m3.bracket_tensor, np.eye(9, dtype=np.int64), p),
        "minpoly": lambda: kernels.batch_minpoly_deg(elems, m3.table, m3.unit, p),
        "rank": lambda: kernels.batch_rank(elems.reshape(-1, 3, 3)[:500], p),
    }
    for name, probe in probes.items():
        got = {}
        for backend in kernels.available_backends():
            kernels.use_backend(backend)
            got[backend] = probe()
        ref = got.pop("numpy")
        for backend, val in got.items():
            if not np.array_equal(ref, val):
                raise SystemExit(f"backend disagreement on {name}: numpy vs {backend}")
    print(f"backends agree on {len(probes)} probe workloads")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--block", type=int, default=200_000, help="elements per enumeration block")
    ap.add_argument("--repeat", type=int, default=3, help="timed repetitions (best is reported)")
    ap.add_argument("--p", type=int, default=5, help="field characteristic")
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "numba" in backends:
        kernels.use_backend("numba")
        t0 = time.perf_counter()
        for _, fn in build_workloads(args.p, 64, np.random.default_rng(0)):
            fn()
        print(f"numba compilation + first call: {time.perf_counter() - t0:.2f}s")

    check_agreement(args.p)

    rng = np.random.default_rng(20240817)
    workloads = build_workloads(args.p, args.block, rng)
    results = {}
    for backend in backends:
        kernels.use_backend(backend)
        results[backend] = [best_of(fn, args.repeat) for _, fn in workloads]

    width = max(len(name) for name, _ in workloads)
    header = f"{'workload':<{width}}" + "".join(f"  {b:>10}" for b in backends)
    if len(backends) > 1:
        header += "  speedup"
    print()
    print(header)
    print("-" * len(header))
    for i, (name, _) in enumerate(workloads):
        row = f"{name:<{width}}"
        for b in backends:
            row += f"  {results[b][i] * 1000:>8.1f}ms"
        if "numba" in results and "numpy" in results:
            row += f"  {results['numpy'][i] / results['numba'][i]:>6.1f}x"
        print(row)

    kernels.use_backend(backends[-1] if "numba" in backends else "numpy")


if __name__ == "__main__":
    main()
