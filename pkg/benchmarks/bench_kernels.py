"""Time the compiled and pure-Python kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import time

from matchforest.kernels import _pykernels
from matchforest.oracle import planted_partition

try:
    from matchforest.kernels import _ckernels
except ImportError:
    _ckernels = None

KINDS = {"mf": _pykernels.MF, "mec": _pykernels.MEC, "mcf": _pykernels.MCF}


def workloads(seed=0):
    rng = random.Random(seed)
    out = []
    for kind, n, k, cap in (("mf", 8, 2, 14), ("mf", 10, 3, 18), ("mec", 6, 2, 14), ("mec", 7, 3, 20)):
        g, _ = planted_partition(rng, n, k, kind, max_elements=cap)
        out.append((kind, g))
    return out


def bench(impl, loads, repeat):
    t_table = t_search = 0.0
    found = 0
    for _ in range(repeat):
        for kind, g in loads:
            tails, heads, is_edge = g.kernel_arrays
            t0 = time.perf_counter()
            table = impl.structure_table(KINDS[kind], g.num_vertices, tails, heads, is_edge)
            t1 = time.perf_counter()
            found += len(impl.search_partitions(table, g.num_elements, 2, True, 0))
            t2 = time.perf_counter()
            t_table += t1 - t0
            t_search += t2 - t1
    return t_table, t_search, found


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    loads = workloads(args.seed)
    sizes = ", ".join(f"{k}:{g.num_elements}" for k, g in loads)
    print(f"workloads (kind:elements): {sizes}")
    py = bench(_pykernels, loads, args.repeat)
    print(f"python  table {py[0]:8.3f}s  search {py[1]:8.3f}s")
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return
    cy = bench(_ckernels, loads, args.repeat)
    print(f"cython  table {cy[0]:8.3f}s  search {cy[1]:8.3f}s")
    assert py[2] == cy[2], "backends disagree"
    print(f"speedup table x{py[0] / cy[0]:.1f}  search x{py[1] / max(cy[1], 1e-9):.1f}")


if __name__ == "__main__":
    main()
