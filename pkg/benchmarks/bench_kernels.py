#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the two hot loops (Hamiltonian entry generation and RDM extraction) plus
an end-to-end Hamiltonian assembly, on half-filled sectors.

    python benchmarks/bench_kernels.py --L 8 10 --repeats 5
"""

import argparse
import time

from hubbardlde._kernels import _fallback
from hubbardlde.fock import enumerate_sector
from hubbardlde.hamiltonian import ModelSpec

try:
    from hubbardlde._kernels import _core
except ImportError:
    _core = None


def best_of(repeats, fn, *args):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def run(L, repeats):
    basis = enumerate_sector(L, L // 2, L // 2)
    amps = ModelSpec("alt-bonds", L, 4.0, delta=0.5).bond_amplitudes()
    print(f"\nL={L}  (sector dimension {basis.size})")
    header = f"  {'kernel':<18} {'numpy':>12} {'cython':>12} {'speedup':>9}"
    print(header)
    print("  " + "-" * (len(header) - 2))
    cases = [
        ("hop_entries", lambda mod: mod.hop_entries(basis.states, L, amps)),
        ("double_occupancy", lambda mod: mod.double_occupancy(basis.states, L)),
        ("rdm_extract", lambda mod: mod.rdm_extract(basis.states, L, 1, L)),
    ]
    for name, call in cases:
        t_py = best_of(repeats, call, _fallback)
        if _core is None:
            print(f"  {name:<18} {t_py * 1e3:>10.2f}ms {'n/a':>12} {'-':>9}")
        else:
            t_cy = best_of(repeats, call, _core)
            print(f"  {name:<18} {t_py * 1e3:>10.2f}ms {t_cy * 1e3:>10.2f}ms {t_py / t_cy:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--L", type=int, nargs="+", default=[8, 10])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    backend = "cython available" if _core is not None else "cython NOT built (fallback only)"
    print(f"kernel backends: numpy fallback vs {backend}")
    for L in args.L:
        run(L, args.repeats)


if __name__ == "__main__":
    main()
