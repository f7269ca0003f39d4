"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from sublattice_ee.kernels import available_backends


def cases(rng):
    a = rng.normal(size=(64, 64))
    a = a + a.T
    x = rng.uniform(0.1, 2.0, 1_000_000)
    w = rng.uniform(0.1, 2.0, 4096)
    return [
        ("jacobi_eigh 64x64", lambda b: b.jacobi_eigh(a.copy(), 1e-14, 100)),
        ("residue_sums N=1e6 N_A=2", lambda b: b.residue_sums(x, 2)),
        ("residue_sums N=1e6 N_A=1000", lambda b: b.residue_sums(x, 1000)),
        ("cosine_sums N=4096 64 shifts", lambda b: b.cosine_sums(w, np.arange(64), 4096)),
        ("compensated_sum N=1e6", lambda b: b.compensated_sum(x)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':32s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in cases(np.random.default_rng(0)):
        times = {n: min(timeit.repeat(lambda: fn(backends[n]), number=1, repeat=args.repeat))
                 for n in names}
        line = f"{label:32s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            line += f"  {times['python'] / times['cython']:8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
