"""Benchmark the arc-scan kernel backends on a representative sampling load.

Measures the batched arc measurement (the hot loop of Levi-cone sampling)
for the compiled extension and the pure-numpy fallback, plus a whole
Levi-cone pass through the public API.

Run:  python3 benchmarks/bench_arcscan.py [--samples 20000] [--resolution 1440]
"""

import argparse
import time

import numpy as np

from crwedge.cones import PolyhedralCone, sample_sphere
from crwedge.kernels import available_backends


def workload(samples, n=2, l=1, seed=0):
    cone = PolyhedralCone(
        np.array([[0.0, 0.0, 0.0, 1.0, -1.0], [0.0, 0.0, 0.0, 1.0, 1.0]])
    )
    W = sample_sphere(n, samples, seed=seed)
    U = np.concatenate([np.zeros((samples, l)), W.real, W.imag], axis=1)
    Ui = np.concatenate([np.zeros((samples, l)), -W.imag, W.real], axis=1)
    P = np.ascontiguousarray(U @ cone.normals.T)
    Q = np.ascontiguousarray(Ui @ cone.normals.T)
    strict = np.ascontiguousarray(cone.strict.astype(np.uint8))
    return P, Q, strict


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=20000)
    parser.add_argument("--resolution", type=int, default=1440)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    P, Q, strict = workload(args.samples)
    backends = available_backends()
    print(f"arc-scan batch: {args.samples} directions x {args.resolution} angles, "
          f"{P.shape[1]} constraints")
    results = {}
    outputs = {}
    for name, impl in backends.items():
        best = np.inf
        for _ in range(args.repeats):
            start = time.perf_counter()
            out = impl.arc_measure_batch(P, Q, strict, args.resolution, 1e-6)
            best = min(best, time.perf_counter() - start)
        results[name] = best
        outputs[name] = np.asarray(out)
        rate = args.samples / best
        print(f"  {name:<9}  {best * 1e3:9.2f} ms   {rate:12.0f} directions/s")
    if len(results) == 2:
        agree = np.max(np.abs(outputs["compiled"] - outputs["python"]))
        print(f"  speedup compiled/python: "
              f"{results['python'] / results['compiled']:.1f}x   "
              f"max |difference|: {agree:.2e}")
    elif "compiled" not in backends:
        print("  compiled backend unavailable (pure-python build)")


if __name__ == "__main__":
    main()
