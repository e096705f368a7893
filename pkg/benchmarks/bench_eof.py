"""Compare the compiled rotation kernel against the pure-Python fallback.

Runs the ensemble optimizer on a few representative coefficient matrices with
each kernel and reports wall-clock time plus the value gap between the two.

Usage: python3 benchmarks/bench_eof.py [--restarts N]
"""

import argparse
import time

import numpy as np

import entrates._eof_py as eof_py
import entrates._kernel as kernel
from entrates.maxcorr import MaxCorrSpec, OptimizerConfig, reduced_eof

try:
    import entrates._eof_cy as eof_cy
except ImportError:
    eof_cy = None

CASES = {
    "bell-mix p=0.9 (2x2)": np.array([[0.5, -0.4], [-0.4, 0.5]]),
    "random 3x3": None,  # filled below
    "doubled bell (4x4)": np.kron(
        np.array([[0.5, -0.4], [-0.4, 0.5]]), np.array([[0.5, -0.4], [-0.4, 0.5]])
    ),
}


def _random_amatrix(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def run_case(name, a, restarts):
    spec = MaxCorrSpec(dim=a.shape[0], a_matrix=a)
    config = OptimizerConfig(restarts=restarts, seed=0)
    results = {}
    for label, module in (("compiled", eof_cy), ("fallback", eof_py)):
        if module is None:
            continue
        kernel.optimize_rows = module.optimize_rows
        kernel.ensemble_entropy = module.ensemble_entropy
        start = time.perf_counter()
        value = reduced_eof(spec, config).value
        results[label] = (time.perf_counter() - start, value)
    print(f"\n{name}:")
    for label, (elapsed, value) in results.items():
        print(f"  {label:9s} {elapsed:8.3f} s   value = {value:.12f}")
    if len(results) == 2:
        (t_c, v_c), (t_f, v_f) = results["compiled"], results["fallback"]
        print(f"  speedup   {t_f / t_c:8.1f} x   |value gap| = {abs(v_c - v_f):.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--restarts", type=int, default=8)
    args = parser.parse_args()
    if eof_cy is None:
        print("compiled kernel not built; timing fallback only")
    CASES["random 3x3"] = _random_amatrix(np.random.default_rng(7), 3)
    saved = (kernel.optimize_rows, kernel.ensemble_entropy)
    try:
        for name, a in CASES.items():
            run_case(name, a, args.restarts)
    finally:
        kernel.optimize_rows, kernel.ensemble_entropy = saved


if __name__ == "__main__":
    main()
