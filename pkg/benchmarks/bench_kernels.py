"""Compare the numba and pure-numpy backends on the two hot kernels.

Times dense kernel-matrix assembly and Cauchy-sum evaluation across problem
sizes and prints a table, plus the max deviation between the two paths when
numba is available.

Usage: python benchmarks/bench_kernels.py [--sizes 64,128,256,512] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stripcap import _backend
from stripcap._backend import _assemble_numpy, _cauchy_numpy


def _problem(n: int, m: int = 3):
    """Unit circle plus m clockwise small circles, smooth test data."""
    t1 = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    centers = np.array([0.0, 0.45 + 0.3j, -0.45 - 0.3j, 0.0 + 0.55j])[: m + 1]
    radii = np.array([1.0] + [0.12] * m)
    eta = []
    eta_dot = []
    for k, (c, rad) in enumerate(zip(centers, radii)):
        sgn = 1.0 if k == 0 else -1.0
        e = np.exp(sgn * 1j * t1)
        eta.append(c + rad * e)
        eta_dot.append(sgn * 1j * rad * e)
    eta = np.concatenate(eta)
    eta_dot = np.concatenate(eta_dot)
    t = np.tile(t1, m + 1)
    comp = np.repeat(np.arange(m + 1), n)
    A = eta - 0.2j
    diag = np.full(eta.shape[0], 0.1 + 0.1j)
    mu = np.cos(t) * np.exp(-np.arange(eta.shape[0]) / eta.shape[0])
    targets = 0.75 * np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 400, endpoint=False))
    weights = eta_dot * (2.0 * np.pi / n)
    return eta, eta_dot, A, t, comp, diag, weights, mu, targets


def _time(fn, repeat: int) -> float:
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="64,128,256,512")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"active backend: {_backend.BACKEND}")
    have_numba = _backend.BACKEND == "numba"
    if not have_numba:
        print("numba unavailable or disabled via STRIPCAP_BACKEND; "
              "showing numpy timings only")

    hdr = (f"{'n/comp':>7} {'asm numpy [s]':>14} {'asm numba [s]':>14} "
           f"{'cauchy numpy [s]':>17} {'cauchy numba [s]':>17} {'max dev':>10}")
    print(hdr)
    print("-" * len(hdr))
    for n in sizes:
        eta, eta_dot, A, t, comp, diag, weights, mu, targets = _problem(n)
        ntot = eta.shape[0]
        Nm = np.empty((ntot, ntot))
        M1 = np.empty((ntot, ntot))

        ta_np = _time(
            lambda: _assemble_numpy(eta, eta_dot, A, t, comp, diag, Nm, M1),
            args.repeat,
        )
        tc_np = _time(lambda: _cauchy_numpy(eta, weights, mu, targets), args.repeat)

        if have_numba:
            # warm the JIT before timing
            _backend.assemble_kernel_matrices(eta, eta_dot, A, t, comp, diag)
            _backend.cauchy_sums(eta, weights, mu, targets)
            ta_nb = _time(
                lambda: _backend.assemble_kernel_matrices(eta, eta_dot, A, t, comp, diag),
                args.repeat,
            )
            tc_nb = _time(lambda: _backend.cauchy_sums(eta, weights, mu, targets), args.repeat)

            N2, M2 = _backend.assemble_kernel_matrices(eta, eta_dot, A, t, comp, diag)
            _assemble_numpy(eta, eta_dot, A, t, comp, diag, Nm, M1)
            n1, d1, dm1 = _backend.cauchy_sums(eta, weights, mu, targets)
            n2, d2, dm2 = _cauchy_numpy(eta, weights, mu, targets)
            dev = max(
                np.abs(N2 - Nm).max(),
                np.abs(M2 - M1).max(),
                np.abs(n1 - n2).max(),
                np.abs(d1 - d2).max(),
                np.abs(dm1 - dm2).max(),
            )
            print(f"{n:>7} {ta_np:>14.4f} {ta_nb:>14.4f} "
                  f"{tc_np:>17.4f} {tc_nb:>17.4f} {dev:>10.1e}")
        else:
            print(f"{n:>7} {ta_np:>14.4f} {'-':>14} {tc_np:>17.4f} {'-':>17} {'-':>10}")


if __name__ == "__main__":
    main()
