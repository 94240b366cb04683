"""Compare the compiled and numpy grid kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--resolution 201]
"""

import argparse
import time

import numpy as np

from isonlcs import _kernels_py
from isonlcs.fockspace import TruncatedBasis
from isonlcs.quasiprob import default_window
from isonlcs.states import canonical_build, nlcs_build

try:
    from isonlcs import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--resolution", type=int, default=201)
    args = ap.parse_args()

    basis = TruncatedBasis(200)
    cases = [
        ("wigner nlcs 10+10i", nlcs_build(10 + 10j, basis), 0.0),
        ("husimi nlcs 2+i", nlcs_build(2 + 1j, basis), -1.0),
        ("wigner canonical 3", canonical_build(3.0, basis), 0.0),
    ]
    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    print(f"{'kernel':34s} {'backend':8s} {'seconds':>9s} {'speedup':>8s} {'max diff':>9s}")
    for name, state, s in cases:
        c = state.amplitudes[: state.support()]
        w = default_window(state)
        xs = np.linspace(w[0], w[1], args.resolution)
        ys = np.linspace(w[2], w[3], args.resolution)
        z = (xs[:, None] + 1j * ys[None, :]).ravel()
        ref_t, ref = best_of(lambda: _kernels_py.sfunc_points(c, z, s), args.repeat)
        for label, mod in backends:
            t, out = best_of(lambda: mod.sfunc_points(c, z, s), args.repeat)
            diff = float(np.max(np.abs(out - ref)))
            print(f"{name + f' ({len(c)} levels)':34s} {label:8s} {t:9.4f} {ref_t / t:8.1f} {diff:9.1e}")

    state = nlcs_build(2 * np.exp(0.5j), basis)
    c = state.amplitudes[: state.support()]
    x = np.linspace(-8, 8, 2001)
    phi = np.linspace(0, 2 * np.pi, 72)
    ref_t, ref = best_of(lambda: _kernels_py.quadrature_points(c, x, phi), args.repeat)
    for label, mod in backends:
        t, out = best_of(lambda: mod.quadrature_points(c, x, phi), args.repeat)
        print(f"{'quadrature P(x,phi) 2001x72':34s} {label:8s} {t:9.4f} {ref_t / t:8.1f} {float(np.max(np.abs(out - ref))):9.1e}")


if __name__ == "__main__":
    main()
