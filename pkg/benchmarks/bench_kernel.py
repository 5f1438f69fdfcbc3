"""Time the pure-Python and compiled kernels on the same workloads.

    python benchmarks/bench_kernel.py [--repeat N]

Workloads: every composable pair of a Gamma(C) window through
``gamma_compose``, and every block permutation isomorphism of the
symmetric groupoid on at most four points through ``perm_iso``.  Results
of the two backends are compared before timing.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from pathlib import Path

from gammawald import kernel
from gammawald.errors import GammaWaldError
from gammawald.gamma import enumerate_truncated
from gammawald.specfile import build_permutative, load_fixture

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from helpers import symmetric_groupoid  # noqa: E402


def compose_workload(name: str, L: int):
    p = build_permutative(load_fixture(name))
    win = enumerate_truncated(p, L)
    pairs = []
    for A, B, C in itertools.product(win.objects, repeat=3):
        for f in win.hom(A, B):
            for g in win.hom(B, C):
                pairs.append((f.tgt, g.tgt, f.phi, f.comps, g.phi, g.comps))

    def run(k):
        t = p.tables(k.BACKEND)
        out = []
        for args in pairs:
            try:
                out.append(k.gamma_compose(t, *args))
            except GammaWaldError as exc:
                out.append(type(exc).__name__)
        return out

    return f"gamma_compose {name} L={L} ({len(pairs)} pairs)", run


def perm_workload():
    g, _ = symmetric_groupoid(4)
    cases = [
        (list(sizes), list(sigma))
        for n in range(5)
        for sizes in itertools.product(range(5), repeat=n)
        if sum(sizes) <= 4
        for sigma in itertools.permutations(range(n))
    ]

    def run(k):
        t = g.tables(k.BACKEND)
        return [k.perm_iso(t, sizes, sigma) for sizes, sigma in cases]

    return f"perm_iso Sigma<=4 ({len(cases)} cases)", run


def best_of(fn, k, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(k)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernel.compiled_available():
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    py, c = kernel.get_backend("python"), kernel.get_backend("compiled")
    workloads = [compose_workload("C2", 2), compose_workload("X1", 2), compose_workload("Z3", 2), perm_workload()]
    print(f"{'workload':44} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, fn in workloads:
        if fn(py) != fn(c):
            print(f"{label}: backends disagree")
            return 1
        tp, tc = best_of(fn, py, args.repeat), best_of(fn, c, args.repeat)
        print(f"{label:44} {tp * 1e3:8.1f}ms {tc * 1e3:8.1f}ms {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
