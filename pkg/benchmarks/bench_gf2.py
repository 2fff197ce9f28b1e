"""Benchmark the two GF(2) elimination kernels (numba @njit vs pure numpy).

The numba path is the default at import time; LAYERED_WHEELS_PURE_NUMPY=1
switches the package to the numpy path.  This script times both directly on
random matrices and on a realistic cutrank workload (every tree edge of a
caterpillar rank decomposition of a generated wheel).

Usage: python benchmarks/bench_gf2.py
"""

from __future__ import annotations

import time

from layered_wheels import caterpillar_decomposition, generate_ehf
from layered_wheels._gf2 import _HAVE_NUMBA, _rank_words_numpy, pack_rows

if _HAVE_NUMBA:
    from layered_wheels._gf2 import _rank_words_jit
else:  # pragma: no cover
    _rank_words_jit = None


def _time(fn, reps=5):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_random(rng, n, density=0.5):
    rows = [
        sum(1 << j for j in range(n) if rng.random() < density) for _ in range(n)
    ]
    words = pack_rows(rows, n)
    results = {}
    results["numpy"] = (_time(lambda: _rank_words_numpy(words, n)), _rank_words_numpy(words, n))
    if _rank_words_jit is not None:
        jit = lambda: int(_rank_words_jit(words.copy(), n))
        jit()  # compile outside the timer
        results["numba"] = (_time(jit), jit())
    return results


def bench_cutrank_workload():
    wheel = generate_ehf(2, 4)
    g = wheel.graph
    rd = caterpillar_decomposition(g)
    sides = rd.tree.leaf_sides()
    leaf_to_vertex = {leaf: v for v, leaf in rd.leaf_map.items()}
    jobs = []
    for side in sides.values():
        xs = sorted(leaf_to_vertex[leaf] for leaf in side)
        inx = set(xs)
        ymask = sum(1 << v for v in range(g.n) if v not in inx)
        jobs.append(pack_rows([g.mask(u) & ymask for u in xs], g.n))

    def run(kernel):
        return [kernel(w.copy(), g.n) for w in jobs]

    out = {"numpy": _time(lambda: run(_rank_words_numpy), reps=3)}
    if _rank_words_jit is not None:
        run(_rank_words_jit)
        out["numba"] = _time(lambda: run(_rank_words_jit), reps=3)
    return len(jobs), g.n, out


def main():
    import random

    rng = random.Random(1)
    print(f"numba available: {_HAVE_NUMBA}")
    print(f"{'size':>6} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for n in (64, 128, 256, 512, 1024):
        res = bench_random(rng, n)
        t_np, r_np = res["numpy"]
        if "numba" in res:
            t_nb, r_nb = res["numba"]
            assert r_np == r_nb, "kernels disagree"
            print(f"{n:>6} {t_np * 1e3:>10.2f}ms {t_nb * 1e3:>10.2f}ms {t_np / t_nb:>8.1f}x")
        else:
            print(f"{n:>6} {t_np * 1e3:>10.2f}ms {'-':>12} {'-':>9}")
    jobs, n, out = bench_cutrank_workload()
    line = f"cutrank workload ({jobs} cuts of an n={n} wheel): numpy {out['numpy'] * 1e3:.1f}ms"
    if "numba" in out:
        line += f", numba {out['numba'] * 1e3:.1f}ms ({out['numpy'] / out['numba']:.1f}x)"
    print(line)


if __name__ == "__main__":
    main()
