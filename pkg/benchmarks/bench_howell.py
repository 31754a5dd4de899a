"""Compare the compiled and pure-Python Howell kernels.

    python benchmarks/bench_howell.py [--repeat 3]

Times (1) Howell form of random matrices shaped like the syzygy systems the
saturation builds at several truncations, and (2) the E_12 collapse with
each backend wired in.
"""
import argparse
import random
import time

from morava_powops import derive, howell
from morava_powops.rings import load_presentation


def syzygy_shaped(r, N, K, rng):
    """Stacked [images | identity] over [ideal basis | 0], as in derive._syzygy_rows."""
    q = 2 ** N
    n = r * K
    rows = []
    for i in range(n):
        img = [rng.randrange(q) if rng.random() < 0.3 else 0 for _ in range(n)]
        rows.append(img + [int(i == j) for j in range(n)])
    for _ in range(n):
        b = [rng.randrange(q) * 2 ** rng.randrange(N) % q if rng.random() < 0.3 else 0 for _ in range(n)]
        rows.append(b + [0] * n)
    return rows, 2 * n


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if howell._howell_ext is None:
        print("compiled kernel not available; only the Python backend will be timed")

    rng = random.Random(0)
    print(f"{'shape':>22} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for N, K in [(8, 8), (10, 10), (16, 16), (20, 24)]:
        rows, ncols = syzygy_shaped(3, N, K, rng)
        t_py = timed(lambda: howell.howell_form_py(rows, 2, N, ncols), args.repeat)
        if howell._howell_ext is not None:
            t_c = timed(lambda: howell._howell_ext(rows, 2, N, ncols), args.repeat)
            print(f"{len(rows):>5}x{ncols:<4} N={N:<2} K={K:<3} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:8.1f}")
        else:
            print(f"{len(rows):>5}x{ncols:<4} N={N:<2} K={K:<3} {t_py:10.4f} {'-':>10}")

    print()
    for N, K in [(8, 8), (16, 16)]:
        pres = load_presentation("height2.pres", N=N, K=K)
        results = {}
        for name, ext in (("python", None), ("cython", howell._howell_ext)):
            if name == "cython" and ext is None:
                continue
            saved = howell._howell_ext
            howell._howell_ext = ext

            def run():
                derive._syzygy_rows.cache_clear()
                return derive.saturate(pres, 12, [4])

            results[name] = timed(run, args.repeat)
            howell._howell_ext = saved
        line = "  ".join(f"{k} {v:.3f}s" for k, v in results.items())
        print(f"E_12 collapse from (4) at N={N}, K={K}: {line}")


if __name__ == "__main__":
    main()
