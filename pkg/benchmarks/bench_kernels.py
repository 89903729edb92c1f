"""Compare the compiled and pure-Python coefficient kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints per-kernel timings on machine-sized integers, large integers and
fractions, then an end-to-end timing of the acceptance workload under each
backend.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction
from pathlib import Path

from torsion_lab._kernels import compiled, pure

ROOT = Path(__file__).resolve().parent.parent


def datasets(rng):
    small = [rng.randint(-9, 9) for _ in range(400)]
    big = [rng.randint(-(2**80), 2**80) for _ in range(150)]
    frac = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(120)]
    unit = [1] + [rng.randint(-3, 3) for _ in range(30)]
    return {
        "convolve small ints": ("convolve", (small, small)),
        "convolve big ints": ("convolve", (big, big)),
        "convolve fractions": ("convolve", (frac, frac)),
        "convolve_trunc small ints": ("convolve_trunc", (small, small, 300)),
        "series_div small ints": ("series_div", ([1], unit, 400)),
        "divexact small ints": ("divexact", (pure.convolve(small[:60], unit), unit)),
    }


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=3, repeat=repeat)) / 3


def end_to_end(pure_backend):
    env = dict(os.environ)
    if pure_backend:
        env["TORSION_LAB_PURE"] = "1"
    else:
        env.pop("TORSION_LAB_PURE", None)
    code = (
        "import time, pytest; s = time.perf_counter(); "
        f"pytest.main([{str(ROOT / 'tests' / 'test_acceptance.py')!r}, '-q', '-p', 'no:cacheprovider']); "
        "print('ELAPSED', time.perf_counter() - s)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, cwd=ROOT).stdout
    return next(float(line.split()[1]) for line in out.splitlines() if line.startswith("ELAPSED"))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if compiled is None:
        sys.exit("compiled kernels are not built; run `pip install --no-build-isolation -e .` first")
    rng = random.Random(0)
    print(f"{'kernel':28s} {'python (ms)':>12s} {'cython (ms)':>12s} {'speedup':>8s}")
    for label, (name, data) in datasets(rng).items():
        tp = bench(getattr(pure, name), data, args.repeat)
        tc = bench(getattr(compiled, name), data, args.repeat)
        assert getattr(pure, name)(*data) == getattr(compiled, name)(*data)
        print(f"{label:28s} {tp * 1e3:12.3f} {tc * 1e3:12.3f} {tp / tc:7.1f}x")
    if not args.skip_end_to_end:
        tp, tc = end_to_end(True), end_to_end(False)
        print(f"{'acceptance suite':28s} {tp * 1e3:12.0f} {tc * 1e3:12.0f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
