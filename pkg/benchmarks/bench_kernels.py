"""Compare the numpy and numba array kernels on larger inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from symdyn import _kernels as K


def words_of(matrix, k, impl):
    words = np.zeros((1, 0), dtype=np.int64)
    for _ in range(k):
        words = impl["extend_sft_words"](words, matrix)
    return words


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    golden = np.array([[1, 1], [1, 0]], dtype=np.uint8)
    seq = rng.integers(0, 3, size=1_000_000).astype(np.int64)
    table = rng.integers(-3, 4, size=3 ** 4).astype(np.int64)

    cases = {
        "extend_sft_words (golden, k=22)": lambda impl: words_of(golden, 22, impl),
        "window_codes (n=1e6, d=4)": lambda impl: impl["window_codes"](seq, 4, 3),
        "potential_prefix (n=1e6, d=4)": lambda impl: impl["potential_prefix"](seq, 4, 3, table),
    }
    print(f"{'kernel':36} {'numpy [ms]':>11} {'numba [ms]':>11}  equal")
    for name, run in cases.items():
        a, b = run(K.NUMPY), run(K.NUMBA)  # the second call also compiles
        times = [min(timeit.repeat(lambda: run(impl), number=1, repeat=args.repeat)) * 1e3
                 for impl in (K.NUMPY, K.NUMBA)]
        print(f"{name:36} {times[0]:11.2f} {times[1]:11.2f}  {np.array_equal(a, b)}")


if __name__ == "__main__":
    main()
