"""Integer array kernels for the numeric inner loops.

Two implementations of every kernel live here: a numba ``@njit`` version and
a vectorized numpy version.  The dispatch table at the bottom picks numba
unless ``SYMDYN_NUMBA=0`` is set in the environment or numba is missing.
Both implementations must return identical arrays; ``tests/test_kernels.py``
holds them to that.
"""

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


# --------------------------------------------------------------------------
# numpy implementations
# --------------------------------------------------------------------------

def _extend_sft_words_np(words, matrix):
    m, k = words.shape
    n = matrix.shape[0]
    if k == 0:
        return np.arange(n, dtype=np.int64).reshape(n, 1)
    last = words[:, -1]
    allowed = matrix[last] != 0  # (m, n)
    rows, cols = np.nonzero(allowed)  # row-major, so lexicographic order survives
    out = np.empty((rows.size, k + 1), dtype=np.int64)
    out[:, :k] = words[rows]
    out[:, k] = cols
    return out


def _window_codes_np(seq, d, base):
    count = seq.size - d + 1
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.zeros(count, dtype=np.int64)
    for j in range(d):
        codes = codes * base + seq[j:j + count]
    return codes


def _potential_prefix_np(seq, d, base, table):
    codes = _window_codes_np(seq, d, base)
    out = np.zeros(codes.size + 1, dtype=np.int64)
    np.cumsum(table[codes], out=out[1:])
    return out


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

def _extend_sft_words_py(words, matrix):
    m, k = words.shape
    n = matrix.shape[0]
    if k == 0:
        out = np.empty((n, 1), dtype=np.int64)
        for a in range(n):
            out[a, 0] = a
        return out
    total = 0
    for r in range(m):
        for a in range(n):
            if matrix[words[r, k - 1], a] != 0:
                total += 1
    out = np.empty((total, k + 1), dtype=np.int64)
    pos = 0
    for r in range(m):
        for a in range(n):
            if matrix[words[r, k - 1], a] != 0:
                for j in range(k):
                    out[pos, j] = words[r, j]
                out[pos, k] = a
                pos += 1
    return out


def _window_codes_py(seq, d, base):
    count = seq.size - d + 1
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    codes = np.empty(count, dtype=np.int64)
    for i in range(count):
        c = 0
        for j in range(d):
            c = c * base + seq[i + j]
        codes[i] = c
    return codes


def _potential_prefix_py(seq, d, base, table):
    count = seq.size - d + 1
    if count < 0:
        count = 0
    out = np.zeros(count + 1, dtype=np.int64)
    acc = 0
    for i in range(count):
        c = 0
        for j in range(d):
            c = c * base + seq[i + j]
        acc += table[c]
        out[i + 1] = acc
    return out


if numba is not None:
    _extend_sft_words_nb = numba.njit(cache=True)(_extend_sft_words_py)
    _window_codes_nb = numba.njit(cache=True)(_window_codes_py)
    _potential_prefix_nb = numba.njit(cache=True)(_potential_prefix_py)
else:  # pragma: no cover
    _extend_sft_words_nb = _extend_sft_words_py
    _window_codes_nb = _window_codes_py
    _potential_prefix_nb = _potential_prefix_py


NUMPY = {
    "extend_sft_words": _extend_sft_words_np,
    "window_codes": _window_codes_np,
    "potential_prefix": _potential_prefix_np,
}
NUMBA = {
    "extend_sft_words": _extend_sft_words_nb,
    "window_codes": _window_codes_nb,
    "potential_prefix": _potential_prefix_nb,
}

USE_NUMBA = numba is not None and os.environ.get("SYMDYN_NUMBA", "1") != "0"
BACKEND = "numba" if USE_NUMBA else "numpy"
_impl = NUMBA if USE_NUMBA else NUMPY


def extend_sft_words(words, matrix):
    """All one-letter right extensions of ``words`` allowed by ``matrix``.

    ``words`` is an (m, k) int64 array in lexicographic order; the result is
    again lexicographically sorted.
    """
    return _impl["extend_sft_words"](np.ascontiguousarray(words, dtype=np.int64),
                                     np.ascontiguousarray(matrix, dtype=np.uint8))


def window_codes(seq, d, base):
    """Base-``base`` integer code of every length-``d`` window of ``seq``."""
    return _impl["window_codes"](np.ascontiguousarray(seq, dtype=np.int64), int(d), int(base))


def potential_prefix(seq, d, base, table):
    """Prefix sums ``P`` with ``P[n] = sum(table[code(seq[i:i+d])] for i < n)``."""
    return _impl["potential_prefix"](np.ascontiguousarray(seq, dtype=np.int64), int(d), int(base),
                                     np.ascontiguousarray(table, dtype=np.int64))
