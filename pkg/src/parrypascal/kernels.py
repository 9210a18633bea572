"""Kernel selection: the compiled extension when it imports, else pure Python.

``BACKEND`` names the active implementation.  Exact (non-modular) triangle
entries always go through the pure kernel since they outgrow 64 bits.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from . import _pure

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def _impl(backend: str | None):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    if backend == "python":
        return _pure
    raise ValueError(f"unknown backend {backend!r}")


def encode_words(words: Sequence[Sequence[int]]):
    """Pack a prefix-closed word list into ``(digits, lengths, parents)`` arrays."""
    n = len(words)
    lmax = max((len(w) for w in words), default=0)
    digits = np.zeros((n, max(lmax, 1)), dtype=np.int64)
    lengths = np.zeros(n, dtype=np.int64)
    parents = np.full(n, -1, dtype=np.int64)
    index = {tuple(w): i for i, w in enumerate(words)}
    for i, w in enumerate(words):
        w = tuple(w)
        lengths[i] = len(w)
        digits[i, : len(w)] = w
        if i == 0 and w:
            raise ValueError("the empty word must come first")
        if w:
            p = index.get(w[:-1])
            if p is None or p >= i:
                raise ValueError(f"word list is not prefix closed in order at {w}")
            parents[i] = p
        elif i != 0:
            raise ValueError("the empty word must come first")
    return digits, lengths, parents


def binom_block(
    words: Sequence[Sequence[int]],
    rows: Sequence[int],
    ncols: int,
    q: int | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """``out[r, j] = binom(words[rows[r]], words[j])`` (mod ``q`` when given).

    Rows are split into contiguous chunks across ``threads`` workers and
    reassembled in order, so the result does not depend on the thread count.
    """
    digits, lengths, parents = encode_words(words)
    rows_arr = np.ascontiguousarray(rows, dtype=np.int64)
    impl = _pure if q is None else _impl(backend)
    qq = 0 if q is None else int(q)
    if threads <= 1 or len(rows_arr) < 2:
        return impl.binom_block_mod(digits, lengths, parents, rows_arr, ncols, qq)
    chunks = [c for c in np.array_split(rows_arr, threads) if len(c)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda c: impl.binom_block_mod(
                    digits, lengths, parents, np.ascontiguousarray(c), ncols, qq
                ),
                chunks,
            )
        )
    return np.concatenate(parts, axis=0)


def directed_hausdorff(a, b, cell: float, backend: str | None = None) -> float:
    return _impl(backend).directed_hausdorff(a, b, float(cell))
