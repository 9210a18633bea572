"""Pure-Python kernels.  Same signatures and results as ``_kernels.pyx``."""
from __future__ import annotations

import math

import numpy as np


def binom_block_mod(digits, lengths, parents, rows, ncols, q):
    """Rows of the triangle ``binom(w_r, w_j) mod q`` for ``j < ncols``.

    Column words must be prefix closed in the given order: ``parents[j] < j``
    is the index of ``w_j`` minus its last letter, and column 0 is the empty
    word.  ``q = 0`` means exact arithmetic (Python integers, object array).
    """
    exact = q == 0
    nrows = len(rows)
    out = np.zeros((nrows, ncols), dtype=object if exact else np.int64)
    words = [tuple(int(d) for d in digits[j, : lengths[j]]) for j in range(len(lengths))]
    last = [w[-1] if w else -1 for w in words]
    par = [int(p) for p in parents[:ncols]]
    one = 1 if exact else 1 % q
    for r, ui in enumerate(rows):
        u = words[ui]
        L = len(u)
        work = [[one] * (L + 1)]
        for j in range(1, ncols):
            parent = work[par[j]]
            a = last[j]
            vec = [0] * (L + 1)
            x = 0
            for i in range(1, L + 1):
                if u[i - 1] == a:
                    x += parent[i - 1]
                    if not exact and x >= q:
                        x -= q
                vec[i] = x
            work.append(vec)
        for j in range(ncols):
            out[r, j] = work[j][L]
    return out


def directed_hausdorff(a, b, cell):
    """``max_{p in a} min_{s in b} |p - s|`` with grid bucketing of ``b``.

    Rings of cells around each query are scanned outward; a query stops once
    its best candidate beats every unscanned ring, or once it cannot raise the
    running maximum.  When the rings would cover more cells than ``b`` has
    points, the query falls back to a linear scan.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if len(a) == 0 or len(b) == 0:
        raise ValueError("empty point cloud")
    x0 = min(a[:, 0].min(), b[:, 0].min())
    y0 = min(a[:, 1].min(), b[:, 1].min())
    x1 = max(a[:, 0].max(), b[:, 0].max())
    y1 = max(a[:, 1].max(), b[:, 1].max())
    nx = int((x1 - x0) / cell) + 1
    ny = int((y1 - y0) / cell) + 1

    buckets: dict[tuple[int, int], list[tuple[float, float]]] = {}
    for x, y in b.tolist():
        key = (min(int((x - x0) / cell), nx - 1), min(int((y - y0) / cell), ny - 1))
        buckets.setdefault(key, []).append((x, y))

    cmax2 = 0.0
    rmax = max(nx, ny)
    nb = len(b)
    for px, py in a.tolist():
        cx = min(int((px - x0) / cell), nx - 1)
        cy = min(int((py - y0) / cell), ny - 1)
        best = math.inf
        r = 0
        while True:
            for gx in range(max(cx - r, 0), min(cx + r, nx - 1) + 1):
                edge = gx == cx - r or gx == cx + r
                step = 1 if edge else 2 * r
                gy = cy - r
                while gy <= cy + r:
                    if 0 <= gy < ny:
                        pts = buckets.get((gx, gy))
                        if pts:
                            for sx, sy in pts:
                                d = (sx - px) * (sx - px) + (sy - py) * (sy - py)
                                if d < best:
                                    best = d
                    gy += step if step > 0 else 1
            bound = r * cell
            if best <= bound * bound or best <= cmax2 or r > rmax:
                break
            r += 1
            if (2 * r + 1) ** 2 > nb:
                # sparse neighbourhood: more cells than points, scan b directly
                d2 = (b[:, 0] - px) * (b[:, 0] - px) + (b[:, 1] - py) * (b[:, 1] - py)
                best = min(best, float(d2.min()))
                break
        if best > cmax2:
            cmax2 = best
    return math.sqrt(cmax2)
