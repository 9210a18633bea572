# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.  Mirrors ``_pure.py``; see there for the contracts."""
import numpy as np

from libc.math cimport sqrt, INFINITY


def binom_block_mod(const long long[:, ::1] digits, const long long[::1] lengths,
                    const long long[::1] parents, const long long[::1] rows,
                    Py_ssize_t ncols, long long q):
    if q <= 0:
        raise ValueError("compiled kernel needs a modulus; use the pure kernel for exact values")
    cdef Py_ssize_t nrows = rows.shape[0]
    cdef Py_ssize_t lmax = digits.shape[1]
    out_arr = np.zeros((nrows, ncols), dtype=np.int64)
    work_arr = np.empty((max(ncols, 1), lmax + 1), dtype=np.int64)
    cdef long long[:, ::1] out = out_arr
    cdef long long[:, ::1] work = work_arr
    cdef Py_ssize_t r, j, i, ui, L, p
    cdef long long a, x, one = 1 % q
    with nogil:
        for r in range(nrows):
            ui = rows[r]
            L = lengths[ui]
            for i in range(L + 1):
                work[0, i] = one
            if ncols > 0:
                out[r, 0] = one
            for j in range(1, ncols):
                p = parents[j]
                a = digits[j, lengths[j] - 1]
                x = 0
                work[j, 0] = 0
                for i in range(1, L + 1):
                    if digits[ui, i - 1] == a:
                        x = x + work[p, i - 1]
                        if x >= q:
                            x = x - q
                    work[j, i] = x
                out[r, j] = x
    return out_arr


def directed_hausdorff(a_in, b_in, double cell):
    a_np = np.ascontiguousarray(a_in, dtype=np.float64)
    b_np = np.ascontiguousarray(b_in, dtype=np.float64)
    if a_np.shape[0] == 0 or b_np.shape[0] == 0:
        raise ValueError("empty point cloud")
    cdef double x0 = min(a_np[:, 0].min(), b_np[:, 0].min())
    cdef double y0 = min(a_np[:, 1].min(), b_np[:, 1].min())
    cdef double x1 = max(a_np[:, 0].max(), b_np[:, 0].max())
    cdef double y1 = max(a_np[:, 1].max(), b_np[:, 1].max())
    cdef Py_ssize_t nx = <Py_ssize_t>((x1 - x0) / cell) + 1
    cdef Py_ssize_t ny = <Py_ssize_t>((y1 - y0) / cell) + 1

    # bucket b by cell id (CSR layout)
    gx_b = np.minimum(((b_np[:, 0] - x0) / cell).astype(np.int64), nx - 1)
    gy_b = np.minimum(((b_np[:, 1] - y0) / cell).astype(np.int64), ny - 1)
    cid = gx_b * ny + gy_b
    order = np.argsort(cid, kind="stable")
    sorted_pts = np.ascontiguousarray(b_np[order])
    counts = np.bincount(cid, minlength=nx * ny)
    starts_np = np.zeros(nx * ny + 1, dtype=np.int64)
    np.cumsum(counts, out=starts_np[1:])

    cdef const double[:, ::1] a = a_np
    cdef const double[:, ::1] s = sorted_pts
    cdef const long long[::1] starts = starts_np
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t nb = s.shape[0]
    cdef Py_ssize_t rmax = nx if nx > ny else ny
    cdef Py_ssize_t k, cx, cy, r, gx, gy, step, c, t
    cdef double px, py, best, d, dx, dy, bound, cmax2 = 0.0
    with nogil:
        for k in range(n):
            px = a[k, 0]
            py = a[k, 1]
            cx = <Py_ssize_t>((px - x0) / cell)
            if cx > nx - 1:
                cx = nx - 1
            cy = <Py_ssize_t>((py - y0) / cell)
            if cy > ny - 1:
                cy = ny - 1
            best = INFINITY
            r = 0
            while True:
                gx = cx - r if cx - r > 0 else 0
                while gx <= cx + r and gx < nx:
                    if gx == cx - r or gx == cx + r:
                        step = 1
                    else:
                        step = 2 * r
                    gy = cy - r
                    while gy <= cy + r:
                        if gy >= 0 and gy < ny:
                            c = gx * ny + gy
                            for t in range(starts[c], starts[c + 1]):
                                dx = s[t, 0] - px
                                dy = s[t, 1] - py
                                d = dx * dx + dy * dy
                                if d < best:
                                    best = d
                        gy = gy + step
                    gx = gx + 1
                bound = r * cell
                if best <= bound * bound or best <= cmax2 or r > rmax:
                    break
                r = r + 1
                if (2 * r + 1) * (2 * r + 1) > nb:
                    for t in range(nb):
                        dx = s[t, 0] - px
                        dy = s[t, 1] - py
                        d = dx * dx + dy * dy
                        if d < best:
                            best = d
                    break
            if best > cmax2:
                cmax2 = best
    return sqrt(cmax2)
