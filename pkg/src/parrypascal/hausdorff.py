"""Sampled Hausdorff distances between square sets and segment families."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels
from .binomials import ResidueSpec
from .geometry import SegmentSet, a0_approx, an_approx
from .numeration import NumerationSystem
from .triangle import SquareSet, u_set

HALF_DIAG = math.sqrt(2) / 2


@dataclass(frozen=True)
class PointCloud:
    """Points sampled from a compact set with lattice/arclength ``spacing``."""

    points: np.ndarray
    spacing: float
    source: str = ""

    def __post_init__(self):
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class HausdorffResult:
    distance: float
    error_bound: float

    def __float__(self) -> float:
        return self.distance


def sample_square_set(squares: SquareSet, spacing: float | None = None) -> PointCloud:
    """Lattice points covering every cell, boundaries included, shared corners once.

    Each cell side is split into ``ceil(unit / spacing)`` equal steps so the
    effective step never exceeds ``spacing``.
    """
    unit = squares.unit
    if spacing is None:
        spacing = unit
    if spacing > unit * (1 + 1e-12):
        raise ValueError(f"spacing {spacing} is coarser than the cell side {unit}")
    steps = max(1, math.ceil(unit / spacing - 1e-9))
    if not squares.cells:
        raise ValueError("empty square set")
    cells = np.array(squares.cells, dtype=np.int64)
    offs = np.arange(steps + 1)
    ox, oy = np.meshgrid(offs, offs, indexing="ij")
    ox, oy = ox.ravel(), oy.ravel()
    lattice = np.stack(
        [
            (cells[:, 0:1] * steps + ox[None, :]).ravel(),
            (cells[:, 1:2] * steps + oy[None, :]).ravel(),
        ],
        axis=1,
    )
    lattice = np.unique(lattice, axis=0)
    pts = lattice / float(squares.size * steps)
    return PointCloud(pts, unit / steps, f"U_{squares.n}")


def sample_segment_set(segments: SegmentSet | Iterable, spacing: float = 1e-3) -> PointCloud:
    """Points along each segment at equal arclength steps of at most ``spacing``."""
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    chunks = []
    for s in segments:
        length = math.hypot(s.b[0] - s.a[0], s.b[1] - s.a[1])
        steps = max(1, math.ceil(length / spacing - 1e-9))
        t = np.linspace(0.0, 1.0, steps + 1)
        chunks.append(
            np.column_stack([s.a[0] + t * (s.b[0] - s.a[0]), s.a[1] + t * (s.b[1] - s.a[1])])
        )
    if not chunks:
        raise ValueError("empty segment set")
    pts = np.concatenate(chunks)
    return PointCloud(pts, spacing, "segments")


def directed_distance(a: PointCloud, b: PointCloud, backend: str | None = None) -> float:
    cell = max(a.spacing, b.spacing)
    return kernels.directed_hausdorff(a.points, b.points, cell, backend=backend)


def hausdorff_distance(a: PointCloud, b: PointCloud, backend: str | None = None) -> HausdorffResult:
    """Symmetric Hausdorff distance of the clouds, with the sampling error bound
    ``(spacing_a + spacing_b) * sqrt(2) / 2`` relative to the underlying sets."""
    if len(a) == 0 or len(b) == 0:
        raise ValueError("empty point cloud")
    d = max(directed_distance(a, b, backend), directed_distance(b, a, backend))
    return HausdorffResult(d, (a.spacing + b.spacing) * HALF_DIAG)


def within_fattening(a: PointCloud, b: PointCloud, eps: float) -> bool:
    """Is every point of ``a`` inside the closed ``eps``-fattening of ``b``?"""
    return directed_distance(a, b) <= eps


@dataclass(frozen=True)
class ReportRow:
    n: int
    distance: float
    error_bound: float
    points_u: int
    points_a: int
    a_maxlen: int
    a_iters: int


REPORT_HEADER = ["n", "distance", "error_bound", "points_u", "points_a", "a_maxlen", "a_iters"]


def convergence_report(
    system: NumerationSystem,
    residue: ResidueSpec = ResidueSpec(),
    n_range: Iterable[int] = range(4, 10),
    a_maxlen: int = 10,
    a_iters: int = 4,
    segment_spacing: float = 1e-3,
    threads: int = 1,
) -> list[ReportRow]:
    """``d_h(U_{n,r}, A_{a_iters})`` for each ``n``, the segment family standing
    in for the limit set."""
    n_values = list(n_range)
    if not n_values:
        raise ValueError("n_range is empty")
    approx = an_approx(a0_approx(system, a_maxlen, residue), a_iters, system)
    cloud_a = sample_segment_set(approx, segment_spacing)
    rows = []
    for n in n_values:
        cloud_u = sample_square_set(u_set(system, n, residue, threads=threads))
        res = hausdorff_distance(cloud_u, cloud_a)
        rows.append(
            ReportRow(n, res.distance, res.error_bound, len(cloud_u), len(cloud_a), a_maxlen, a_iters)
        )
    return rows


def report_csv(rows: Iterable[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for r in rows:
        w.writerow(
            [r.n, f"{r.distance:.10f}", f"{r.error_bound:.10f}", r.points_u, r.points_a,
             r.a_maxlen, r.a_iters]
        )
    return buf.getvalue()
