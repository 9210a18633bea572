"""Generalized Pascal triangles ``P(i, j) = binom(rep(i), rep(j))`` and the
normalized square sets built from their residues."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .binomials import ResidueSpec
from .numeration import NumerationSystem, Word, format_word


@dataclass(frozen=True)
class TriangleBlock:
    """Top-left ``rows x cols`` corner of the triangle.

    ``modulus`` is ``None`` for exact entries (object array of Python ints).
    """

    words: tuple[Word, ...]
    entries: np.ndarray
    modulus: int | None

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "word_i", "word_j", "value"])
        for i in range(self.rows):
            for j in range(self.cols):
                w.writerow(
                    [i, j, format_word(self.words[i], ""), format_word(self.words[j], ""),
                     int(self.entries[i, j])]
                )
        return buf.getvalue()

    def to_table(self) -> str:
        """Plain-text table with the words as row and column headers."""
        head = [format_word(w) for w in self.words[: self.cols]]
        side = [format_word(w) for w in self.words[: self.rows]]
        cells = [[str(int(x)) for x in row] for row in self.entries]
        width = max(len(s) for s in head + [c for row in cells for c in row])
        lw = max(len(s) for s in side)
        lines = [" " * lw + " | " + " ".join(h.rjust(width) for h in head)]
        lines.append("-" * len(lines[0]))
        for name, row in zip(side, cells):
            lines.append(name.rjust(lw) + " | " + " ".join(c.rjust(width) for c in row))
        return "\n".join(lines) + "\n"


def triangle_block(
    system: NumerationSystem,
    rows: int,
    cols: int,
    modulus: int | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> TriangleBlock:
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be at least 1")
    if modulus is not None:
        ResidueSpec(modulus, 1)  # primality check
    words = tuple(system.enumerate_language(max(rows, cols)))
    entries = kernels.binom_block(
        words, range(rows), cols, q=modulus, threads=threads, backend=backend
    )
    return TriangleBlock(words, entries, modulus)


@dataclass(frozen=True)
class SquareSet:
    """Cells ``(col, row) = (val(v), val(u))`` with ``binom(u, v) = r mod q``
    among the first ``size = U(n)`` words.

    Geometrically each cell is the square ``((col, row) + [0,1]^2) / size``;
    the row coordinate grows downward, as in the triangle tables.
    """

    n: int
    size: int
    cells: tuple[tuple[int, int], ...]
    residue: ResidueSpec

    @property
    def unit(self) -> float:
        return 1.0 / self.size

    def __len__(self) -> int:
        return len(self.cells)

    def bitmap(self) -> np.ndarray:
        """Boolean ``size x size`` image, ``[row, col]``."""
        img = np.zeros((self.size, self.size), dtype=bool)
        if self.cells:
            c = np.array(self.cells)
            img[c[:, 1], c[:, 0]] = True
        return img


def u_set(
    system: NumerationSystem,
    n: int,
    residue: ResidueSpec = ResidueSpec(),
    threads: int = 1,
    backend: str | None = None,
) -> SquareSet:
    if n < 0:
        raise ValueError("n must be non-negative")
    size = system.u(n)
    block = triangle_block(system, size, size, residue.q, threads=threads, backend=backend)
    rows, cols = np.nonzero(block.entries == residue.r)
    cells = tuple(sorted(zip(cols.tolist(), rows.tolist())))
    return SquareSet(n, size, cells, residue)


def pbm_bytes(squares: SquareSet, scale: int = 1) -> bytes:
    """Plain PBM (P1); row 0 at the top, at most 70 characters per line."""
    if scale < 1:
        raise ValueError("scale must be at least 1")
    img = squares.bitmap()
    if scale > 1:
        img = np.kron(img, np.ones((scale, scale), dtype=bool))
    side = img.shape[0]
    per_line = 35  # "1 " * 35 stays under 70 characters
    lines = [f"P1\n{side} {side}"]
    for row in img:
        bits = ["1" if b else "0" for b in row]
        for k in range(0, len(bits), per_line):
            lines.append(" ".join(bits[k : k + per_line]))
    return ("\n".join(lines) + "\n").encode("ascii")


def render_square_set(squares: SquareSet, path, scale: int = 1) -> Path:
    path = Path(path)
    path.write_bytes(pbm_bytes(squares, scale))
    return path


def read_pbm(data: bytes) -> np.ndarray:
    """Parse a plain PBM into a boolean array (comments not supported)."""
    tokens = data.decode("ascii").split()
    if not tokens or tokens[0] != "P1":
        raise ValueError("not a plain PBM file")
    w, h = int(tokens[1]), int(tokens[2])
    bits = np.array([t == "1" for t in tokens[3:]], dtype=bool)
    if bits.size != w * h:
        raise ValueError(f"expected {w * h} pixels, found {bits.size}")
    return bits.reshape(h, w)


def square_set_svg(squares: SquareSet) -> str:
    """SVG with one ``rect`` per cell, in cell units (y downward)."""
    n = squares.size
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {n} {n}" '
        f'width="{max(n, 256)}" height="{max(n, 256)}" shape-rendering="crispEdges">',
        f'<rect x="0" y="0" width="{n}" height="{n}" fill="white"/>',
    ]
    parts += [f'<rect x="{c}" y="{r}" width="1" height="1"/>' for c, r in squares.cells]
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
