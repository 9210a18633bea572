"""The (⋆)_r condition on pairs of words, the slope-one segments it produces,
and finite approximations of the compact sets ``A_0`` and ``A_n``.

Coordinates follow the square sets: ``x`` comes from the column word ``v``,
``y`` from the row word ``u`` and grows downward in rendered output.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .binomials import ResidueSpec, binom_words, binom_words_mod
from .numeration import EMPTY, NumerationSystem, Word, format_word, genealogical_key


class AutomatonCapError(RuntimeError):
    """Appending zeros did not bring the automaton back to its initial state."""


def p_of(system: NumerationSystem, u: Sequence[int], v: Sequence[int]) -> int:
    """Least ``p`` with ``delta(a_0, u 0^p) = a_0 = delta(a_0, v 0^p)``."""
    if not u and not v:
        return 0
    aut = system.automaton
    su, sv = aut.run(u), aut.run(v)
    if su is None or sv is None:
        raise ValueError("both words must be accepted by the automaton")
    p = 0
    while su != aut.initial or sv != aut.initial:
        if p >= aut.state_count:
            raise AutomatonCapError(f"no return to the initial state after {p} zeros")
        su, sv = aut.step(su, 0), aut.step(sv, 0)
        p += 1
    return p


def star_check(
    system: NumerationSystem,
    u: Sequence[int],
    v: Sequence[int],
    residue: ResidueSpec = ResidueSpec(),
) -> bool:
    """Does ``(u, v)`` satisfy the (⋆)_r condition?

    ``binom(u0^p, v0^p) = r (mod q)`` and ``v 0^p a`` never occurs in ``u 0^p``
    for any letter ``a``; the empty pair qualifies exactly when ``r = 1``.
    """
    u, v = tuple(u), tuple(v)
    if not u and not v:
        return residue.r == 1
    if not v or len(u) < len(v):
        return False
    p = p_of(system, u, v)
    up, vp = u + (0,) * p, v + (0,) * p
    if binom_words_mod(up, vp, residue.q) != residue.r:
        return False
    return all(binom_words(up, vp + (a,)) == 0 for a in system.alphabet)


def words_up_to(system: NumerationSystem, maxlen: int) -> list[Word]:
    out = []
    for w in system.iter_language():
        if len(w) > maxlen:
            break
        out.append(w)
    return out


def star_pairs(
    system: NumerationSystem, maxlen: int, residue: ResidueSpec = ResidueSpec()
) -> list[tuple[Word, Word]]:
    """All (⋆)_r pairs with ``|v| <= |u| <= maxlen``, ordered by ``u`` then ``v``."""
    if maxlen < 0:
        raise ValueError("maxlen must be non-negative")
    words = words_up_to(system, maxlen)
    pairs = [
        (u, v)
        for u in words
        for v in words
        if len(v) <= len(u) and star_check(system, u, v, residue)
    ]
    pairs.sort(key=lambda uv: (genealogical_key(uv[0]), genealogical_key(uv[1])))
    return pairs


@dataclass(frozen=True)
class Segment:
    """Closed segment ``a -> b``; ``(i, j)`` records the map ``h^j c^i`` applied."""

    a: tuple[float, float]
    b: tuple[float, float]
    u: Word
    v: Word
    p: int
    i: int = 0
    j: int = 0

    def to_json(self) -> dict:
        return {
            "u": format_word(self.u, ""),
            "v": format_word(self.v, ""),
            "p": self.p,
            "ax": self.a[0],
            "ay": self.a[1],
            "bx": self.b[0],
            "by": self.b[1],
            "i": self.i,
            "j": self.j,
        }

    @property
    def length(self) -> float:
        return math.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1])


@dataclass(frozen=True)
class SegmentSet:
    segments: tuple[Segment, ...]
    maxlen: int
    iters: int = 0

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)


def segment_for(system: NumerationSystem, u: Sequence[int], v: Sequence[int]) -> Segment:
    """``S_{u,v}`` from ``A = (0.0^{|u|-|v|} v, 0.u)`` with side ``beta^{-|u|-p}``."""
    u, v = tuple(u), tuple(v)
    if not u and not v:
        return Segment((0.0, 0.0), (1.0, 1.0), EMPTY, EMPTY, 0)
    p = p_of(system, u, v)
    ax = system.base_beta_value((0,) * (len(u) - len(v)) + v)
    ay = system.base_beta_value(u)
    side = system.beta ** (-len(u) - p)
    return Segment((ax, ay), (ax + side, ay + side), u, v, p)


def segment_far_end(system: NumerationSystem, seg: Segment) -> tuple[float, float]:
    """``B`` evaluated as ``(0.0^{|u|-|v|} v 0^p d*(1), 0.u 0^p d*(1))``."""
    if not seg.u and not seg.v:
        return (1.0, 1.0)
    pad = (0,) * seg.p
    tail = system.quasi_greedy
    bx = system.base_beta_value((0,) * (len(seg.u) - len(seg.v)) + seg.v + pad, tail)
    by = system.base_beta_value(seg.u + pad, tail)
    return (bx, by)


def a0_approx(
    system: NumerationSystem, maxlen: int = 10, residue: ResidueSpec = ResidueSpec()
) -> SegmentSet:
    """Segments of every (⋆)_r pair with words of length at most ``maxlen``.

    This is a finite under-approximation: ``A_0`` is the closure of the union
    over all lengths.
    """
    segs = tuple(segment_for(system, u, v) for u, v in star_pairs(system, maxlen, residue))
    return SegmentSet(segs, maxlen, 0)


def apply_map(point: tuple[float, float], beta: float, i: int, j: int) -> tuple[float, float]:
    """``h^j(c^i(point))`` with ``c`` the homothety of ratio ``1/beta`` about the
    origin and ``h(x, y) = (x, beta y)``."""
    x, y = point
    return (x / beta**i, y * beta ** (j - i))


def an_approx(a0: SegmentSet, n: int, system: NumerationSystem) -> SegmentSet:
    """Union of ``h^j(c^i(A_0))`` over ``0 <= j <= i <= n``; no deduplication."""
    if n < 0:
        raise ValueError("n must be non-negative")
    beta = system.beta
    out = []
    for i in range(n + 1):
        for j in range(i + 1):
            for s in a0.segments:
                out.append(
                    replace(s, a=apply_map(s.a, beta, i, j), b=apply_map(s.b, beta, i, j), i=i, j=j)
                )
    return SegmentSet(tuple(out), a0.maxlen, n)


def clip_left(seg: Segment, x_min: float) -> tuple[tuple[float, float], tuple[float, float]] | None:
    """Part of ``seg`` with ``x >= x_min`` (segments here have ``a.x <= b.x``)."""
    (ax, ay), (bx, by) = seg.a, seg.b
    if bx < x_min:
        return None
    if ax >= x_min:
        return (ax, ay), (bx, by)
    t = (x_min - ax) / (bx - ax)
    return (x_min, ay + t * (by - ay)), (bx, by)


def clipped_family(
    segments: SegmentSet | Iterable[Segment], x_min: float, eps: float = 1e-12
) -> list[tuple[float, float, float, float]]:
    """Sorted endpoint tuples of the parts with ``x >= x_min``.

    Pieces shorter than ``eps`` (a segment that only touches the line
    ``x = x_min``) are dropped.
    """
    out = []
    for s in segments:
        part = clip_left(s, x_min)
        if part is None:
            continue
        (ax, ay), (bx, by) = part
        if math.hypot(bx - ax, by - ay) < eps:
            continue
        out.append((ax, ay, bx, by))
    out.sort()
    return out


def families_match(f1, f2, tol: float = 1e-9) -> bool:
    if len(f1) != len(f2):
        return False
    return all(max(abs(x - y) for x, y in zip(s, t)) <= tol for s, t in zip(f1, f2))


def segments_svg(segments: SegmentSet | Iterable[Segment], stroke_width: float = 0.002) -> str:
    """SVG 1.1 document, viewBox ``0 0 1 1``, one ``line`` per segment.

    Coordinates are written as computed: SVG's y-axis already points down,
    which is the orientation of the triangle tables.
    """
    segs = list(segments)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 1 1" '
        'width="800" height="800">',
        '<rect x="0" y="0" width="1" height="1" fill="white"/>',
        f'<g stroke="black" stroke-width="{stroke_width:g}" '
        'stroke-linecap="round">',
    ]
    for s in segs:
        out.append(
            f'<line x1="{s.a[0]:.12g}" y1="{s.a[1]:.12g}" x2="{s.b[0]:.12g}" y2="{s.b[1]:.12g}"/>'
        )
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def render_segments(segments, path, stroke_width: float = 0.002) -> Path:
    path = Path(path)
    path.write_text(segments_svg(segments, stroke_width), encoding="utf-8")
    return path


def segments_json(segments: SegmentSet | Iterable[Segment]) -> str:
    return json.dumps([s.to_json() for s in segments], indent=1) + "\n"
