"""Property suites behind ``parrypascal verify``.

Every check returns a :class:`Check`; ``run_all`` strings them together for
one numeration system.  Scales are kept small enough for the whole run to
finish in well under a minute on one core.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import geometry as geo
from . import hausdorff as hd
from .binomials import (
    ResidueSpec,
    binom_words,
    binom_words_mod,
    brute_force_count,
    lucas_binom_mod,
)
from .numeration import CustomLinearSystem, NumerationSystem, format_word, parse_word
from .triangle import pbm_bytes, read_pbm, triangle_block, u_set


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}{extra}  {self.seconds:.2f}s"


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), detail, time.perf_counter() - t0)


def trailing_zero_runs(words) -> int:
    best = run = 0
    for w in words:
        if w and w[-1] == 0:
            run += 1
            best = max(best, run)
        else:
            run = 0
    return best


def padded_words(system: NumerationSystem, maxlen: int) -> list[tuple[int, ...]]:
    """Every word of length <= ``maxlen`` accepted from the initial state,
    leading zeros allowed (the set ``0*L`` cut at ``maxlen``)."""
    out = [()]
    frontier = [()]
    for _ in range(maxlen):
        frontier = [
            w + (a,)
            for w in frontier
            for a in system.alphabet
            if system.is_in_language(w + (a,), allow_leading_zeros=True)
        ]
        out += frontier
    return out


# -- numeration -------------------------------------------------------------


def numeration_checks(system: NumerationSystem) -> Iterator[Check]:
    def round_trip():
        reps = [system.rep(n) for n in range(1000)]
        if any(system.val(w) != n for n, w in enumerate(reps)):
            return False, "val(rep(n)) != n"
        keys = [(len(w), w) for w in reps]
        return all(a < b for a, b in zip(keys, keys[1:])), "n < 1000"

    def bertrand():
        words = system.enumerate_language(500)
        bad = [
            w for w in words[1:]
            if system.is_in_language(w) != system.is_in_language(w + (0,))
        ]
        return not bad, f"first counterexample {format_word(bad[0])}" if bad else "500 words"

    def automaton_greedy():
        if not all(system.is_in_language(system.rep(n)) for n in range(1000)):
            return False, "rep(n) rejected by the automaton"
        seen = 0
        for w in system.iter_language():
            if len(w) > 10 or seen >= 20000:
                break
            if system.rep(system.val(w)) != w:
                return False, f"{format_word(w)} is not greedy"
            seen += 1
        return True, f"{seen} accepted words"

    def zero_runs():
        # The bound C_beta + 1 is attained for some systems (golden ratio,
        # 1001) but not all: in 2101 every length has two or more words,
        # which caps runs at 2 while C_beta + 1 = 3.
        run = trailing_zero_runs(system.enumerate_language(500))
        return run <= system.c_beta + 1, f"longest run {run}, bound {system.c_beta + 1}"

    def numeric():
        err = abs(system.quasi_greedy.evaluate(system.beta) - 1.0)
        return err <= 10 * system.tol, f"|0.d* - 1| = {err:.2e}"

    yield _timed("numeration: round trip", round_trip)
    yield _timed("numeration: Bertrand property", bertrand)
    yield _timed("numeration: automaton agrees with greedy", automaton_greedy)
    yield _timed("numeration: trailing-zero runs", zero_runs)
    yield _timed("numeration: beta solves the expansion", numeric)


def custom_system_checks() -> Iterator[Check]:
    def fprime():
        f = CustomLinearSystem((1, 1), (1, 3))
        ok = f.is_normal((2,)) and not f.is_normal((2, 0)) and f.rep(6) == (1, 0, 2)
        return ok, "rep(6) = 102, 2 normal, 20 not normal"

    yield _timed("numeration: non-Bertrand custom system", fprime)


# -- binomials --------------------------------------------------------------


def binomial_checks(system: NumerationSystem, oracle_len: int = 5) -> Iterator[Check]:
    def oracle():
        words = [w for n in range(oracle_len + 1) for w in itertools.product(range(3), repeat=n)]
        count = 0
        for u in words:
            for v in words:
                if len(v) <= len(u):
                    if binom_words(u, v) != brute_force_count(u, v):
                        return False, f"mismatch at {u}, {v}"
                    count += 1
        return True, f"{count} ternary pairs, |u| <= {oracle_len}"

    def zero_block():
        words = geo.words_up_to(system, 5)
        for u in words[1:]:
            for v in words:
                for k in range(5):
                    lhs = binom_words(u + (0,) * k, v + (0,) * k)
                    rhs = sum(math.comb(k, j) * binom_words(u, v + (0,) * j) for j in range(k + 1))
                    if lhs != rhs:
                        return False, f"fails at {u}, {v}, k={k}"
        return True, f"{len(words)} words, k <= 4"

    def unary():
        ok = all(
            binom_words((1,) * m, (1,) * n) == math.comb(m, n) for m in range(13) for n in range(13)
        )
        return ok, "m <= 12"

    def lucas():
        ok = all(
            lucas_binom_mod(m, n, p) == math.comb(m, n) % p
            for p in (2, 3, 5) for m in range(64) for n in range(64)
        )
        return ok, "m, n < 64"

    def modular():
        words = geo.words_up_to(system, 5)[:200]
        ok = all(
            binom_words_mod(u, v, q) == binom_words(u, v) % q
            for q in (2, 3, 5) for u in words for v in words
        )
        return ok, f"{len(words)} words, q in 2,3,5"

    yield _timed("binomials: brute-force oracle", oracle)
    yield _timed("binomials: zero-block identity", zero_block)
    yield _timed("binomials: unary words", unary)
    yield _timed("binomials: Lucas theorem", lucas)
    yield _timed("binomials: modular agreement", modular)


# -- triangle ---------------------------------------------------------------


def triangle_checks(system: NumerationSystem, residue: ResidueSpec, threads: int = 1) -> Iterator[Check]:
    size = 60

    def diagonal_and_column():
        block = triangle_block(system, size, size)
        e = block.entries
        return all(e[i, i] == 1 and e[i, 0] == 1 for i in range(size)), f"{size}x{size}"

    def partition():
        n = _level_below(system, 200)
        q = residue.q
        sets = [set(u_set(system, n, ResidueSpec(q, r), threads).cells) for r in range(1, q)]
        block = triangle_block(system, system.u(n), system.u(n), q, threads=threads)
        zero = {(int(c), int(r)) for r, c in zip(*np.nonzero(block.entries == 0))}
        total = sum(map(len, sets)) + len(zero)
        union = set().union(zero, *sets)
        return total == len(union) == system.u(n) ** 2, f"n={n}, q={q}"

    def classical_copy():
        spec = system.spec
        if spec.preperiod or spec.period != (spec.t1,):
            return True, "not an integer base; skipped"
        words = system.enumerate_language(400)
        index = {w: i for i, w in enumerate(words)}
        block = triangle_block(system, len(words), len(words))
        for a in range(1, spec.t1 + 1):
            powers = [(a,) * m for m in range(12) if (a,) * m in index]
            for m, um in enumerate(powers):
                for n, vn in enumerate(powers):
                    if block.entries[index[um], index[vn]] != math.comb(m, n):
                        return False, f"a={a}, m={m}, n={n}"
        return True, f"base {spec.t1 + 1}"

    def bitmap_count():
        n = _level_below(system, 120)
        squares = u_set(system, n, residue, threads)
        ok = all(
            int(read_pbm(pbm_bytes(squares, s)).sum()) == len(squares) * s * s for s in (1, 3)
        )
        return ok, f"n={n}, {len(squares)} cells"

    yield _timed("triangle: diagonal and first column", diagonal_and_column)
    yield _timed("triangle: residue classes partition the grid", partition)
    yield _timed("triangle: classical Pascal copies", classical_copy)
    yield _timed("triangle: bitmap count", bitmap_count)


def _level_below(system: NumerationSystem, cap: int) -> int:
    n = 0
    while system.u(n + 1) <= cap:
        n += 1
    return n


# -- star geometry ----------------------------------------------------------


def star_checks(system: NumerationSystem, residue: ResidueSpec, maxlen: int = 6) -> Iterator[Check]:
    pairs = geo.star_pairs(system, maxlen, residue)
    nonempty = [(u, v) for u, v in pairs if u]

    def diagonal():
        if residue.r != 1:
            return True, "r != 1; skipped"
        words = geo.words_up_to(system, maxlen)
        return all(geo.star_check(system, w, w, residue) for w in words), f"{len(words)} words"

    def residue_class():
        ok = all(binom_words_mod(u, v, residue.q) == residue.r for u, v in nonempty)
        return ok, f"{len(pairs)} pairs"

    def closure():
        count = 0
        for u, v in nonempty:
            pad = (0,) * geo.p_of(system, u, v)
            for a in system.alphabet:
                u2, v2 = u + pad + (a,), v + pad + (a,)
                if not (system.is_in_language(u2) and system.is_in_language(v2)):
                    continue
                if not geo.star_check(system, u2, v2, residue):
                    return False, f"({format_word(u2)}, {format_word(v2)})"
                count += 1
        return True, f"{count} extensions"

    def propagation():
        tails = padded_words(system, 4)
        for u, v in nonempty:
            pad = (0,) * geo.p_of(system, u, v)
            for w in tails:
                if binom_words_mod(u + pad + w, v + pad + w, residue.q) != residue.r:
                    return False, f"({format_word(u)}, {format_word(v)}) with w={format_word(w)}"
        return True, f"{len(nonempty)} pairs x {len(tails)} tails"

    def endpoint():
        long_pairs = [(u, v) for u, v in nonempty if len(v) >= 2]
        if not long_pairs:
            return True, "no pair with |v| >= 2; skipped"
        u, v = long_pairs[0]
        if system.spec.digits == (1, 1) and (1, 0, 1) in {p[0] for p in nonempty}:
            u, v = (1, 0, 1), (1, 0)
        p = geo.p_of(system, u, v)
        seg = geo.segment_for(system, u, v)
        n = 20
        denom = system.u(len(u) + p + n)
        x = system.val(v + (0,) * (p + n)) / denom
        y = system.val(u + (0,) * (p + n)) / denom
        err = math.hypot(x - seg.a[0], y - seg.a[1])
        return err < 0.01, f"({format_word(u)}, {format_word(v)}), error {err:.2e}"

    def segment_shape():
        a0 = geo.a0_approx(system, min(maxlen, 6), residue)
        for s in a0:
            side = system.beta ** (-len(s.u) - s.p)
            if abs(s.b[0] - s.a[0] - side) > 1e-9 or abs(s.b[1] - s.a[1] - side) > 1e-9:
                return False, f"side of ({format_word(s.u)}, {format_word(s.v)})"
        for s in geo.an_approx(a0, 3, system):
            dx = s.b[0] - s.a[0]
            if dx > 1e-12 and abs((s.b[1] - s.a[1]) / dx - system.beta ** s.j) > 1e-9:
                return False, f"slope at i={s.i}, j={s.j}"
        return True, f"{len(a0)} segments"

    def stabilization():
        a0 = geo.a0_approx(system, min(maxlen, 6), residue)
        fams = {n: geo.an_approx(a0, n, system) for n in range(5)}
        for m in range(4):
            x_min = system.beta ** -(m + 1)
            ref = geo.clipped_family(fams[m], x_min)
            for n in range(m + 1, 5):
                if not geo.families_match(ref, geo.clipped_family(fams[n], x_min)):
                    return False, f"m={m}, n={n}"
        return True, "m < n <= 4"

    yield _timed("star: every (u, u) passes", diagonal)
    yield _timed("star: passing pairs have the residue", residue_class)
    yield _timed("star: closure under letter extension", closure)
    yield _timed("star: propagation along common suffixes", propagation)
    if system.spec.digits == (1, 1):
        yield _timed(
            "star: reference pairs",
            lambda: (
                geo.star_check(system, parse_word("101"), parse_word("10"))
                and not geo.star_check(system, parse_word("1010"), parse_word("101")),
                "(101,10) passes, (1010,101) fails",
            ),
        )
    yield _timed("star: endpoint convergence", endpoint)
    yield _timed("star: segment sides and slopes", segment_shape)
    yield _timed("star: stabilization of the iterates", stabilization)


# -- hausdorff --------------------------------------------------------------


def hausdorff_checks(system: NumerationSystem, residue: ResidueSpec) -> Iterator[Check]:
    n = _level_below(system, 60)
    lo = max(n - 2, 0)
    clouds = [hd.sample_square_set(u_set(system, k, residue)) for k in (lo, n - 1 if n else 0, n)]
    segs = hd.sample_segment_set(
        geo.an_approx(geo.a0_approx(system, 5, residue), 2, system), 5e-3
    )

    def symmetry():
        a, b = clouds[0], segs
        d1, d2 = hd.hausdorff_distance(a, b).distance, hd.hausdorff_distance(b, a).distance
        return d1 == d2, f"{d1:.6f}"

    def refinement():
        squares = u_set(system, n, residue)
        coarse = hd.hausdorff_distance(hd.sample_square_set(squares), segs)
        fine = hd.hausdorff_distance(hd.sample_square_set(squares, squares.unit / 2), segs)
        ok = fine.distance <= coarse.distance + coarse.error_bound
        return ok, f"{coarse.distance:.5f} -> {fine.distance:.5f}"

    def triangle_ineq():
        pts = clouds + [segs]
        d = {
            (i, j): hd.hausdorff_distance(pts[i], pts[j]).distance
            for i in range(len(pts)) for j in range(len(pts))
        }
        ok = all(
            d[i, k] <= d[i, j] + d[j, k] + 1e-12
            for i in range(len(pts)) for j in range(len(pts)) for k in range(len(pts))
        )
        return ok, f"{len(pts)} clouds"

    def fattening():
        a, b = clouds[-1], segs
        res = hd.hausdorff_distance(a, b)
        eps = res.distance + res.error_bound
        inside = hd.within_fattening(a, b, eps) and hd.within_fattening(b, a, eps)
        tight = hd.within_fattening(a, b, res.distance) and hd.within_fattening(b, a, res.distance)
        below = hd.within_fattening(a, b, res.distance * 0.999) and hd.within_fattening(
            b, a, res.distance * 0.999
        )
        return inside and tight and not below, f"eps = {eps:.5f}"

    yield _timed("hausdorff: symmetry", symmetry)
    yield _timed("hausdorff: refinement", refinement)
    yield _timed("hausdorff: triangle inequality", triangle_ineq)
    yield _timed("hausdorff: fattening characterization", fattening)


def run_all(
    system: NumerationSystem,
    residue: ResidueSpec = ResidueSpec(),
    maxlen: int = 6,
    threads: int = 1,
) -> list[Check]:
    checks: list[Check] = []
    for group in (
        numeration_checks(system),
        custom_system_checks(),
        binomial_checks(system),
        triangle_checks(system, residue, threads),
        star_checks(system, residue, maxlen),
        hausdorff_checks(system, residue),
    ):
        checks.extend(group)
    return checks
