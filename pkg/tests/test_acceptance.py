"""Acceptance criteria, one test each.

Every test prints a single ``[ACCEPT k] PASS|FAIL`` line with its runtime and
the runtime limit, then asserts.  Tolerances are the ones stated per
criterion: exact equality unless a float tolerance is named.
"""
import math
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager

import numpy as np

from parrypascal import geometry as geo
from parrypascal import hausdorff as hd
from parrypascal.binomials import (
    ResidueSpec,
    binom_words,
    binom_words_mod,
    brute_force_count,
    lucas_binom_mod,
)
from parrypascal.cli import main
from parrypascal.numeration import CustomLinearSystem, NumerationSystem, format_word, parse_word
from parrypascal.triangle import read_pbm, triangle_block, u_set
from parrypascal.verification import padded_words, trailing_zero_runs

from .test_triangle import BINARY_8, GOLDEN_8


@contextmanager
def criterion(capsys, number, title, limit):
    """Time the body; print one PASS/FAIL line; fail on overtime too."""
    failures = []
    t0 = time.perf_counter()
    try:
        yield failures
    except AssertionError as exc:
        failures.append(str(exc).splitlines()[0] if str(exc) else "assertion failed")
    elapsed = time.perf_counter() - t0
    if elapsed >= limit:
        failures.append(f"runtime {elapsed:.2f}s exceeds {limit}s")
    status = "FAIL" if failures else "PASS"
    with capsys.disabled():
        note = f" -- {'; '.join(failures)}" if failures else ""
        print(f"\n[ACCEPT {number}] {status} {title} ({elapsed:.2f}s, limit {limit}s){note}")
    assert not failures, failures


def cli_output(capsysbinary, *argv):
    assert main(list(argv)) == 0
    return capsysbinary.readouterr().out


def parse_table(text):
    rows = []
    for line in text.splitlines()[2:]:
        _, cells = line.split("|")
        rows.append([int(x) for x in cells.split()])
    return rows


def test_1_table_reproduction(capsysbinary):
    with criterion(capsysbinary, 1, "Pascal-like tables for the golden ratio and base 2", 1.0):
        golden = cli_output(capsysbinary, "triangle", "--dbeta", "1,1", "--rows", "8", "--cols", "8")
        binary = cli_output(capsysbinary, "triangle", "--dbeta", "1;1", "--rows", "8", "--cols", "8")
        assert parse_table(golden.decode()) == GOLDEN_8, "golden-ratio table differs"
        assert parse_table(binary.decode()) == BINARY_8, "base-2 table differs"


def test_2_numeration_examples(capsys):
    with criterion(capsys, 2, "U sequence, p(101,21), the 1001 system", 1.0):
        phi = NumerationSystem.from_string("1,1")
        beta1 = NumerationSystem.from_string("2,1,0,1")
        s1001 = NumerationSystem.from_string("1,0,0,1")
        assert phi.u_sequence(9) == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
        assert geo.p_of(beta1, parse_word("101"), parse_word("21")) == 2
        assert s1001.c_beta == 3
        first = [format_word(w) for w in s1001.enumerate_language(7)]
        assert first == ["ε", "1", "10", "100", "1000", "10000", "10001"], first
        assert trailing_zero_runs(s1001.enumerate_language(200)) == 4


def test_3_bertrand_checks(capsys):
    with criterion(capsys, 3, "Bertrand property and the non-Bertrand counterexample", 2.0):
        for text in ("1,1", "2;1", "2,1,0,1", "1,0,0,1"):
            s = NumerationSystem.from_string(text)
            for w in s.enumerate_language(500)[1:]:
                assert s.is_in_language(w) == s.is_in_language(w + (0,)), (text, w)
        f = CustomLinearSystem((1, 1), (1, 3))
        assert format_word(f.rep(6)) == "102"
        assert f.is_normal((2,)) and not f.is_normal((2, 0))


def test_4_binomial_oracles(capsys):
    with criterion(capsys, 4, "binomials against enumeration, zero blocks, unary, Lucas", 30.0):
        phi = NumerationSystem.from_string("1,1")
        golden = geo.words_up_to(phi, 8)
        binary = [()] + [
            tuple(int(c) for c in format(k, "b").zfill(n))
            for n in range(1, 9) for k in range(2**n)
        ]
        for words in (golden, binary):
            for u in words:
                for v in words:
                    if len(v) <= len(u):
                        assert binom_words(u, v) == brute_force_count(u, v), (u, v)
        short = geo.words_up_to(phi, 5)
        for u in short[1:]:
            for v in short:
                for k in range(5):
                    lhs = binom_words(u + (0,) * k, v + (0,) * k)
                    rhs = sum(math.comb(k, j) * binom_words(u, v + (0,) * j) for j in range(k + 1))
                    assert lhs == rhs, (u, v, k)
        for m in range(13):
            for n in range(13):
                assert binom_words((1,) * m, (1,) * n) == math.comb(m, n)
        for p in (2, 3, 5):
            for m in range(64):
                for n in range(64):
                    assert lucas_binom_mod(m, n, p) == math.comb(m, n) % p


def test_5_star_suite(capsys):
    with criterion(capsys, 5, "(*) condition suite on golden-ratio words up to length 6", 60.0):
        phi = NumerationSystem.from_string("1,1")
        words = geo.words_up_to(phi, 6)
        for w in words:
            assert geo.star_check(phi, w, w), w
        pairs = geo.star_pairs(phi, 6)
        tails = padded_words(phi, 4)
        for u, v in pairs:
            if not u:
                continue
            assert binom_words(u, v) % 2 == 1, (u, v)
            pad = (0,) * geo.p_of(phi, u, v)
            for a in phi.alphabet:
                u2, v2 = u + pad + (a,), v + pad + (a,)
                if phi.is_in_language(u2) and phi.is_in_language(v2):
                    assert geo.star_check(phi, u2, v2), (u2, v2)
            for w in tails:
                assert binom_words(u + pad + w, v + pad + w) % 2 == 1, (u, v, w)
        assert geo.star_check(phi, parse_word("101"), parse_word("10"))
        assert not geo.star_check(phi, parse_word("1010"), parse_word("101"))


def test_6_geometry(capsys):
    with criterion(capsys, 6, "segment sides, bounding box, stabilization", 60.0):
        phi = NumerationSystem.from_string("1,1")
        beta = phi.beta
        a0 = geo.a0_approx(phi, 10)
        for s in a0:
            side = beta ** (-len(s.u) - s.p)
            assert abs(s.b[0] - s.a[0] - side) <= 1e-9 and abs(s.b[1] - s.a[1] - side) <= 1e-9
            if s.u or s.v:
                for x, y in (s.a, s.b):
                    assert 0 <= x <= 1, (s.u, s.v, x)
                    assert 1 / beta - 1e-9 <= y <= 1, (s.u, s.v, y)
        x_min = beta**-2
        one = geo.clipped_family(geo.an_approx(a0, 1, phi), x_min)
        three = geo.clipped_family(geo.an_approx(a0, 3, phi), x_min)
        assert geo.families_match(one, three, 1e-9), "clipped families differ"


def test_7_convergence(capsys):
    with criterion(capsys, 7, "Hausdorff distance to the segment approximation shrinks", 60.0):
        phi = NumerationSystem.from_string("1,1")
        rows = hd.convergence_report(phi, ResidueSpec(2, 1), [4, 9], a_maxlen=10, a_iters=4)
        d4, d9 = rows
        assert d9.distance < d4.distance, (d4.distance, d9.distance)
        assert d9.distance + d9.error_bound < 0.25, d9.distance + d9.error_bound


def test_8_figure_regeneration(capsysbinary, tmp_path):
    with criterion(capsysbinary, 8, "PBM pixel count and SVG segment count", 30.0):
        pbm = tmp_path / "u9.pbm"
        assert main(["uset", "--dbeta", "1,1", "--n", "9", "--out", str(pbm)]) == 0
        img = read_pbm(pbm.read_bytes())
        assert img.shape == (89, 89)
        phi = NumerationSystem.from_string("1,1")
        words = phi.enumerate_language(89)
        odd = sum(binom_words(u, v) % 2 for u in words for v in words)
        assert int(img.sum()) == odd, (int(img.sum()), odd)

        svg = tmp_path / "a.svg"
        assert main(["segments", "--maxlen", "10", "--iters", "4", "--out", str(svg)]) == 0
        root = ET.fromstring(svg.read_bytes())
        lines = root.findall(".//{http://www.w3.org/2000/svg}line")
        assert len(lines) == len(geo.star_pairs(phi, 10)) * 15


def test_9_mod3_extension(capsys, tmp_path):
    with criterion(capsys, 9, "mod-3 residue-2 square set", 30.0):
        pbm = tmp_path / "m3.pbm"
        argv = ["uset", "--dbeta", "1,1", "--n", "9", "--mod", "3", "--residue", "2"]
        assert main(argv + ["--out", str(pbm)]) == 0
        img = read_pbm(pbm.read_bytes())
        phi = NumerationSystem.from_string("1,1")
        block = triangle_block(phi, 89, 89, modulus=3)
        assert np.array_equal(img, block.entries == 2)
        words = block.words
        cells = {(j, i) for i in range(89) for j in range(89)
                 if binom_words_mod(words[i], words[j], 3) == 2}
        assert set(u_set(phi, 9, ResidueSpec(3, 2)).cells) == cells
        assert len(cells) > 0
