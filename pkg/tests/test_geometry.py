import math
import xml.etree.ElementTree as ET
import json

import pytest

from parrypascal import geometry as geo
from parrypascal.binomials import ResidueSpec, binom_words, binom_words_mod
from parrypascal.numeration import NumerationSystem, parse_word
from parrypascal.verification import padded_words

W = parse_word


def test_p_values(phi, beta1):
    assert geo.p_of(phi, W("101"), W("10")) == 1
    assert geo.p_of(phi, W("10"), W("10")) == 0
    assert geo.p_of(beta1, W("101"), W("21")) == 2
    assert geo.p_of(phi, (), ()) == 0
    with pytest.raises(ValueError):
        geo.p_of(phi, W("11"), W("1"))


def test_p_is_least(systems):
    for s in systems.values():
        words = geo.words_up_to(s, 4)
        for u in words[1:]:
            for v in words[1:]:
                p = geo.p_of(s, u, v)
                aut = s.automaton
                assert aut.run(u + (0,) * p) == aut.initial == aut.run(v + (0,) * p)
                assert all(
                    aut.run(u + (0,) * k) != aut.initial or aut.run(v + (0,) * k) != aut.initial
                    for k in range(p)
                )


def test_reference_pairs(phi):
    assert geo.star_check(phi, W("101"), W("10"))
    assert not geo.star_check(phi, W("1010"), W("101"))
    assert geo.star_check(phi, (), ())
    assert not geo.star_check(phi, (), (), ResidueSpec(3, 2))
    assert not geo.star_check(phi, W("10"), W("101"))
    assert not geo.star_check(phi, W("10"), ())


def star_oracle(system, u, v, residue):
    """The condition written out with exact binomials and an explicit alphabet."""
    if not u and not v:
        return residue.r == 1
    if not v or len(u) < len(v):
        return False
    p = geo.p_of(system, u, v)
    up, vp = u + (0,) * p, v + (0,) * p
    if binom_words(up, vp) % residue.q != residue.r:
        return False
    return all(binom_words(up, vp + (a,)) == 0 for a in range(system.spec.t1 + 1))


@pytest.mark.parametrize("residue", [ResidueSpec(2, 1), ResidueSpec(3, 1), ResidueSpec(3, 2)])
def test_star_pairs_match_oracle(phi, residue):
    words = geo.words_up_to(phi, 6)
    want = [
        (u, v) for u in words for v in words
        if len(v) <= len(u) and star_oracle(phi, u, v, residue)
    ]
    assert geo.star_pairs(phi, 6, residue) == want


def test_star_pairs_small(phi):
    assert geo.star_pairs(phi, 1) == [((), ()), ((1,), (1,))]
    assert len(geo.star_pairs(phi, 4)) == 11
    with pytest.raises(ValueError):
        geo.star_pairs(phi, -1)


def test_every_diagonal_pair_passes(systems):
    for s in systems.values():
        for w in geo.words_up_to(s, 5 if s.spec.t1 < 2 else 3):
            assert geo.star_check(s, w, w)


def test_star_implies_residue(systems):
    for residue in (ResidueSpec(2, 1), ResidueSpec(3, 2)):
        for name in ("phi", "beta1"):
            s = systems[name]
            for u, v in geo.star_pairs(s, 4, residue):
                if u:
                    assert binom_words_mod(u, v, residue.q) == residue.r


def test_closure_and_propagation(systems):
    for name in ("phi", "phi2", "b1001"):
        s = systems[name]
        tails = padded_words(s, 4)
        for u, v in geo.star_pairs(s, 5):
            if not u:
                continue
            pad = (0,) * geo.p_of(s, u, v)
            for a in s.alphabet:
                u2, v2 = u + pad + (a,), v + pad + (a,)
                if s.is_in_language(u2) and s.is_in_language(v2):
                    assert geo.star_check(s, u2, v2)
            for w in tails:
                assert binom_words(u + pad + w, v + pad + w) % 2 == 1


def test_padded_words(phi):
    words = padded_words(phi, 3)
    assert (0, 0, 1) in words and (0, 1, 0) in words and (1, 1) not in words
    assert len(words) == 1 + 2 + 3 + 5


def test_segment_example(phi):
    seg = geo.segment_for(phi, W("101"), W("10"))
    assert seg.p == 1
    assert seg.a == pytest.approx((0.381966, 0.854102), abs=1e-6)
    assert seg.b == pytest.approx((0.527864, 1.0), abs=1e-6)
    assert geo.segment_far_end(phi, seg) == pytest.approx(seg.b, abs=1e-10)


def test_empty_pair_segment(phi):
    seg = geo.segment_for(phi, (), ())
    assert seg.a == (0.0, 0.0) and seg.b == (1.0, 1.0)
    assert geo.segment_far_end(phi, seg) == (1.0, 1.0)


def test_endpoint_convergence(phi):
    u, v = W("101"), W("10")
    p = geo.p_of(phi, u, v)
    seg = geo.segment_for(phi, u, v)
    errors = []
    for n in range(0, 21):
        d = phi.u(len(u) + p + n)
        x = phi.val(v + (0,) * (p + n)) / d
        y = phi.val(u + (0,) * (p + n)) / d
        errors.append(math.hypot(x - seg.a[0], y - seg.a[1]))
    assert errors[-1] < 0.01
    assert errors[-1] < errors[0]


@pytest.mark.parametrize("name", ["phi", "beta1", "base2"])
def test_segment_geometry(systems, name):
    s = systems[name]
    a0 = geo.a0_approx(s, 6)
    for seg in a0:
        side = s.beta ** (-len(seg.u) - seg.p)
        assert seg.b[0] - seg.a[0] == pytest.approx(side, abs=1e-9)
        assert seg.b[1] - seg.a[1] == pytest.approx(side, abs=1e-9)
        assert geo.segment_far_end(s, seg) == pytest.approx(seg.b, abs=1e-9)
        if seg.u:
            assert 0 <= seg.a[0] and seg.b[0] <= 1 + 1e-9
            assert 1 / s.beta - 1e-9 <= seg.a[1] and seg.b[1] <= 1 + 1e-9


def test_maps(phi):
    b = phi.beta
    assert geo.apply_map((1.0, 1.0), b, 0, 0) == (1.0, 1.0)
    assert geo.apply_map((1.0, 1.0), b, 1, 0) == pytest.approx((1 / b, 1 / b))
    assert geo.apply_map((1.0, 1.0), b, 1, 1) == pytest.approx((1 / b, 1.0))
    assert geo.apply_map((0.5, 0.25), b, 3, 2) == pytest.approx((0.5 / b**3, 0.25 / b))


def test_an_approx_counts_and_slopes(phi):
    a0 = geo.a0_approx(phi, 5)
    for n in range(5):
        an = geo.an_approx(a0, n, phi)
        assert len(an) == len(a0) * (n + 1) * (n + 2) // 2
        for seg in an:
            dx = seg.b[0] - seg.a[0]
            assert (seg.b[1] - seg.a[1]) / dx == pytest.approx(phi.beta**seg.j, rel=1e-9)
    with pytest.raises(ValueError):
        geo.an_approx(a0, -1, phi)


def test_clip_left():
    seg = geo.Segment((0.0, 0.0), (1.0, 2.0), (1,), (1,), 0)
    assert geo.clip_left(seg, 0.5) == ((0.5, 1.0), (1.0, 2.0))
    assert geo.clip_left(seg, -1) == ((0.0, 0.0), (1.0, 2.0))
    assert geo.clip_left(seg, 1.5) is None
    assert geo.clip_left(seg, 1.0) == ((1.0, 2.0), (1.0, 2.0))


def test_stabilization(phi, beta1):
    for s, maxlen in ((phi, 7), (beta1, 3)):
        a0 = geo.a0_approx(s, maxlen)
        fams = [geo.an_approx(a0, n, s) for n in range(5)]
        for m in range(4):
            x_min = s.beta ** -(m + 1)
            ref = geo.clipped_family(fams[m], x_min)
            for n in range(m + 1, 5):
                assert geo.families_match(ref, geo.clipped_family(fams[n], x_min))


def test_clipped_family_drops_touching_points():
    touching = geo.Segment((0.0, 0.0), (0.5, 0.5), (1,), (1,), 0)
    crossing = geo.Segment((0.0, 0.0), (1.0, 1.0), (1,), (1,), 0)
    fam = geo.clipped_family([touching, crossing], 0.5)
    assert fam == [(0.5, 0.5, 1.0, 1.0)]
    assert not geo.families_match(fam, [])


def test_a0_approx_growth(phi):
    sizes = [len(geo.a0_approx(phi, k)) for k in range(1, 8)]
    assert sizes == sorted(sizes)
    assert len(geo.a0_approx(phi, 10)) == len(geo.star_pairs(phi, 10))


def test_svg_and_json(phi, tmp_path):
    segs = geo.an_approx(geo.a0_approx(phi, 4), 1, phi)
    svg = geo.segments_svg(segs)
    root = ET.fromstring(svg.split("\n", 1)[1])
    assert root.get("viewBox") == "0 0 1 1"
    assert len(root.findall(".//{http://www.w3.org/2000/svg}line")) == len(segs)
    data = json.loads(geo.segments_json(segs))
    assert len(data) == len(segs)
    assert set(data[0]) == {"u", "v", "p", "ax", "ay", "bx", "by", "i", "j"}
    path = geo.render_segments(segs, tmp_path / "a.svg")
    assert path.read_text() == svg


def test_automaton_cap_error():
    s = NumerationSystem.from_string("1,1")
    assert geo.p_of(s, W("1"), W("1")) <= s.automaton.state_count
