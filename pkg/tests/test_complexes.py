from __future__ import annotations

import random

import pytest

from gentle.complexes import (
    BandResolutionAt,
    NotAResolution,
    PathMatrixComplex,
    StringResolutionAt,
    band_complex,
    compose_differentials,
    default_window,
    kernel_generators,
    recognize_resolution,
    render_complex,
    string_complex,
    verify_complex,
)
from gentle.errors import (
    NotAComplex,
    NotCyclic,
    PeriodicInput,
    WindowRequired,
)
from gentle.genwords import (
    GenLetter,
    check_genword,
    hdeg,
    invert,
    random_gen_word,
    shift,
)
from gentle.modpres import t_module
from gentle.presentation import Path, path_in_P
from gentle.shapes import Periodic

R_GOLDEN = ("inf(<x>^-1 <y>^-1) <x^4>^-1 <y^3> <x^2>^-1 <y> "
            "<x^2>^-1 <y^3> <x^4>^-1")
E_RES = "inf(<a*b*a> <b*a>^-1 <b*a*b> <a>^-1 <b> <a*b>^-1)inf"
W_Z = "inf(<x>^-1 <y>^-1) <x^4>^-1 (<y> <x>)^inf"


def entries(cx, n):
    return {spot: [(c, str(p)) for c, p in terms]
            for spot, terms in cx.differentials[n].items()}


def by_words(cx):
    # differential entries keyed by word positions (target, source)
    out = {}
    for n, mat in cx.differentials.items():
        rows = [int(lab[1:]) for lab, _ in cx.degrees[n + 1]]
        cols = [int(lab[1:]) for lab, _ in cx.degrees[n]]
        for (r, c), terms in mat.items():
            out[(rows[r], cols[c])] = tuple((cf, p.arrows)
                                            for cf, p in terms)
    return out


def test_string_complex_golden(pres1):
    w = check_genword(pres1, R_GOLDEN)
    cx = string_complex(pres1, w, window=(-1, 0))
    assert [lab for lab, _ in cx.degrees[0]] == ["g-6", "g-4", "g-2", "g0"]
    assert [lab for lab, _ in cx.degrees[-1]] == ["g-7", "g-5", "g-3", "g-1"]
    assert entries(cx, -1) == {
        (0, 0): [(1, "x*x*x*x")],
        (0, 1): [(1, "y*y*y")],
        (1, 1): [(1, "x*x")],
        (1, 2): [(1, "y")],
        (2, 2): [(1, "x*x")],
        (2, 3): [(1, "y*y*y")],
        (3, 3): [(1, "x*x*x*x")],
    }
    verify_complex(pres1, cx)
    assert render_complex(cx) == "\n".join([
        "deg -1: v v v v",
        "deg 0: v v v v",
        "d-1[0,0] = 1*x*x*x*x",
        "d-1[0,1] = 1*y*y*y",
        "d-1[1,1] = 1*x*x",
        "d-1[1,2] = 1*y",
        "d-1[2,2] = 1*x*x",
        "d-1[2,3] = 1*y*y*y",
        "d-1[3,3] = 1*x*x*x*x",
    ])


def test_trivial_complex(pres1):
    cx = string_complex(pres1, check_genword(pres1, "1_{v,+1}"))
    assert cx.degrees == {0: (("g0", "v"),)}
    assert cx.differentials == {}
    assert render_complex(cx) == "deg 0: v"


def test_string_complex_vertices(kron):
    w = check_genword(kron, "<a> <b>^-1")
    cx = verify_complex(kron, string_complex(kron, w))
    assert cx.degrees == {-1: (("g1", "2"),), 0: (("g0", "1"), ("g2", "1"))}
    assert entries(cx, -1) == {(0, 0): [(1, "a")], (1, 0): [(1, "b")]}


def test_string_complex_errors(pres1, pres2):
    with pytest.raises(PeriodicInput):
        string_complex(pres2, check_genword(pres2, E_RES))
    with pytest.raises(WindowRequired):
        string_complex(pres1, check_genword(pres1, R_GOLDEN))


def test_windowed_matches_full(pres1):
    w = check_genword(pres1, "<y^3> <x^2>^-1 <y>^-1")
    full = string_complex(pres1, w)
    assert sorted(full.degrees) == [-1, 0, 1]
    sub = string_complex(pres1, w, window=(-1, 0))
    assert sub.degrees[-1] == full.degrees[-1]
    assert sub.degrees[0] == full.degrees[0]
    assert sub.differentials[-1] == full.differentials[-1]
    assert list(sub.differentials) == [-1]


def test_default_window_covers_stored_letters(pres1):
    w = check_genword(pres1, R_GOLDEN)
    assert default_window(w, 0) == (-8, 0)
    cx = string_complex(pres1, w, default_window(w, 0))
    assert sorted(cx.degrees) == list(range(-8, 1))
    assert all(cx.degrees[n] for n in cx.degrees)
    verify_complex(pres1, cx)


def test_dd_zero_random(pres1, pres2, a3, cycle4, kron, ladder, randpres):
    rng = random.Random(5)
    for pres in (pres1, pres2, a3, cycle4, kron, ladder, randpres):
        for _ in range(20):
            w = random_gen_word(pres, rng, rng.randint(1, 7))
            verify_complex(pres, string_complex(pres, w))


def test_inverse_relabels_finite(pres1, a3, cycle4, ladder):
    rng = random.Random(11)
    for pres in (pres1, a3, cycle4, ladder):
        for _ in range(12):
            w = random_gen_word(pres, rng, rng.randint(1, 6))
            m = len(w.items)
            t = hdeg(w, m)
            cw = string_complex(pres, w)
            ci = string_complex(pres, invert(w))
            for n, gens in ci.degrees.items():
                flipped = [f"g{m - int(lab[1:])}" for lab, _ in gens]
                assert flipped == \
                    [lab for lab, _ in reversed(cw.degrees[n + t])]
            assert by_words(cw) == {
                (m - tgt, m - src): terms
                for (tgt, src), terms in by_words(ci).items()}


def test_shift_relabels_two_sided(pres1):
    w = check_genword(pres1, W_Z)
    assert hdeg(w, 1) == 1
    c0 = string_complex(pres1, w, window=(0, 2))
    c1 = string_complex(pres1, shift(w, 1), window=(-1, 1))
    for n in (-1, 0, 1):
        assert [int(lab[1:]) for lab, _ in c1.degrees[n]] == \
            [int(lab[1:]) - 1 for lab, _ in c0.degrees[n + 1]]
    assert by_words(c1) == {(tgt - 1, src - 1): terms
                            for (tgt, src), terms in by_words(c0).items()}


def test_band_complex_e_cycle(pres2):
    w = check_genword(pres2, E_RES)
    cx = band_complex(pres2, w, t_module([[1]], 2))
    assert sorted(cx.degrees) == [-1, 0]
    assert [lab for lab, _ in cx.degrees[0]] == ["g0_1", "g2_1", "g4_1"]
    assert [lab for lab, _ in cx.degrees[-1]] == ["g1_1", "g3_1", "g5_1"]
    assert entries(cx, -1) == {
        (0, 0): [(1, "a*b*a")],
        (1, 0): [(1, "b*a")],
        (1, 1): [(1, "b*a*b")],
        (2, 1): [(1, "a")],
        (0, 2): [(1, "a*b")],
        (2, 2): [(1, "b")],
    }
    assert cx.prime == 2 and cx.period == 6
    verify_complex(pres2, cx)


def test_band_complex_rank_two_identity(pres2):
    w = check_genword(pres2, E_RES)
    base = band_complex(pres2, w, t_module([[1]], 2))
    cx = band_complex(pres2, w, t_module([[1, 0], [0, 1]], 2))
    assert [lab for lab, _ in cx.degrees[0]] == \
        ["g0_1", "g0_2", "g2_1", "g2_2", "g4_1", "g4_2"]
    for (r, c), terms in base.differentials[-1].items():
        for k in (0, 1):
            assert cx.differentials[-1][(2 * r + k, 2 * c + k)] == terms
    assert len(cx.differentials[-1]) == 2 * len(base.differentials[-1])


def test_band_complex_companion_mixes_copies(pres2):
    w = check_genword(pres2, E_RES)
    cx = band_complex(pres2, w, t_module([[0, 1], [1, 1]], 2))
    verify_complex(pres2, cx)
    wrap = {spot: terms for spot, terms in entries(cx, -1).items()
            if spot[1] >= 4 and spot[0] < 2}
    assert wrap == {(0, 4): [(1, "a*b")],
                    (1, 4): [(1, "a*b")],
                    (0, 5): [(1, "a*b")]}


def test_band_complex_nonalternating(pres1):
    w = check_genword(pres1, "inf(<y^3> <x^2>^-1 <y>^-1 <x^4>)inf")
    cx = band_complex(pres1, w, t_module([[1, 2], [0, 1]], 3))
    assert sorted(cx.degrees) == [-1, 0, 1]
    verify_complex(pres1, cx)


def test_band_seam_merges_with_interior(pres1):
    w = check_genword(pres1, "inf(<x> <y>^-1)inf")
    cx = band_complex(pres1, w, t_module([[1]], 2))
    assert entries(cx, -1) == {(0, 0): [(1, "x"), (1, "y")]}
    verify_complex(pres1, cx)


def test_band_complex_errors(pres1, pres2):
    with pytest.raises(NotCyclic):
        band_complex(pres2, check_genword(pres2, "<a*b*a>"),
                     t_module([[1]], 2))
    lopsided = Periodic((GenLetter(Path(("x",), "v", "v")),), 0)
    with pytest.raises(NotCyclic):
        band_complex(pres1, lopsided, t_module([[1]], 2))


def test_kernel_golden(pres1):
    w = check_genword(pres1, R_GOLDEN)
    report = [(i, str(p) if p is not None else None)
              for i, p in kernel_generators(pres1, w, 0)]
    assert report == [(-6, "e_v"), (-4, "e_v"), (-2, "e_v"), (0, "e_v")]
    report = [(i, str(p) if p is not None else None)
              for i, p in kernel_generators(pres1, w, -1)]
    assert report == [(-7, "y"), (-5, None), (-3, None), (-1, None)]
    report = [(i, str(p) if p is not None else None)
              for i, p in kernel_generators(pres1, w, -2)]
    assert report == [(-8, "x")]


def test_kernel_edge_cases(a3, pres2):
    report = [(i, str(p) if p is not None else None)
              for i, p in kernel_generators(a3, check_genword(a3, "<a>"), -1)]
    assert report == [(1, "b")]
    report = [(i, str(p) if p is not None else None)
              for i, p in
              kernel_generators(a3, check_genword(a3, "<a>^-1"), 0)]
    assert report == [(0, "b")]
    report = [(i, str(p) if p is not None else None)
              for i, p in kernel_generators(a3, check_genword(a3, "<b>"), -1)]
    assert report == [(1, None)]
    with pytest.raises(PeriodicInput):
        kernel_generators(pres2, check_genword(pres2, E_RES), 0)


def test_recognize_resolution_strings(pres1):
    got = recognize_resolution(pres1, check_genword(pres1, R_GOLDEN))
    assert got == StringResolutionAt(0, 0)
    got = recognize_resolution(pres1, check_genword(pres1, "1_{v,+1}"))
    assert got == StringResolutionAt(0, 0)
    got = recognize_resolution(pres1, check_genword(pres1, W_Z))
    assert got == StringResolutionAt(1, 0)
    got = recognize_resolution(pres1, check_genword(pres1, "<x^2> <y^3>"))
    assert got == NotAResolution(
        "position 2: run letter <y^3> is not a single arrow")
    wnl = check_genword(pres1, "inf(<x> <y>) <x^4>^-1 (<y> <x>)^inf")
    got = recognize_resolution(pres1, wnl)
    assert got == NotAResolution(
        "the left letters do not form an inverse run")


def test_recognize_resolution_bands(pres1, pres2):
    w = check_genword(pres2, E_RES)
    assert recognize_resolution(pres2, w) == BandResolutionAt(0, 0)
    assert recognize_resolution(pres2, shift(w, 1)) == BandResolutionAt(1, 1)
    wb = check_genword(pres1, "inf(<y^3> <x^2>^-1 <y>^-1 <x^4>)inf")
    got = recognize_resolution(pres1, wb)
    assert got == NotAResolution(
        "no rotation parity alternates direct-inverse from position 1")
    w2 = check_genword(pres1, "inf(<x> <y>^-1)inf")
    assert recognize_resolution(pres1, w2) == BandResolutionAt(0, 0)


def test_verify_complex_catches(pres1, a3):
    x = path_in_P(pres1, ["x"])
    broken = PathMatrixComplex(
        {0: (("g0", "v"),), 1: (("g1", "v"),), 2: (("g2", "v"),)},
        {0: {(0, 0): ((1, x),)}, 1: {(0, 0): ((1, x),)}})
    with pytest.raises(NotAComplex):
        verify_complex(pres1, broken)
    assert compose_differentials(pres1, broken, 0) == \
        {(0, 0): ((1, path_in_P(pres1, ["x", "x"])),)}
    b = path_in_P(a3, ["b"])
    misplaced = PathMatrixComplex(
        {0: (("g0", "1"),), 1: (("g1", "2"),)},
        {0: {(0, 0): ((1, b),)}})
    with pytest.raises(NotAComplex):
        verify_complex(a3, misplaced)
