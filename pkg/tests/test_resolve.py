from __future__ import annotations

import random

import pytest

from gentle.errors import (
    NotABandWord,
    NotARecognizedResolution,
    NotAStringWord,
    RankMismatch,
    ShapeMismatch,
)
from gentle.genwords import (
    check_genword,
    hdeg,
    is_string_resolution,
    random_gen_word,
    render_genword,
)
from gentle.genwords import invert as ginv
from gentle.modpres import t_module
from gentle.resolve import (
    BandSide,
    IsoWitness,
    StringSide,
    downward_extension,
    extend_down,
    extend_up,
    homology_word,
    modules_isomorphic,
    resolution_of_band,
    resolution_of_string,
    similarity_certificate,
    upward_extension,
)
from gentle.shapes import BiInfinite, RightInfinite, Trivial, shift
from gentle.words import (
    StringWord,
    assign_signs,
    check_word,
    classify_word,
    random_band_word,
    random_finite_word,
    words_equivalent,
)
from gentle.words import invert as winv

GOLDEN = "x^3 y^-3 x^2 y^-1 x^2 y^-3 x^4 (y^-1)^inf"
GOLDEN_A = "y^-3 x^2 y^-1 x^2 y^-3 x^4"
R_GOLDEN = ("inf(<x>^-1 <y>^-1) <x^4>^-1 <y^3> <x^2>^-1 <y> "
            "<x^2>^-1 <y^3> <x^4>^-1")
E_CYCLE = "a^-1 b^-1 a^-1 b a b^-1 a^-1 b^-1 a b^-1 a b"
E_RES = "inf(<a*b*a> <b*a>^-1 <b*a*b> <a>^-1 <b> <a*b>^-1)inf"


# upward and downward extensions

def test_extend_up_golden(pres1):
    signs = assign_signs(pres1)
    e = check_genword(pres1, "<x^4>^-1 <y^3> <x^2>^-1 <y> "
                             "<x^2>^-1 <y^3> <x^4>^-1")
    assert extend_up(pres1, signs, e, "left") == check_genword(pres1, R_GOLDEN)
    left = upward_extension(pres1, signs, e, "left")
    assert left.direction == "up-left"
    assert isinstance(left.word, RightInfinite)
    assert render_genword(left.word) == "(<y> <x>)^inf"


def test_upward_extension_is_one_sided(pres1):
    # the right side of the same word also extends; applying R's recipe
    # is a separate decision from computing the maximal extension
    signs = assign_signs(pres1)
    e = check_genword(pres1, "<x^4>^-1 <y^3> <x^2>^-1 <y> "
                             "<x^2>^-1 <y^3> <x^4>^-1")
    right = upward_extension(pres1, signs, e, "right")
    assert right.direction == "up-right"
    assert render_genword(right.word) == "(<y> <x>)^inf"


def test_extend_up_acyclic(a3):
    signs = assign_signs(a3)
    stop = check_genword(a3, "<b>^-1")
    assert extend_up(a3, signs, stop, "left") == stop
    assert upward_extension(a3, signs, stop, "left").word == \
        Trivial("3", 1)
    grow = check_genword(a3, "<a>^-1")
    assert extend_up(a3, signs, grow, "left") == \
        check_genword(a3, "<b>^-1 <a>^-1")


def test_extend_up_from_trivial(a3):
    signs = assign_signs(a3)
    assert extend_up(a3, signs, Trivial("2", -1), "left") == \
        check_genword(a3, "<b>^-1")
    assert extend_up(a3, signs, Trivial("2", 1), "left") == Trivial("2", 1)


def test_downward_extensions_golden(pres1):
    signs = assign_signs(pres1)
    a = check_word(pres1, signs, GOLDEN_A)
    down_r = downward_extension(pres1, signs, a, "right")
    assert down_r.direction == "down-right"
    assert down_r.word == check_word(pres1, signs, "(y^-1)^inf")
    down_l = downward_extension(pres1, signs, a, "left")
    # maximal, so it keeps prepending x^-1 forever, not just three times
    assert down_l.word == check_word(pres1, signs, "(x^-1)^inf")
    both = extend_down(pres1, signs, a)
    assert both == check_word(
        pres1, signs, "inf(x) y^-3 x^2 y^-1 x^2 y^-3 x^4 (y^-1)^inf")
    assert isinstance(both, BiInfinite) and both.cstart == 1


def test_extend_down_nothing_fits(a3):
    signs = assign_signs(a3)
    w = check_word(a3, signs, "b")
    assert extend_down(a3, signs, w) == w


def test_extension_input_guards(pres1):
    signs = assign_signs(pres1)
    w = check_word(pres1, signs, GOLDEN)
    with pytest.raises(ShapeMismatch):
        extend_down(pres1, signs, w)
    with pytest.raises(ValueError):
        extend_up(pres1, signs, Trivial("v", 1), "up")


# resolutions of strings

def test_resolution_golden(pres1):
    signs = assign_signs(pres1)
    c = check_word(pres1, signs, GOLDEN)
    word, deg = resolution_of_string(pres1, signs,
                                     classify_word(pres1, signs, c))
    assert word == check_genword(pres1, R_GOLDEN)
    assert deg == 0
    assert homology_word(pres1, signs, word) == c


def test_resolution_neither_end_extends(a3):
    signs = assign_signs(a3)
    c = check_word(a3, signs, "b")
    word, deg = resolution_of_string(a3, signs, classify_word(a3, signs, c))
    assert word == Trivial("2", -1)
    assert deg == 0
    assert homology_word(a3, signs, word) == c


def test_resolution_one_end_extends(a3):
    signs = assign_signs(a3)
    c = Trivial("2", 1)
    word, deg = resolution_of_string(a3, signs, classify_word(a3, signs, c))
    assert word == check_genword(a3, "<b>")
    assert deg == 0
    assert homology_word(a3, signs, word) == c


def test_resolution_both_ends_extend(ladder):
    # both extension arrows exist, so the result is shifted into degree 1
    signs = assign_signs(ladder)
    for eps, text in ((1, "<d>^-1 <c>"), (-1, "<c>^-1 <d>")):
        c = Trivial("2", eps)
        word, deg = resolution_of_string(ladder, signs,
                                         classify_word(ladder, signs, c))
        assert word == check_genword(ladder, text)
        assert deg == 1
        assert homology_word(ladder, signs, word) == c


def test_resolution_both_ends_z_word(pres1):
    signs = assign_signs(pres1)
    a = check_word(pres1, signs, GOLDEN_A)
    word, deg = resolution_of_string(pres1, signs,
                                     classify_word(pres1, signs, a))
    assert render_genword(word) == \
        ("inf(<y>^-1 <x>^-1) <y^3> <x^2>^-1 <y> <x^2>^-1 <y^3> "
         "<x^4>^-1 (<y> <x>)^inf")
    assert deg == 0
    assert homology_word(pres1, signs, word) == a


def test_resolution_verdict_guards(pres1, pres2):
    s1, s2 = assign_signs(pres1), assign_signs(pres2)
    band = classify_word(pres2, s2,
                         check_word(pres2, s2, f"inf( {E_CYCLE} )inf"))
    with pytest.raises(NotAStringWord):
        resolution_of_string(pres2, s2, band)
    string = classify_word(pres1, s1, check_word(pres1, s1, GOLDEN))
    with pytest.raises(NotABandWord):
        resolution_of_band(pres1, string)


# resolutions of bands

def test_band_resolution(pres2):
    signs = assign_signs(pres2)
    e = check_word(pres2, signs, f"inf( {E_CYCLE} )inf")
    word = resolution_of_band(pres2, classify_word(pres2, signs, e))
    assert word == check_genword(pres2, E_RES)


def test_band_resolution_single_pair(pres1):
    signs = assign_signs(pres1)
    c = check_word(pres1, signs, "inf(y^-1 x)inf")
    word = resolution_of_band(pres1, classify_word(pres1, signs, c))
    assert word == check_genword(pres1, "inf(<y> <x>^-1)inf")
    assert homology_word(pres1, signs, word) == c


def test_band_resolution_under_rotation(pres2):
    # rotating the band rotates the resolution by an even amount that
    # returns to homological degree zero
    signs = assign_signs(pres2)
    e = check_word(pres2, signs, f"inf( {E_CYCLE} )inf")
    base = resolution_of_band(pres2, classify_word(pres2, signs, e))
    for n in (3, 9):
        rot = resolution_of_band(
            pres2, classify_word(pres2, signs, shift(e, n)))
        pair = words_equivalent(rot, base)
        assert pair is not None and not pair[1]
        assert pair[0] % 2 == 0 and hdeg(base, pair[0]) == 0
    flipped = resolution_of_band(
        pres2, classify_word(pres2, signs, winv(e)))
    assert words_equivalent(flipped, ginv(base)) is not None


# homology words

def test_homology_golden(pres1):
    signs = assign_signs(pres1)
    word = check_genword(pres1, R_GOLDEN)
    assert homology_word(pres1, signs, word) == \
        check_word(pres1, signs, GOLDEN)


def test_homology_commutes_with_inversion(pres1):
    signs = assign_signs(pres1)
    word = check_genword(pres1, R_GOLDEN)
    h = homology_word(pres1, signs, word)
    hi = homology_word(pres1, signs, ginv(word))
    assert hi == winv(h)
    assert words_equivalent(hi, winv(h)) == (0, False)


def test_homology_band(pres2):
    signs = assign_signs(pres2)
    word = check_genword(pres2, E_RES)
    assert homology_word(pres2, signs, word) == \
        check_word(pres2, signs, f"inf( {E_CYCLE} )inf")
    # a rotated resolution still maps onto a rotation of the band
    rot = homology_word(pres2, signs, shift(word, 1))
    assert words_equivalent(
        rot, check_word(pres2, signs, f"inf( {E_CYCLE} )inf")) is not None


def test_homology_rejects(pres1, pres2):
    s1, s2 = assign_signs(pres1), assign_signs(pres2)
    with pytest.raises(NotARecognizedResolution, match="single arrow"):
        homology_word(pres1, s1, check_genword(pres1, "<x^2> <y^3>"))
    with pytest.raises(NotARecognizedResolution, match="extends by arrow y"):
        homology_word(pres1, s1, check_genword(
            pres1, "<x^4>^-1 <y^3> <x^2>^-1 <y> <x^2>^-1 <y^3> <x^4>^-1"))
    with pytest.raises(NotARecognizedResolution, match="no rotation parity"):
        homology_word(pres2, s2, check_genword(
            pres2, "inf(<a> <a> <b>^-1 <b>^-1)inf"))


# roundtrips

def test_roundtrip_strings_random(pres1, pres2, a3, cycle4, kron, ladder,
                                  randpres):
    rng = random.Random(99)
    for pres in (pres1, pres2, a3, cycle4, kron, ladder, randpres):
        signs = assign_signs(pres)
        for _ in range(40):
            w = random_finite_word(pres, rng, rng.randrange(1, 7))
            if w is None:
                continue
            verdict = classify_word(pres, signs, w)
            if not isinstance(verdict, StringWord):
                continue
            assert verdict.shift == 0
            word, _ = resolution_of_string(pres, signs, verdict)
            assert homology_word(pres, signs, word) == w


def test_roundtrip_trivial_words(pres1, pres2, a3, cycle4, kron, ladder,
                                 randpres):
    for pres in (pres1, pres2, a3, cycle4, kron, ladder, randpres):
        signs = assign_signs(pres)
        for v in pres.quiver.vertices:
            for eps in (1, -1):
                c = Trivial(v, eps)
                word, _ = resolution_of_string(
                    pres, signs, classify_word(pres, signs, c))
                assert homology_word(pres, signs, word) == c


def test_roundtrip_shifted_z_word(pres1):
    signs = assign_signs(pres1)
    c = shift(check_word(
        pres1, signs, "inf(x) y^-3 x^2 y^-1 x^2 y^-3 x^4 (y^-1)^inf"), -3)
    verdict = classify_word(pres1, signs, c)
    assert verdict.shift == 3
    word, _ = resolution_of_string(pres1, signs, verdict)
    assert homology_word(pres1, signs, word) == shift(c, verdict.shift)


def test_roundtrip_resolutions_random(pres1, pres2, a3, cycle4, kron,
                                      ladder, randpres):
    # any resolution-shaped generalised word comes back unchanged
    rng = random.Random(31)
    for pres in (pres1, pres2, a3, cycle4, kron, ladder, randpres):
        signs = assign_signs(pres)
        for _ in range(200):
            w = random_gen_word(pres, rng, rng.randrange(1, 6))
            if w is None or is_string_resolution(pres, signs, w) is None:
                continue
            h = homology_word(pres, signs, w)
            verdict = classify_word(pres, signs, h)
            word, _ = resolution_of_string(pres, signs, verdict)
            assert word == w


def test_roundtrip_bands_random(pres1, pres2, kron, ladder, randpres):
    rng = random.Random(17)
    for pres in (pres1, pres2, kron, ladder, randpres):
        signs = assign_signs(pres)
        for _ in range(30):
            w = random_band_word(pres, rng, 10)
            if w is None:
                continue
            verdict = classify_word(pres, signs, w)
            word = resolution_of_band(pres, verdict)
            h = homology_word(pres, signs, word)
            assert h == shift(w, verdict.shift)
            hi = homology_word(pres, signs, ginv(word))
            assert words_equivalent(hi, winv(h)) is not None


# module isomorphism

def test_iso_strings(pres1):
    signs = assign_signs(pres1)
    c = check_word(pres1, signs, GOLDEN)
    assert modules_isomorphic(pres1, signs, StringSide(c), StringSide(c)) \
        == IsoWitness(0, False)
    assert modules_isomorphic(pres1, signs, StringSide(c),
                              StringSide(winv(c))) == IsoWitness(0, True)
    other = check_word(pres1, signs, "x^2 y^-1")
    assert modules_isomorphic(pres1, signs, StringSide(c),
                              StringSide(other)) is None


def test_iso_string_never_band(pres2):
    signs = assign_signs(pres2)
    e = check_word(pres2, signs, f"inf( {E_CYCLE} )inf")
    c = check_word(pres2, signs, "a b^-1")
    assert modules_isomorphic(pres2, signs, StringSide(c),
                              BandSide(e, t_module([[1]], 2))) is None
    with pytest.raises(NotAStringWord):
        modules_isomorphic(pres2, signs, StringSide(e), StringSide(c))


def test_iso_bands(pres2):
    signs = assign_signs(pres2)
    e = check_word(pres2, signs, f"inf( {E_CYCLE} )inf")
    one = t_module([[1]], 2)
    got = modules_isomorphic(pres2, signs, BandSide(e, one),
                             BandSide(shift(e, 9), one))
    assert got == IsoWitness(9, False, ((1, 1),))
    ident = t_module([[1, 0], [0, 1]], 2)
    jordan = t_module([[1, 1], [0, 1]], 2)
    assert modules_isomorphic(pres2, signs, BandSide(e, ident),
                              BandSide(e, jordan)) is None


def test_iso_bands_inverted(pres2):
    # against the inverted word the T-module compares to the inverse
    signs = assign_signs(pres2)
    e = check_word(pres2, signs, f"inf( {E_CYCLE} )inf")
    v = t_module([[2]], 5)
    got = modules_isomorphic(pres2, signs, BandSide(e, v),
                             BandSide(winv(e), v.res()))
    assert got is not None and got.inverted
    assert got.certificate == ((3, 1),)
    assert modules_isomorphic(pres2, signs, BandSide(e, v),
                              BandSide(winv(e), v)) is None
    with pytest.raises(ValueError):
        modules_isomorphic(pres2, signs, BandSide(e, v),
                           BandSide(e, t_module([[1]], 3)))


def test_similarity_certificate():
    assert similarity_certificate([[0, 1], [1, 1]],
                                  [[0, 1], [1, 1]], 2) == ((1, 1, 1),)
    a = [[2, 1, 0], [0, 2, 0], [1, 1, 3]]
    at = [list(row) for row in zip(*a)]
    assert similarity_certificate(a, at, 5) is not None
    assert similarity_certificate([[1, 0], [0, 1]],
                                  [[1, 1], [0, 1]], 2) is None
    with pytest.raises(RankMismatch):
        similarity_certificate([[1]], [[1, 0], [0, 1]], 3)
