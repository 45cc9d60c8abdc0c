"""From words to resolutions and back.

R turns a classified string or band word into the generalised word that
indexes its projective resolution; H reads the homology word back off a
resolution-shaped generalised word.  The two are mutually inverse, so
module isomorphism reduces to comparing words up to shift and inversion,
plus a similarity check of the T-modules on the band side.  The greedy
one-sided extension operators that both directions rely on live here too.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fp, shapes
from .errors import (
    NotABandWord,
    NotARecognizedResolution,
    NotAStringWord,
    RankMismatch,
    ShapeMismatch,
)
from .genwords import (
    GenLetter,
    _pair_ok as _gen_pair_ok,
    _split_with_reason,
    gen_composable,
    gen_sign_of_word,
    is_band_resolution,
    resolution_degree,
    validate_genword,
)
from .modpres import _alternating_pairs, extension_path
from .presentation import path_in_P
from .shapes import (
    Finite,
    LeftInfinite,
    Periodic,
    RightInfinite,
    Trivial,
    invert,
    shift,
)
from .words import (
    BandWord,
    Letter,
    StringWord,
    _pair_ok as _word_pair_ok,
    classify_word,
    composable,
    first_letter,
    validate_word,
    word_head,
    words_equivalent,
)

__all__ = [
    "ExtensionResult", "upward_extension", "downward_extension",
    "extend_up", "extend_down", "resolution_of_string",
    "resolution_of_band", "homology_word", "StringSide", "BandSide",
    "IsoWitness", "modules_isomorphic", "similarity_certificate",
]


@dataclass(frozen=True)
class ExtensionResult:
    """A maximal one-sided extension: what to attach and where.

    `word` is the attachment (L, N, B or D) in its own left-to-right
    order, trivial when no letter fits; `direction` is one of up-left,
    up-right, down-left, down-right.  Maximality means no further
    single-letter step of the same kind exists; a walk that revisits a
    letter closes into a periodic tail instead of ending.
    """

    word: object
    direction: str


def _close_walk(step, limit):
    """Run a single-candidate walk outward, splitting the visited
    letters into a finite prefix and a repeating unit."""
    seen = {}
    walk = []
    while True:
        letter = step(walk[-1] if walk else None)
        if letter is None:
            return tuple(walk), ()
        if letter in seen:
            j = seen[letter]
            return tuple(walk[:j]), tuple(walk[j:])
        seen[letter] = len(walk)
        walk.append(letter)
        assert len(walk) <= limit, "extension walk failed to repeat"


def _side_step(pres, signs, w, leftward, letters, pair_ok, comp):
    """The step function for a walk growing w on one side.

    Each step sees the previous walk letter (None at the start) and
    returns the unique candidate that keeps the word valid, if any.  The
    first step off a trivial w has no junction pair to check, so it uses
    the composability criterion instead.
    """
    anchor = None if isinstance(w, Trivial) else (
        w.items[0] if leftward else w.items[-1])

    def step(prev):
        cur = anchor if prev is None else prev
        found = []
        for letter in letters:
            if cur is None:
                one = Finite((letter,))
                ok = comp(pres, signs, one, w) if leftward \
                    else comp(pres, signs, w, one)
            elif leftward:
                ok = pair_ok(pres, letter, cur)
            else:
                ok = pair_ok(pres, cur, letter)
            if ok:
                found.append(letter)
        assert len(found) <= 1, "two letters extend the same side"
        return found[0] if found else None

    return step


def _extension_word(fin, unit, flip):
    """Assemble a walk into the extension read left to right.

    A leftward walk lists letters outward from the word, which is the
    reverse of how the extension itself reads, so its letters flip."""
    if flip:
        fin = tuple(l.invert() for l in fin)
        unit = tuple(l.invert() for l in unit)
    if unit:
        return shapes.make_right(fin, unit)
    return shapes.make_finite(fin)


def _one_side(pres, signs, w, leftward, letters, pair_ok, comp, sign_of,
              tag):
    if not isinstance(w, (Trivial, Finite)):
        raise ShapeMismatch("extension starts from a trivial or finite "
                            "word")
    fin, unit = _close_walk(
        _side_step(pres, signs, w, leftward, letters, pair_ok, comp),
        len(letters))
    if not fin and not unit:
        probe = w if leftward else invert(w)
        word = Trivial(word_head(probe), -sign_of(probe))
    else:
        word = _extension_word(fin, unit, leftward)
    return ExtensionResult(word, tag)


def upward_extension(pres, signs, w, side):
    """The maximal direct single-arrow word extending w upward.

    For side left this is the L with L^-1 w a generalised word, for side
    right the N with w N one; the trivial result means no arrow fits."""
    _check_side(side, ("left", "right"))
    leftward = side == "left"
    letters = [GenLetter(path_in_P(pres, [a.name]), leftward)
               for a in pres.quiver.arrows]
    return _one_side(pres, signs, w, leftward, letters, _gen_pair_ok,
                     gen_composable,
                     lambda v: gen_sign_of_word(pres, signs, v),
                     "up-left" if leftward else "up-right")


def downward_extension(pres, signs, w, side):
    """The maximal trivial-or-inverse word extending w downward.

    For side left this is the B with B^-1 w a word, for side right the
    D with w D one."""
    _check_side(side, ("left", "right"))
    leftward = side == "left"
    letters = [Letter(a, not leftward) for a in pres.quiver.arrows]
    return _one_side(pres, signs, w, leftward, letters, _word_pair_ok,
                     composable, signs.of_word,
                     "down-left" if leftward else "down-right")


def _check_side(side, allowed):
    if side not in allowed:
        raise ValueError(f"side must be one of {', '.join(allowed)}, "
                         f"not {side!r}")


def _attach(pres, w, left, right, validate):
    """Glue extension results onto the ends of a trivial or finite w."""
    mid = () if isinstance(w, Trivial) else w.items
    ltail = lcore = rcore = rtail = ()
    if left is not None and not isinstance(left.word, Trivial):
        li = invert(left.word)
        if isinstance(li, LeftInfinite):
            ltail, lcore = li.tail, li.core
        else:
            lcore = li.items
    if right is not None and not isinstance(right.word, Trivial):
        if isinstance(right.word, RightInfinite):
            rcore, rtail = right.word.core, right.word.tail
        else:
            rcore = right.word.items
    core = lcore + mid + rcore
    if ltail and rtail:
        out = shapes.make_bi(ltail, core, rtail, 1 - len(lcore))
    elif ltail:
        out = shapes.make_left(ltail, core)
    elif rtail:
        out = shapes.make_right(core, rtail)
    elif core:
        out = shapes.make_finite(core)
    else:
        return w
    return validate(pres, out)


def extend_up(pres, signs, w, side="both"):
    """Attach the maximal upward extensions: L^-1 w, w N or L^-1 w N."""
    _check_side(side, ("left", "right", "both"))
    left = upward_extension(pres, signs, w, "left") \
        if side != "right" else None
    right = upward_extension(pres, signs, w, "right") \
        if side != "left" else None
    return _attach(pres, w, left, right, validate_genword)


def extend_down(pres, signs, w, side="both"):
    """Attach the maximal downward extensions: B^-1 w, w D or B^-1 w D."""
    _check_side(side, ("left", "right", "both"))
    left = downward_extension(pres, signs, w, "left") \
        if side != "right" else None
    right = downward_extension(pres, signs, w, "right") \
        if side != "left" else None
    return _attach(pres, w, left, right, validate_word)


# the resolution of a word

def _gen_middle(pres, a):
    """A as a generalised word: <gamma_i><sigma_i>^-1 per pair, or the
    trivial letter itself."""
    if isinstance(a, Trivial):
        return a
    letters = []
    for gamma, sigma in _alternating_pairs(pres, a.items):
        letters.append(GenLetter(gamma))
        letters.append(GenLetter(sigma, True))
    return Finite(tuple(letters))


def resolution_of_string(pres, signs, verdict):
    """R_C for a classified string word, with its homological degree.

    The four cases key on which ends of C extend by an arrow: the
    extended letter <bB^-1>^-1 (resp. <dD^-1>) joins the middle part,
    the word grows upward on that side, and growing on both sides costs
    a shift by one.  Returns the pair (generalised word, degree).
    """
    if not isinstance(verdict, StringWord):
        raise NotAStringWord("expected a classified string word, got "
                             f"{type(verdict).__name__}")
    dec = verdict.decomposition
    middle = _gen_middle(pres, dec.a)
    bpath = extension_path(pres, signs, dec.b)
    dpath = extension_path(pres, signs, dec.d)
    if bpath is None and dpath is None:
        word = validate_genword(pres, middle)
    else:
        items = () if isinstance(middle, Trivial) else middle.items
        if bpath is not None:
            items = (GenLetter(bpath, True),) + items
        if dpath is not None:
            items = items + (GenLetter(dpath),)
        side = "both" if bpath is not None and dpath is not None \
            else ("left" if bpath is not None else "right")
        word = extend_up(pres, signs, Finite(items), side)
        if side == "both":
            word = shift(word, 1)
    split, reason = _split_with_reason(pres, signs, word)
    assert split is not None, reason
    return word, resolution_degree(word, split)


def resolution_of_band(pres, verdict):
    """R_C for a classified band word: the periodic generalised word
    with one direct letter per inverse run and one inverse letter per
    direct run of the cycle."""
    if not isinstance(verdict, BandWord):
        raise NotABandWord("expected a classified band word, got "
                           f"{type(verdict).__name__}")
    letters = []
    for gamma, sigma in _alternating_pairs(pres, verdict.cycle):
        letters.append(GenLetter(gamma))
        letters.append(GenLetter(sigma, True))
    return validate_genword(pres, shapes.make_periodic(letters, 0))


# the homology word of a resolution

def _run_letters(pres, path, inverse):
    """The word letters spelling path (direct) or path^-1 (inverse)."""
    arrows = [pres.arrow(name) for name in path.arrows]
    if inverse:
        return tuple(Letter(a, True) for a in reversed(arrows))
    return tuple(Letter(a) for a in arrows)


def _word_of_middle(pres, a):
    """The A underneath a middle part: every direct letter opens an
    inverse run, every inverse letter a direct run."""
    if isinstance(a, Trivial):
        return a
    letters = []
    for letter in a.items:
        letters.extend(_run_letters(pres, letter.path, not letter.inverse))
    return Finite(tuple(letters))


def homology_word(pres, signs, w):
    """H of a resolution-shaped generalised word: the string or band
    word whose module the associated complex resolves.

    For a string shape the first letters of B and D keep only the tail
    of their path past the extending arrow, and a trivial B or D is
    regrown downward on that side; a periodic w maps cycle for cycle.
    """
    if isinstance(w, Periodic):
        for s in (0, 1):
            cyc = is_band_resolution(shift(w, s))
            if cyc is not None:
                letters = _word_of_middle(pres, Finite(cyc)).items
                return validate_word(pres, shapes.make_periodic(letters, 0))
        raise NotARecognizedResolution(
            "no rotation parity alternates direct-inverse from position 1")
    split, reason = _split_with_reason(pres, signs, w)
    if split is None:
        raise NotARecognizedResolution(reason)
    middle = _word_of_middle(pres, split.a)
    mid_items = () if isinstance(middle, Trivial) else middle.items
    btriv = isinstance(split.b, Trivial)
    dtriv = isinstance(split.d, Trivial)
    sigma = () if btriv else tuple(
        Letter(pres.arrow(n))
        for n in first_letter(split.b).path.arrows[1:])
    mu = () if dtriv else tuple(
        Letter(pres.arrow(n), True)
        for n in reversed(first_letter(split.d).path.arrows[1:]))
    if btriv and dtriv:
        return extend_down(pres, signs, middle, "both")
    if btriv:
        items = mid_items + mu
        return extend_down(pres, signs,
                           Finite(items) if items else middle, "left")
    if dtriv:
        items = sigma + mid_items
        return extend_down(pres, signs,
                           Finite(items) if items else middle, "right")
    items = sigma + mid_items + mu
    return validate_word(pres, Finite(items) if items else middle)


# module isomorphism

@dataclass(frozen=True)
class StringSide:
    """An isomorphism-query side naming the string module M(word)."""

    word: object


@dataclass(frozen=True)
class BandSide:
    """An isomorphism-query side naming the band module M(word, v)."""

    word: object
    v: object


@dataclass(frozen=True)
class IsoWitness:
    """Evidence for a module isomorphism.

    The right word equals the left one shifted by `shift`, inverted
    first when `inverted`; band witnesses also carry the shared
    invariant factors of the two T-modules as `certificate`.
    """

    shift: int
    inverted: bool
    certificate: object = None


def _checked_verdict(pres, signs, side):
    verdict = classify_word(pres, signs, side.word)
    if isinstance(side, StringSide) and not isinstance(verdict, StringWord):
        raise NotAStringWord(
            f"side word classifies as {type(verdict).__name__}")
    if isinstance(side, BandSide) and not isinstance(verdict, BandWord):
        raise NotABandWord(
            f"side word classifies as {type(verdict).__name__}")
    return verdict


def modules_isomorphic(pres, signs, lhs, rhs):
    """An IsoWitness when the two named modules are isomorphic, else
    None.  A string module is never isomorphic to a band module; band
    sides additionally need similar T-modules, against the inverse
    matrix when the witness inverts the word."""
    for side in (lhs, rhs):
        _checked_verdict(pres, signs, side)
    if isinstance(lhs, StringSide) != isinstance(rhs, StringSide):
        return None
    pair = words_equivalent(lhs.word, rhs.word)
    if pair is None:
        return None
    n, inverted = pair
    if isinstance(lhs, StringSide):
        return IsoWitness(n, inverted)
    if lhs.v.prime != rhs.v.prime:
        raise ValueError("band sides use different primes")
    other = rhs.v.res() if inverted else rhs.v
    cert = similarity_certificate(lhs.v.matrix, other.matrix, lhs.v.prime)
    if cert is None:
        return None
    return IsoWitness(n, inverted, cert)


def similarity_certificate(v, w, prime):
    """The shared invariant factors of xI - v and xI - w over F_prime,
    or None when the matrices are not similar."""
    if len(v) != len(w):
        raise RankMismatch(f"rank {len(v)} against rank {len(w)}")
    left = fp.invariant_factors(v, prime)
    right = fp.invariant_factors(w, prime)
    return left if left == right else None
