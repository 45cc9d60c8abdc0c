"""Letters, signs and words over a gentle presentation.

A word is a letter sequence in one of the six index shapes of
``shapes``; infinite tails must repeat a primitive cycle (or its
inverse), which keeps every representable word finitely describable.
Words carry their origin: a shifted word C[n] differs from C as a word
even though the two present isomorphic modules.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from . import shapes
from .errors import (
    HeadTailMismatch,
    InverseCancellation,
    NoValidAssignment,
    NotAStringWord,
    NotClassifiable,
    RelationCrossed,
    ShapeMismatch,
    TailNotPeriodicizable,
    VertexUnknown,
)
from .presentation import Arrow
from .shapes import (
    BiInfinite,
    Finite,
    LeftInfinite,
    PeakReport,
    Periodic,
    RightInfinite,
    Trivial,
    invert,
    item_at,
    peaks,
    shift,
)

__all__ = [
    "Letter", "SignAssignment", "assign_signs", "check_word", "parse_word",
    "render_word", "invert", "shift", "item_at", "peaks", "composable",
    "concat", "classify_word", "words_equivalent", "StringDecomposition",
    "StringWord", "BandWord", "EventuallyUpward", "PrimitivePeriodic",
]


@dataclass(frozen=True)
class Letter:
    arrow: Arrow
    inverse: bool = False

    @property
    def name(self):
        return self.arrow.name

    @property
    def head(self):
        return self.arrow.tail if self.inverse else self.arrow.head

    @property
    def tail(self):
        return self.arrow.head if self.inverse else self.arrow.tail

    @property
    def sort_key(self):
        return (self.inverse, self.arrow.name)

    def invert(self):
        return Letter(self.arrow, not self.inverse)

    def __str__(self):
        return f"{self.name}^-1" if self.inverse else self.name

    def __repr__(self):
        return f"Letter({self})"


def all_letters(pres):
    out = [Letter(a) for a in pres.quiver.arrows]
    out += [Letter(a, True) for a in pres.quiver.arrows]
    return out


class SignAssignment:
    """A choice of sign for every letter, as a plain lookup table."""

    def __init__(self, table):
        self._table = dict(table)

    def of(self, letter):
        return self._table[(letter.name, letter.inverse)]

    def of_word(self, w):
        if isinstance(w, Trivial):
            return w.delta
        return self.of(first_letter(w))

    def items(self):
        return sorted(self._table.items())

    def __eq__(self, other):
        return isinstance(other, SignAssignment) and \
            self._table == other._table


def _sign_exception(pres, l1, l2):
    # the one allowed same-sign pair: {x^-1, y} with xy a relation
    if l1.inverse == l2.inverse:
        return False
    inv, direct = (l1, l2) if l1.inverse else (l2, l1)
    return pres.in_ideal(inv.name, direct.name)


def assign_signs(pres, flip=False):
    """Deterministic signs: per head vertex, the lexicographically least
    satisfying vector (letters ordered direct-first then by arrow name,
    +1 preferred)."""
    groups = {}
    for letter in sorted(all_letters(pres), key=lambda l: l.sort_key):
        groups.setdefault(letter.head, []).append(letter)
    table = {}
    for vertex in pres.quiver.vertices:
        group = groups.get(vertex, [])
        for values in itertools.product((1, -1), repeat=len(group)):
            ok = True
            for (i, l1), (j, l2) in itertools.combinations(
                    enumerate(group), 2):
                if values[i] == values[j] and \
                        not _sign_exception(pres, l1, l2):
                    ok = False
                    break
            if ok:
                for letter, value in zip(group, values):
                    table[(letter.name, letter.inverse)] = \
                        -value if flip else value
                break
        else:
            raise NoValidAssignment(
                f"no sign assignment for the letters at vertex {vertex}")
    return SignAssignment(table)


# word accessors

def first_letter(w):
    if isinstance(w, Finite):
        return w.items[0]
    if isinstance(w, RightInfinite):
        return w.core[0] if w.core else w.tail[0]
    raise ShapeMismatch(f"{type(w).__name__} word has no first letter")


def word_head(w):
    if isinstance(w, Trivial):
        return w.vertex
    return first_letter(w).head


def stored_letters(w):
    if isinstance(w, Trivial):
        return ()
    if isinstance(w, Finite):
        return w.items
    if isinstance(w, RightInfinite):
        return w.core + w.tail
    if isinstance(w, LeftInfinite):
        return w.tail + w.core
    if isinstance(w, BiInfinite):
        return w.ltail + w.core + w.rtail
    if isinstance(w, Periodic):
        return w.cycle
    raise TypeError(f"not a word: {w!r}")


def vertex_at(w, i):
    """v_C(i): the vertex the module basis element g_i lives at."""
    a = item_at(w, i)
    if a is not None:
        return a.tail
    b = item_at(w, i + 1)
    if b is not None:
        return b.head
    if isinstance(w, Trivial):
        return w.vertex
    raise ShapeMismatch(f"position {i} outside the word")


# validation

def validate_word(pres, w):
    """Check the word conditions, returning w itself.

    Adjacent letters must chain head-to-tail, never cancel, and an
    equal-direction pair must not spell a relation. Infinite tails must
    repeat in a single direction; the tail-tail and tail-core junctions
    are covered by the same adjacency scan.
    """
    if isinstance(w, Trivial):
        if w.vertex not in pres.quiver.vertices:
            raise VertexUnknown(f"unknown vertex {w.vertex!r}")
        if w.delta not in (1, -1):
            raise ValueError(f"trivial word sign must be +1 or -1")
        return w
    units = []
    if isinstance(w, RightInfinite):
        units = [w.tail]
    elif isinstance(w, LeftInfinite):
        units = [w.tail]
    elif isinstance(w, BiInfinite):
        units = [w.ltail, w.rtail]
    for unit in units:
        if len({l.inverse for l in unit}) > 1:
            raise TailNotPeriodicizable(
                "tail mixes direct and inverse letters: "
                + " ".join(str(l) for l in unit))
    for i, a, b in shapes.adjacent_pairs(w):
        if a.tail != b.head:
            raise HeadTailMismatch(
                i, f"t({a}) = {a.tail} but h({b}) = {b.head} at index {i}")
        if a.invert() == b:
            raise InverseCancellation(
                i, f"{a} followed by its inverse at index {i}")
        if not a.inverse and not b.inverse and pres.in_ideal(a.name, b.name):
            raise RelationCrossed(
                i, f"{a}{b} crosses the relation {a.name}*{b.name}")
        if a.inverse and b.inverse and pres.in_ideal(b.name, a.name):
            raise RelationCrossed(
                i, f"{a}{b} crosses the relation {b.name}*{a.name}")
    return w


def finite_word(pres, letters):
    return validate_word(pres, shapes.make_finite(letters))


def right_word(pres, core, tail):
    return validate_word(pres, shapes.make_right(core, tail))


def left_word(pres, tail, core):
    return validate_word(pres, shapes.make_left(tail, core))


def bi_word(pres, ltail, core, rtail, cstart=1):
    return validate_word(pres, shapes.make_bi(ltail, core, rtail, cstart))


def periodic_word(pres, cycle, offset=0):
    if not tuple(cycle):
        raise ValueError("periodic word needs a nonempty cycle")
    return validate_word(pres, shapes.make_periodic(cycle, offset))


# parsing and rendering

_TOKEN_RE = re.compile(
    r"inf\(|\)\^inf|\)inf|[()]|@-?\d+|1_\{[^{}]+\}|[^\s()@]+")
_TRIVIAL_RE = re.compile(r"1_\{([^,{}]+),([+-]1)\}")
_POWER_RE = re.compile(r"(.+?)\^(-?\d+)$")


def _scan(text):
    tokens = _TOKEN_RE.findall(text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"cannot tokenize {text!r}")
    return tokens


def _expand_tokens(pres, tokens):
    letters = []
    for tok in tokens:
        m = _POWER_RE.match(tok)
        name, k = (m.group(1), int(m.group(2))) if m else (tok, 1)
        if k == 0:
            raise ValueError(f"zero power in {tok!r}")
        arrow = pres.arrow(name)
        letters.extend([Letter(arrow, k < 0)] * abs(k))
    return tuple(letters)


def parse_word(pres, text):
    """Parse the word grammar without canonicalizing or validating."""
    text = text.strip()
    m = _TRIVIAL_RE.fullmatch(text)
    if m:
        return Trivial(m.group(1), int(m.group(2)))
    ltail, core, rtail, periodic, marker = \
        shapes.parse_structure(_scan(text))
    if periodic:
        return shapes.make_periodic(_expand_tokens(pres, core), marker or 0)
    core_letters = _expand_tokens(pres, core)
    if ltail and rtail:
        return shapes.make_bi(_expand_tokens(pres, ltail), core_letters,
                              _expand_tokens(pres, rtail),
                              1 if marker is None else marker)
    if marker is not None:
        raise ValueError("@ marker only applies to bi-infinite words")
    if ltail:
        return shapes.make_left(_expand_tokens(pres, ltail), core_letters)
    if rtail:
        return shapes.make_right(core_letters, _expand_tokens(pres, rtail))
    return shapes.make_finite(core_letters)


def check_word(pres, signs, text):
    """Parse and fully validate a word; the result is canonical."""
    return validate_word(pres, parse_word(pres, text))


def _compress(letters):
    toks = []
    for letter, run in itertools.groupby(letters):
        n = len(list(run))
        if letter.inverse:
            toks.append(f"{letter.name}^-{n}")
        elif n == 1:
            toks.append(letter.name)
        else:
            toks.append(f"{letter.name}^{n}")
    return " ".join(toks)


def render_word(w):
    if isinstance(w, Trivial):
        sign = "+1" if w.delta > 0 else "-1"
        return f"1_{{{w.vertex},{sign}}}"
    if isinstance(w, Finite):
        return _compress(w.items)
    if isinstance(w, RightInfinite):
        parts = ([_compress(w.core)] if w.core else [])
        return " ".join(parts + [f"({_compress(w.tail)})^inf"])
    if isinstance(w, LeftInfinite):
        parts = [f"inf({_compress(w.tail)})"]
        if w.core:
            parts.append(_compress(w.core))
        return " ".join(parts)
    if isinstance(w, BiInfinite):
        at = "" if w.cstart == 1 else f"@{w.cstart}"
        parts = [f"inf({_compress(w.ltail)})"]
        if w.core:
            parts.append(_compress(w.core))
        parts.append(f"({_compress(w.rtail)})^inf{at}")
        return " ".join(parts)
    if isinstance(w, Periodic):
        at = f"@{w.offset}" if w.offset else ""
        return f"inf({_compress(w.cycle)})inf{at}"
    raise TypeError(f"not a word: {w!r}")


# composition

def composable(pres, signs, c, d):
    """Whether cd is a word: h(c^-1) = h(d) and s(c^-1) = -s(d)."""
    if not isinstance(c, (Trivial, Finite, LeftInfinite)):
        raise ShapeMismatch("left factor must end: trivial, finite or "
                            "left infinite")
    if not isinstance(d, (Trivial, Finite, RightInfinite)):
        raise ShapeMismatch("right factor must begin: trivial, finite or "
                            "right infinite")
    ci = invert(c)
    return word_head(ci) == word_head(d) and \
        signs.of_word(ci) == -signs.of_word(d)


def concat(pres, signs, c, d):
    """The word cd, validated letter by letter.

    For nontrivial factors this checks the junction through the usual
    word conditions, independent of the sign shortcut in composable().
    Trivial factors compose by definition, so their vertex and sign are
    checked directly here.
    """
    if not isinstance(c, (Trivial, Finite, LeftInfinite)):
        raise ShapeMismatch("left factor must end: trivial, finite or "
                            "left infinite")
    if not isinstance(d, (Trivial, Finite, RightInfinite)):
        raise ShapeMismatch("right factor must begin: trivial, finite or "
                            "right infinite")
    if isinstance(c, Trivial):
        if c.vertex != word_head(d):
            raise HeadTailMismatch(
                0, f"trivial word at {c.vertex} against {word_head(d)}")
        if c.delta != signs.of_word(d):
            raise ShapeMismatch("trivial left factor sign mismatch")
        return d
    if isinstance(d, Trivial):
        ci = invert(c)
        if d.vertex != word_head(ci):
            raise HeadTailMismatch(
                0, f"trivial word at {d.vertex} against {word_head(ci)}")
        if -d.delta != signs.of_word(ci):
            raise ShapeMismatch("trivial right factor sign mismatch")
        return c
    if isinstance(c, Finite) and isinstance(d, Finite):
        w = shapes.make_finite(c.items + d.items)
    elif isinstance(c, Finite):
        w = shapes.make_right(c.items + d.core, d.tail)
    elif isinstance(d, Finite):
        w = shapes.make_left(c.tail, c.core + d.items)
    else:
        w = shapes.make_bi(c.tail, c.core + d.core, d.tail,
                           1 - len(c.core))
    return validate_word(pres, w)


# classification

@dataclass(frozen=True)
class StringDecomposition:
    b: object
    a: object
    d: object
    peaks: tuple


@dataclass(frozen=True)
class StringWord:
    shift: int
    decomposition: StringDecomposition


@dataclass(frozen=True)
class BandWord:
    shift: int
    cycle: tuple


@dataclass(frozen=True)
class EventuallyUpward:
    pass


@dataclass(frozen=True)
class PrimitivePeriodic:
    pass


def word_slice_le(pres, signs, w, i):
    """C_{<=i}, with the sign-matched trivial word when empty."""
    part = shapes.slice_le(w, i)
    if part is not None:
        return part
    nxt = item_at(w, i + 1)
    return Trivial(vertex_at(w, i), signs.of(nxt))


def word_slice_gt(pres, signs, w, i):
    """C_{>i}, with the sign-matched trivial word when empty."""
    part = shapes.slice_gt(w, i)
    if part is not None:
        return part
    prev = item_at(w, i)
    return Trivial(vertex_at(w, i), -signs.of(prev.invert()))


def _all_inverse(w):
    return all(l.inverse for l in stored_letters(w))


def _decompose(pres, signs, w, idx):
    p0, pd = idx[0], idx[-1]
    b = invert(word_slice_le(pres, signs, w, p0))
    d = word_slice_gt(pres, signs, w, pd)
    if pd > p0:
        a = Finite(tuple(item_at(w, j) for j in range(p0 + 1, pd + 1)))
        if not a.items[0].inverse or a.items[-1].inverse:
            raise NotAStringWord("middle part does not alternate")
    else:
        delta = signs.of_word(d) if not isinstance(d, Trivial) \
            else -signs.of_word(b)
        a = Trivial(vertex_at(w, p0), delta)
    for part in (b, d):
        if not isinstance(part, Trivial) and not _all_inverse(part):
            raise NotAStringWord("outer part is not an inverse word")
    return StringDecomposition(b, a, d, tuple(idx))


def classify_word(pres, signs, w):
    """String word (with shift and decomposition), band word (with the
    smallest admissible shift), eventually upward, or primitive
    periodic."""
    if isinstance(w, Trivial):
        dec = StringDecomposition(Trivial(w.vertex, -w.delta),
                                  Trivial(w.vertex, w.delta),
                                  Trivial(w.vertex, w.delta), (0,))
        return StringWord(0, dec)
    if isinstance(w, Periodic):
        if len({l.inverse for l in w.cycle}) == 1:
            return PrimitivePeriodic()
        report = peaks(w)
        n = report.indices[0]
        p = len(w.cycle)
        cycle = tuple(item_at(w, n + 1 + j) for j in range(p))
        return BandWord(n, cycle)
    if isinstance(w, RightInfinite):
        upward = not w.tail[0].inverse
    elif isinstance(w, LeftInfinite):
        upward = w.tail[0].inverse
    elif isinstance(w, BiInfinite):
        upward = w.ltail[0].inverse or not w.rtail[0].inverse
    else:
        upward = False
    if upward:
        return EventuallyUpward()
    report = peaks(w)
    if not report.indices:
        raise NotClassifiable(f"no peaks in {render_word(w)}")
    n = report.indices[0] if isinstance(w, BiInfinite) else 0
    shifted = shift(w, n)
    idx = tuple(i - n for i in report.indices)
    return StringWord(n, _decompose(pres, signs, shifted, idx))


# equivalence

def _shift_witness(c, e):
    if type(c) is not type(e):
        return None
    if isinstance(c, BiInfinite):
        if (c.ltail, c.core, c.rtail) == (e.ltail, e.core, e.rtail):
            return c.cstart - e.cstart
        return None
    if isinstance(c, Periodic):
        if c.cycle == e.cycle:
            return (e.offset - c.offset) % len(c.cycle)
        return None
    return 0 if c == e else None


def words_equivalent(c, e):
    """A witness (n, inverted) with e = c[n] or c^-1[n], else None."""
    n = _shift_witness(c, e)
    if n is not None:
        return (n, False)
    n = _shift_witness(invert(c), e)
    if n is not None:
        return (n, True)
    return None


# random words, for tests

def _pair_ok(pres, a, b):
    if a.tail != b.head or a.invert() == b:
        return False
    if not a.inverse and not b.inverse and pres.in_ideal(a.name, b.name):
        return False
    if a.inverse and b.inverse and pres.in_ideal(b.name, a.name):
        return False
    return True


def random_finite_word(pres, rng, length):
    letters = all_letters(pres)
    seq = [rng.choice(letters)]
    for _ in range(length - 1):
        options = [l for l in letters if _pair_ok(pres, seq[-1], l)]
        if not options:
            break
        seq.append(rng.choice(options))
    return Finite(tuple(seq))


def random_band_word(pres, rng, max_len, attempts=200):
    """A valid periodic word with mixed directions, or None."""
    letters = all_letters(pres)
    for _ in range(attempts):
        seq = [rng.choice(letters)]
        target = rng.randint(2, max_len)
        for _ in range(target - 1):
            options = [l for l in letters if _pair_ok(pres, seq[-1], l)]
            if not options:
                break
            seq.append(rng.choice(options))
        if len(seq) < 2 or len({l.inverse for l in seq}) == 1:
            continue
        if not _pair_ok(pres, seq[-1], seq[0]):
            continue
        try:
            return periodic_word(pres, seq)
        except Exception:
            continue
    return None
