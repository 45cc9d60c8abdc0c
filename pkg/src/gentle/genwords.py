"""Generalised words: letter sequences over whole relation-free paths.

A generalised letter <p> consumes a nontrivial path p in P in one step;
its formal inverse <p>^-1 walks the path backward.  The index shapes and
canonical forms are the ones from ``shapes``, but adjacency of two
letters is governed by four rules keyed on the direction pattern of the
pair, and tails may mix directions.  Each letter moves the homological
degree by one: down for direct letters, up for inverse ones.  A periodic
word must return to degree zero over one period.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import groupby

from . import shapes
from .errors import (
    AdjacencyRuleViolated,
    IndexOutOfShape,
    NotCyclic,
    PathNotInP,
    ShapeMismatch,
    VertexUnknown,
    WindowRequired,
)
from .presentation import (
    Path,
    enumerate_P,
    first_arrow,
    last_arrow,
    path_in_P,
)
from .shapes import (
    BiInfinite,
    Finite,
    LeftInfinite,
    Periodic,
    RightInfinite,
    Trivial,
    invert,
    item_at,
    position_in,
    shift,
)
from .words import Letter, first_letter, vertex_at, word_head

__all__ = [
    "GenLetter", "gen_sign", "gen_sign_of_word", "check_genword",
    "parse_genword", "render_genword", "validate_genword", "invert",
    "shift", "item_at", "hstep", "hdeg", "hdeg_preimage", "PreimageReport",
    "gen_composable", "ResolutionDecomposition", "is_string_resolution",
    "is_band_resolution", "resolution_degree",
]


def _render_path(path):
    toks = []
    for name, run in groupby(path.arrows):
        n = len(list(run))
        toks.append(name if n == 1 else f"{name}^{n}")
    return "*".join(toks)


@dataclass(frozen=True)
class GenLetter:
    """A path in P traversed as a single letter.

    The letter runs against the path: <p> starts where p ends, so its
    head is t(p) and its tail is h(p). The inverse letter runs along p.
    """

    path: Path
    inverse: bool = False

    @property
    def head(self):
        return self.path.head if self.inverse else self.path.tail

    @property
    def tail(self):
        return self.path.tail if self.inverse else self.path.head

    @property
    def sort_key(self):
        return (self.inverse, self.path.arrows)

    def invert(self):
        return GenLetter(self.path, not self.inverse)

    def __str__(self):
        body = f"<{_render_path(self.path)}>"
        return body + "^-1" if self.inverse else body

    def __repr__(self):
        return f"GenLetter({self})"


# signs

def gen_sign(pres, signs, letter):
    """s(<p>) = s(f(p)^-1) and s(<p>^-1) = -s(l(p)), in terms of the
    letter signs of the underlying presentation."""
    if letter.inverse:
        return -signs.of(Letter(last_arrow(pres, letter.path)))
    return signs.of(Letter(first_arrow(pres, letter.path), True))


def gen_sign_of_word(pres, signs, w):
    if isinstance(w, Trivial):
        return w.delta
    return gen_sign(pres, signs, first_letter(w))


# homological degree

def hstep(letter):
    """The degree step a single letter contributes: -1 direct, +1
    inverse."""
    return 1 if letter.inverse else -1


def hdeg(w, i):
    """H_C(i): the sum of the steps of the letters between positions 0
    and i, signed by the side i lies on."""
    if not position_in(w, i):
        raise IndexOutOfShape(f"position {i} outside the word")
    if i >= 0:
        return sum(hstep(item_at(w, j)) for j in range(1, i + 1))
    return -sum(hstep(item_at(w, j)) for j in range(i + 1, 1))


@dataclass(frozen=True)
class PreimageReport:
    indices: tuple
    period: int | None


def _side_bound(w, n, edge, unit, direction):
    # positions past `edge` see only the tail unit, so the degree there
    # is periodic up to a fixed drift per copy
    p = len(unit)
    drift = direction * sum(hstep(letter) for letter in unit)
    if drift == 0:
        for step in range(1, p + 1):
            if hdeg(w, edge + direction * step) == n:
                raise WindowRequired(
                    f"the preimage of degree {n} is infinite; "
                    "pass a window")
        return edge
    periods = abs(n - hdeg(w, edge)) + p + 1
    return edge + direction * periods * p


def _preimage_window(w, n):
    if isinstance(w, RightInfinite):
        return 0, _side_bound(w, n, len(w.core), w.tail, 1)
    if isinstance(w, LeftInfinite):
        return _side_bound(w, n, -len(w.core), w.tail, -1), 0
    hi = _side_bound(w, n, w.cstart + len(w.core) - 1, w.rtail, 1)
    lo = _side_bound(w, n, w.cstart - 1, w.ltail, -1)
    return lo, hi


def hdeg_preimage(w, n, window=None):
    """The positions i with hdeg(w, i) == n.

    Finite shapes give the whole set; the periodic shape reports one
    period's worth of indices (0..p-1) together with the period. On the
    remaining shapes the set is computed when finite; a tail that
    revisits degree n forever requires an explicit (lo, hi) window, and
    any window clips the result to it.
    """
    if window is not None:
        lo, hi = window
        idx = tuple(i for i in range(lo, hi + 1)
                    if position_in(w, i) and hdeg(w, i) == n)
        return PreimageReport(idx, None)
    if isinstance(w, Trivial):
        return PreimageReport((0,) if n == 0 else (), None)
    if isinstance(w, Periodic):
        p = len(w.cycle)
        return PreimageReport(
            tuple(i for i in range(p) if hdeg(w, i) == n), p)
    if isinstance(w, Finite):
        return PreimageReport(
            tuple(i for i in range(len(w.items) + 1) if hdeg(w, i) == n),
            None)
    lo, hi = _preimage_window(w, n)
    return PreimageReport(
        tuple(i for i in range(lo, hi + 1) if hdeg(w, i) == n), None)


# validation

def _letter_positions(w, copies=1):
    """Positions covering the core and `copies` copies of each tail."""
    if isinstance(w, Finite):
        return range(1, len(w.items) + 1)
    if isinstance(w, RightInfinite):
        return range(1, len(w.core) + copies * len(w.tail) + 1)
    if isinstance(w, LeftInfinite):
        return range(1 - len(w.core) - copies * len(w.tail), 1)
    if isinstance(w, BiInfinite):
        return range(w.cstart - copies * len(w.ltail),
                     w.cstart + len(w.core) + copies * len(w.rtail))
    if isinstance(w, Periodic):
        return range(1, len(w.cycle) + 1)
    return range(0)


def _check_letter(pres, i, letter):
    try:
        built = path_in_P(pres, letter.path.arrows)
    except ValueError as exc:
        raise PathNotInP(i, f"index {i}: {exc}") from None
    if built != letter.path:
        raise PathNotInP(
            i, f"index {i}: {_render_path(letter.path)} is not in P")


def _check_pair(pres, i, a, b):
    pair = f"{a} {b}"
    if not a.inverse and b.inverse:
        if a.path.head != b.path.head or \
                a.path.arrows[0] == b.path.arrows[0]:
            raise AdjacencyRuleViolated(
                i, 1, f"rule 1 fails for {pair} at index {i}: the paths "
                "must share their head but not their last arrow")
    elif a.inverse and b.inverse:
        if not pres.in_ideal(a.path.arrows[-1], b.path.arrows[0]):
            raise AdjacencyRuleViolated(
                i, 2, f"rule 2 fails for {pair} at index {i}: "
                f"{a.path.arrows[-1]}*{b.path.arrows[0]} is not a relation")
    elif a.inverse and not b.inverse:
        if a.path.tail != b.path.tail or \
                a.path.arrows[-1] == b.path.arrows[-1]:
            raise AdjacencyRuleViolated(
                i, 3, f"rule 3 fails for {pair} at index {i}: the paths "
                "must share their tail but not their first arrow")
    else:
        if not pres.in_ideal(b.path.arrows[-1], a.path.arrows[0]):
            raise AdjacencyRuleViolated(
                i, 4, f"rule 4 fails for {pair} at index {i}: "
                f"{b.path.arrows[-1]}*{a.path.arrows[0]} is not a relation")


def _pair_ok(pres, a, b):
    try:
        _check_pair(pres, 0, a, b)
    except AdjacencyRuleViolated:
        return False
    return True


def validate_genword(pres, w):
    """Check the generalised-word conditions, returning w itself.

    Every letter must carry a path in P and every adjacent pair must
    satisfy the rule for its direction pattern; the scan covers tail
    junctions and the periodic wrap. A periodic cycle must additionally
    come back to homological degree zero.
    """
    if isinstance(w, Trivial):
        if w.vertex not in pres.quiver.vertices:
            raise VertexUnknown(f"unknown vertex {w.vertex!r}")
        if w.delta not in (1, -1):
            raise ValueError("trivial word sign must be +1 or -1")
        return w
    for i in _letter_positions(w):
        _check_letter(pres, i, item_at(w, i))
    for i, a, b in shapes.adjacent_pairs(w):
        _check_pair(pres, i, a, b)
    if isinstance(w, Periodic):
        d = sum(hstep(letter) for letter in w.cycle)
        if d != 0:
            raise NotCyclic(
                f"the cycle shifts homological degree by {d} per period; "
                "only its finite powers are words")
    return w


# parsing and rendering

_GTOKEN_RE = re.compile(
    r"inf\(|\)\^inf|\)inf|[()]|@-?\d+|1_\{[^{}]+\}"
    r"|<[^<>]+>\^-1|<[^<>]+>|[^\s()@<>]+")
_TRIVIAL_RE = re.compile(r"1_\{([^,{}]+),([+-]1)\}")
_GLETTER_RE = re.compile(r"<([^<>]+)>(\^-1)?")
_SEG_POWER_RE = re.compile(r"(.+?)\^(\d+)$")


def _scan(text):
    tokens = _GTOKEN_RE.findall(text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise ValueError(f"cannot tokenize {text!r}")
    return tokens


def _expand_tokens(pres, tokens):
    letters = []
    for tok in tokens:
        m = _GLETTER_RE.fullmatch(tok)
        if not m:
            raise ValueError(f"not a generalised letter: {tok!r}")
        names = []
        for seg in m.group(1).split("*"):
            pm = _SEG_POWER_RE.fullmatch(seg)
            name, k = (pm.group(1), int(pm.group(2))) if pm else (seg, 1)
            if k < 1:
                raise ValueError(f"zero power in {tok!r}")
            names.extend([name] * k)
        arrows = [pres.arrow(n) for n in names]
        path = Path(tuple(names), tail=arrows[-1].tail, head=arrows[0].head)
        letters.append(GenLetter(path, m.group(2) is not None))
    return tuple(letters)


def parse_genword(pres, text):
    """Parse the generalised-word grammar without validating."""
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


def check_genword(pres, text):
    """Parse and fully validate a generalised word; the result is
    canonical."""
    return validate_genword(pres, parse_genword(pres, text))


def render_genword(w):
    def toks(letters):
        return " ".join(str(letter) for letter in letters)

    if isinstance(w, Trivial):
        sign = "+1" if w.delta > 0 else "-1"
        return f"1_{{{w.vertex},{sign}}}"
    if isinstance(w, Finite):
        return toks(w.items)
    if isinstance(w, RightInfinite):
        parts = ([toks(w.core)] if w.core else [])
        return " ".join(parts + [f"({toks(w.tail)})^inf"])
    if isinstance(w, LeftInfinite):
        parts = [f"inf({toks(w.tail)})"]
        if w.core:
            parts.append(toks(w.core))
        return " ".join(parts)
    if isinstance(w, BiInfinite):
        at = "" if w.cstart == 1 else f"@{w.cstart}"
        parts = [f"inf({toks(w.ltail)})"]
        if w.core:
            parts.append(toks(w.core))
        parts.append(f"({toks(w.rtail)})^inf{at}")
        return " ".join(parts)
    if isinstance(w, Periodic):
        at = f"@{w.offset}" if w.offset else ""
        return f"inf({toks(w.cycle)})inf{at}"
    raise TypeError(f"not a generalised word: {w!r}")


# composition

def gen_composable(pres, signs, c, d):
    """Whether cd is a generalised word: h(c^-1) = h(d) and
    s(c^-1) = -s(d)."""
    if not isinstance(c, (Trivial, Finite, LeftInfinite)):
        raise ShapeMismatch("left factor must end: trivial, finite or "
                            "left infinite")
    if not isinstance(d, (Trivial, Finite, RightInfinite)):
        raise ShapeMismatch("right factor must begin: trivial, finite or "
                            "right infinite")
    ci = invert(c)
    return word_head(ci) == word_head(d) and \
        gen_sign_of_word(pres, signs, ci) == \
        -gen_sign_of_word(pres, signs, d)


# resolution-shaped words

@dataclass(frozen=True)
class ResolutionDecomposition:
    """A split C = B^-1 (A D): inverse run, alternating middle, direct
    run. The interval holds the positions the middle spans."""

    b: object
    a: object
    d: object
    interval: tuple


def resolution_degree(w, dec):
    """The homological degree the alternating middle sits in."""
    return hdeg(w, dec.interval[0])


def _leading_inverse_end(w):
    # the position where the maximal leading inverse run ends, or None
    # when the run cannot form a left factor
    if isinstance(w, (LeftInfinite, BiInfinite)):
        ltail = w.tail if isinstance(w, LeftInfinite) else w.ltail
        if not all(letter.inverse for letter in ltail):
            return None
    if isinstance(w, Finite):
        first, last = 1, len(w.items)
    elif isinstance(w, RightInfinite):
        first, last = 1, len(w.core) + len(w.tail)
    elif isinstance(w, LeftInfinite):
        first, last = 1 - len(w.core), 0
    else:
        first = w.cstart
        last = w.cstart + len(w.core) + len(w.rtail) - 1
    n = first - 1
    for i in range(first, last + 1):
        if not item_at(w, i).inverse:
            return n
        n = i
    if isinstance(w, (RightInfinite, BiInfinite)):
        # every stored letter is inverse, so the run never ends
        return None
    return n


def _trailing_direct_start(w):
    # the position just before the maximal trailing direct run, or None
    if isinstance(w, (RightInfinite, BiInfinite)):
        rtail = w.tail if isinstance(w, RightInfinite) else w.rtail
        if any(letter.inverse for letter in rtail):
            return None
    if isinstance(w, Finite):
        first, last = 1, len(w.items)
    elif isinstance(w, LeftInfinite):
        first, last = 1 - len(w.core) - len(w.tail), 0
    elif isinstance(w, RightInfinite):
        first, last = 1, len(w.core)
    else:
        first = w.cstart - len(w.ltail)
        last = w.cstart + len(w.core) - 1
    ip = last
    for i in range(last, first - 1, -1):
        if item_at(w, i).inverse:
            return ip
        ip = i - 1
    if isinstance(w, (LeftInfinite, BiInfinite)):
        return None
    return ip


def _split_with_reason(pres, signs, w):
    # (decomposition, None) on success, (None, first broken pattern) else
    if isinstance(w, Periodic):
        return None, "periodic words present band complexes, not strings"
    if isinstance(w, Trivial):
        return ResolutionDecomposition(
            Trivial(w.vertex, -w.delta), w, w, (0, 0)), None
    n = _leading_inverse_end(w)
    if n is None:
        return None, "the left letters do not form an inverse run"
    ip = _trailing_direct_start(w)
    if ip is None:
        return None, "the right letters do not form a direct run"
    if isinstance(w, BiInfinite) and n != 0:
        return None, f"the leading inverse run ends at position {n}, not 0"
    assert n <= ip
    for j, i in enumerate(range(n + 1, ip + 1)):
        if item_at(w, i).inverse != (j % 2 == 1):
            want = "inverse" if j % 2 == 1 else "direct"
            return None, (f"position {i}: middle letter {item_at(w, i)} "
                          f"is not {want}")
    # all of B and D except their first letters must be single arrows
    for i in _letter_positions(w, copies=2):
        if (i < n or i > ip + 1) and len(item_at(w, i).path) != 1:
            return None, (f"position {i}: run letter {item_at(w, i)} is "
                          f"not a single arrow")
    # a finite nontrivial B or D must not extend further
    if isinstance(w, (Finite, RightInfinite)) and n >= 1:
        lead = item_at(w, 1).path
        ext = [a for a in pres.quiver.arrows
               if pres.in_ideal(a.name, lead.arrows[0])]
        if ext:
            return None, f"the inverse run extends by arrow {ext[0].name}"
    m_last = len(w.items) if isinstance(w, Finite) else 0
    if isinstance(w, (Finite, LeftInfinite)) and ip < m_last:
        trail = item_at(w, m_last).path
        ext = [a for a in pres.quiver.arrows
               if pres.in_ideal(a.name, trail.arrows[0])]
        if ext:
            return None, f"the direct run extends by arrow {ext[0].name}"
    b_raw = shapes.slice_le(w, n)
    b_part = shapes.invert(b_raw) if b_raw is not None else \
        Trivial(word_head(w), -gen_sign_of_word(pres, signs, w))
    d_raw = shapes.slice_gt(w, ip)
    d_part = d_raw if d_raw is not None else \
        Trivial(vertex_at(w, ip),
                -gen_sign_of_word(pres, signs, shapes.invert(w)))
    if n == ip:
        if isinstance(d_part, Trivial):
            eps = -gen_sign_of_word(pres, signs, b_part)
        else:
            eps = gen_sign_of_word(pres, signs, d_part)
        a_part = Trivial(vertex_at(w, n), eps)
    else:
        a_part = Finite(tuple(item_at(w, i) for i in range(n + 1, ip + 1)))
    assert hdeg(w, n) == hdeg(w, ip)
    return ResolutionDecomposition(b_part, a_part, d_part, (n, ip)), None


def is_string_resolution(pres, signs, w):
    """Split w as B^-1 (A D) if possible, else return None.

    B collects a maximal leading inverse run and D a maximal trailing
    direct run; the middle A must be trivial or alternate direct-inverse.
    A finite nontrivial B (or D) must consist of single arrows past its
    first letter and admit no further extension; on a Z-word the inverse
    run has to end at position 0 exactly.
    """
    dec, _ = _split_with_reason(pres, signs, w)
    return dec


def is_band_resolution(w):
    """The period of w when it is periodic and alternates direct-inverse
    from position 1 on, else None."""
    if not isinstance(w, Periodic):
        return None
    p = len(w.cycle)
    cyc = tuple(item_at(w, i) for i in range(1, p + 1))
    for j, letter in enumerate(cyc):
        if letter.inverse != (j % 2 == 1):
            return None
    return cyc


# randomized construction for tests

def random_gen_word(pres, rng, length, max_path_len=3):
    """Grow a random valid finite generalised word letter by letter."""
    paths, _ = enumerate_P(pres, max_path_len)
    letters = [GenLetter(p, d) for p in paths for d in (False, True)]
    out = [rng.choice(letters)]
    for _ in range(length - 1):
        opts = [l for l in letters if _pair_ok(pres, out[-1], l)]
        if not opts:
            break
        out.append(rng.choice(opts))
    return shapes.make_finite(out)
