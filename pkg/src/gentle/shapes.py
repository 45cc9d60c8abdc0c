"""Index shapes shared by letter sequences.

A sequence C assigns an item C_i to integer positions i over one of six
storage forms: trivial (no items), finite (items 1..m), right infinite
(items from 1 on, eventually periodic), left infinite (items up to 0,
eventually periodic backward), bi-infinite with two periodic tails, or
fully periodic. Items only need an ``invert()`` method, an ``inverse``
flag and a ``sort_key``; the word and path-word layers both qualify.

Conventions fixed here and relied on everywhere:

- finite items occupy positions 1..m;
- a right tail's first element sits just after the core, a left tail's
  last element just before it;
- bi-infinite cores carry an explicit start position ``cstart``;
- periodic items satisfy C_i = cycle[(i - 1 + offset) % p].

The make_* constructors canonicalize: tail units are reduced to their
primitive period, cores are shrunk into the tails as far as possible,
periodic cycles are rotated to the least rotation under sort_key (with
the offset adjusted so the sequence itself is unchanged), and a
bi-infinite sequence that turns out fully periodic becomes Periodic.
Structural equality of canonical forms then decides sequence equality,
origin included.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Trivial:
    vertex: str
    delta: int


@dataclass(frozen=True)
class Finite:
    items: tuple


@dataclass(frozen=True)
class RightInfinite:
    core: tuple
    tail: tuple


@dataclass(frozen=True)
class LeftInfinite:
    tail: tuple
    core: tuple


@dataclass(frozen=True)
class BiInfinite:
    ltail: tuple
    core: tuple
    rtail: tuple
    cstart: int


@dataclass(frozen=True)
class Periodic:
    cycle: tuple
    offset: int


def primitive_unit(unit):
    unit = tuple(unit)
    n = len(unit)
    for d in range(1, n + 1):
        if n % d == 0 and unit == unit[:d] * (n // d):
            return unit[:d]
    return unit


def _rot_left(seq, r):
    r %= len(seq)
    return seq[r:] + seq[:r]


def _lex_least_rotation(cycle):
    p = len(cycle)
    return min(range(p),
               key=lambda r: [cycle[(r + j) % p].sort_key for j in range(p)])


def make_finite(items):
    items = tuple(items)
    if not items:
        raise ValueError("finite sequence needs at least one item")
    return Finite(items)


def make_right(core, tail):
    core, tail = tuple(core), primitive_unit(tail)
    while core and core[-1] == tail[-1]:
        core = core[:-1]
        tail = _rot_left(tail, -1)
    return RightInfinite(core, tail)


def make_left(tail, core):
    tail, core = primitive_unit(tail), tuple(core)
    while core and core[0] == tail[0]:
        core = core[1:]
        tail = _rot_left(tail, 1)
    return LeftInfinite(tail, core)


def make_bi(ltail, core, rtail, cstart):
    ltail, rtail = primitive_unit(ltail), primitive_unit(rtail)
    core = tuple(core)
    while core and core[0] == ltail[0]:
        core = core[1:]
        ltail = _rot_left(ltail, 1)
        cstart += 1
    while core and core[-1] == rtail[-1]:
        core = core[:-1]
        rtail = _rot_left(rtail, -1)
    if not core and ltail == rtail:
        return make_periodic(rtail, (1 - cstart) % len(rtail))
    return BiInfinite(ltail, core, rtail, cstart)


def make_periodic(cycle, offset):
    cycle = primitive_unit(cycle)
    p = len(cycle)
    r = _lex_least_rotation(cycle)
    return Periodic(_rot_left(cycle, r), (offset - r) % p)


def item_at(w, i):
    """The item C_i, or None where the shape has no item."""
    if isinstance(w, Trivial):
        return None
    if isinstance(w, Finite):
        return w.items[i - 1] if 1 <= i <= len(w.items) else None
    if isinstance(w, RightInfinite):
        if i < 1:
            return None
        k = len(w.core)
        return w.core[i - 1] if i <= k else w.tail[(i - k - 1) % len(w.tail)]
    if isinstance(w, LeftInfinite):
        if i > 0:
            return None
        k = len(w.core)
        if i >= 1 - k:
            return w.core[i + k - 1]
        return w.tail[(i + k - 1) % len(w.tail)]
    if isinstance(w, BiInfinite):
        m = len(w.core)
        if w.cstart <= i < w.cstart + m:
            return w.core[i - w.cstart]
        if i < w.cstart:
            return w.ltail[(i - w.cstart) % len(w.ltail)]
        return w.rtail[(i - w.cstart - m) % len(w.rtail)]
    if isinstance(w, Periodic):
        return w.cycle[(i - 1 + w.offset) % len(w.cycle)]
    raise TypeError(f"not a shape: {w!r}")


def position_in(w, i):
    """Whether i lies in the position set I (one more than the items)."""
    if isinstance(w, Trivial):
        return i == 0
    if isinstance(w, Finite):
        return 0 <= i <= len(w.items)
    if isinstance(w, RightInfinite):
        return i >= 0
    if isinstance(w, LeftInfinite):
        return i <= 0
    return True


def adjacent_pairs(w):
    """Pairs (i, C_i, C_{i+1}) covering every junction up to tail
    periodicity; for the periodic shape the wrap pair is included."""
    out = []
    if isinstance(w, Finite):
        rng = range(1, len(w.items))
    elif isinstance(w, RightInfinite):
        rng = range(1, len(w.core) + 2 * len(w.tail))
    elif isinstance(w, LeftInfinite):
        rng = range(1 - len(w.core) - 2 * len(w.tail), 0)
    elif isinstance(w, BiInfinite):
        rng = range(w.cstart - 2 * len(w.ltail),
                    w.cstart + len(w.core) + 2 * len(w.rtail))
    elif isinstance(w, Periodic):
        rng = range(1, len(w.cycle) + 1)
    else:
        return out
    for i in rng:
        out.append((i, item_at(w, i), item_at(w, i + 1)))
    return out


def rev_inv(items):
    return tuple(x.invert() for x in reversed(items))


def invert(w):
    if isinstance(w, Trivial):
        return Trivial(w.vertex, -w.delta)
    if isinstance(w, Finite):
        return Finite(rev_inv(w.items))
    if isinstance(w, RightInfinite):
        return make_left(rev_inv(w.tail), rev_inv(w.core))
    if isinstance(w, LeftInfinite):
        return make_right(rev_inv(w.core), rev_inv(w.tail))
    if isinstance(w, BiInfinite):
        return make_bi(rev_inv(w.rtail), rev_inv(w.core), rev_inv(w.ltail),
                       2 - w.cstart - len(w.core))
    if isinstance(w, Periodic):
        return make_periodic(rev_inv(w.cycle), -w.offset % len(w.cycle))
    raise TypeError(f"not a shape: {w!r}")


def shift(w, n):
    """C[n] with C[n]_i = C_{i+n}; identity unless positions cover ℤ."""
    if isinstance(w, BiInfinite):
        return BiInfinite(w.ltail, w.core, w.rtail, w.cstart - n)
    if isinstance(w, Periodic):
        return Periodic(w.cycle, (w.offset + n) % len(w.cycle))
    return w


def is_peak(w, i):
    if not position_in(w, i):
        return False
    a = item_at(w, i)
    b = item_at(w, i + 1)
    return (a is None or not a.inverse) and (b is None or b.inverse)


@dataclass(frozen=True)
class PeakReport:
    indices: tuple
    period: int | None
    peak_finite: bool


def peaks(w):
    """Every peak for aperiodic shapes; one period's worth (indices in
    0..p-1) plus the period for the periodic shape."""
    if isinstance(w, Periodic):
        p = len(w.cycle)
        idx = tuple(i for i in range(p) if is_peak(w, i))
        return PeakReport(idx, p, not idx)
    if isinstance(w, Trivial):
        rng = [0]
    elif isinstance(w, Finite):
        rng = range(0, len(w.items) + 1)
    elif isinstance(w, RightInfinite):
        rng = range(0, len(w.core) + 2)
    elif isinstance(w, LeftInfinite):
        rng = range(-len(w.core) - 1, 1)
    else:
        rng = range(w.cstart - 1, w.cstart + len(w.core) + 1)
    return PeakReport(tuple(i for i in rng if is_peak(w, i)), None, True)


def parse_structure(tokens):
    """Split a scanned token list into tail groups and core.

    Returns (ltail, core, rtail, periodic, marker): token lists (tails
    None when absent), a flag for the fully periodic form, and the
    trailing `@n` marker value if present. Marker tokens and group
    delimiters must appear exactly where the grammar allows them:
    `inf( .. )` first, `( .. )^inf` last, `inf( .. )inf[@n]` alone.
    """
    toks = list(tokens)
    ltail = rtail = None
    marker = None

    def grab(start, closers):
        depth_toks = []
        j = start
        while j < len(toks) and toks[j] not in closers:
            if toks[j] in ("(", "inf(", ")", ")inf", ")^inf"):
                raise ValueError(f"unexpected {toks[j]!r} inside a group")
            depth_toks.append(toks[j])
            j += 1
        if j == len(toks):
            raise ValueError("unclosed group")
        return depth_toks, toks[j], j + 1

    i = 0
    if toks and toks[i] == "inf(":
        group, closer, i = grab(i + 1, (")", ")inf"))
        if not group:
            raise ValueError("empty tail group")
        if closer == ")inf":
            if i < len(toks) and toks[i].startswith("@"):
                marker = int(toks[i][1:])
                i += 1
            if i != len(toks):
                raise ValueError("tokens after a periodic word")
            return None, group, None, True, marker
        ltail = group
    core = []
    while i < len(toks):
        t = toks[i]
        if t == "(":
            group, closer, i = grab(i + 1, (")^inf",))
            if not group:
                raise ValueError("empty tail group")
            rtail = group
            if i < len(toks) and toks[i].startswith("@"):
                marker = int(toks[i][1:])
                i += 1
            if i != len(toks):
                raise ValueError("tokens after the right tail")
            break
        if t in ("inf(", ")", ")inf", ")^inf") or t.startswith("@"):
            raise ValueError(f"unexpected {t!r}")
        core.append(t)
        i += 1
    return ltail, core, rtail, False, marker


def slice_le(w, i):
    """The items at positions <= i as a standalone shape, or None when
    there are none. Infinite shapes only on their letter-bearing side."""
    if isinstance(w, Finite):
        m = len(w.items)
        i = min(i, m)
        return Finite(w.items[:i]) if i >= 1 else None
    if isinstance(w, RightInfinite):
        items = tuple(item_at(w, j) for j in range(1, i + 1))
        return Finite(items) if items else None
    if isinstance(w, LeftInfinite):
        k = len(w.core)
        if i >= 1 - k:
            return make_left(w.tail, w.core[:i + k])
        return make_left(_rot_left(w.tail, (i + k) % len(w.tail)), ())
    if isinstance(w, BiInfinite):
        if i < w.cstart:
            return make_left(
                _rot_left(w.ltail, (i - w.cstart + 1) % len(w.ltail)), ())
        end = w.cstart + len(w.core)
        extra = tuple(item_at(w, j) for j in range(end, i + 1))
        return make_left(w.ltail, w.core[:i - w.cstart + 1] + extra)
    raise TypeError(f"cannot slice {type(w).__name__} on the left")


def slice_gt(w, i):
    """The items at positions > i as a standalone shape, or None."""
    if isinstance(w, Finite):
        i = max(i, 0)
        return Finite(w.items[i:]) if i < len(w.items) else None
    if isinstance(w, LeftInfinite):
        items = tuple(item_at(w, j) for j in range(i + 1, 1))
        return Finite(items) if items else None
    if isinstance(w, RightInfinite):
        k = len(w.core)
        if i < k:
            return make_right(w.core[i:], w.tail)
        return make_right((), _rot_left(w.tail, (i - k) % len(w.tail)))
    if isinstance(w, BiInfinite):
        m = len(w.core)
        if i >= w.cstart + m - 1:
            return make_right((), _rot_left(
                w.rtail, (i + 1 - w.cstart - m) % len(w.rtail)))
        extra = tuple(item_at(w, j) for j in range(i + 1, w.cstart))
        return make_right(extra + w.core[max(i - w.cstart + 1, 0):], w.rtail)
    raise TypeError(f"cannot slice {type(w).__name__} on the right")
