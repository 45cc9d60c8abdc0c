"""Path-matrix complexes built from generalised words.

A complex stores, per homological degree n, an ordered list of
projective generators (one vertex projective each) and the matrix of
the differential into degree n+1. A matrix entry is a formal sum of
coefficient-weighted paths; the path gamma stands for the right
multiplication lam -> lam*gamma from the column's summand into the
row's, so composing differentials is path composition followed by
relation reduction. Non-periodic words give string complexes, periodic
words twisted by an invertible matrix give band complexes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAComplex, NotCyclic, PeriodicInput, WindowRequired
from .genwords import (
    _leading_inverse_end,
    _split_with_reason,
    hdeg,
    hdeg_preimage,
    hstep,
    is_band_resolution,
    resolution_degree,
)
from .presentation import compose, path_in_P, trivial_path
from .shapes import (
    BiInfinite,
    Finite,
    Periodic,
    Trivial,
    item_at,
    shift,
)
from .words import assign_signs, vertex_at

__all__ = [
    "PathMatrixComplex",
    "string_complex",
    "band_complex",
    "compose_differentials",
    "verify_complex",
    "kernel_generators",
    "StringResolutionAt",
    "BandResolutionAt",
    "NotAResolution",
    "recognize_resolution",
    "default_window",
    "render_complex",
]


@dataclass(frozen=True)
class PathMatrixComplex:
    """Projective generators and differentials over one presentation.

    degrees maps n to the generators of P^n as (label, vertex) pairs;
    differentials maps n to the matrix of d^n: P^n -> P^(n+1) as a
    sparse dict from (row, col) to a formal sum ((coeff, path), ...),
    rows indexing the degree n+1 generators and columns the degree n
    ones. Band complexes also record their coefficient prime and the
    period of the underlying word.
    """

    degrees: dict
    differentials: dict
    prime: object = None
    period: object = None


def _entry_add(mat, row, col, coeff, path):
    cell = mat.setdefault((row, col), {})
    ent = cell.setdefault(path.arrows, [0, path])
    ent[0] += coeff


def _finalize(mat, prime):
    out = {}
    for spot, cell in mat.items():
        terms = []
        for key in sorted(cell):
            coeff, path = cell[key]
            if prime is not None:
                coeff %= prime
            if coeff:
                terms.append((coeff, path))
        if terms:
            out[spot] = tuple(terms)
    return out


def string_complex(pres, w, window=None):
    """The complex of a non-periodic generalised word.

    Degree n holds one generator g_i per position i of that degree,
    ascending. The column of g_i maps by the path of the letter at i+1
    into row g_{i+1} when that letter is inverse, and by the path of
    the letter at i into row g_{i-1} when that letter is direct.
    Infinite shapes need a degree window (lo, hi); finite ones default
    to every populated degree.
    """
    if isinstance(w, Periodic):
        raise PeriodicInput("periodic words present band complexes; "
                            "use band_complex")
    if window is not None:
        lo, hi = window
    elif isinstance(w, Trivial):
        lo = hi = 0
    elif isinstance(w, Finite):
        degs = [hdeg(w, i) for i in range(len(w.items) + 1)]
        lo, hi = min(degs), max(degs)
    else:
        raise WindowRequired("infinite word: pass a degree window")
    degrees = {}
    index_lists = {}
    where = {}
    for n in range(lo, hi + 1):
        idx = hdeg_preimage(w, n).indices
        index_lists[n] = idx
        degrees[n] = tuple((f"g{i}", vertex_at(w, i)) for i in idx)
        where[n] = {i: k for k, i in enumerate(idx)}
    diffs = {}
    for n in range(lo, hi):
        mat = {}
        for col, i in enumerate(index_lists[n]):
            up = item_at(w, i + 1)
            if up is not None and up.inverse:
                _entry_add(mat, where[n + 1][i + 1], col, 1, up.path)
            down = item_at(w, i)
            if down is not None and not down.inverse:
                _entry_add(mat, where[n + 1][i - 1], col, 1, down.path)
        diffs[n] = _finalize(mat, None)
    return PathMatrixComplex(degrees, diffs)


def band_complex(pres, w, v):
    """The complex of a periodic word twisted by the T-module v.

    Generators sit at the positions 0..p-1 of one period, rank(v)
    copies apiece, ordered by position then copy. Away from the seam
    the letters act as in string_complex on every copy at once; the
    letter crossing position 0 spreads over the copies, weighting by
    the inverse matrix of v when it is an inverse letter and by the
    matrix of v when direct.
    """
    if not isinstance(w, Periodic):
        raise NotCyclic("band complexes need a periodic word")
    p = len(w.cycle)
    if sum(hstep(item_at(w, i)) for i in range(1, p + 1)) != 0:
        raise NotCyclic("the period does not return to degree 0")
    rank = v.rank
    by_pos = {i: hdeg(w, i) for i in range(p)}
    lo, hi = min(by_pos.values()), max(by_pos.values())
    degrees = {}
    index_lists = {}
    where = {}
    for n in range(lo, hi + 1):
        idx = [i for i in range(p) if by_pos[i] == n]
        index_lists[n] = idx
        degrees[n] = tuple((f"g{i}_{om}", vertex_at(w, i))
                           for i in idx for om in range(1, rank + 1))
        where[n] = {(i, om): k * rank + om - 1
                    for k, i in enumerate(idx)
                    for om in range(1, rank + 1)}
    seam = item_at(w, p)
    diffs = {}
    for n in range(lo, hi):
        mat = {}
        for i in index_lists[n]:
            for om in range(1, rank + 1):
                col = where[n][(i, om)]
                if i < p - 1:
                    up = item_at(w, i + 1)
                    if up.inverse:
                        _entry_add(mat, where[n + 1][(i + 1, om)], col,
                                   1, up.path)
                elif seam.inverse:
                    for tau in range(1, rank + 1):
                        _entry_add(mat, where[n + 1][(0, tau)], col,
                                   v.inverse[tau - 1][om - 1], seam.path)
                if i > 0:
                    down = item_at(w, i)
                    if not down.inverse:
                        _entry_add(mat, where[n + 1][(i - 1, om)], col,
                                   1, down.path)
                elif not seam.inverse:
                    for tau in range(1, rank + 1):
                        _entry_add(mat, where[n + 1][(p - 1, tau)], col,
                                   v.matrix[tau - 1][om - 1], seam.path)
        diffs[n] = _finalize(mat, v.prime)
    return PathMatrixComplex(degrees, diffs, prime=v.prime, period=p)


def compose_differentials(pres, cx, n):
    """The matrix of d^(n+1) after d^n, reduced by the relations.

    Empty exactly when the two differentials compose to zero.
    """
    first = cx.differentials.get(n, {})
    second = cx.differentials.get(n + 1, {})
    by_col = {}
    for (row, col), terms in second.items():
        by_col.setdefault(col, []).append((row, terms))
    acc = {}
    for (mid, col), early in first.items():
        for row, late in by_col.get(mid, []):
            for c1, p1 in early:
                for c2, p2 in late:
                    prod = compose(pres, p1, p2)
                    if prod is not None:
                        _entry_add(acc, row, col, c1 * c2, prod)
    return _finalize(acc, cx.prime)


def verify_complex(pres, cx):
    """Check that entries run between their generator vertices and that
    consecutive differentials compose to zero; raise NotAComplex on the
    first failure."""
    for n, mat in sorted(cx.differentials.items()):
        rows = cx.degrees.get(n + 1, ())
        cols = cx.degrees.get(n, ())
        for (row, col), terms in sorted(mat.items()):
            for _, path in terms:
                if path.head != cols[col][1] or path.tail != rows[row][1]:
                    raise NotAComplex(
                        f"d{n}[{row},{col}]: {path} does not run between "
                        f"the generator vertices")
        left = compose_differentials(pres, cx, n)
        if left:
            (row, col), terms = sorted(left.items())[0]
            raise NotAComplex(
                f"d{n + 1} after d{n} is nonzero at [{row},{col}]: "
                + _render_terms(terms))
    return cx


def _kappa(pres, w, i):
    # the path generating the kernel contribution at position i
    left = item_at(w, i)
    right = item_at(w, i + 1)
    if (left is None or left.inverse) and \
            (right is None or not right.inverse):
        return trivial_path(pres, vertex_at(w, i))
    if left is not None and right is not None:
        if left.inverse and right.inverse:
            return path_in_P(pres, [left.path.arrows[-1]])
        if not left.inverse and not right.inverse:
            return path_in_P(pres, [right.path.arrows[-1]])
        return None
    if left is None:
        blocked = right.path.arrows[0]
    else:
        blocked = left.path.arrows[0]
    cands = [a for a in pres.quiver.arrows
             if pres.in_ideal(a.name, blocked)]
    if cands:
        return path_in_P(pres, [cands[0].name])
    return None


def kernel_generators(pres, w, n):
    """Kernel generators of d^n in the string complex of w.

    One pair (i, path) per degree-n position: the span of path*g_i over
    the algebra, with None marking a zero contribution. The path is
    trivial at a valley (left letter absent or inverse, right letter
    absent or direct), the first arrow of the left (right) letter when
    both are inverse (direct), the relation partner of the run at a
    word end, and absent under a direct-then-inverse corner.
    """
    if isinstance(w, Periodic):
        raise PeriodicInput("periodic words present band complexes")
    return [(i, _kappa(pres, w, i)) for i in hdeg_preimage(w, n).indices]


@dataclass(frozen=True)
class StringResolutionAt:
    """Shifting by `shift` yields a string-resolution word whose
    alternating middle sits in homological degree `degree`."""

    shift: int
    degree: int


@dataclass(frozen=True)
class BandResolutionAt:
    """Rotating by `shift` (0 or 1) yields a band-resolution cycle; its
    module sits in homological degree `degree`."""

    shift: int
    degree: int


@dataclass(frozen=True)
class NotAResolution:
    """No shift works; the reason cites the first broken pattern."""

    reason: str


def recognize_resolution(pres, w, v=None):
    """Decide whether some shift of w presents a projective resolution.

    Periodic words try the two rotation parities against the
    alternation pattern; other shapes shift a Z-word so its leading
    inverse run ends at 0, then split it. The band datum v never
    changes the verdict, so it is accepted and ignored.
    """
    if isinstance(w, Periodic):
        for s in (0, 1):
            if is_band_resolution(shift(w, s)) is not None:
                return BandResolutionAt(s, hdeg(w, s))
        return NotAResolution(
            "no rotation parity alternates direct-inverse from "
            "position 1")
    cand = 0
    if isinstance(w, BiInfinite):
        cand = _leading_inverse_end(w)
        if cand is None:
            return NotAResolution(
                "the left letters do not form an inverse run")
    moved = shift(w, cand)
    dec, reason = _split_with_reason(pres, assign_signs(pres), moved)
    if dec is None:
        return NotAResolution(reason)
    return StringResolutionAt(cand, resolution_degree(moved, dec))


def default_window(w, degree):
    """The degree window (degree - 1 - stored length, degree): wide
    enough to cover every degree the stored letters reach, so homology
    checks around a resolution in `degree` see all of it."""
    if isinstance(w, Trivial):
        stored = 0
    elif isinstance(w, Finite):
        stored = len(w.items)
    elif isinstance(w, Periodic):
        stored = len(w.cycle)
    else:
        stored = len(w.core)
    return degree - 1 - stored, degree


def _render_terms(terms):
    return " + ".join(f"{coeff}*{path}" for coeff, path in terms)


def render_complex(cx):
    """Dump as `deg n: v1 v2 ...` lines then one line per nonzero
    entry, `dn[row,col] = coeff*path (+ ...)`, stable across runs."""
    lines = []
    for n in sorted(cx.degrees):
        vs = " ".join(str(v) for _, v in cx.degrees[n])
        lines.append(f"deg {n}: {vs}".rstrip())
    for n in sorted(cx.differentials):
        for row, col in sorted(cx.differentials[n]):
            lines.append(f"d{n}[{row},{col}] = "
                         + _render_terms(cx.differentials[n][(row, col)]))
    return "\n".join(lines)
