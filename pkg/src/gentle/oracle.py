"""Exact verification over prime fields.

The symbolic layers never fix coefficients: words, module
presentations and complexes are all path data. Over a presentation
without primitive cycles the algebra is finite dimensional, so
projectives, modules and complexes expand to concrete matrices over
F_p and every resolution claim becomes a rank computation. This
module owns that expansion and the checks built on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fp
from .complexes import band_complex, string_complex
from .errors import NotABandWord, NotAComplex, NotAStringWord, VertexUnknown
from .genwords import _split_with_reason
from .modpres import band_module, string_module, t_module
from .presentation import all_paths, compose, path_in_P
from .resolve import (
    BandSide,
    StringSide,
    resolution_of_band,
    resolution_of_string,
)
from .shapes import Finite, Periodic, Trivial, invert, shift
from .words import BandWord, StringWord, classify_word, render_word

__all__ = [
    "ExpandedAlgebra",
    "expand_algebra",
    "ExpandedComplex",
    "expand_complex",
    "homology_report",
    "ExpandedModule",
    "expand_module",
    "homology_fingerprint",
    "Check",
    "VerificationReport",
    "verify_resolution",
    "brute_force_equivalence",
]


@dataclass(frozen=True)
class ExpandedAlgebra:
    """The path algebra of a presentation as concrete F_p data.

    basis lists the trivial paths followed by all of P; index inverts
    that list. left_mult maps each arrow name to a tuple giving, per
    basis element, the index of arrow*element or None when the product
    is zero. projectives maps a vertex v to the basis indices with
    tail v (the basis of the projective at v) and proj_index gives
    each of those indices its position within that projective.
    """

    pres: object
    prime: int
    basis: tuple
    index: dict
    left_mult: dict
    projectives: dict
    proj_index: dict

    @property
    def dimension(self):
        return len(self.basis)

    def product(self, i, j):
        """Index of basis[i]*basis[j] (j traversed first), or None."""
        left, right = self.basis[i], self.basis[j]
        if left.tail != right.head:
            return None
        out = compose(self.pres, left, right)
        return None if out is None else self.index[out]


def expand_algebra(pres, p):
    """Expand a presentation with no primitive cycles over F_p.

    Raises InfiniteDimensional, listing the primitive cycles, when P
    is infinite.
    """
    if p < 2 or any(p % k == 0 for k in range(2, p)):
        raise ValueError(f"{p} is not prime")
    basis = tuple(all_paths(pres))
    index = {path: i for i, path in enumerate(basis)}
    left_mult = {}
    for arrow in pres.quiver.arrows:
        one = path_in_P(pres, [arrow.name])
        col = []
        for path in basis:
            if path.head != arrow.tail:
                col.append(None)
                continue
            prod = compose(pres, one, path)
            col.append(None if prod is None else index[prod])
        left_mult[arrow.name] = tuple(col)
    projectives = {v: tuple(i for i, path in enumerate(basis)
                            if path.tail == v)
                   for v in pres.quiver.vertices}
    proj_index = {v: {bidx: k for k, bidx in enumerate(idx)}
                  for v, idx in projectives.items()}
    return ExpandedAlgebra(pres, p, basis, index, left_mult,
                           projectives, proj_index)


@dataclass(frozen=True)
class ExpandedComplex:
    """The F_p matrices of a path-matrix complex.

    dims gives the expanded dimension per kept degree and offsets the
    starting coordinate of each generator's projective summand, in
    generator order. matrices[n] is d^n as a dims[n+1]-by-dims[n] row
    list; a genuinely empty target degree gives a matrix with no rows.
    Degrees whose neighbour was cut off by the window land in partial:
    their homology cannot be read off this expansion.
    """

    prime: int
    degrees: dict
    dims: dict
    offsets: dict
    matrices: dict
    partial: frozenset


def _stack_layout(alg, gens):
    offs = []
    total = 0
    for label, vertex in gens:
        if vertex not in alg.projectives:
            raise VertexUnknown(
                f"generator {label} sits at unknown vertex {vertex!r}")
        offs.append(total)
        total += len(alg.projectives[vertex])
    return tuple(offs), total


def _add_entry(alg, mat, row_off, row_vertex, col_off, col_vertex, terms):
    p = alg.prime
    pos = alg.proj_index[row_vertex]
    for k, bidx in enumerate(alg.projectives[col_vertex]):
        lam = alg.basis[bidx]
        for coeff, path in terms:
            prod = compose(alg.pres, lam, path)
            if prod is None:
                continue
            r = row_off + pos[alg.index[prod]]
            mat[r][col_off + k] = (mat[r][col_off + k] + coeff) % p


def expand_complex(alg, cx, window=None):
    """Expand each materialized differential into an F_p matrix.

    Column order follows generator order, each generator contributing
    the projective basis of its vertex. A window (lo, hi) keeps only
    those degrees; a differential whose target degree is cut off is
    omitted, and the affected degrees are recorded as partial rather
    than misread as zero maps.
    """
    if cx.prime is not None and cx.prime != alg.prime:
        raise ValueError(f"complex over F_{cx.prime}, "
                         f"algebra over F_{alg.prime}")
    if window is None:
        kept = sorted(cx.degrees)
    else:
        lo, hi = window
        kept = sorted(n for n in cx.degrees if lo <= n <= hi)
    degrees = {}
    dims = {}
    offsets = {}
    for n in kept:
        gens = tuple(cx.degrees[n])
        offsets[n], dims[n] = _stack_layout(alg, gens)
        degrees[n] = gens
    matrices = {}
    partial = set()
    for n in kept:
        if n + 1 in cx.degrees and n + 1 not in dims:
            partial.add(n)
        if n - 1 in cx.degrees and n - 1 not in dims:
            partial.add(n)
    for n in kept:
        if n + 1 in cx.degrees and n + 1 not in dims:
            continue
        mat = [[0] * dims[n] for _ in range(dims.get(n + 1, 0))]
        for (row, col), terms in cx.differentials.get(n, {}).items():
            _add_entry(alg, mat,
                       offsets[n + 1][row], degrees[n + 1][row][1],
                       offsets[n][col], degrees[n][col][1], terms)
        matrices[n] = mat
    return ExpandedComplex(alg.prime, degrees, dims, offsets, matrices,
                           frozenset(partial))


def homology_report(ex):
    """dim ker - dim im per degree of an expanded complex.

    Consecutive matrices must compose to zero. Degrees marked partial
    are left out instead of guessed at.
    """
    for n in sorted(ex.matrices):
        late = ex.matrices.get(n + 1)
        early = ex.matrices[n]
        if not late or not early:
            continue
        prod = fp.matmul(late, early, ex.prime)
        if any(any(row) for row in prod):
            raise NotAComplex(f"expanded d{n + 1} after d{n} is nonzero")
    ranks = {n: fp.rank(mat, ex.prime) for n, mat in ex.matrices.items()}
    report = {}
    for n in sorted(ex.dims):
        if n in ex.partial or n - 1 in ex.partial:
            continue
        kernel = ex.dims[n] - ranks.get(n, 0)
        report[n] = kernel - ranks.get(n - 1, 0)
    return report


@dataclass(frozen=True)
class ExpandedModule:
    """A module presentation as coordinates over F_p.

    The ambient space stacks one projective basis per generator, in
    generator order; offsets holds each generator's starting
    coordinate. rows spans the expanded relation submodule, every
    relation multiplied by every basis path of its head vertex. Each
    row lies in a single head-vertex block, so the cokernel splits
    into the per-vertex dimensions recorded in vertex_dims.
    """

    prime: int
    total: int
    offsets: tuple
    rows: tuple
    dimension: int
    vertex_dims: tuple


def expand_module(alg, mod):
    """Expand a module presentation to relation rows and dimensions."""
    if mod.prime is not None and mod.prime != alg.prime:
        raise ValueError(f"module over F_{mod.prime}, "
                         f"algebra over F_{alg.prime}")
    p = alg.prime
    offsets, total = _stack_layout(alg, mod.generators)
    offset_of = {label: off
                 for (label, _), off in zip(mod.generators, offsets)}
    vertex_of = dict(mod.generators)
    rows = []
    row_heads = []
    for rel in mod.relations:
        head = rel[0][1].head
        for bidx in alg.projectives[head]:
            lam = alg.basis[bidx]
            vec = [0] * total
            for coeff, path, label in rel:
                prod = compose(alg.pres, lam, path)
                if prod is None:
                    continue
                spot = offset_of[label] \
                    + alg.proj_index[vertex_of[label]][alg.index[prod]]
                vec[spot] = (vec[spot] + coeff) % p
            if any(vec):
                rows.append(vec)
                row_heads.append(lam.head)
    per = {v: [0, []] for v in alg.pres.quiver.vertices}
    for _, vertex in mod.generators:
        for bidx in alg.projectives[vertex]:
            per[alg.basis[bidx].head][0] += 1
    for row, head in zip(rows, row_heads):
        per[head][1].append(row)
    vertex_dims = tuple(sorted(
        (v, count - fp.rank(block, p))
        for v, (count, block) in per.items()))
    dimension = total - fp.rank(rows, p)
    assert dimension == sum(d for _, d in vertex_dims), \
        "relation rows leaked across head-vertex blocks"
    return ExpandedModule(p, total, offsets,
                          tuple(tuple(r) for r in rows),
                          dimension, vertex_dims)


def homology_fingerprint(alg, pres, signs, side):
    """Per-vertex dimension vector of a side's module.

    Returns {vertex: dimension} with zero entries dropped, so
    fingerprints of direct sums add componentwise; equality is
    necessary for isomorphism and the total dimension is the sum.
    The resolution's homology is the module concentrated in one
    degree, so the dimensions are read off the expanded module
    presentation rather than any complex.
    """
    if isinstance(side, StringSide):
        verdict = classify_word(pres, signs, side.word)
        if not isinstance(verdict, StringWord):
            raise NotAStringWord(
                f"{type(verdict).__name__} word on a string side")
        em = expand_module(alg, string_module(pres, signs, side.word))
    elif isinstance(side, BandSide):
        em = expand_module(
            alg, band_module(pres, signs, side.word, side.v))
    else:
        raise TypeError("expected a StringSide or BandSide")
    return {v: d for v, d in em.vertex_dims if d}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    """Named pass/fail checks for one verified side."""

    subject: str
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        return [f"check {c.name}: {'pass' if c.passed else 'fail'} "
                f"{c.detail}" for c in self.checks]

    def render(self):
        return "\n".join(self.lines())


def _image_rows(ex, n):
    """The image of d^n as row vectors in the degree n+1 coordinates."""
    mat = ex.matrices.get(n)
    if not mat:
        return []
    return [[mat[i][j] for i in range(len(mat))]
            for j in range(len(mat[0]))]


def _vanishing_check(hom, t):
    offender = next(((m, d) for m, d in sorted(hom.items())
                     if m != t and d), None)
    if offender is None:
        lo, hi = min(hom), max(hom)
        return Check("vanishing", True,
                     f"H^m = 0 for m != {t}, m in {lo}..{hi}")
    m, d = offender
    return Check("vanishing", False, f"H^{m} has dimension {d}")


def _dimension_check(hom, t, em):
    ht = hom[t]
    if ht == em.dimension:
        return Check("dimension", True, f"dim H^{t} = {ht} = dim M")
    return Check("dimension", False,
                 f"dim H^{t} = {ht} but dim M = {em.dimension}")


def _image_check(ex, t, rows):
    same = fp.same_row_span(_image_rows(ex, t - 1), list(rows), ex.prime)
    if same:
        return Check("image", True,
                     f"im d^{t - 1} spans the expanded relations")
    return Check("image", False,
                 f"im d^{t - 1} differs from the expanded relations "
                 f"in degree {t}")


def _verify_string(alg, pres, signs, w):
    verdict = classify_word(pres, signs, w)
    if not isinstance(verdict, StringWord):
        raise NotAStringWord(
            f"{type(verdict).__name__} word on a string side")
    res_word, t = resolution_of_string(pres, signs, verdict)
    windowed = not isinstance(res_word, (Trivial, Finite))
    if windowed:
        cx = string_complex(pres, res_word, window=(t - 5, t))
    else:
        cx = string_complex(pres, res_word)
    ex = expand_complex(alg, cx)
    hom = homology_report(ex)
    if windowed:
        hom = {m: d for m, d in hom.items() if m >= t - 3}
    mod = string_module(pres, signs, w)
    em = expand_module(alg, mod)
    split, reason = _split_with_reason(pres, signs, res_word)
    assert split is not None, reason
    low = split.interval[0]
    spots = [int(label[1:]) for label, _ in ex.degrees[t]]
    assert spots == list(range(low, split.interval[1] + 1, 2)), \
        "degree-t generators do not sit on the interval"
    assert [v for _, v in ex.degrees[t]] == \
        [v for _, v in mod.generators], \
        "complex and module generators sit at different vertices"
    checks = (_vanishing_check(hom, t),
              _dimension_check(hom, t, em),
              _image_check(ex, t, _alternating_rows(em, 1, alg.prime)))
    return VerificationReport(
        f"string {render_word(w)} over F_{alg.prime}", checks)


def _alternating_rows(em, rank, p):
    """Relation rows pushed along g_i -> (-1)^i g at the matching
    complex generator.

    The relations alternate signs while the differential columns are
    all-plus sums, so the correspondence must flip every other
    generator. Blocks keep their order and widths, so only signs
    change: block k belongs to module generator k // rank.
    """
    bounds = list(em.offsets) + [em.total]
    out = []
    for row in em.rows:
        vec = list(row)
        for k in range(len(bounds) - 1):
            if (k // rank) % 2:
                for c in range(bounds[k], bounds[k + 1]):
                    vec[c] = (-vec[c]) % p
        out.append(vec)
    return out


def _verify_band(alg, pres, signs, w, v):
    if v.prime != alg.prime:
        raise ValueError(f"T-module over F_{v.prime}, "
                         f"verification over F_{alg.prime}")
    verdict = classify_word(pres, signs, w)
    if not isinstance(verdict, BandWord):
        raise NotABandWord(
            f"{type(verdict).__name__} word on a band side")
    res_word = resolution_of_band(pres, verdict)
    pairs = len(res_word.cycle) // 2
    cx = band_complex(pres, res_word, v)
    ex = expand_complex(alg, cx)
    hom = homology_report(ex)
    mod = band_module(pres, signs, w, v)
    em = expand_module(alg, mod)
    if pairs % 2:
        flipped = t_module([[(-x) % v.prime for x in row]
                            for row in v.matrix], v.prime)
        em_seam = expand_module(
            alg, band_module(pres, signs, w, flipped))
    else:
        em_seam = em
    assert [u for _, u in ex.degrees[0]] == \
        [u for _, u in mod.generators], \
        "complex and module generators sit at different vertices"
    checks = (_vanishing_check(hom, 0),
              _dimension_check(hom, 0, em),
              _image_check(ex, 0, _alternating_rows(em_seam, v.rank,
                                                    alg.prime)),
              Check("concentration", set(ex.dims) <= {-1, 0},
                    "complex lives in degrees -1 and 0"))
    return VerificationReport(
        f"band {render_word(w)} with rank {v.rank} over F_{alg.prime}",
        checks)


def verify_resolution(pres, signs, p, side):
    """Check that a side's constructed resolution resolves its module.

    For a string side, over F_p: (i) homology vanishes away from the
    resolution degree t, (ii) dim H^t equals dim M(C), (iii) the image
    of d^(t-1) equals the expanded relation submodule of M(C) under
    the correspondence g_i -> (-1)^i g at the i-th degree-t generator.
    The signs are forced: relations subtract while differentials add.
    A band side checks the same in degree 0 together with
    concentration in degrees -1 and 0; there the alternation also
    crosses the seam, so for an odd pair count the relation submodule
    is the one presented by the negated T-module.
    """
    alg = expand_algebra(pres, p)
    if isinstance(side, StringSide):
        return _verify_string(alg, pres, signs, side.word)
    if isinstance(side, BandSide):
        return _verify_band(alg, pres, signs, side.word, side.v)
    raise TypeError("expected a StringSide or BandSide")


def brute_force_equivalence(c, e, shift_bound):
    """Letterwise search for e among shifts and inverses of c.

    Periodic words only need one period of shifts; other shapes scan
    -shift_bound..shift_bound. Finite and trivial shapes carry their
    anchoring with them, so for them only the identity shift can ever
    match, but scanning stays cheap and keeps this oracle independent
    of the classification machinery.
    """
    if isinstance(c, Periodic):
        shifts = range(len(c.cycle))
    else:
        shifts = range(-shift_bound, shift_bound + 1)
    ci = invert(c)
    for m in shifts:
        if shift(c, m) == e or shift(ci, m) == e:
            return True
    return False
