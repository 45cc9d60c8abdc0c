"""Module presentations attached to string and band words.

A classified string word C with peaks pi(0..d) presents a module on
generators g_0..g_d, one per peak, with a relation for each valley of
the middle part and at most one extension relation at each finite end.
A band word contributes a free parameter: a T-module V, an invertible
matrix over F_p, mixed into the wrap-around relation through its
inverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import fp
from .errors import NotABandWord, NotAStringWord
from .presentation import path_in_P
from .shapes import Finite, Trivial, shift
from .words import BandWord, Letter, StringWord, classify_word, vertex_at

__all__ = [
    "ModulePresentation", "TModule", "t_module", "parse_t_module",
    "extension_path", "string_module", "band_module", "render_module",
]


@dataclass(frozen=True)
class ModulePresentation:
    """Generators (label, vertex) and relations as formal sums.

    Each relation is a tuple of terms (coeff, path, label); the path's
    tail vertex always equals the generator's vertex, and all paths in
    one relation share a head vertex. Coefficients live in Z when prime
    is None, otherwise in F_prime.
    """

    generators: tuple
    relations: tuple
    prime: object = None

    def vertex_of(self, label):
        for name, vertex in self.generators:
            if name == label:
                return vertex
        raise KeyError(label)


@dataclass(frozen=True)
class TModule:
    """An invertible matrix over F_prime, with its inverse precomputed."""

    rank: int
    prime: int
    matrix: tuple
    inverse: tuple

    def res(self):
        return TModule(self.rank, self.prime, self.inverse, self.matrix)


def t_module(rows, prime):
    mat = [list(row) for row in rows]
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise ValueError("T-module matrix must be square and nonempty")
    inv = fp.inverse(mat, prime)
    return TModule(n, prime,
                   tuple(tuple(x % prime for x in row) for row in mat),
                   tuple(tuple(row) for row in inv))


def parse_t_module(text):
    """Read the matrix file format: `p <prime>`, `n <rank>`, then rows.

    The two header fields may also share one line as `p <prime> n <rank>`.
    """
    lines = [line.split("#")[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    first = lines[0].split() if lines else []
    if len(first) == 4 and first[0] == "p" and first[2] == "n":
        lines[0:1] = [f"p {first[1]}", f"n {first[3]}"]
    if len(lines) < 2 or not lines[0].startswith("p ") \
            or not lines[1].startswith("n "):
        raise ValueError("matrix file must start with `p <prime>` and "
                         "`n <rank>` lines")
    prime = int(lines[0][2:])
    if prime < 2 or any(prime % k == 0 for k in range(2, prime)):
        raise ValueError(f"{prime} is not prime")
    n = int(lines[1][2:])
    if n < 1:
        raise ValueError("rank must be at least 1")
    rows = [[int(x) for x in line.split()] for line in lines[2:]]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"expected {n} rows of {n} entries")
    return t_module(rows, prime)


# decomposition pieces

def _direct_path(pres, letters):
    path = path_in_P(pres, [l.name for l in letters])
    assert path is not None, "run of a valid word left P"
    return path


def _alternating_pairs(pres, letters):
    """Split gamma_1^-1 sigma_1 ... gamma_n^-1 sigma_n into direct path
    pairs (gamma_i, sigma_i)."""
    runs = [(inv, tuple(grp)) for inv, grp in
            itertools.groupby(letters, key=lambda l: l.inverse)]
    assert runs[0][0] and not runs[-1][0] and len(runs) % 2 == 0
    pairs = []
    for k in range(0, len(runs), 2):
        gamma = _direct_path(
            pres, tuple(l.invert() for l in reversed(runs[k][1])))
        sigma = _direct_path(pres, runs[k + 1][1])
        pairs.append((gamma, sigma))
    return pairs


def extension_path(pres, signs, part):
    """The path u(part)^-1 in P for the arrow u extending a word end.

    `part` is the B or D of a string decomposition. An arrow u extends
    the end when u(part)^-1 is again a word; gentleness makes u unique.
    An infinite part admits no extension. Returns None when no arrow
    fits or the composite leaves P.
    """
    if not isinstance(part, (Trivial, Finite)):
        return None
    if isinstance(part, Finite):
        p = _direct_path(pres, tuple(l.invert()
                                     for l in reversed(part.items)))
    found = []
    for arrow in pres.quiver.arrows:
        if isinstance(part, Trivial):
            if arrow.tail == part.vertex and \
                    signs.of(Letter(arrow, True)) == part.delta:
                found.append(path_in_P(pres, [arrow.name]))
        elif arrow.tail == p.head and \
                not pres.in_ideal(arrow.name, p.arrows[0]):
            found.append(path_in_P(pres, [arrow.name] + list(p.arrows)))
    assert len(found) <= 1, "two arrows extend the same word end"
    if not found or found[0] is None:
        return None
    return found[0]


def _edge_relation(pres, signs, part, label):
    """The extension relation at a finite end, if an arrow extends it."""
    path = extension_path(pres, signs, part)
    if path is None:
        return []
    return [((1, path, label),)]


def string_module(pres, signs, w):
    """Present M(C) for a string word C: one generator per peak, a
    relation per valley, extension relations at bounded ends."""
    verdict = classify_word(pres, signs, w)
    if not isinstance(verdict, StringWord):
        raise NotAStringWord(
            f"{type(verdict).__name__} word does not present a string "
            "module")
    dec = verdict.decomposition
    pairs = [] if isinstance(dec.a, Trivial) \
        else _alternating_pairs(pres, dec.a.items)
    n = len(pairs)
    vertices = [vertex_at(shift(w, verdict.shift), dec.peaks[0])]
    vertices += [sigma.tail for _, sigma in pairs]
    if pairs:
        assert pairs[0][0].tail == vertices[0]
    generators = tuple((f"g{i}", vertices[i]) for i in range(n + 1))
    relations = list(_edge_relation(pres, signs, dec.b, "g0"))
    for i, (gamma, sigma) in enumerate(pairs):
        relations.append(((1, gamma, f"g{i}"), (-1, sigma, f"g{i + 1}")))
    relations += _edge_relation(pres, signs, dec.d, f"g{n}")
    return ModulePresentation(generators, tuple(relations))


def band_module(pres, signs, w, v):
    """Present M(C, V) for a band word C and T-module V.

    The input is shift-normalized through classification, so the first
    pair starts right after a peak. Generators come in peak-indexed
    groups of rank(V); the wrap-around relation folds V's inverse in.
    """
    verdict = classify_word(pres, signs, w)
    if not isinstance(verdict, BandWord):
        raise NotABandWord(
            f"{type(verdict).__name__} word does not present a band "
            "module")
    pairs = _alternating_pairs(pres, verdict.cycle)
    n, r, p = len(pairs), v.rank, v.prime
    vertices = [verdict.cycle[0].head]
    vertices += [sigma.tail for _, sigma in pairs[:-1]]
    assert pairs[-1][1].tail == vertices[0]
    generators = tuple((f"g{i}_{om}", vertices[i])
                       for i in range(n) for om in range(1, r + 1))
    relations = []
    for om in range(1, r + 1):
        for i, (gamma, sigma) in enumerate(pairs[:-1]):
            relations.append(((1, gamma, f"g{i}_{om}"),
                              ((-1) % p, sigma, f"g{i + 1}_{om}")))
        gamma, sigma = pairs[-1]
        terms = [(1, gamma, f"g{n - 1}_{om}")]
        for tau in range(1, r + 1):
            coeff = (-v.inverse[tau - 1][om - 1]) % p
            if coeff:
                terms.append((coeff, sigma, f"g0_{tau}"))
        relations.append(tuple(terms))
    return ModulePresentation(generators, tuple(relations), p)


def render_module(mp):
    lines = [f"gen {label} @ {vertex}" for label, vertex in mp.generators]
    for rel in mp.relations:
        lines.append("rel " + " + ".join(
            f"{c}*{path}*{label}" for c, path, label in rel))
    return "\n".join(lines)
