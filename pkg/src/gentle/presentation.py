"""Quivers, gentle presentations and their nonzero paths.

A presentation is a finite quiver together with a set of length-two
monomial relations. A relation is stored as an ordered pair (x, y) and
means the composite path xy is zero, where y is traversed first. Paths
are kept in the same notation order: the arrow traversed first is the
last entry, so str(path) reads like the relation file syntax, e.g. the
composite "a after b" is the path a*b.

Validation collects every violated axiom; the gentleness conditions are
the degree bound (at most two arrows in and out of each vertex) and the
two one-continuation conditions: an arrow has at most one relation-free
composition onto each side, and at most one relation composition onto
each side.
"""

from dataclasses import dataclass

from .errors import (
    GentleCondition2Violated,
    GentleCondition3Violated,
    NonComposableRelation,
    NotChained,
    TooManyArrowsAtVertex,
    TrivialPath,
    VertexUnknown,
)


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str

    def __repr__(self):
        return f"{self.name}: {self.tail} -> {self.head}"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        for a in self.arrows:
            for v in (a.tail, a.head):
                if v not in self.vertices:
                    raise VertexUnknown(f"arrow {a.name} uses unknown vertex {v}")

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise ValueError(f"unknown arrow {name!r}")

    def arrows_out_of(self, v):
        return [a for a in self.arrows if a.tail == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a.head == v]


@dataclass(frozen=True)
class Path:
    """A nonzero path: a chain of arrow names in notation order (last
    entry traversed first), or a trivial path at a vertex."""

    arrows: tuple
    tail: str
    head: str

    @property
    def is_trivial(self):
        return not self.arrows

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if self.is_trivial:
            return f"e_{self.tail}"
        return "*".join(self.arrows)

    def __repr__(self):
        return f"Path({self})"


@dataclass(frozen=True)
class GentlePresentation:
    quiver: Quiver
    relations: frozenset

    def in_ideal(self, x, y):
        """Whether the composite path xy (y first) is a relation."""
        return (x, y) in self.relations

    def arrow(self, name):
        return self.quiver.arrow(name)

    @property
    def arrow_names(self):
        return [a.name for a in self.quiver.arrows]


def presentation_violations(quiver, relations):
    """Check every gentleness axiom, returning a list of errors.

    The list is empty exactly when (quiver, relations) is a valid
    presentation by the conditions this package needs; the remaining
    ring-theoretic completeness conditions are assumed.
    """
    errors = []
    by_name = {a.name: a for a in quiver.arrows}
    for x, y in sorted(relations):
        if x not in by_name or y not in by_name:
            errors.append(NonComposableRelation(
                f"relation {x}*{y} uses an unknown arrow"))
        elif by_name[x].tail != by_name[y].head:
            errors.append(NonComposableRelation(
                f"relation {x}*{y}: t({x}) = {by_name[x].tail} but "
                f"h({y}) = {by_name[y].head}"))
    for v in quiver.vertices:
        n_out = len(quiver.arrows_out_of(v))
        n_in = len(quiver.arrows_into(v))
        if n_out > 2 or n_in > 2:
            errors.append(TooManyArrowsAtVertex(
                f"vertex {v} has {n_in} arrows in and {n_out} out"))
    relations = {r for r in relations
                 if r[0] in by_name and r[1] in by_name}
    for y in quiver.arrows:
        succ_free = [x for x in quiver.arrows_out_of(y.head)
                     if (x.name, y.name) not in relations]
        succ_rel = [x for x in quiver.arrows_out_of(y.head)
                    if (x.name, y.name) in relations]
        pred_free = [z for z in quiver.arrows_into(y.tail)
                     if (y.name, z.name) not in relations]
        pred_rel = [z for z in quiver.arrows_into(y.tail)
                    if (y.name, z.name) in relations]
        if len(succ_free) > 1 or len(pred_free) > 1:
            errors.append(GentleCondition2Violated(
                f"arrow {y.name} has more than one relation-free "
                f"continuation on one side"))
        if len(succ_rel) > 1 or len(pred_rel) > 1:
            errors.append(GentleCondition3Violated(
                f"arrow {y.name} has more than one relation "
                f"continuation on one side"))
    return errors


def validate_presentation(quiver, relations):
    """Validate and build a presentation, or raise the first violation.

    The raised error's message lists every violated axiom.
    """
    errors = presentation_violations(quiver, relations)
    if errors:
        lines = "; ".join(str(e) for e in errors)
        raise type(errors[0])(f"invalid presentation: {lines}")
    return GentlePresentation(quiver, frozenset(relations))


def trivial_path(pres, vertex):
    if vertex not in pres.quiver.vertices:
        raise VertexUnknown(f"unknown vertex {vertex!r}")
    return Path((), vertex, vertex)


def path_in_P(pres, arrow_names):
    """Build the path with the given arrow names (notation order), or
    return None when the composite is zero.

    Raises NotChained when consecutive arrows do not compose at all.
    """
    if not arrow_names:
        raise ValueError("a path needs at least one arrow; "
                         "use trivial_path for trivial paths")
    arrows = [pres.arrow(n) for n in arrow_names]
    for i in range(len(arrows) - 1):
        if arrows[i].tail != arrows[i + 1].head:
            raise NotChained(
                f"t({arrows[i].name}) = {arrows[i].tail} but "
                f"h({arrows[i + 1].name}) = {arrows[i + 1].head}")
    for i in range(len(arrows) - 1):
        if pres.in_ideal(arrows[i].name, arrows[i + 1].name):
            return None
    return Path(tuple(a.name for a in arrows),
                tail=arrows[-1].tail, head=arrows[0].head)


def first_arrow(pres, path):
    """The arrow a path traverses first (its rightmost arrow)."""
    if path.is_trivial:
        raise TrivialPath("trivial paths have no first arrow")
    return pres.arrow(path.arrows[-1])


def last_arrow(pres, path):
    """The arrow a path traverses last (its leftmost arrow)."""
    if path.is_trivial:
        raise TrivialPath("trivial paths have no last arrow")
    return pres.arrow(path.arrows[0])


def compose(pres, left, right):
    """The composite path left*right (right traversed first), or None
    when it is zero. Trivial paths act as identities."""
    if left.tail != right.head:
        raise NotChained(
            f"t({left}) = {left.tail} but h({right}) = {right.head}")
    if left.is_trivial:
        return right
    if right.is_trivial:
        return left
    if pres.in_ideal(left.arrows[-1], right.arrows[0]):
        return None
    return Path(left.arrows + right.arrows, tail=right.tail, head=left.head)


def _free_continuation(pres, arrow):
    """The unique arrow x with x*arrow relation-free, if any."""
    cands = [x for x in pres.quiver.arrows_out_of(arrow.head)
             if not pres.in_ideal(x.name, arrow.name)]
    return cands[0] if cands else None


def primitive_cycles(pres):
    """All primitive cycles: relation-free cycles (including the wrap
    pair) that are not powers of shorter ones.

    Each starting arrow of a cycle gives its own path, so rotations are
    listed individually; results are sorted by length then arrow names.
    """
    cycles = []
    for start in pres.quiver.arrows:
        walk = [start]
        seen = {start.name}
        while True:
            nxt = _free_continuation(pres, walk[-1])
            if nxt is None:
                break
            if nxt.name == start.name:
                names = tuple(a.name for a in reversed(walk))
                cycles.append(Path(names, tail=start.tail, head=start.tail))
                break
            if nxt.name in seen:
                break
            seen.add(nxt.name)
            walk.append(nxt)
    return sorted(cycles, key=lambda p: (len(p), p.arrows))


def enumerate_P(pres, max_len):
    """All paths in P of length up to max_len, plus a finiteness flag
    for the whole of P (true when the presentation has no primitive
    cycles)."""
    if max_len < 1:
        return [], not primitive_cycles(pres)
    level = [Path((a.name,), tail=a.tail, head=a.head)
             for a in pres.quiver.arrows]
    paths = list(level)
    for _ in range(max_len - 1):
        nxt_level = []
        for p in level:
            for x in pres.quiver.arrows_out_of(p.head):
                if pres.in_ideal(x.name, p.arrows[0]):
                    continue
                nxt_level.append(Path((x.name,) + p.arrows,
                                      tail=p.tail, head=x.head))
        level = nxt_level
        paths.extend(level)
        if not level:
            break
    paths.sort(key=lambda p: (len(p), p.arrows))
    return paths, not primitive_cycles(pres)


def all_paths(pres):
    """Basis of the algebra: trivial paths followed by all of P.

    Raises when P is infinite.
    """
    paths = []
    bound = 1
    while True:
        level, finite = enumerate_P(pres, bound)
        if not finite:
            from .errors import InfiniteDimensional
            cycles = primitive_cycles(pres)
            raise InfiniteDimensional(
                cycles, "P is infinite; primitive cycles: "
                + ", ".join(str(c) for c in cycles))
        if len(level) == len(paths):
            trivial = [trivial_path(pres, v) for v in pres.quiver.vertices]
            return trivial + paths
        paths = level
        bound *= 2


def parse_presentation(text):
    """Parse the line-based presentation format.

    Lines: `vertex <name>`, `arrow <name>: <tail> -> <head>`,
    `relation <x>*<y>`; blank lines and `#` comments are skipped.
    """
    vertices = []
    arrows = []
    relations = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            keyword, rest = line.split(None, 1)
        except ValueError:
            raise ValueError(f"line {lineno}: expected a declaration, "
                             f"got {line!r}")
        if keyword == "vertex":
            vertices.append(rest.strip())
        elif keyword == "arrow":
            try:
                name, spec = rest.split(":", 1)
                tail, head = spec.split("->")
            except ValueError:
                raise ValueError(f"line {lineno}: expected "
                                 f"'arrow <name>: <tail> -> <head>'")
            arrows.append(Arrow(name.strip(), tail.strip(), head.strip()))
        elif keyword == "relation":
            parts = [p.strip() for p in rest.split("*")]
            if len(parts) != 2 or not all(parts):
                raise ValueError(f"line {lineno}: expected "
                                 f"'relation <x>*<y>'")
            relations.add((parts[0], parts[1]))
        else:
            raise ValueError(f"line {lineno}: unknown keyword {keyword!r}")
    quiver = Quiver(tuple(vertices), tuple(arrows))
    return validate_presentation(quiver, relations)


def render_presentation(pres):
    lines = [f"vertex {v}" for v in pres.quiver.vertices]
    lines += [f"arrow {a.name}: {a.tail} -> {a.head}"
              for a in pres.quiver.arrows]
    lines += [f"relation {x}*{y}" for x, y in sorted(pres.relations)]
    return "\n".join(lines) + "\n"


def load_presentation(filename):
    with open(filename) as fh:
        return parse_presentation(fh.read())
