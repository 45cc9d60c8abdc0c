from __future__ import annotations

import random

import pytest

from gentle.presentation import (
    Arrow,
    Quiver,
    GentlePresentation,
    validate_presentation,
)


def make_pres(vertices, arrows, relations):
    quiver = Quiver(tuple(vertices),
                    tuple(Arrow(n, t, h) for n, t, h in arrows))
    return validate_presentation(quiver, set(relations))


@pytest.fixture(scope="session")
def pres1():
    # two loops with both mixed composites zero; infinite dimensional
    return make_pres(["v"],
                     [("x", "v", "v"), ("y", "v", "v")],
                     [("x", "y"), ("y", "x")])


@pytest.fixture(scope="session")
def pres2():
    # two loops squaring to zero; infinite dimensional, has bands
    return make_pres(["v"],
                     [("a", "v", "v"), ("b", "v", "v")],
                     [("a", "a"), ("b", "b")])


@pytest.fixture(scope="session")
def a3():
    # linear quiver with the composite killed; dimension 5
    return make_pres(["1", "2", "3"],
                     [("a", "1", "2"), ("b", "2", "3")],
                     [("b", "a")])


@pytest.fixture(scope="session")
def cycle4():
    # oriented 4-cycle with one relation; finite dimensional, no bands
    return make_pres(["1", "2", "3", "4"],
                     [("a", "1", "2"), ("b", "2", "3"),
                      ("c", "3", "4"), ("d", "4", "1")],
                     [("b", "a")])


@pytest.fixture(scope="session")
def kron():
    # two parallel arrows, no relations; finite dimensional, has bands
    return make_pres(["1", "2"],
                     [("a", "1", "2"), ("b", "1", "2")],
                     [])


@pytest.fixture(scope="session")
def ladder():
    # two parallel arrows twice over; finite dimensional, has bands
    return make_pres(["1", "2", "3"],
                     [("a", "1", "2"), ("b", "1", "2"),
                      ("c", "2", "3"), ("d", "2", "3")],
                     [("c", "a"), ("d", "b")])


def random_gentle_presentation(rng: random.Random):
    """A random valid gentle presentation on a small quiver.

    Arrows are drawn respecting the degree bound; at each vertex the
    relation pairs are chosen so both one-continuation conditions hold:
    with two arrows on a side, each arrow on the other side needs
    exactly one relation among them.
    """
    while True:
        n = rng.randint(2, 4)
        vertices = [str(i + 1) for i in range(n)]
        arrows = []
        out_deg = {v: 0 for v in vertices}
        in_deg = {v: 0 for v in vertices}
        for k in range(rng.randint(2, 6)):
            tails = [v for v in vertices if out_deg[v] < 2]
            heads = [v for v in vertices if in_deg[v] < 2]
            if not tails or not heads:
                break
            t = rng.choice(tails)
            h = rng.choice(heads)
            arrows.append((f"r{k}", t, h))
            out_deg[t] += 1
            in_deg[h] += 1
        if not arrows:
            continue
        quiver = Quiver(tuple(vertices),
                        tuple(Arrow(n_, t, h) for n_, t, h in arrows))
        relations = set()
        for v in vertices:
            outs = quiver.arrows_out_of(v)
            ins = quiver.arrows_into(v)
            if len(outs) == 2 and len(ins) == 2:
                # a perfect matching between ins and outs
                if rng.random() < 0.5:
                    pairs = [(outs[0], ins[0]), (outs[1], ins[1])]
                else:
                    pairs = [(outs[0], ins[1]), (outs[1], ins[0])]
                relations.update((x.name, y.name) for x, y in pairs)
            elif len(outs) == 2 and len(ins) == 1:
                relations.add((rng.choice(outs).name, ins[0].name))
            elif len(outs) == 1 and len(ins) == 2:
                relations.add((outs[0].name, rng.choice(ins).name))
            elif len(outs) == 1 and len(ins) == 1:
                if rng.random() < 0.4:
                    relations.add((outs[0].name, ins[0].name))
        try:
            return validate_presentation(quiver, relations)
        except Exception:
            continue


@pytest.fixture(scope="session")
def randpres():
    return random_gentle_presentation(random.Random(20260823))
