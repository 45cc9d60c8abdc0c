"""Command line front end.

One subcommand per pipeline stage: validate and sign a presentation,
classify words, present modules, build resolutions and complexes, read
homology words and kernels, decide module isomorphism, and run the
matrix oracle over a presentation. Output comes in two formats: human
(short prose lines) and line-exact (stable key-value lines, byte
identical across runs).

Exit codes: 0 on success, 1 on a domain error from the library, 2 on
a usage error.
"""

from __future__ import annotations

import argparse
import random
import shlex
import sys

from .complexes import (
    band_complex,
    kernel_generators,
    render_complex,
    string_complex,
)
from .genwords import check_genword, render_genword
from .modpres import (
    band_module,
    parse_t_module,
    render_module,
    string_module,
    t_module,
)
from .oracle import verify_resolution
from .presentation import parse_presentation
from .resolve import (
    BandSide,
    StringSide,
    homology_word,
    modules_isomorphic,
    resolution_of_band,
    resolution_of_string,
)
from .shapes import Finite, Periodic, Trivial
from .words import (
    BandWord,
    StringWord,
    all_letters,
    assign_signs,
    check_word,
    classify_word,
    random_band_word,
    render_word,
    validate_word,
)

__all__ = ["run", "main"]


class UsageError(Exception):
    pass


def _load(path):
    with open(path, encoding="utf-8") as handle:
        return parse_presentation(handle.read())


def _load_matrix(path):
    with open(path, encoding="utf-8") as handle:
        return parse_t_module(handle.read())


def _parse_window(text):
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"--window wants a:b, got {text!r}")


def _cmd_validate(args):
    pres = _load(args.pres)
    v = len(pres.quiver.vertices)
    a = len(pres.quiver.arrows)
    r = len(pres.relations)
    if args.format == "human":
        print(f"valid gentle presentation: {v} vertices, {a} arrows, "
              f"{r} relations")
    else:
        print(f"valid {v} {a} {r}")
    return 0


def _cmd_signs(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    for (name, inverse), sign in signs.items():
        if inverse:
            continue
        if args.format == "human":
            print(f"sign({name}) = {sign:+d}")
        else:
            print(f"{name} {sign:+d}")
    return 0


def _classification_line(verdict):
    name = type(verdict).__name__
    if isinstance(verdict, StringWord):
        spots = " ".join(str(i) for i in verdict.decomposition.peaks)
        return f"classification {name}, peaks {spots}"
    return f"classification {name}"


def _cmd_word(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    w = check_word(pres, signs, args.word)
    verdict = classify_word(pres, signs, w)
    human = args.format == "human"
    if human:
        print(_classification_line(verdict))
    else:
        print(f"classification {type(verdict).__name__}")
        if isinstance(verdict, StringWord):
            print("peaks " + " ".join(
                str(i) for i in verdict.decomposition.peaks))
    if isinstance(verdict, StringWord):
        print(f"shift {verdict.shift}")
        dec = verdict.decomposition
        for tag, part in (("B", dec.b), ("A", dec.a), ("D", dec.d)):
            sep = " = " if human else " "
            print(f"{tag}{sep}{render_word(part)}")
    elif isinstance(verdict, BandWord):
        print(f"shift {verdict.shift}")
        sep = " = " if human else " "
        print(f"cycle{sep}{render_word(Finite(verdict.cycle))}")
    return 0


def _cmd_module(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    w = check_word(pres, signs, args.word)
    verdict = classify_word(pres, signs, w)
    if isinstance(verdict, BandWord):
        if args.matrix is None:
            raise UsageError("a band word needs --matrix <file>")
        mod = band_module(pres, signs, w, _load_matrix(args.matrix))
    elif isinstance(verdict, StringWord):
        if args.matrix is not None:
            raise UsageError("--matrix only applies to band words")
        mod = string_module(pres, signs, w)
    else:
        print(f"error: {type(verdict).__name__} word has no module",
              file=sys.stderr)
        return 1
    print(render_module(mod))
    return 0


def _cmd_resolve(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    w = check_word(pres, signs, args.word)
    verdict = classify_word(pres, signs, w)
    if isinstance(verdict, StringWord):
        word, degree = resolution_of_string(pres, signs, verdict)
    elif isinstance(verdict, BandWord):
        word, degree = resolution_of_band(pres, verdict), 0
    else:
        print(f"error: {type(verdict).__name__} word has no resolution",
              file=sys.stderr)
        return 1
    if args.format == "human":
        print(f"R_C = {render_genword(word)}, degree {degree}")
    else:
        print(f"resolution {render_genword(word)}")
        print(f"degree {degree}")
    return 0


def _cmd_complex(args):
    pres = _load(args.pres)
    w = check_genword(pres, args.genword)
    if isinstance(w, Periodic):
        if args.matrix is None:
            raise UsageError("a periodic word needs --matrix <file>")
        cx = band_complex(pres, w, _load_matrix(args.matrix))
    else:
        if args.matrix is not None:
            raise UsageError("--matrix only applies to periodic words")
        window = None if args.window is None \
            else _parse_window(args.window)
        cx = string_complex(pres, w, window=window)
    print(render_complex(cx))
    return 0


def _cmd_homword(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    w = check_genword(pres, args.genword)
    h = homology_word(pres, signs, w)
    if args.format == "human":
        print(f"H = {render_word(h)}")
    else:
        print(render_word(h))
    return 0


def _cmd_kernel(args):
    pres = _load(args.pres)
    w = check_genword(pres, args.genword)
    for i, path in kernel_generators(pres, w, args.deg):
        body = "0" if path is None else str(path)
        if args.format == "human":
            print(f"g{i} = {body}")
        else:
            print(f"g{i} {body}")
    return 0


def _parse_side(pres, signs, spec):
    parts = shlex.split(spec)
    if len(parts) == 2 and parts[0] == "string":
        return StringSide(check_word(pres, signs, parts[1]))
    if len(parts) == 3 and parts[0] == "band":
        return BandSide(check_word(pres, signs, parts[1]),
                        _load_matrix(parts[2]))
    raise UsageError("side spec must be 'string \"<word>\"' or "
                     "'band \"<word>\" <matrix-file>'")


def _cmd_iso(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    lhs = _parse_side(pres, signs, args.lhs)
    rhs = _parse_side(pres, signs, args.rhs)
    witness = modules_isomorphic(pres, signs, lhs, rhs)
    if witness is None:
        print("not isomorphic")
        return 0
    tail = ""
    if witness.inverted:
        tail = ", inverted" if args.format == "human" else " inverted"
    print(f"isomorphic: shift {witness.shift}{tail}"
          if args.format == "human"
          else f"isomorphic shift {witness.shift}{tail}")
    return 0


def _small_words(pres, maxlen):
    out = [Trivial(v, delta)
           for v in pres.quiver.vertices for delta in (1, -1)]
    frontier = [Finite((l,)) for l in all_letters(pres)]
    out.extend(frontier)
    for _ in range(maxlen - 1):
        grown = []
        for w in frontier:
            for l in all_letters(pres):
                if l.head != w.items[-1].tail:
                    continue
                cand = Finite(w.items + (l,))
                try:
                    validate_word(pres, cand)
                except ValueError:
                    continue
                grown.append(cand)
        out.extend(grown)
        frontier = grown
    return out


def _cmd_verify(args):
    pres = _load(args.pres)
    signs = assign_signs(pres)
    primes = [args.prime] if args.prime else [2, 3]
    sides = []
    for w in _small_words(pres, args.max_len):
        if isinstance(classify_word(pres, signs, w), StringWord):
            sides.append(StringSide(w))
    rng = random.Random(args.seed)
    bands = []
    for _ in range(20):
        w = random_band_word(pres, rng, max(args.max_len, 4))
        if w is None:
            break
        verdict = classify_word(pres, signs, w)
        if not isinstance(verdict, BandWord):
            continue
        canon = Finite(verdict.cycle)
        if canon not in bands:
            bands.append(canon)
        if len(bands) == 5:
            break
    checked = 0
    failed = 0
    for p in primes:
        cases = list(sides)
        for cyc in bands:
            for mat in ([[1]], [[1, 1], [0, 1]]):
                cases.append(BandSide(Periodic(cyc.items, 0),
                                      t_module(mat, p)))
        for side in cases:
            rep = verify_resolution(pres, signs, p, side)
            checked += 1
            if rep.passed:
                print(f"pass {rep.subject}")
            else:
                failed += 1
                print(f"fail {rep.subject}")
                print(rep.render())
    print(f"checked {checked} failed {failed}")
    return 1 if failed else 0


def _parser():
    top = argparse.ArgumentParser(
        prog="gentle",
        description="word calculus for complete gentle presentations")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "line-exact"),
                        default="human")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common])
    p.add_argument("pres")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("signs", parents=[common])
    p.add_argument("pres")
    p.set_defaults(func=_cmd_signs)

    p = sub.add_parser("word", parents=[common])
    p.add_argument("pres")
    p.add_argument("word")
    p.set_defaults(func=_cmd_word)

    p = sub.add_parser("module", parents=[common])
    p.add_argument("pres")
    p.add_argument("word")
    p.add_argument("--matrix")
    p.set_defaults(func=_cmd_module)

    p = sub.add_parser("resolve", parents=[common])
    p.add_argument("pres")
    p.add_argument("word")
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("complex", parents=[common])
    p.add_argument("pres")
    p.add_argument("genword")
    p.add_argument("--window")
    p.add_argument("--matrix")
    p.set_defaults(func=_cmd_complex)

    p = sub.add_parser("homword", parents=[common])
    p.add_argument("pres")
    p.add_argument("genword")
    p.set_defaults(func=_cmd_homword)

    p = sub.add_parser("kernel", parents=[common])
    p.add_argument("pres")
    p.add_argument("genword")
    p.add_argument("--deg", type=int, required=True)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("iso", parents=[common])
    p.add_argument("pres")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("pres")
    p.add_argument("--prime", type=int)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)
    return top


def run(argv):
    """Dispatch one invocation; returns the exit code."""
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
