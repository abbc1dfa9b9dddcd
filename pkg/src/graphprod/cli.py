"""Command line entry point: ``graphprod <command> FILE ...``.

Exit status is 0 on success, 1 when ``--expect`` is given and the result is
negative, and 2 on input errors (including unknown flags).
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from .abelian import DescriptorError, descriptor_of, div_part, tor_n, torsion_bound
from .classifier import (
    DOES_NOT_ADMIT, MODES, AbelianFactor, ClassifierError, classify_restricted, classify,
    classify_abelian_sum,
)
from .equations import (
    FreeProductInstance, SandwichError, SandwichSpec, SearchError, build_sandwich_words,
    default_omega, descending_length_step, omega_prefix_search, random_ab_word, trichotomy_sweep,
)
from .fileformat import ParseError, load
from .graph import GraphError
from .groups import ConcreteGroup, GroupError
from .words import WordError, clg, csp, pyramid_decompose, project, reduce

DEFAULT_SEED = 20240101

_INPUT_ERRORS = (ParseError, WordError, GraphError, GroupError, ClassifierError, DescriptorError,
                 SandwichError, SearchError, OSError)


class InputError(ValueError):
    pass


def _out(lines: Sequence[str]) -> None:
    sys.stdout.write("".join(line + "\n" for line in lines))


def _presentation(path: str):
    return load(path).presentation()


def _word(p, tokens: Sequence[str]):
    return p.parse_word(" ".join(tokens))


# ------------------------------------------------------------------ commands

def cmd_reduce(args) -> int:
    p = _presentation(args.file)
    _out([p.format_word(reduce(p, _word(p, args.word)))])
    return 0


def cmd_decompose(args) -> int:
    p = _presentation(args.file)
    w = _word(p, args.word)
    d = pyramid_decompose(p, w)
    _out([f"w1: {p.format_word(d.w1)}", f"w2: {p.format_word(d.w2)}", f"w3: {p.format_word(d.w3)}",
          f"w2': {p.format_word(d.w2p)}", f"csp: {' '.join(sorted(csp(p, w), key=p.vindex.get)) or '-'}",
          f"clg: {clg(p, w)}"])
    return 0


def cmd_project(args) -> int:
    p = _presentation(args.file)
    _out([p.format_word(project(p, _word(p, args.word), args.onto))])
    return 0


def cmd_classify(args) -> int:
    f = load(args.file)
    inst = f.instance()
    if args.b0 or args.query_b is not None:
        v = classify_restricted(inst, args.mode, b0=args.b0 or (), query_b=args.query_b)
        _out(v.lines())
        judged = v
    else:
        c = classify(inst, args.mode)
        _out(c.lines(inst))
        judged = c.restricted if args.restricted else c.verdict
        if judged is None:
            raise InputError("no restricted verdict: the partition hypotheses are not settled")
    return 1 if args.expect and judged.outcome == DOES_NOT_ADMIT else 0


def cmd_abelian(args) -> int:
    f = load(args.file)
    negative = False
    lines = []
    targets = args.vertex or [x for x, _ in f.factors]
    fmap = f.factor_map
    for x in targets:
        if x not in fmap:
            raise InputError(f"unknown vertex {x!r}")
        spec = fmap[x]
        if isinstance(spec, ConcreteGroup) and spec.is_abelian:
            d = descriptor_of(spec)
        elif isinstance(spec, AbelianFactor):
            d = spec.descriptor
        else:
            if args.vertex:
                raise InputError(f"factor at {x!r} is not abelian")
            continue
        split = div_part(d)
        tb = torsion_bound(d)
        lines += [f"vertex: {x}", f"  descriptor: {d}", f"  divisible part: {split.divisible}",
                  f"  reduced part: {split.reduced}",
                  f"  torsion bound: {tb if tb is not None else 'none'}"]
        for n in args.n:
            lines.append(f"  tor_{n}: {tor_n(d, n)}")
        v = classify_abelian_sum(d, args.mode)
        lines += ["  " + line for line in v.lines()]
        negative |= v.outcome == DOES_NOT_ADMIT
    _out(lines)
    return 1 if args.expect and negative else 0


def _free_product(args) -> FreeProductInstance:
    return FreeProductInstance.from_presentation(_presentation(args.file))


def _parse_elements(grp: ConcreteGroup, tokens: Sequence[str]) -> list:
    return [grp.parse_element(t) for t in tokens]


def cmd_equations(args) -> int:
    inst = _free_product(args)
    f = load(args.file)
    opt = lambda key, default: f.option(key, default)
    if args.depth is not None:
        return _omega(args, inst)
    k = args.kstar if args.kstar is not None else int(opt("kstar", ("2",))[0])
    p_raw = args.p if args.p is not None else (int(opt("p", (None,))[0]) if opt("p", None) else None)
    gstar = inst.H1.parse_element(args.gstar if args.gstar is not None else opt("gstar", ("1",))[0])
    h_tokens = args.h if args.h is not None else opt("h", tuple(str(v) for v in range(1, 2 * k + 1)))
    hs = _parse_elements(inst.H2, h_tokens)
    if len(hs) != 2 * k:
        raise InputError(f"--h needs {2 * k} elements of H2, got {len(hs)}")
    spec = SandwichSpec(k, gstar, tuple((hs[2 * l], hs[2 * l + 1]) for l in range(k)), p_raw)
    size = args.alphabet if args.alphabet is not None else int(opt("alphabet", ("6",))[0])
    max_len = args.maxlen if args.maxlen is not None else int(opt("maxlen", ("4",))[0])
    alphabet = [v for a in range(1, size + 1) for v in (a, -a)]
    rep = trichotomy_sweep(inst, spec, alphabet, max_len)
    lines = rep.lines()
    for u, r in rep.violations:
        lines.append(f"violation: {inst.format_word(u)} (lg {r.lg_u}, clg {r.clg_u}, result {r.lg_total})")
    bad = len(rep.violations)
    if args.descend:
        rng = random.Random(args.seed)
        words = build_sandwich_words(inst, spec)
        fails = 0
        for _ in range(args.descend):
            t = random_ab_word(inst, rng, 8, alphabet)
            ab, before, after = descending_length_step(inst, spec, t, words)
            fails += not (ab and after > before)
        lines += [f"seed: {args.seed}", f"descending checks: {args.descend}", f"descending failures: {fails}"]
        bad += fails
    _out(lines)
    return 1 if args.expect and bad else 0


def _omega(args, inst: FreeProductInstance) -> int:
    sys_ = default_omega(args.depth, args.p)
    target = inst.parse_word(" ".join(args.target)) if args.target else ()
    extra = []
    if args.alphabet:
        extra = [v for a in range(1, args.alphabet + 1) for v in (a, -a)]
    res = omega_prefix_search(inst, sys_, args.depth, args.maxlen if args.maxlen is not None else 4,
                              target=target, alphabet=extra)
    _out(res.lines())
    return 1 if args.expect and res.law_violations + res.route_disagreements else 0


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="graphprod", description="Graph products of groups: words, equations, classification.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, help_ in (("reduce", cmd_reduce, "print the normal form of a word"),
                            ("decompose", cmd_decompose, "print the w1 w2 w3 w2' w1^-1 decomposition"),
                            ("project", cmd_project, "retract a word onto a vertex set")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("word", nargs="+", help="vertex:element syllables, or 1")
        if name == "project":
            sp.add_argument("--onto", nargs="+", required=True)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("classify", help="partition and verdict for a symbolic instance")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=MODES, required=True)
    sp.add_argument("--b0", nargs="+", default=None, help="finite set removed before partitioning")
    sp.add_argument("--query-b", nargs="*", default=None, help="vertices or classes forming B")
    sp.add_argument("--restricted", action="store_true", help="judge the verdict for A0+A7+A8+A9")
    sp.add_argument("--expect", action="store_true", help="exit 1 on a negative verdict")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("abelian", help="descriptor operations and the abelian-sum verdict")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=MODES, required=True)
    sp.add_argument("--vertex", nargs="+", default=None)
    sp.add_argument("--n", nargs="+", type=int, default=[])
    sp.add_argument("--expect", action="store_true")
    sp.set_defaults(func=cmd_abelian)

    sp = sub.add_parser("equations", help="trichotomy sweep or omega search over a free product")
    sp.add_argument("file")
    sp.add_argument("--kstar", type=int)
    sp.add_argument("--p", type=int, help="override the exponent (marks results parameter-weakened)")
    sp.add_argument("--gstar")
    sp.add_argument("--h", nargs="+")
    sp.add_argument("--alphabet", type=int, help="use elements +-1 .. +-N")
    sp.add_argument("--maxlen", type=int)
    sp.add_argument("--depth", type=int, help="run the omega search to this depth instead")
    sp.add_argument("--target", nargs="+", help="target word for the omega search (default: identity)")
    sp.add_argument("--descend", type=int, default=0, help="random descending-length checks")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--expect", action="store_true")
    sp.set_defaults(func=cmd_equations)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, *_INPUT_ERRORS) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
