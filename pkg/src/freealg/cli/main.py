"""Command-line driver.

Exit codes: 0 when the question is decided positively (dependent, member,
true, ...), 1 when decided negatively, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence

from ..exactalg import Field, NcPoly, WindowSeries
from ..freelie import CharacteristicError, NotLieError, dynkin, is_lie_element
from ..liedep import express_as_lie, lie_dependence, lie_family_dependent
from ..limgen import (
    GradedPresentation,
    Window,
    assoc_free_generators,
    bounded_membership,
    build_graded_automorphism,
    lie_free_generators,
    min_topdegree_witness,
    monomial_span_ranks,
    relatively_free_check,
)
from ..weakalg import family_dependent, right_reduce, series_invert, series_reduce
from . import certificates as certs
from .certificates import Codec, degree_json
from .parser import Alphabet, ParseError, evaluate, parse_ast, split_top_level

log = logging.getLogger("freealg")


class UsageError(ValueError):
    pass


# -- input handling ----------------------------------------------------------

class Inputs:
    """Expressions gathered from flags, positionals and stdin, parsed in one alphabet."""

    def __init__(self, args):
        self.args = args
        self.field = Field.from_label(args.field)
        self.gens_text = split_top_level(args.gens) if args.gens else []
        self.target_text = getattr(args, "target", None)
        self.positional = list(args.exprs)
        if not self.positional and not self.gens_text and args.stdin and not sys.stdin.isatty():
            self.positional = [line.strip() for line in sys.stdin if line.strip()]
        texts = self.gens_text + self.positional + ([self.target_text] if self.target_text else [])
        self.keep = {}
        if args.alphabet:
            self.alphabet = Alphabet(split_top_level(args.alphabet), strict=True)
        else:
            self.alphabet = Alphabet.infer(texts)
        self.codec = Codec(self.alphabet, self.field)

    def poly(self, text: str) -> NcPoly:
        ast = parse_ast(text)
        self.keep[text] = ast
        return evaluate(ast, self.alphabet, self.field, text)

    def family(self) -> List[NcPoly]:
        """The family: ``--gens`` if given, otherwise the positional/stdin expressions."""
        texts = self.gens_text or self.positional
        self.family_texts = texts
        if not texts:
            raise UsageError("no expressions given")
        return [self.poly(t) for t in texts]

    def target(self) -> NcPoly:
        if self.target_text is None:
            if self.gens_text and len(self.positional) == 1:
                return self.poly(self.positional[0])
            raise UsageError("--target is required")
        return self.poly(self.target_text)

    def window(self) -> Window:
        return Window(range(len(self.alphabet.names)))

    def display(self, p: NcPoly, source: Optional[str] = None) -> str:
        if self.args.keep_lie and source in self.keep and self.keep[source].has_bracket():
            return self.keep[source].to_text()
        return self.codec.text(p)


def _header(inp: Inputs, **extra) -> dict:
    return {**inp.codec.header(), **extra}


def _params(inp: Inputs, **extra) -> dict:
    return {"cap": None, "length_cap": None, "field": inp.field.label, **extra}


# -- subcommands -------------------------------------------------------------

def cmd_depend(inp: Inputs):
    fam = inp.family()
    w = family_dependent(fam)
    c = inp.codec
    if w.dependent:
        wit = {"outcome": "dependent", "pivot": w.pivot, "coefficients": c.texts(w.coefficients),
               "remainder": c.text(w.remainder)}
    else:
        wit = {"outcome": "independent"}
    cert = certs.certificate("depend", _header(inp, family=c.texts(fam)), wit, _params(inp))
    lines = [f"dependent: pivot {w.pivot}" if w.dependent else "independent"]
    if w.dependent:
        lines += [f"  b{j + 1} = {t}" for j, t in enumerate(wit["coefficients"])]
        lines.append(f"  sum a_i*b_i = {wit['remainder']}")
    return cert, lines


def cmd_reduce(inp: Inputs):
    a, fam = inp.target(), inp.family()
    w = right_reduce(a, fam)
    c = inp.codec
    if w.dependent:
        wit = {"outcome": "dependent", "coefficients": c.texts(w.coefficients), "remainder": c.text(w.remainder)}
        lines = ["dependent"] + [f"  b{j + 1} = {t}" for j, t in enumerate(wit["coefficients"])]
        lines.append(f"  remainder = {wit['remainder']}")
    else:
        wit = {"outcome": "independent"}
        lines = ["independent"]
    cert = certs.certificate("reduce", _header(inp, target=c.text(a), family=c.texts(fam)), wit, _params(inp))
    return cert, lines


def _cap(inp: Inputs) -> int:
    if inp.args.cap is None:
        raise UsageError("--cap is required")
    return inp.args.cap


def cmd_series_invert(inp: Inputs):
    fam = inp.family()
    if len(fam) != 1:
        raise UsageError("series-invert takes exactly one series")
    cap = _cap(inp)
    s = WindowSeries(fam[0], cap)
    t = series_invert(s)
    c = inp.codec
    wit = {"outcome": "inverted", "inverse": c.text(t.poly)}
    cert = certs.certificate("series-invert", _header(inp, series=c.text(s.poly)), wit, _params(inp, cap=cap))
    return cert, [f"inverse = {wit['inverse']} + O(deg > {cap})"]


def cmd_series_reduce(inp: Inputs):
    cap = _cap(inp)
    a = WindowSeries(inp.target(), cap)
    fam = [WindowSeries(f, cap) for f in inp.family()]
    w = series_reduce(a, fam)
    c = inp.codec
    if w.dependent:
        wit = {"outcome": "dependent", "coefficients": [c.text(b.poly) for b in w.coefficients],
               "remainder": c.text(w.remainder.poly), "trace": [list(t) for t in w.trace]}
        lines = ["dependent"] + [f"  b{j + 1} = {t} + O(deg > {cap})" for j, t in enumerate(wit["coefficients"])]
        lines.append(f"  remainder = {wit['remainder']}")
    else:
        wit = {"outcome": "independent"}
        lines = ["independent"]
    inputs = _header(inp, target=c.text(a.poly), family=[c.text(f.poly) for f in fam])
    return certs.certificate("series-reduce", inputs, wit, _params(inp, cap=cap)), lines


def cmd_lie_check(inp: Inputs):
    exprs = inp.family()
    verdicts = [is_lie_element(p) for p in exprs]
    c = inp.codec
    wit = {"outcome": "true" if all(verdicts) else "false", "verdicts": verdicts,
           "dynkin": [c.text(dynkin(p)) for p in exprs] if inp.field.characteristic == 0 else None}
    cert = certs.certificate("lie-check", _header(inp, exprs=c.texts(exprs)), wit, _params(inp))
    lines = [f"{'true ' if v else 'false'}  {inp.display(p, t)}"
             for p, v, t in zip(exprs, verdicts, inp.family_texts)]
    return cert, lines


def _lie_cert(kind, inp, target, fam, w):
    c = inp.codec
    if w.dependent:
        wit = {"outcome": "dependent", "template": c.template(w.template), "pivot": w.pivot,
               "degree_drop": [degree_json(d) for d in w.degree_drop]}
        lines = ["dependent" + (f": pivot {w.pivot}" if w.pivot is not None else ""),
                 f"  f = {w.template.format()}"]
        drop = wit["degree_drop"]
        lines.append(f"  degree {drop[0]} -> {drop[1]}")
    else:
        wit = {"outcome": "independent"}
        lines = ["independent"]
    inputs = _header(inp, family=c.texts(fam))
    if target is not None:
        inputs["target"] = c.text(target)
    return certs.certificate(kind, inputs, wit, _params(inp)), lines


def cmd_lie_express(inp: Inputs):
    a, fam = inp.target(), inp.family()
    return _lie_cert("lie-express", inp, a, fam, express_as_lie(a, fam))


def cmd_lie_depend(inp: Inputs):
    if inp.target_text is not None:
        a, fam = inp.target(), inp.family()
        return _lie_cert("lie-depend", inp, a, fam, lie_dependence(a, fam))
    fam = inp.family()
    return _lie_cert("lie-depend", inp, None, fam, lie_family_dependent(fam))


def _max_degree(inp: Inputs, default: Optional[int] = None) -> int:
    D = inp.args.max_degree if inp.args.max_degree is not None else default
    if D is None:
        raise UsageError("--max-degree is required")
    return D


def cmd_free_gens(inp: Inputs):
    D = _max_degree(inp)
    for t in inp.gens_text:
        inp.poly(t)
    elems = [inp.poly(t) for t in inp.positional]
    window = inp.window()
    mode = "lie" if inp.args.lie else "assoc"
    if mode == "assoc":
        pres = GradedPresentation(window, D, tuple(elems), inp.field) if elems else \
            GradedPresentation.full_associative(window, D, inp.field)
        X = assoc_free_generators(pres)
    else:
        pres = GradedPresentation(window, D, tuple(elems), inp.field) if elems else \
            GradedPresentation.full_lie(window, D, inp.field)
        X = [x.carrier for x in lie_free_generators(pres)]
    c = inp.codec
    wit = {"outcome": "found", "generators": c.texts(X),
           "by_degree": {str(d): [c.text(x) for x in X if x.nu_low() == d] for d in range(1, D + 1)}}
    inputs = _header(inp, presentation=c.texts(elems))
    cert = certs.certificate("free-gens", inputs, wit, _params(inp, max_degree=D, mode=mode))
    lines = [f"X_{d} = {{{', '.join(v)}}}" for d, v in wit["by_degree"].items() if v]
    return cert, lines


def cmd_span_check(inp: Inputs):
    D = _max_degree(inp)
    X = inp.family()
    window = inp.window()
    ranks = monomial_span_ranks(X, D, window)
    spans = all(ranks[d] == window.dim(d) for d in range(1, D + 1))
    c = inp.codec
    wit = {"outcome": "spans" if spans else "false", "ranks": {str(d): r for d, r in ranks.items()}}
    cert = certs.certificate("span-check", _header(inp, exprs=c.texts(X)), wit, _params(inp, max_degree=D))
    lines = [f"degree {d}: rank {ranks[d]} of {window.dim(d)}" for d in range(1, D + 1)]
    lines.append("spans" if spans else "does not span")
    return cert, lines


def cmd_relfree_check(inp: Inputs):
    X = inp.family()
    D = _max_degree(inp, max(x.nu_top() for x in X))
    r = relatively_free_check(X, GradedPresentation.full_lie(inp.window(), D, inp.field))
    c = inp.codec
    wit = {"outcome": "free" if r.relatively_free else "false", "homogeneous": r.homogeneous}
    cert = certs.certificate("relfree-check", _header(inp, exprs=c.texts(X)), wit, _params(inp, max_degree=D))
    lines = ["relatively free" if r.relatively_free else "not relatively free"]
    if not r.homogeneous:
        lines.append("  (non-homogeneous input)")
    return cert, lines


def cmd_automorphism(inp: Inputs):
    X = [inp.poly(t) for t in inp.positional]
    if inp.gens_text:
        F = [inp.poly(t) for t in inp.gens_text]
    else:
        F = [NcPoly.gen(i, inp.field) for i in range(len(inp.alphabet.names))]
    D = _max_degree(inp, 4)
    c = inp.codec
    inputs = _header(inp, source=c.texts(F), images=c.texts(X))
    if len(F) != len(X):
        raise UsageError(f"{len(F)} sources but {len(X)} images")
    if not relatively_free_check(X):
        wit = {"outcome": "false", "inverse": []}
        return certs.certificate("automorphism", inputs, wit, _params(inp, max_degree=D)), \
            ["images are not relatively free"]
    alpha = build_graded_automorphism(F, X)
    beta = alpha.inverse()
    wit = {"outcome": "built", "inverse": c.texts(beta.images)}
    cert = certs.certificate("automorphism", inputs, wit, _params(inp, max_degree=D))
    lines = [f"{c.text(f)} -> {c.text(x)}" for f, x in zip(F, alpha.images)]
    lines += [f"inverse: {c.text(f)} -> {c.text(y)}" for f, y in zip(F, beta.images)]
    return cert, lines


def _length_cap(inp: Inputs) -> int:
    if inp.args.length_cap is None:
        raise UsageError("--length-cap is required")
    return inp.args.length_cap


def cmd_membership(inp: Inputs):
    L = _length_cap(inp)
    a, gens = inp.target(), inp.family()
    r = bounded_membership(a, gens, L)
    c = inp.codec
    wit = {"outcome": "member" if r.member else "refuted", "status": r.status, "template": c.template(r.template)}
    inputs = _header(inp, target=c.text(a), gens=c.texts(gens))
    lines = [f"{r.status}: {inp.display(a, inp.target_text)}"]
    if r.member:
        lines.append(f"  f = {r.template.format()}")
    return certs.certificate("membership", inputs, wit, _params(inp, length_cap=L)), lines


def cmd_min_degree(inp: Inputs):
    L = _length_cap(inp)
    gens = inp.family()
    d, f = min_topdegree_witness(gens, L)
    c = inp.codec
    wit = {"outcome": "found", "min_degree": degree_json(d), "template": c.template(f)}
    cert = certs.certificate("min-degree", _header(inp, gens=c.texts(gens)), wit, _params(inp, length_cap=L))
    lines = [f"min degree {wit['min_degree']}"] + ([f"  attained by f = {f.format()}"] if f is not None else [])
    return cert, lines


COMMANDS = {
    "depend": (cmd_depend, "graded family dependence"),
    "reduce": (cmd_reduce, "right reduction of --target by the family"),
    "series-invert": (cmd_series_invert, "invert a series of order 0 up to --cap"),
    "series-reduce": (cmd_series_reduce, "reduce a series --target by the family up to --cap"),
    "lie-check": (cmd_lie_check, "test whether expressions are Lie elements"),
    "lie-express": (cmd_lie_express, "express --target as a Lie polynomial in the family"),
    "lie-depend": (cmd_lie_depend, "Lie dependence of a family (or of --target on it)"),
    "free-gens": (cmd_free_gens, "free generating set up to --max-degree"),
    "span-check": (cmd_span_check, "do monomials in the expressions span up to --max-degree"),
    "relfree-check": (cmd_relfree_check, "relative freeness modulo brackets"),
    "automorphism": (cmd_automorphism, "graded automorphism sending --gens to the expressions"),
    "membership": (cmd_membership, "bounded Lie-subalgebra membership of --target"),
    "min-degree": (cmd_min_degree, "least top degree of a nonzero Lie image"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (rationals) or gf:p")
    common.add_argument("--gens", help="comma-separated expressions (family or generators)")
    common.add_argument("--alphabet", help="comma-separated generator names, in index order")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    common.add_argument("--keep-lie", action="store_true", help="display bracket inputs as typed")
    common.add_argument("--no-stdin", dest="stdin", action="store_false",
                        help="do not read expressions from stdin")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="freealg", description="Exact computations in free algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("exprs", nargs="*")
        if name in ("reduce", "series-reduce", "lie-express", "lie-depend", "membership"):
            p.add_argument("--target")
        if name.startswith("series"):
            p.add_argument("--cap", type=int)
        if name in ("free-gens", "span-check", "relfree-check", "automorphism"):
            p.add_argument("--max-degree", type=int)
        if name in ("membership", "min-degree"):
            p.add_argument("--length-cap", type=int)
        if name == "free-gens":
            mode = p.add_mutually_exclusive_group()
            mode.add_argument("--assoc", action="store_true", default=True)
            mode.add_argument("--lie", action="store_true")
    v = sub.add_parser("verify", help="re-check certificate files")
    v.add_argument("files", nargs="*", help="certificate files (stdin if none)")
    v.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    return parser


def _emit(cert: dict, lines: Sequence[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(cert, indent=2))
    else:
        for line in lines:
            print(line)
        if not cert["verified"]:
            print("warning: certificate did not re-verify", file=sys.stderr)


def _verify_files(args) -> int:
    blobs = []
    if args.files:
        for path in args.files:
            with open(path) as fh:
                blobs.append((path, fh.read()))
    else:
        blobs.append(("<stdin>", sys.stdin.read()))
    all_ok = True
    results = []
    for name, text in blobs:
        data = json.loads(text)
        for cert in (data if isinstance(data, list) else [data]):
            ok = certs.verify(cert)
            all_ok &= ok
            results.append({"file": name, "kind": cert.get("kind"), "verified": ok})
    if args.fmt == "json":
        print(json.dumps(results, indent=2))
    else:
        for r in results:
            print(f"{'ok      ' if r['verified'] else 'REJECTED'}  {r['kind']}  {r['file']}")
    return 0 if all_ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "verify":
            return _verify_files(args)
        handler = COMMANDS[args.command][0]
        inp = Inputs(args)
        cert, lines = handler(inp)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (UsageError, NotLieError, CharacteristicError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # engine bug: report it, never as a decided outcome
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    _emit(cert, lines, args.fmt)
    log.debug("certificate verified: %s", cert["verified"])
    return 0 if certs.outcome_is_positive(cert) else 1


if __name__ == "__main__":
    sys.exit(main())
