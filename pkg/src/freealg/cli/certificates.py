"""JSON certificates: construction, serialization and independent re-checking.

A certificate is ``{kind, inputs, witness, parameters, verified}``.  Inputs
and witnesses hold polynomials as text in the certificate's own alphabet,
so a certificate file is self-contained.  Positive outcomes are re-checked
from the witness alone; negative outcomes are re-decided by a brute-force
computation that does not share the engine's search space.
"""

from __future__ import annotations

import itertools
import math
from typing import List, Optional, Sequence

from ..exactalg import Echelon, Field, NcPoly, WindowSeries, deglex_key, words
from ..freelie import (
    LieTemplate,
    bracket,
    evaluate_tree,
    lyndon_basis,
)
from ..liedep import LIE_DEPENDENT, LieDependenceWitness, raw_bracket_monomials, verify_family_lie_witness, verify_lie_witness
from ..limgen import (
    GradedMorphism,
    GradedPresentation,
    Window,
    monomial_span_ranks,
    relatively_free_check,
)
from ..weakalg import (
    ELEMENT_DEPENDENT,
    FAMILY_DEPENDENT,
    DependenceWitness,
    verify_element_witness,
    verify_family_witness,
    verify_series_element_witness,
)
from .parser import Alphabet, format_poly, parse

POSITIVE = {"dependent", "member", "true", "lie", "free", "built", "inverted", "spans", "found"}


def certificate(kind: str, inputs: dict, witness: dict, parameters: dict) -> dict:
    cert = {"kind": kind, "inputs": inputs, "witness": witness, "parameters": parameters, "verified": False}
    cert["verified"] = verify(cert)
    return cert


def outcome_is_positive(cert: dict) -> bool:
    return cert["witness"].get("outcome") in POSITIVE


# -- (de)serialization helpers -----------------------------------------------

class Codec:
    """Text encoding of polynomials, series and templates for one alphabet and field."""

    def __init__(self, alphabet: Alphabet, field: Field):
        self.alphabet = alphabet
        self.field = field

    @classmethod
    def from_inputs(cls, inputs: dict) -> Codec:
        return cls(Alphabet(inputs["alphabet"], strict=True), Field.from_label(inputs["field"]))

    def header(self) -> dict:
        return {"field": self.field.label, "alphabet": list(self.alphabet.names)}

    def poly(self, text: str) -> NcPoly:
        return parse(text, self.alphabet, self.field)

    def polys(self, texts) -> List[NcPoly]:
        return [self.poly(t) for t in texts]

    def text(self, p: NcPoly) -> str:
        return format_poly(p, self.alphabet)

    def texts(self, ps) -> List[str]:
        return [self.text(p) for p in ps]

    def scalar(self, text: str):
        return self.field(text)

    def template(self, f: Optional[LieTemplate]) -> Optional[dict]:
        if f is None:
            return None
        return {"arity": f.arity, "display": f.format(),
                "terms": [[_tree_to_json(t), str(c)] for t, c in f.terms.items()]}

    def read_template(self, data: Optional[dict]) -> Optional[LieTemplate]:
        if data is None:
            return None
        terms = {_tree_from_json(t): self.scalar(c) for t, c in data["terms"]}
        return LieTemplate(terms, data["arity"], self.field)


def _tree_to_json(t):
    return t if isinstance(t, int) else [_tree_to_json(t[0]), _tree_to_json(t[1])]


def _tree_from_json(t):
    return t if isinstance(t, int) else (_tree_from_json(t[0]), _tree_from_json(t[1]))


def degree_json(d):
    if d == math.inf:
        return "inf"
    if d == -math.inf:
        return "-inf"
    return int(d)


def degree_from_json(d):
    return {"inf": math.inf, "-inf": -math.inf}.get(d, d)


# -- brute-force oracles for negative outcomes -------------------------------

def _span_contains(vectors, target, field) -> bool:
    ech = Echelon(field, key=deglex_key)
    for i, v in enumerate(vectors):
        ech.add(v, i)
    return ech.contains(target)


def brute_family_independent(family: Sequence[NcPoly]) -> bool:
    """No top component lies in the right span of the no-larger-degree others (all word cofactors)."""
    if any(a.is_zero for a in family):
        return False
    field = family[0].field
    window = sorted(set().union(*(a.letters for a in family)))
    for i, a in enumerate(family):
        d = a.nu_top()
        vecs = []
        for j, b in enumerate(family):
            if j != i and b.nu_top() <= d:
                top = b.top_component()
                for w in words(window, d - b.nu_top()):
                    vecs.append(top.mul(NcPoly.monomial(w, 1, field))._terms)
        if _span_contains(vecs, a.top_component()._terms, field):
            return False
    return True


def brute_element_independent(a: NcPoly, family: Sequence[NcPoly]) -> bool:
    field = a.field
    d = a.nu_top()
    window = sorted(set().union(a.letters, *(f.letters for f in family)))
    vecs = []
    for f in family:
        if f.is_zero or f.nu_top() > d:
            continue
        for w in words(window, d - f.nu_top()):
            vecs.append(f.top_component().mul(NcPoly.monomial(w, 1, field))._terms)
    return not _span_contains(vecs, a.top_component()._terms, field)


def brute_raw_span(gens: Sequence[NcPoly], length_cap: int) -> Echelon:
    """Echelon of the images of every bracketing of every slot word up to the cap."""
    field = gens[0].field
    ech = Echelon(field, key=deglex_key)
    cache: dict = {}
    k = 0
    for m in range(1, length_cap + 1):
        for t in raw_bracket_monomials(len(gens), m):
            ech.add(evaluate_tree(t, gens, cache)._terms, k)
            k += 1
    return ech


def lyndon_span_contains(p: NcPoly) -> bool:
    """Membership of ``p`` in the span of the Lyndon basis, degree by degree."""
    window = sorted(p.letters)
    for d, comp in p.components().items():
        if d == 0:
            return False
        basis = [b.carrier._terms for b in lyndon_basis(window, d, p.field)]
        if not _span_contains(basis, comp._terms, p.field):
            return False
    return True


# -- verification ------------------------------------------------------------

def verify(cert: dict) -> bool:
    """Re-check a certificate; any malformed input counts as a rejection."""
    try:
        handler = _VERIFIERS[cert["kind"]]
        codec = Codec.from_inputs(cert["inputs"])
        return bool(handler(cert, codec))
    except Exception:  # malformed payloads of any shape are rejections, not crashes
        return False


def _v_depend(cert, codec):
    family = codec.polys(cert["inputs"]["family"])
    w = cert["witness"]
    if w["outcome"] == "independent":
        return brute_family_independent(family)
    wit = DependenceWitness(FAMILY_DEPENDENT, tuple(codec.polys(w["coefficients"])), w["pivot"],
                            codec.poly(w["remainder"]))
    return verify_family_witness(family, wit) and wit.coefficients[wit.pivot] != 0


def _v_reduce(cert, codec):
    a = codec.poly(cert["inputs"]["target"])
    family = codec.polys(cert["inputs"]["family"])
    w = cert["witness"]
    if w["outcome"] == "independent":
        return brute_element_independent(a, family)
    wit = DependenceWitness(ELEMENT_DEPENDENT, tuple(codec.polys(w["coefficients"])), None,
                            codec.poly(w["remainder"]))
    return verify_element_witness(a, family, wit)


def _v_series_invert(cert, codec):
    cap = cert["parameters"]["cap"]
    s = WindowSeries(codec.poly(cert["inputs"]["series"]), cap)
    t = WindowSeries(codec.poly(cert["witness"]["inverse"]), cap)
    one = WindowSeries(NcPoly.one(codec.field), cap)
    return (s * t).equals_up_to_cap(one) and (t * s).equals_up_to_cap(one)


def _v_series_reduce(cert, codec):
    cap = cert["parameters"]["cap"]
    a = WindowSeries(codec.poly(cert["inputs"]["target"]), cap)
    family = [WindowSeries(p, cap) for p in codec.polys(cert["inputs"]["family"])]
    w = cert["witness"]
    if w["outcome"] == "independent":
        # the lowest component is outside the right span of lower-order lowest components
        lows = [f.low_component() for f in family if not f.is_zero and f.nu_low() <= a.nu_low()]
        return not a.is_zero and brute_element_independent(a.low_component(), lows)
    coeffs = tuple(WindowSeries(p, cap) for p in codec.polys(w["coefficients"]))
    wit = DependenceWitness(ELEMENT_DEPENDENT, coeffs, None, WindowSeries(codec.poly(w["remainder"]), cap), cap)
    return verify_series_element_witness(a, family, wit)


def _v_lie_check(cert, codec):
    exprs = codec.polys(cert["inputs"]["exprs"])
    verdicts = cert["witness"]["verdicts"]
    if len(verdicts) != len(exprs):
        return False
    for p, v in zip(exprs, verdicts):
        if lyndon_span_contains(p) != v:
            return False
    return cert["witness"]["outcome"] == ("true" if all(verdicts) else "false")


def _lie_inputs(cert, codec):
    family = codec.polys(cert["inputs"]["family"])
    target = cert["inputs"].get("target")
    return (codec.poly(target) if target is not None else None), family


def _v_lie_express(cert, codec):
    target, family = _lie_inputs(cert, codec)
    w = cert["witness"]
    if w["outcome"] == "independent":
        # every bracketing of the right multidegree would be among the raw monomials up to this length
        degs = [f.nu_top() for f in family if not f.is_zero]
        if not degs or target.is_zero:
            return not target.is_zero
        return not brute_raw_span(family, target.nu_top() // min(degs)).contains(target._terms)
    f = codec.read_template(w["template"])
    return f.evaluate(family) == target


def _v_lie_depend(cert, codec):
    target, family = _lie_inputs(cert, codec)
    w = cert["witness"]
    if w["outcome"] == "independent":
        if target is None:
            return brute_family_independent(family)
        if target.is_zero:
            return False
        d = target.nu_top()
        tops = [f.top_component() if not f.is_zero and f.nu_top() <= d else NcPoly.zero(codec.field)
                for f in family]
        degs = [t.nu_top() for t in tops if not t.is_zero]
        if not degs:
            return True
        return not brute_raw_span(tops, d // min(degs)).contains(target.top_component()._terms)
    wit = LieDependenceWitness(LIE_DEPENDENT, codec.read_template(w["template"]), w.get("pivot"),
                               tuple(degree_from_json(d) for d in w["degree_drop"]))
    if target is not None:
        return verify_lie_witness(target, family, wit)
    return verify_family_lie_witness(family, wit)


def _v_free_gens(cert, codec):
    params = cert["parameters"]
    D = params["max_degree"]
    X = codec.polys(cert["witness"]["generators"])
    window = Window(range(len(codec.alphabet.names)))
    if params["mode"] == "assoc":
        ranks = monomial_span_ranks(X, D, window) if X else {d: int(d == 0) for d in range(D + 1)}
        if any(ranks[d] != window.dim(d) for d in range(1, D + 1)):
            return False
        # minimality: dropping any generator loses the span
        for i in range(len(X)):
            rest = X[:i] + X[i + 1:]
            if rest and all(r == window.dim(d) for d, r in monomial_span_ranks(rest, D, window).items() if d):
                return False
        return True
    ambient = GradedPresentation.full_lie(window, D, codec.field)
    return bool(relatively_free_check(X, ambient))


def _v_span_check(cert, codec):
    D = cert["parameters"]["max_degree"]
    X = codec.polys(cert["inputs"]["exprs"])
    window = Window(range(len(codec.alphabet.names)))
    ranks = monomial_span_ranks(X, D, window)
    claimed = {int(k): v for k, v in cert["witness"]["ranks"].items()}
    spans = all(ranks[d] == window.dim(d) for d in range(1, D + 1))
    return claimed == ranks and cert["witness"]["outcome"] == ("spans" if spans else "false")


def _v_relfree(cert, codec):
    X = codec.polys(cert["inputs"]["exprs"])
    D = cert["parameters"]["max_degree"]
    window = Window(range(len(codec.alphabet.names)))
    ambient = GradedPresentation.full_lie(window, D, codec.field)
    r = relatively_free_check(X, ambient)
    return cert["witness"]["outcome"] == ("free" if r.relatively_free else "false")


def _v_automorphism(cert, codec):
    F = codec.polys(cert["inputs"]["source"])
    X = codec.polys(cert["inputs"]["images"])
    inv = codec.polys(cert["witness"]["inverse"])
    D = cert["parameters"]["max_degree"]
    if cert["witness"]["outcome"] != "built":
        return not relatively_free_check(X)
    alpha = GradedMorphism(tuple(F), tuple(X))
    beta = GradedMorphism(tuple(F), tuple(inv))
    window = sorted(set().union(*(f.letters for f in F)))
    samples = [b.carrier for d in range(1, D + 1) for b in lyndon_basis(window, d, codec.field)]
    for u in samples:
        if alpha.apply(beta.apply(u)) != u or beta.apply(alpha.apply(u)) != u:
            return False
        if not alpha.apply(u).is_zero and alpha.apply(u).nu_top() != u.nu_top():
            return False
    for u, v in itertools.combinations(samples, 2):
        if alpha.apply(bracket(u, v)) != bracket(alpha.apply(u), alpha.apply(v)):
            return False
    return True


def _v_membership(cert, codec):
    gens = codec.polys(cert["inputs"]["gens"])
    target = codec.poly(cert["inputs"]["target"])
    L = cert["parameters"]["length_cap"]
    w = cert["witness"]
    if w["outcome"] == "member":
        f = codec.read_template(w["template"])
        return f.evaluate(gens) == target and f.max_length() <= L
    return not brute_raw_span(gens, L).contains(target._terms)


def _v_min_degree(cert, codec):
    gens = codec.polys(cert["inputs"]["gens"])
    L = cert["parameters"]["length_cap"]
    claimed = degree_from_json(cert["witness"]["min_degree"])
    ech = brute_raw_span(gens, L)
    brute = min((len(lead) for lead in ech.pivots()), default=math.inf)
    if brute != claimed:
        return False
    if claimed == math.inf:
        return True
    f = codec.read_template(cert["witness"]["template"])
    image = f.evaluate(gens)
    return not image.is_zero and image.nu_top() == claimed and f.max_length() <= L


_VERIFIERS = {
    "depend": _v_depend,
    "reduce": _v_reduce,
    "series-invert": _v_series_invert,
    "series-reduce": _v_series_reduce,
    "lie-check": _v_lie_check,
    "lie-express": _v_lie_express,
    "lie-depend": _v_lie_depend,
    "free-gens": _v_free_gens,
    "span-check": _v_span_check,
    "relfree-check": _v_relfree,
    "automorphism": _v_automorphism,
    "membership": _v_membership,
    "min-degree": _v_min_degree,
}
