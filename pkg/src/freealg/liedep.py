"""Lie dependence: expressing Lie elements as Lie polynomials in a family.

Candidate Lie polynomials are enumerated by multidegree: a bracket monomial
using slot ``i`` exactly ``e_i`` times evaluates to degree ``sum(d_i * e_i)``
on homogeneous arguments of degrees ``d_i``.  Within one multidegree the
standard-bracketed Lyndon words in the slots span every Lie monomial, so a
finite exact linear solve decides expressibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from .exactalg import Echelon, NcPoly, check_common_field, deglex_key
from .exactalg.poly import NEG_INF
from .freelie import (
    LiePoly,
    LieTemplate,
    NotLieError,
    Tree,
    _carrier,
    evaluate_tree,
    is_lie_element,
    lyndon_words,
    require_char0,
    standard_bracketing,
)
from .weakalg import family_dependent

LIE_DEPENDENT = "lie-dependent"
INDEPENDENT = "independent"


@dataclass(frozen=True)
class LieDependenceWitness:
    """Outcome of a Lie-dependence question.

    ``template`` has one slot per family member; ``degree_drop`` is
    ``(deg p, deg(p - f(args)))``.
    """

    kind: str
    template: Optional[LieTemplate] = None
    pivot: Optional[int] = None
    degree_drop: Optional[Tuple] = None

    @property
    def dependent(self) -> bool:
        return self.kind == LIE_DEPENDENT


# -- template enumeration ----------------------------------------------------

def multidegrees(degrees: Sequence[Optional[int]], target: int, length_cap: Optional[int] = None
                 ) -> List[Tuple[int, ...]]:
    """All ``e`` with ``sum(degrees[i] * e[i]) == target`` and ``1 <= sum(e) <= length_cap``.

    Slots whose degree is ``None`` are never used.
    """
    n = len(degrees)
    if length_cap is None:
        usable = [d for d in degrees if d is not None]
        length_cap = target // min(usable) if usable else 0
    out = []

    def rec(i, remaining, used, acc):
        if i == n:
            if remaining == 0 and used >= 1:
                out.append(tuple(acc))
            return
        d = degrees[i]
        if d is None or d <= 0:
            rec(i + 1, remaining, used, acc + [0])
            return
        for e in range(0, min(remaining // d, length_cap - used) + 1):
            rec(i + 1, remaining - d * e, used + e, acc + [e])

    rec(0, target, 0, [])
    return sorted(out, reverse=True)


@lru_cache(maxsize=None)
def _lyndon_with_content(content: Tuple[int, ...]) -> Tuple[Tree, ...]:
    alphabet = [i for i, e in enumerate(content) if e > 0]
    m = sum(content)
    trees = []
    for w in lyndon_words(alphabet, m):
        counts = [0] * len(content)
        for s in w:
            counts[s] += 1
        if tuple(counts) == content:
            trees.append(standard_bracketing(w))
    return tuple(trees)


def enumerate_templates(arity: int, degrees: Sequence[Optional[int]], target: int,
                        length_cap: Optional[int] = None) -> List[Tree]:
    """Slot-Lyndon bracket monomials whose weighted degree equals ``target``."""
    if len(degrees) != arity:
        raise ValueError("need one degree per slot")
    trees: List[Tree] = []
    for e in multidegrees(degrees, target, length_cap):
        trees.extend(_lyndon_with_content(e))
    return trees


def lyndon_trees_up_to(arity: int, length_cap: int) -> List[Tree]:
    """Every slot-Lyndon bracket monomial of length ``1..length_cap``."""
    trees: List[Tree] = []
    for m in range(1, length_cap + 1):
        for w in lyndon_words(list(range(arity)), m):
            trees.append(standard_bracketing(w))
    return trees


def raw_bracket_monomials(arity: int, length: int) -> Iterator[Tree]:
    """Every bracketing of every slot word of the given length (no normalisation)."""
    if length == 1:
        yield from range(arity)
        return
    for k in range(1, length):
        for left in raw_bracket_monomials(arity, k):
            for right in raw_bracket_monomials(arity, length - k):
                yield (left, right)


# -- linear solves -----------------------------------------------------------

def solve_in_span(target: NcPoly, trees: Sequence[Tree], args: Sequence[NcPoly], arity: int
                  ) -> Optional[LieTemplate]:
    """A template over ``trees`` with ``f(args) == target``, or ``None``."""
    field = target.field
    ech = Echelon(field, key=deglex_key)
    cache: dict = {}
    for t in trees:
        ech.add(evaluate_tree(t, args, cache)._terms, t)
    combo = ech.solve(target._terms)
    if combo is None:
        return None
    return LieTemplate(combo, arity, field)


def _homogeneous_carriers(family) -> List[NcPoly]:
    out = []
    for q in family:
        c = _carrier(q)
        if not c.is_zero and not c.is_homogeneous():
            raise ValueError("family members must be homogeneous")
        out.append(c)
    return out


def express_as_lie(p, family: Sequence) -> LieDependenceWitness:
    """Find a Lie polynomial ``f`` with ``f(family) == p`` for homogeneous inputs."""
    target = _carrier(p)
    args = _homogeneous_carriers(family)
    field = check_common_field([target, *args])
    require_char0(field)
    if not target.is_homogeneous():
        raise ValueError("target must be homogeneous")
    n = len(args)
    if target.is_zero:
        return LieDependenceWitness(LIE_DEPENDENT, LieTemplate.zero(n, field), None, (NEG_INF, NEG_INF))
    d = target.nu_top()
    degrees = [None if a.is_zero else a.nu_top() for a in args]
    trees = enumerate_templates(n, degrees, d)
    f = solve_in_span(target, trees, args, n)
    if f is None:
        return LieDependenceWitness(INDEPENDENT)
    return LieDependenceWitness(LIE_DEPENDENT, f, None, (d, NEG_INF))


def _lie_reduce(p: NcPoly, args: Sequence[NcPoly], allowed: Sequence[int]) -> LieDependenceWitness:
    field = p.field
    n = len(args)
    if p.is_zero:
        return LieDependenceWitness(LIE_DEPENDENT, LieTemplate.zero(n, field), None, (NEG_INF, NEG_INF))
    start = p.nu_top()
    tops = [a.top_component() for a in args]
    f = LieTemplate.zero(n, field)
    r = p
    while not r.is_zero:
        d = r.nu_top()
        degrees = [tops[i].nu_top() if i in allowed and not args[i].is_zero and args[i].nu_top() <= start
                   else None for i in range(n)]
        g = solve_in_span(r.top_component(), enumerate_templates(n, degrees, d), tops, n)
        if g is None:
            break
        f = f + g
        r = p - f.evaluate(args)
    if f.is_zero:
        return LieDependenceWitness(INDEPENDENT)
    return LieDependenceWitness(LIE_DEPENDENT, f, None, (start, r.nu_top()))


def lie_dependence(p, family: Sequence) -> LieDependenceWitness:
    """Decide whether ``p`` is Lie-dependent on ``family`` (degree-dropping expression)."""
    target = _carrier(p)
    args = [_carrier(q) for q in family]
    require_char0(check_common_field([target, *args]))
    return _lie_reduce(target, args, range(len(args)))


def lie_family_dependent(family: Sequence) -> LieDependenceWitness:
    """Find a member Lie-dependent on the members of no larger degree, if the family is dependent."""
    args = [_carrier(q) for q in family]
    if not args:
        raise ValueError("family must be nonempty")
    require_char0(check_common_field(args))
    if not family_dependent(args).dependent:
        return LieDependenceWitness(INDEPENDENT)
    degs = [a.nu_top() for a in args]
    order = sorted(range(len(args)), key=lambda i: (degs[i], i))
    for i in order:
        allowed = [j for j in range(len(args)) if j != i and degs[j] <= degs[i]]
        w = _lie_reduce(args[i], args, allowed)
        if w.dependent:
            return LieDependenceWitness(LIE_DEPENDENT, w.template, i, w.degree_drop)
    raise RuntimeError("associatively dependent Lie family without a Lie-dependent member")


def verify_lie_witness(p, family: Sequence, w: LieDependenceWitness) -> bool:
    """Check both degree conditions of a Lie-dependence witness by evaluation."""
    if w.kind != LIE_DEPENDENT:
        return False
    target = _carrier(p, check=False)
    args = [_carrier(q, check=False) for q in family]
    if target.is_zero:
        return True
    f = w.template
    if f is None or f.arity != len(args):
        return False
    d = target.nu_top()
    rest = target - f.evaluate(args)
    if not rest.nu_top() < d:
        return False
    if w.degree_drop is not None and tuple(w.degree_drop) != (d, rest.nu_top()):
        return False
    for tree, _, e in f.monomials:
        if any(e[i] and args[i].is_zero for i in range(len(args))):
            continue
        if sum(e[i] * args[i].nu_top() for i in range(len(args)) if e[i]) > d:
            return False
    return True


def verify_family_lie_witness(family: Sequence, w: LieDependenceWitness) -> bool:
    if w.kind != LIE_DEPENDENT or w.pivot is None:
        return False
    args = [_carrier(q, check=False) for q in family]
    i = w.pivot
    for tree, _, e in w.template.monomials:
        if e[i] or any(e[j] and args[j].nu_top() > args[i].nu_top() for j in range(len(args))):
            return False
    return verify_lie_witness(args[i], args, w)


__all__ = [
    "LIE_DEPENDENT", "INDEPENDENT", "LieDependenceWitness", "NotLieError", "LiePoly",
    "multidegrees", "enumerate_templates", "lyndon_trees_up_to", "raw_bracket_monomials",
    "solve_in_span", "express_as_lie", "lie_dependence", "lie_family_dependent",
    "verify_lie_witness", "verify_family_lie_witness", "is_lie_element",
]
