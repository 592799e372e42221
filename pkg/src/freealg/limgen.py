"""Finite-window models of inverse-limit algebras and free generating sets.

A limit element is modelled by a compatible family of window polynomials:
projecting the value on a larger window (killing the extra generators) must
give the value on the smaller one.  The generator-extraction routines work
degree by degree inside a finite window up to an explicit degree cap.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .exactalg import QQ, Echelon, Field, NcPoly, WindowSeries, check_common_field, deglex_key, words
from .freelie import (
    LiePoly,
    LieTemplate,
    NotLieError,
    _carrier,
    bracket,
    evaluate_tree,
    is_lie_element,
    lyndon_basis,
    require_char0,
)
from .liedep import express_as_lie, lyndon_trees_up_to, solve_in_span
from .weakalg import right_reduce


# -- windows and projections -------------------------------------------------

@dataclass(frozen=True)
class Window:
    """A finite, ordered set of generator indices."""

    generators: Tuple[int, ...]

    def __init__(self, generators: Iterable[int]):
        object.__setattr__(self, "generators", tuple(sorted(set(generators))))

    def __contains__(self, g) -> bool:
        return g in self.generators

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def issubset(self, other: Window) -> bool:
        return set(self.generators) <= set(other.generators)

    def includes(self, other: Window) -> bool:
        """Whether ``other`` includes into this window."""
        return other.issubset(self)

    def dim(self, d: int) -> int:
        """Dimension of the degree-``d`` part of the free algebra on this window."""
        return len(self.generators) ** d


def project(p: Union[NcPoly, WindowSeries], target: Window) -> Union[NcPoly, WindowSeries]:
    """Kill every term that uses a generator outside ``target``."""
    keep = set(target.generators)
    if isinstance(p, WindowSeries):
        declared = p._window
        if declared is not None and not keep <= declared:
            raise ValueError("target window is not a subset of the source window")
        return WindowSeries(project(p.poly, target), p.cap, keep)
    declared = p.declared_window
    if declared is not None and not keep <= declared:
        raise ValueError("target window is not a subset of the source window")
    out = p.map_words(lambda w: w if all(g in keep for g in w) else None)
    return out.with_window(keep)


def check_compatible(family: Mapping[Window, NcPoly],
                     inclusions: Optional[Iterable[Tuple[Window, Window]]] = None) -> bool:
    """Whether a window-indexed family defines one element of the limit.

    ``inclusions`` lists ``(smaller, larger)`` pairs to check; by default every
    pair of windows in the family with ``smaller`` a subset of ``larger``.
    """
    if inclusions is None:
        inclusions = [(a, b) for a in family for b in family if a != b and a.issubset(b)]
    for small, big in inclusions:
        if not small.issubset(big):
            raise ValueError(f"{small} is not included in {big}")
        if project(family[big], small) != family[small]:
            return False
    return True


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class GradedPresentation:
    """Elements over a window, considered up to a degree cap."""

    window: Window
    max_degree: int
    elements: Tuple = ()
    field: Field = QQ

    @classmethod
    def full_associative(cls, window: Window, max_degree: int, field: Field = QQ) -> GradedPresentation:
        """All words of degree 1..max_degree: the whole free algebra up to the cap."""
        elems = tuple(NcPoly.monomial(w, 1, field) for d in range(1, max_degree + 1) for w in words(window, d))
        return cls(window, max_degree, elems, field)

    @classmethod
    def full_lie(cls, window: Window, max_degree: int, field: Field = QQ) -> GradedPresentation:
        """The Lyndon basis of the free Lie algebra up to the cap."""
        elems = tuple(b for d in range(1, max_degree + 1) for b in lyndon_basis(window, d, field))
        return cls(window, max_degree, elems, field)

    def by_degree(self) -> Dict[int, List]:
        out: Dict[int, List] = {}
        for e in self.elements:
            c = _carrier(e, check=False)
            if c.is_zero:
                continue
            if not c.is_homogeneous():
                raise ValueError("presentation elements must be homogeneous")
            out.setdefault(c.nu_top(), []).append(e)
        return out


def _vec(p: NcPoly):
    return p._terms


def _window_from(polys, window: Optional[Window]) -> Window:
    if window is not None:
        return window
    letters = set()
    for p in polys:
        letters |= p.letters
    return Window(letters)


# -- associative generating sets ---------------------------------------------

def monomial_span_ranks(X: Sequence[NcPoly], max_degree: int, window: Optional[Window] = None) -> Dict[int, int]:
    """Per-degree rank of the span of products of ``X`` modulo terms above each degree.

    Entry ``d`` is ``dim`` of the degree-``d`` slice of the subalgebra generated
    by ``X`` (plus 1) in ``k<F> / (degree > d)``; for a generating set it equals ``|F|**d``.
    """
    X = [_carrier(x, check=False) for x in X]
    if any(x.is_zero or x.nu_low() < 1 for x in X):
        raise ValueError("elements must be nonzero with no constant term")
    window = _window_from(X, window)
    field = check_common_field(X) if X else QQ
    lows = [x.nu_low() for x in X]
    ranks: Dict[int, int] = {}
    previous = 0
    for d in range(0, max_degree + 1):
        ech = Echelon(field, key=lambda w: (-len(w), w))
        ech.add({(): field.one}, ())
        # every product of X-elements whose lowest degree is at most d
        for seq in _sequences(lows, d):
            prod = NcPoly.one(field)
            for i in seq:
                prod = prod.mul(X[i], max_degree=d)
            if not prod.is_zero:
                ech.add(prod._terms, seq)
        ranks[d] = ech.rank - previous
        previous = ech.rank
    return ranks


def _sequences(lows: Sequence[int], budget: int):
    def rec(prefix, used):
        if prefix:
            yield tuple(prefix)
        for i, lo in enumerate(lows):
            if used + lo <= budget:
                yield from rec(prefix + [i], used + lo)
    return rec([], 0)


def monomial_span_check(X: Sequence[NcPoly], max_degree: int, window: Optional[Window] = None) -> bool:
    """Whether the monomials in ``X`` span every degree up to ``max_degree``."""
    X = [_carrier(x, check=False) for x in X]
    window = _window_from(X, window)
    ranks = monomial_span_ranks(X, max_degree, window)
    return all(ranks[d] == window.dim(d) for d in range(1, max_degree + 1))


def quotient_classes_independent(X: Sequence[NcPoly]) -> bool:
    """Whether ``X`` maps to independent classes in ``A_{>0} / A_{>0}^2`` (the degree-1 parts)."""
    X = [_carrier(x, check=False) for x in X]
    if not X:
        return True
    field = check_common_field(X)
    ech = Echelon(field, key=deglex_key)
    for i, x in enumerate(X):
        if x.is_zero or x.nu_low() < 1:
            return False
        ok, _ = ech.add(x.component(1)._terms, i)
        if not ok:
            return False
    return True


def no_right_dependence_check(X: Sequence[NcPoly]) -> bool:
    """Whether no element of ``X`` is right dependent on the others.

    Homogeneous sets use the graded reduction.  Sets with non-homogeneous
    members are judged by their classes in ``A_{>0} / A_{>0}^2``.
    """
    X = [_carrier(x, check=False) for x in X]
    if any(x.is_zero for x in X):
        return False
    if all(x.is_homogeneous() for x in X):
        for i, x in enumerate(X):
            rest = X[:i] + X[i + 1:]
            if right_reduce(x, rest).dependent:
                return False
        return True
    return quotient_classes_independent(X)


def assoc_free_generators(pres: GradedPresentation) -> List[NcPoly]:
    """A free generating set up to the cap: per degree, a complement of the decomposables.

    Presentation elements are tried first (lowest degree decides their role),
    then words of that degree in lexicographic order.
    """
    window, D = pres.window, pres.max_degree
    if D < 1 or len(window) == 0:
        return []
    elems = [_carrier(e, check=False) for e in pres.elements if not _carrier(e, check=False).is_zero]
    field = pres.field
    if elems and not monomial_span_check(elems, D, window):
        raise ValueError("presentation does not span the free algebra up to the cap")
    X: List[NcPoly] = []
    for d in range(1, D + 1):
        ech = Echelon(field, key=deglex_key)
        # decomposables in degree d: products of two positive-degree words
        for k in range(1, d):
            for u in words(window, k):
                for v in words(window, d - k):
                    ech.add({u + v: field.one}, u + v)
        candidates = [(e, e.component(d)) for e in elems if e.nu_low() == d]
        candidates += [(NcPoly.monomial(w, 1, field), None) for w in words(window, d)]
        for elem, low in candidates:
            vec = (low if low is not None else elem)._terms
            ok, _ = ech.add(vec, ("x", len(X)))
            if ok:
                X.append(elem)
    return X


# -- Lie generating sets -----------------------------------------------------

def _lie_span(elems: Sequence[NcPoly], field: Field) -> Echelon:
    ech = Echelon(field, key=deglex_key)
    for i, e in enumerate(elems):
        ech.add(e._terms, i)
    return ech


def lie_closure(elements: Sequence, max_degree: int, field: Field = QQ) -> Dict[int, List[NcPoly]]:
    """Basis, per degree, of the Lie subalgebra generated by homogeneous elements (up to the cap)."""
    require_char0(field)
    pieces: Dict[int, List[NcPoly]] = {d: [] for d in range(1, max_degree + 1)}
    echs = {d: Echelon(field, key=deglex_key) for d in pieces}

    def push(p: NcPoly):
        d = p.nu_top()
        if d > max_degree or p.is_zero:
            return
        ok, _ = echs[d].add(p._terms, len(pieces[d]))
        if ok:
            pieces[d].append(p)

    for e in elements:
        c = _carrier(e)
        if not c.is_zero and not c.is_homogeneous():
            raise ValueError("generators must be homogeneous")
        if not c.is_zero:
            push(c)
    for d in range(2, max_degree + 1):
        for i in range(1, d // 2 + 1):
            for u in list(pieces[i]):
                for v in list(pieces[d - i]):
                    push(bracket(u, v))
    return pieces


def _check_closed(pieces: Dict[int, List[NcPoly]], field: Field) -> bool:
    D = max(pieces, default=0)
    spans = {d: _lie_span(ps, field) for d, ps in pieces.items()}
    for i in range(1, D + 1):
        for j in range(i, D + 1 - i):
            for u in pieces[i]:
                for v in pieces[j]:
                    b = bracket(u, v)
                    if not b.is_zero and not spans[i + j].contains(b._terms):
                        return False
    return True


def _presentation_pieces(pres: GradedPresentation) -> Dict[int, List[NcPoly]]:
    pieces: Dict[int, List[NcPoly]] = {d: [] for d in range(1, pres.max_degree + 1)}
    for d, es in pres.by_degree().items():
        if d > pres.max_degree:
            continue
        if d < 1:
            raise ValueError("Lie elements have positive degree")
        ech = _lie_span(pieces[d], pres.field)
        for e in es:
            c = _carrier(e)
            ok, _ = ech.add(c._terms, len(pieces[d]))
            if ok:
                pieces[d].append(c)
    return pieces


def _bracket_span(pieces: Dict[int, List[NcPoly]], d: int, field: Field) -> Echelon:
    ech = Echelon(field, key=deglex_key)
    k = 0
    for i in range(1, d // 2 + 1):
        for u in pieces.get(i, []):
            for v in pieces.get(d - i, []):
                ech.add(bracket(u, v)._terms, k)
                k += 1
    return ech


def lie_free_generators(pres: GradedPresentation) -> List[LiePoly]:
    """Per degree ``n``, a basis of the presentation's degree-``n`` piece modulo brackets of lower pieces."""
    require_char0(pres.field)
    pieces = _presentation_pieces(pres)
    if not _check_closed(pieces, pres.field):
        raise ValueError("presentation is not closed under brackets up to the cap")
    X: List[LiePoly] = []
    for n in range(1, pres.max_degree + 1):
        ech = _bracket_span(pieces, n, pres.field)
        for p in pieces[n]:
            ok, _ = ech.add(p._terms, ("x", len(X)))
            if ok:
                X.append(LiePoly(p, LiePoly.CRITERION))
    return X


@dataclass(frozen=True)
class RelFreeResult:
    relatively_free: bool
    homogeneous: bool

    @property
    def flag(self) -> Optional[str]:
        return None if self.homogeneous else "non-homogeneous"

    def __bool__(self):
        return self.relatively_free


def relatively_free_check(X: Sequence, ambient: Optional[GradedPresentation] = None) -> RelFreeResult:
    """Whether ``X`` projects to a basis of ``L / [L, L]`` (within the ambient cap)."""
    carriers = [_carrier(x) for x in X]
    field = check_common_field(carriers) if carriers else (ambient.field if ambient else QQ)
    require_char0(field)
    homogeneous = all(c.is_homogeneous() for c in carriers)
    if ambient is None:
        window = _window_from(carriers, None)
        D = max((c.nu_top() for c in carriers if not c.is_zero), default=1)
        ambient = GradedPresentation.full_lie(window, D, field)
    pieces = _presentation_pieces(ambient)
    D = ambient.max_degree
    if any(c.is_zero or c.nu_top() > D for c in carriers):
        return RelFreeResult(False, homogeneous)

    # per degree: echelon of [L,L]_d extended by a chosen complement basis
    coords: List[Dict] = [dict() for _ in carriers]
    total_dim = 0
    for d in range(1, D + 1):
        ech = _bracket_span(pieces, d, field)
        base = len(ech)
        qbasis = []
        for p in pieces[d]:
            ok, _ = ech.add(p._terms, ("q", d, len(qbasis)))
            if ok:
                qbasis.append(p)
        total_dim += len(qbasis)
        for i, c in enumerate(carriers):
            comp = c.component(d)
            if comp.is_zero:
                continue
            residual, combo = ech.reduce(comp._terms)
            if residual:
                # component not in the ambient algebra
                return RelFreeResult(False, homogeneous)
            for tag, v in combo.items():
                if isinstance(tag, tuple) and tag and tag[0] == "q":
                    coords[i][tag] = v
        assert len(ech) == base + len(qbasis)
    if len(carriers) != total_dim:
        return RelFreeResult(False, homogeneous)
    ech = Echelon(field)
    for i, vec in enumerate(coords):
        vec = {k: v for k, v in vec.items() if v}
        if not vec:
            return RelFreeResult(False, homogeneous)
        ok, _ = ech.add(vec, i)
        if not ok:
            return RelFreeResult(False, homogeneous)
    return RelFreeResult(True, homogeneous)


# -- graded automorphisms ----------------------------------------------------

def _letter_basis(F: Sequence[NcPoly]) -> Optional[Dict[int, int]]:
    """``generator -> position`` if ``F`` is a list of distinct bare generators."""
    out = {}
    for i, f in enumerate(F):
        items = f.items()
        if len(items) != 1:
            return None
        w, c = items[0]
        if len(w) != 1 or c != 1 or w[0] in out:
            return None
        out[w[0]] = i
    return out


@dataclass(frozen=True)
class GradedMorphism:
    """A degree-preserving Lie morphism given by generator images.

    ``source[i] |-> images[i]``; ``linear_parts[d]`` records the matrix of the
    degree-``d`` linear change modulo brackets of lower-degree generators.
    """

    source: Tuple[NcPoly, ...]
    images: Tuple[NcPoly, ...]
    linear_parts: Dict = field(default_factory=dict, compare=False)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(s.nu_top() for s in self.source)

    def apply(self, u) -> NcPoly:
        """Image of a Lie element of the subalgebra generated by ``source``."""
        u = _carrier(u, check=False)
        letters = _letter_basis(self.source)
        if letters is not None and u.letters <= set(letters):
            return u.substitute({g: self.images[i] for g, i in letters.items()})
        out = NcPoly.zero(u.field)
        for d, comp in u.components().items():
            w = express_as_lie(comp, list(self.source))
            if not w.dependent:
                raise ValueError(f"{comp.format()} is not in the subalgebra generated by the source")
            out = out + w.template.evaluate(list(self.images))
        return out

    def inverse(self) -> GradedMorphism:
        """Inverse, built degree by degree from the recorded linear parts."""
        return _invert(self)

    def compose(self, other: GradedMorphism) -> GradedMorphism:
        """``self`` after ``other`` (both on the same source)."""
        return GradedMorphism(self.source, tuple(self.apply(img) for img in other.images))

    def is_identity(self) -> bool:
        return all(s == i for s, i in zip(self.source, self.images))


def _invert(alpha: GradedMorphism) -> GradedMorphism:
    F = list(alpha.source)
    X = list(alpha.images)
    field = check_common_field(F + X)
    degs = [f.nu_top() for f in F]
    inv: Dict[int, NcPoly] = {}
    for d in sorted(set(degs)):
        idx = [i for i in range(len(F)) if degs[i] == d]
        lower = [i for i in range(len(F)) if degs[i] < d]
        M = alpha.linear_parts.get(d)
        if M is None:
            M = _linear_part(F, X, d)
        Minv = _invert_matrix(M, field)
        # x_k = sum_j M[k][j] f_j + g_k(F_lower)  =>  f_j = sum_k Minv[j][k] (x_k - g_k(F_lower))
        corrections = []
        for k in idx:
            lin = NcPoly.zero(field)
            for jj, j in enumerate(idx):
                lin = lin + F[j].scale(M[idx.index(k)][jj])
            beta = X[k] - lin
            if beta.is_zero:
                corrections.append(NcPoly.zero(field))
                continue
            w = express_as_lie(beta, [F[i] for i in lower])
            if not w.dependent:
                raise ValueError("images are not a relatively free generating set")
            corrections.append(w.template.evaluate([inv[i] for i in lower]))
        for jj, j in enumerate(idx):
            acc = NcPoly.zero(field)
            for kk, k in enumerate(idx):
                acc = acc + (F[k] - corrections[kk]).scale(Minv[jj][kk])
            inv[j] = acc
    return GradedMorphism(tuple(F), tuple(inv[i] for i in range(len(F))))


def _linear_part(F: Sequence[NcPoly], X: Sequence[NcPoly], d: int) -> List[List]:
    """Matrix ``M`` with ``x_k = sum_j M[k][j] f_j`` modulo brackets of lower-degree sources."""
    field = check_common_field(list(F) + list(X))
    idx = [i for i in range(len(F)) if F[i].nu_top() == d]
    lower = [F[i] for i in range(len(F)) if F[i].nu_top() < d]
    ech = Echelon(field, key=deglex_key)
    pieces: Dict[int, List[NcPoly]] = {}
    for f in lower:
        pieces.setdefault(f.nu_top(), []).append(f)
    closure = lie_closure(lower, d, field) if lower else {}
    k = 0
    for i in range(1, d // 2 + 1):
        for u in closure.get(i, []):
            for v in closure.get(d - i, []):
                ech.add(bracket(u, v)._terms, ("b", k))
                k += 1
    for jj, j in enumerate(idx):
        ech.add(F[j]._terms, ("f", jj))
    M = []
    for kx in idx:
        combo = ech.solve(X[kx]._terms)
        if combo is None:
            raise ValueError("image is not in the span of same-degree sources and lower brackets")
        M.append([combo.get(("f", jj), field.zero) for jj in range(len(idx))])
    return M


def _invert_matrix(M: List[List], field: Field) -> List[List]:
    n = len(M)
    A = [[field(v) for v in row] + [field.one if i == j else field.zero for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ValueError("linear part is singular: images are not relatively free")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                c = A[r][col]
                A[r] = [a - c * b for a, b in zip(A[r], A[col])]
    return [row[n:] for row in A]


def build_graded_automorphism(F_gens: Sequence, X_gens: Sequence) -> GradedMorphism:
    """Automorphism of the free Lie algebra on ``F_gens`` sending ``F_gens[i]`` to ``X_gens[i]``.

    Both lists must be homogeneous with equal degree profiles, and ``X_gens``
    relatively free.  Elements are paired in order within each degree.
    """
    F = [_carrier(f) for f in F_gens]
    X = [_carrier(x) for x in X_gens]
    field = check_common_field(F + X)
    require_char0(field)
    for p in F + X:
        if p.is_zero or not p.is_homogeneous():
            raise ValueError("generators and images must be nonzero and homogeneous")
    profile_F = sorted(f.nu_top() for f in F)
    profile_X = sorted(x.nu_top() for x in X)
    if profile_F != profile_X:
        raise ValueError(f"degree counts differ: {profile_F} vs {profile_X}")
    D = max(profile_F)
    pieces = lie_closure(F, D, field)
    ambient = GradedPresentation(Window(set().union(*(f.letters for f in F))), D,
                                 tuple(p for ps in pieces.values() for p in ps), field)
    if not relatively_free_check(X, ambient):
        raise ValueError("images are not relatively free")

    # pair sources and images degree by degree, in the given order
    by_deg_X: Dict[int, List[NcPoly]] = {}
    for x in X:
        by_deg_X.setdefault(x.nu_top(), []).append(x)
    images = []
    seen: Dict[int, int] = {}
    for f in F:
        d = f.nu_top()
        images.append(by_deg_X[d][seen.get(d, 0)])
        seen[d] = seen.get(d, 0) + 1
    linear = {d: _linear_part(F, images, d) for d in sorted(set(profile_F))}
    return GradedMorphism(tuple(F), tuple(images), linear)


def verify_automorphism(alpha: GradedMorphism, samples: Sequence) -> bool:
    """Two-sided inverse on generators, bracket compatibility on ``samples``."""
    beta = alpha.inverse()
    for f in alpha.source:
        if alpha.apply(beta.apply(f)) != f or beta.apply(alpha.apply(f)) != f:
            return False
    for f, img in zip(alpha.source, alpha.images):
        if img.nu_top() != f.nu_top() or not img.is_homogeneous():
            return False
    for u, v in itertools.combinations(samples, 2):
        lhs = alpha.apply(bracket(u, v))
        if lhs != bracket(alpha.apply(u), alpha.apply(v)):
            return False
    return True


# -- bounded membership ------------------------------------------------------

@dataclass(frozen=True)
class MembershipResult:
    member: bool
    length_cap: int
    template: Optional[LieTemplate] = None

    @property
    def status(self) -> str:
        return "member" if self.member else f"refuted-up-to-{self.length_cap}"

    def __bool__(self):
        return self.member


def bounded_membership(target, gens: Sequence, length_cap: int) -> MembershipResult:
    """Decide whether some Lie polynomial of length at most ``length_cap`` maps ``gens`` to ``target``."""
    t = _carrier(target)
    args = [_carrier(g) for g in gens]
    field = check_common_field([t, *args])
    require_char0(field)
    n = len(args)
    if t.is_zero:
        return MembershipResult(True, length_cap, LieTemplate.zero(n, field))
    trees = lyndon_trees_up_to(n, length_cap)
    f = solve_in_span(t, trees, args, n)
    if f is None:
        return MembershipResult(False, length_cap)
    return MembershipResult(True, length_cap, f)


def min_topdegree_witness(gens: Sequence, length_cap: int) -> Tuple[float, Optional[LieTemplate]]:
    """Smallest top degree of a nonzero ``f(gens)`` (length of ``f`` at most the cap), with such an ``f``.

    Rows are reduced by their highest deglex word, so the leading words of
    the echelon rows are distinct and no combination can cancel them; the
    minimum is the lowest leading degree, attained by that row itself.
    Returns ``(inf, None)`` if every image vanishes.
    """
    args = [_carrier(g) for g in gens]
    if not args:
        return math.inf, None
    field = check_common_field(args)
    require_char0(field)
    ech = Echelon(field, key=deglex_key)
    cache: dict = {}
    for t in lyndon_trees_up_to(len(args), length_cap):
        ech.add(evaluate_tree(t, args, cache)._terms, t)
    if not ech.rank:
        return math.inf, None
    lead = min(ech.pivots(), key=deglex_key)
    return len(lead), LieTemplate(ech.rows[lead][1], len(args), field)


def min_topdegree_of_nonzero_images(gens: Sequence, length_cap: int):
    """Smallest top degree of a nonzero ``f(gens)`` over Lie polynomials of length at most the cap."""
    return min_topdegree_witness(gens, length_cap)[0]
