"""Right dependence in free algebras and in capped power series.

The graded engine decides right dependence of families of noncommutative
polynomials by reducing to top homogeneous components and solving one
finite linear system per relevant degree.  The series engine does the same
with lowest components and works relative to an explicit truncation cap.
Both return self-checking :class:`DependenceWitness` certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .exactalg import Echelon, NcPoly, WindowSeries, check_common_field, deglex_key, words
from .exactalg.poly import NEG_INF, POS_INF

FAMILY_DEPENDENT = "family-dependent"
ELEMENT_DEPENDENT = "element-dependent"
INDEPENDENT = "independent"


@dataclass(frozen=True)
class DependenceWitness:
    """Certificate for (in)dependence.

    ``coefficients`` are right cofactors parallel to the input family.  For a
    family witness the pivot's cofactor is ``-1`` and the others express it;
    ``remainder`` is the combination ``sum(a_i * b_i)`` (family case) or
    ``a - sum(a_i * b_i)`` (element case).  ``cap`` is set for series results,
    which are only meaningful up to that degree.
    """

    kind: str
    coefficients: Tuple = ()
    pivot: Optional[int] = None
    remainder: object = None
    cap: Optional[int] = None
    trace: Tuple = field(default=())

    @property
    def dependent(self) -> bool:
        return self.kind != INDEPENDENT


class ReductionStep(NamedTuple):
    pivot: int
    expression: Dict[int, object]
    trace: Tuple[int, ...]


# -- shared linear algebra ---------------------------------------------------

def _right_ideal_solve(target: NcPoly, gens: Sequence[Tuple[int, NcPoly]], window) -> Optional[Dict[int, NcPoly]]:
    """Solve ``target = sum(g_j * c_j)`` for homogeneous cofactors ``c_j``.

    ``target`` and every ``g_j`` are homogeneous; ``c_j`` ranges over all
    words of degree ``deg(target) - deg(g_j)`` over ``window``.
    """
    field = target.field
    if target.is_zero:
        return {}
    d = target.nu_top()
    ech = Echelon(field, key=deglex_key)
    for j, g in gens:
        e = d - g.nu_top()
        if e < 0 or g.is_zero:
            continue
        gt = g._terms
        for w in words(window, e):
            ech.add({u + w: c for u, c in gt.items()}, (j, w))
    combo = ech.solve(target._terms)
    if combo is None:
        return None
    cof: Dict[int, Dict] = {}
    for (j, w), c in combo.items():
        cof.setdefault(j, {})[w] = c
    return {j: NcPoly(t, field) for j, t in cof.items()}


def _window_of(polys) -> frozenset:
    out = frozenset()
    for p in polys:
        out |= p.letters
    return out


def _combine(family, coefficients):
    total = None
    for a, b in zip(family, coefficients):
        term = a * b
        total = term if total is None else total + term
    return total


# -- graded engine -----------------------------------------------------------

def family_dependent(family: Sequence[NcPoly]) -> DependenceWitness:
    """Decide right dependence of a family for the top-degree filtration."""
    if not family:
        raise ValueError("family must be nonempty")
    field = check_common_field(family)
    n = len(family)
    zero = NcPoly.zero(field)
    for i, a in enumerate(family):
        if a.is_zero:
            coeffs = tuple(NcPoly.one(field) if j == i else zero for j in range(n))
            return DependenceWitness(FAMILY_DEPENDENT, coeffs, pivot=i, remainder=zero)

    tops = [a.top_component() for a in family]
    degs = [a.nu_top() for a in family]
    window = _window_of(tops)
    order = sorted(range(n), key=lambda i: (degs[i], i))
    for i in reversed(order):
        comparands = [(j, tops[j]) for j in range(n) if j != i and degs[j] <= degs[i]]
        cof = _right_ideal_solve(tops[i], comparands, window)
        if cof is None:
            continue
        coeffs = [cof.get(j, zero) for j in range(n)]
        coeffs[i] = NcPoly.constant(-1, field)
        return DependenceWitness(FAMILY_DEPENDENT, tuple(coeffs), pivot=i,
                                 remainder=_combine(family, coeffs))
    return DependenceWitness(INDEPENDENT)


def right_reduce(a: NcPoly, family: Sequence[NcPoly]) -> DependenceWitness:
    """One reduction step of ``a`` against ``family`` (top-degree filtration)."""
    field = check_common_field([a, *family])
    if any(f.is_zero for f in family):
        raise ValueError("family elements must be nonzero")
    zero = NcPoly.zero(field)
    if a.is_zero:
        return DependenceWitness(ELEMENT_DEPENDENT, tuple(zero for _ in family), remainder=zero)
    d = a.nu_top()
    tops = [f.top_component() for f in family]
    window = _window_of([a, *tops])
    eligible = [(j, t) for j, t in enumerate(tops) if t.nu_top() <= d]
    cof = _right_ideal_solve(a.top_component(), eligible, window)
    if cof is None:
        return DependenceWitness(INDEPENDENT)
    coeffs = tuple(cof.get(j, zero) for j in range(len(family)))
    remainder = a - _combine(family, coeffs) if family else a
    return DependenceWitness(ELEMENT_DEPENDENT, coeffs, remainder=remainder)


def right_normal_form(a: NcPoly, family: Sequence[NcPoly]) -> Tuple[Tuple[NcPoly, ...], NcPoly]:
    """Reduce repeatedly; returns ``(cofactors, normal_form)``.

    ``a == sum(family[j] * cofactors[j]) + normal_form`` and no homogeneous
    component of ``normal_form`` is right dependent on the family.
    """
    field = check_common_field([a, *family])
    cofs = [NcPoly.zero(field) for _ in family]
    nf = NcPoly.zero(field)
    r = a
    while not r.is_zero:
        top = r.top_component()
        w = right_reduce(top, family)
        if w.dependent:
            cofs = [c + b for c, b in zip(cofs, w.coefficients)]
            r = r - top + w.remainder
        else:
            nf = nf + top
            r = r - top
    return tuple(cofs), nf


def _strip_last_letter(p: NcPoly, s: int) -> NcPoly:
    return p.map_words(lambda w: w[:-1] if w and w[-1] == s else None)


def weak_reduction_step(family: Sequence[NcPoly], cofactors: Sequence[NcPoly]) -> ReductionStep:
    """Turn a homogeneous relation ``sum(a_i * b_i) == 0`` into an explicit pivot.

    Strips a common rightmost generator from the cofactors until the last
    active cofactor (in degree order) is a nonzero scalar, then solves for
    that family member.  Returns ``(pivot, {j: c_j}, trace)`` with
    ``family[pivot] == sum(family[j] * c_j)`` and ``trace`` the degree of the
    last cofactor at each iteration.
    """
    if len(family) != len(cofactors):
        raise ValueError("family and cofactors must have equal length")
    field = check_common_field([*family, *cofactors])
    for a in family:
        if a.is_zero:
            raise ValueError("family members must be nonzero")
        if not a.is_homogeneous():
            raise ValueError("weak_reduction_step needs a homogeneous family")
    if all(b.is_zero for b in cofactors):
        raise ValueError("all cofactors are zero")
    if not _combine(family, cofactors).is_zero:
        raise ValueError("cofactors do not give a relation sum(a_i * b_i) == 0")

    degs = [a.nu_top() for a in family]
    # each degree slice of the relation is itself a relation; keep the highest
    top = max(degs[i] + b.nu_top() for i, b in enumerate(cofactors) if not b.is_zero)
    b = [c.component(top - degs[i]) if top >= degs[i] else NcPoly.zero(field)
         for i, c in enumerate(cofactors)]
    order = sorted(range(len(family)), key=lambda i: (degs[i], i))
    trace = []
    while True:
        active = [i for i in order if not b[i].is_zero]
        last = active[-1]
        bn = b[last]
        trace.append(bn.nu_top())
        if bn.nu_top() == 0:
            c = bn.coeff(())
            expr = {j: b[j].scale(-1 / c) for j in active[:-1]}
            return ReductionStep(last, expr, tuple(trace))
        s = min(w[-1] for w in bn._terms)
        b = [_strip_last_letter(bi, s) for bi in b]


# -- series engine -----------------------------------------------------------

def _common_cap(series: Sequence[WindowSeries]) -> int:
    caps = {s.cap for s in series}
    if len(caps) != 1:
        raise ValueError(f"inconsistent caps: {sorted(caps)}")
    return caps.pop()


def series_invert(s: WindowSeries) -> WindowSeries:
    """Two-sided inverse of a series with nonzero constant term, up to its cap."""
    if s.nu_low() != 0:
        raise ValueError("series is not invertible: its constant term vanishes")
    field = s.field
    inv0 = 1 / s.poly.coeff(())
    comps = s.poly.components()
    t: Dict[int, NcPoly] = {0: NcPoly.constant(inv0, field)}
    for d in range(1, s.cap + 1):
        acc = NcPoly.zero(field)
        for k in range(1, d + 1):
            sk = comps.get(k)
            if sk is not None:
                acc = acc + sk * t[d - k]
        t[d] = acc.scale(-inv0)
    total = NcPoly.zero(field)
    for comp in t.values():
        total = total + comp
    return WindowSeries(total, s.cap)


def _series_strip(s: WindowSeries, t: int) -> WindowSeries:
    return WindowSeries(_strip_last_letter(s.poly, t), max(s.cap - 1, 0))


def strip_series_relation(family: Sequence[WindowSeries], cofactors: Sequence[WindowSeries]) -> ReductionStep:
    """Reduce an order-raising relation until the last cofactor is invertible.

    The relation must satisfy ``nu_low(sum(a_i * b_i)) > min_i(nu_low(a_i) + nu_low(b_i))``.
    Returns the pivot, series cofactors ``c_j`` with
    ``nu_low(a_pivot - sum(a_j * c_j)) > nu_low(a_pivot)``, and the order of the
    last cofactor at each iteration (strictly decreasing, ending at 0).
    """
    if len(family) != len(cofactors):
        raise ValueError("family and cofactors must have equal length")
    _common_cap([*family, *cofactors])
    vals = {i: family[i].nu_low() + b.nu_low() for i, b in enumerate(cofactors)
            if not b.is_zero and not family[i].is_zero}
    if not vals:
        raise ValueError("all cofactors are zero")
    m = min(vals.values())
    total = _combine(family, cofactors)
    if m > total.cap:
        raise ValueError("relation lies entirely beyond the cap")
    if not total.nu_low() > m:
        raise ValueError("cofactors do not raise the order: not a dependence relation")
    b = [c if vals.get(i) == m else WindowSeries(NcPoly.zero(c.field), c.cap)
         for i, c in enumerate(cofactors)]
    order = sorted(range(len(family)), key=lambda i: (family[i].nu_low(), i))
    trace = []
    while True:
        active = [i for i in order if not b[i].is_zero]
        last = active[-1]
        bn = b[last]
        trace.append(bn.nu_low())
        if bn.nu_low() == 0:
            inv = series_invert(bn)
            expr = {j: -(b[j] * inv) for j in active[:-1]}
            return ReductionStep(last, expr, tuple(trace))
        t = min(w[-1] for w in bn.low_component()._terms)
        b = [_series_strip(bi, t) for bi in b]


def _lowest_solve(r: WindowSeries, family: Sequence[WindowSeries], window) -> Optional[Dict[int, NcPoly]]:
    nu = r.nu_low()
    gens = [(j, f.low_component()) for j, f in enumerate(family)
            if not f.is_zero and f.nu_low() <= nu]
    return _right_ideal_solve(r.low_component(), gens, window)


def series_reduce(a: WindowSeries, family: Sequence[WindowSeries],
                  relation: Optional[Sequence[WindowSeries]] = None) -> DependenceWitness:
    """Express ``a`` as a right combination of ``family`` modulo order > cap.

    With ``relation`` (cofactors parallel to ``[*family, a]`` forming an
    order-raising relation) the first round runs the stripping loop on it;
    otherwise the first relation comes from the lowest-component solve.
    Later rounds refine the remainder one order at a time.
    """
    cap = _common_cap([a, *family])
    field = check_common_field([a.poly, *(f.poly for f in family)])
    n = len(family)
    zero = WindowSeries(NcPoly.zero(field), cap)
    if a.is_zero:
        return DependenceWitness(ELEMENT_DEPENDENT, tuple(zero for _ in family), remainder=zero, cap=cap)
    window = _window_of([a.poly, *(f.poly for f in family)])
    everything = [*family, a]

    if relation is not None:
        if len(relation) != n + 1:
            raise ValueError("relation must have one cofactor per family member plus one for a")
        step = strip_series_relation(everything, relation)
        if step.pivot != n:
            raise ValueError("relation does not pivot on the reduced element")
        nu = a.nu_low()
        seeds = {j: c.poly.truncate(nu - family[j].nu_low()) for j, c in step.expression.items()}
    else:
        sol = _lowest_solve(a, family, window)
        if sol is None:
            return DependenceWitness(INDEPENDENT, cap=cap)
        # the lowest-order relation has cofactor -1 on a; run it through the same loop
        rel = [WindowSeries(sol.get(j, NcPoly.zero(field)), cap) for j in range(n)]
        rel.append(WindowSeries(NcPoly.constant(-1, field), cap))
        step = strip_series_relation(everything, rel)
        seeds = {j: c.poly for j, c in step.expression.items()}

    traces = [step.trace]
    cof = [seeds.get(j, NcPoly.zero(field)) for j in range(n)]
    r = a - _combine(family, [WindowSeries(c, cap) for c in cof]) if n else a
    while not r.is_zero:
        sol = _lowest_solve(r, family, window)
        if sol is None:
            break
        for j, c in sol.items():
            cof[j] = cof[j] + c
        r = a - _combine(family, [WindowSeries(c, cap) for c in cof])
        traces.append((0,))
    coeffs = tuple(WindowSeries(c, cap) for c in cof)
    return DependenceWitness(ELEMENT_DEPENDENT, coeffs, remainder=r, cap=cap, trace=tuple(traces))


def series_family_dependent(family: Sequence[WindowSeries]) -> DependenceWitness:
    """Inverse-filtration dependence of a family of capped series."""
    if not family:
        raise ValueError("family must be nonempty")
    cap = _common_cap(family)
    field = check_common_field([f.poly for f in family])
    n = len(family)
    zero = WindowSeries(NcPoly.zero(field), cap)
    one = WindowSeries(NcPoly.one(field), cap)
    for i, a in enumerate(family):
        if a.is_zero:
            coeffs = tuple(one if j == i else zero for j in range(n))
            return DependenceWitness(FAMILY_DEPENDENT, coeffs, pivot=i, remainder=zero, cap=cap)
    lows = [f.low_component() for f in family]
    nus = [f.nu_low() for f in family]
    window = _window_of(lows)
    order = sorted(range(n), key=lambda i: (nus[i], i))
    for i in reversed(order):
        idx = [j for j in range(n) if j != i and nus[j] <= nus[i]]
        if _right_ideal_solve(lows[i], [(j, lows[j]) for j in idx], window) is None:
            continue
        w = series_reduce(family[i], [family[j] for j in idx])
        coeffs = [zero] * n
        for k, j in enumerate(idx):
            coeffs[j] = w.coefficients[k]
        coeffs[i] = -one
        return DependenceWitness(FAMILY_DEPENDENT, tuple(coeffs), pivot=i,
                                 remainder=_combine(family, coeffs), cap=cap, trace=w.trace)
    return DependenceWitness(INDEPENDENT, cap=cap)


# -- certificate checks ------------------------------------------------------

def _top(p) -> float:
    return NEG_INF if p.is_zero else p.nu_top()


def _low(s) -> float:
    return POS_INF if s.is_zero else s.nu_low()


def verify_family_witness(family: Sequence[NcPoly], w: DependenceWitness) -> bool:
    """Re-check a family witness by direct arithmetic."""
    if w.kind != FAMILY_DEPENDENT or len(w.coefficients) != len(family):
        return False
    if any(a.is_zero for a in family):
        return True
    if all(b.is_zero for b in w.coefficients):
        return False
    total = _combine(family, w.coefficients)
    bound = max(_top(a) + _top(b) for a, b in zip(family, w.coefficients) if not b.is_zero)
    return _top(total) < bound and total == w.remainder


def verify_element_witness(a: NcPoly, family: Sequence[NcPoly], w: DependenceWitness) -> bool:
    if w.kind != ELEMENT_DEPENDENT or len(w.coefficients) != len(family):
        return False
    if a.is_zero:
        return True
    rem = a - _combine(family, w.coefficients) if family else a
    if rem != w.remainder:
        return False
    bound = max((_top(f) + _top(b) for f, b in zip(family, w.coefficients) if not b.is_zero),
                default=NEG_INF)
    return _top(rem) < _top(a) and bound <= _top(a)


def verify_series_family_witness(family: Sequence[WindowSeries], w: DependenceWitness) -> bool:
    if w.kind != FAMILY_DEPENDENT or len(w.coefficients) != len(family):
        return False
    if any(a.is_zero for a in family):
        return True
    pairs = [(a, b) for a, b in zip(family, w.coefficients) if not b.is_zero]
    if not pairs:
        return False
    total = _combine(family, w.coefficients)
    bound = min(_low(a) + _low(b) for a, b in pairs)
    return bound <= total.cap and _low(total) > bound


def verify_series_element_witness(a: WindowSeries, family: Sequence[WindowSeries], w: DependenceWitness) -> bool:
    if w.kind != ELEMENT_DEPENDENT or len(w.coefficients) != len(family):
        return False
    if a.is_zero:
        return True
    rem = a - _combine(family, w.coefficients) if family else a
    if not rem.equals_up_to_cap(w.remainder):
        return False
    bound = min((_low(f) + _low(b) for f, b in zip(family, w.coefficients) if not b.is_zero),
                default=POS_INF)
    return _low(rem) > _low(a) and bound >= _low(a)
