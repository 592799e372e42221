"""Shared generators and independent oracles for the test suite."""

import itertools
import random

import pytest
from sympy import GF as SymGF
from sympy import QQ as SymQQ
from sympy.polys.matrices import DomainMatrix

from freealg.exactalg import GF, QQ, NcPoly, WindowSeries
from freealg.freelie import evaluate_tree, lyndon_basis
from freealg.liedep import raw_bracket_monomials


def random_homogeneous(rng, d, field=QQ, n_gens=2, max_terms=3, coeff_range=3):
    """Random nonzero homogeneous polynomial of degree ``d``."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            w = tuple(rng.randrange(n_gens) for _ in range(d))
            terms[w] = rng.randint(-coeff_range, coeff_range)
        p = NcPoly(terms, field)
        if not p.is_zero:
            return p


def random_poly(rng, max_deg=4, field=QQ, n_gens=2, max_terms=4, min_deg=0):
    """Random nonzero polynomial with degrees in ``min_deg..max_deg``."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            d = rng.randint(min_deg, max_deg)
            w = tuple(rng.randrange(n_gens) for _ in range(d))
            terms[w] = rng.randint(-3, 3)
        p = NcPoly(terms, field)
        if not p.is_zero:
            return p


def random_series(rng, cap, order=0, field=QQ, n_gens=2, max_terms=4):
    """Random series with exact order ``order`` (nonzero lowest component)."""
    low = random_homogeneous(rng, order, field, n_gens, max_terms=2)
    rest = NcPoly.zero(field)
    for _ in range(rng.randint(0, max_terms)):
        d = rng.randint(order + 1, max(order + 1, cap))
        w = tuple(rng.randrange(n_gens) for _ in range(d))
        rest = rest + NcPoly({w: rng.randint(-2, 2)}, field)
    return WindowSeries(low + rest, cap)


def sym_domain(field):
    return SymQQ if field.characteristic == 0 else SymGF(field.characteristic)


def sym_rank(columns, field):
    """Rank of sparse column vectors (dicts keyed by words) computed by sympy."""
    columns = [c for c in columns]
    if not columns:
        return 0
    rows = sorted({k for c in columns for k in c})
    if not rows:
        return 0
    dom = sym_domain(field)

    def conv(v):
        if field.characteristic == 0:
            return dom(v.numerator, v.denominator)
        return dom(int(v))

    data = [[conv(c[r]) if r in c else dom(0) for c in columns] for r in rows]
    return DomainMatrix(data, (len(rows), len(columns)), dom).rank()


def words_of(n_gens, d):
    return list(itertools.product(range(n_gens), repeat=d))


def brute_family_dependent(family, n_gens, slack=2):
    """Dependence from the definition: a nontrivial homogeneous top relation at some degree.

    For each total degree ``D`` the columns are ``top(a_i) * w`` over words of
    length ``D - deg a_i``; the family is dependent iff some such system has
    a nonzero kernel.  Degrees up to ``max deg + slack`` are tried.
    """
    if any(a.is_zero for a in family):
        return True
    field = family[0].field
    degs = [a.nu_top() for a in family]
    for D in range(min(degs), max(degs) + slack + 1):
        cols = []
        for a, d in zip(family, degs):
            if d > D:
                continue
            top = a.top_component()
            for w in words_of(n_gens, D - d):
                cols.append(top.mul(NcPoly.monomial(w, 1, field))._terms)
        if cols and sym_rank(cols, field) < len(cols):
            return True
    return False


def necklace_lyndon_count(k, n):
    """Number of Lyndon words of length ``n`` over ``k`` letters (Moebius formula)."""
    def mobius(m):
        res, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res
    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


def planted_series_relation(rng, cap=6, field=QQ):
    """A family, an element ``a`` in its right ideal, and a relation whose ``a``-cofactor has positive order."""
    k = rng.randint(1, 3)
    fam = [random_series(rng, cap, rng.randint(0, 1), field, max_terms=2) for _ in range(k)]
    alpha = max(f.nu_low() for f in fam)
    gs = [random_series(rng, cap, alpha - f.nu_low(), field, max_terms=2) for f in fam]
    a = WindowSeries(NcPoly.zero(field), cap)
    for f, g in zip(fam, gs):
        a = a + f * g
    r = rng.randint(1, 2)
    u = random_series(rng, cap, r, field, max_terms=2)
    relation = [g * u for g in gs] + [-u]
    return fam, a, relation


def planted_lie_family(rng):
    """Homogeneous Lie family (degrees <= 4) with one member a Lie polynomial in lower members."""
    while True:
        base = []
        for _ in range(rng.randint(2, 3)):
            d = rng.randint(1, 2)
            b = NcPoly.zero()
            for e in lyndon_basis([0, 1], d):
                b = b + e.carrier.scale(rng.randint(-2, 2))
            if not b.is_zero:
                base.append(b)
        if len(base) < 2:
            continue
        n = len(base)
        trees = [t for m in (1, 2, 3) for t in raw_bracket_monomials(n, m)]
        rng.shuffle(trees)
        for t in trees:
            v = evaluate_tree(t, base)
            if not v.is_zero and v.nu_top() <= 4 and v.nu_top() >= max(b.nu_top() for b in base):
                d = v.nu_top()
                total = NcPoly.zero()
                for t2 in trees:
                    v2 = evaluate_tree(t2, base)
                    if not v2.is_zero and v2.nu_top() == d:
                        total = total + v2.scale(rng.randint(-1, 1))
                if total.is_zero:
                    total = v
                fam = base + [total]
                rng.shuffle(fam)
                return fam


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def xy():
    return NcPoly.gen(0), NcPoly.gen(1)


FIELDS = [QQ, GF(5)]
