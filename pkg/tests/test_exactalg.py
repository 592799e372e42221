import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_poly, sym_rank
from freealg.exactalg import (
    GF,
    QQ,
    Echelon,
    Field,
    FieldMismatchError,
    NcPoly,
    WindowSeries,
    complement,
    kernel,
    rank_of,
)

x, y = NcPoly.gen(0), NcPoly.gen(1)

words_st = st.lists(st.integers(0, 2), max_size=4).map(tuple)
poly_st = st.dictionaries(words_st, st.integers(-4, 4), max_size=5).map(NcPoly)


# -- fields ------------------------------------------------------------------

def test_gf_arithmetic_matches_integers_mod_p():
    F = GF(7)
    for a in range(7):
        for b in range(7):
            assert F(a) + F(b) == (a + b) % 7
            assert F(a) * F(b) == (a * b) % 7
            if b:
                assert (F(a) / F(b)) * F(b) == F(a)
                assert F(b).inverse() == pow(b, 5, 7)


def test_field_conversions():
    assert QQ("2/3") == Fraction(2, 3)
    assert GF(5)(Fraction(1, 2)) == 3
    assert GF(5)(-1) == 4
    assert Field.from_label("gf:5") == GF(5)
    assert Field.from_label("q") == QQ
    assert GF(5).label == "gf:5" and QQ.label == "q"


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatchError):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(FieldMismatchError):
        NcPoly.gen(0, GF(5)) + x


def test_gf_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GF(5)(0).inverse()


# -- polynomials -------------------------------------------------------------

def test_basic_products_and_format():
    assert (x * y - y * x).format() == "x*y - y*x"
    assert ((x + y) ** 2).format() == "x^2 + x*y + y*x + y^2"
    assert NcPoly.zero().format() == "0"
    assert NcPoly.gen(3).format() == "x3"
    half = x.scale(Fraction(1, 2)) - NcPoly.one()
    assert half.format() == "-1 + 1/2*x"


def test_degrees_and_conventions():
    p = x + x * x * y
    assert p.nu_top() == 3 and p.nu_low() == 1
    assert NcPoly.zero().nu_top() == -math.inf
    assert NcPoly.zero().nu_low() == math.inf
    assert p.component(3) == x * x * y
    assert p.component(2).is_zero
    with pytest.raises(ValueError):
        p.component(-1)
    assert p.top_component() == x * x * y and p.low_component() == x


@settings(max_examples=60, deadline=None)
@given(poly_st, poly_st, poly_st)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a
    assert (a - a).is_zero


@settings(max_examples=60, deadline=None)
@given(poly_st, poly_st)
def test_degree_additivity(a, b):
    # free algebras have no zero divisors
    if not a.is_zero and not b.is_zero:
        assert (a * b).nu_top() == a.nu_top() + b.nu_top()
        assert (a * b).nu_low() == a.nu_low() + b.nu_low()


@settings(max_examples=60, deadline=None)
@given(poly_st)
def test_components_reassemble(p):
    total = NcPoly.zero()
    for d, c in p.components().items():
        assert c.is_homogeneous() and c.nu_top() == d
        total = total + c
    assert total == p


def test_truncated_multiplication():
    p = (x + y * y) * (NcPoly.one() + x)
    assert (x + y * y).mul(NcPoly.one() + x, max_degree=2) == p.truncate(2)


def test_substitute_is_algebra_map():
    rng = random.Random(3)
    images = {0: x + y * x, 1: y - x * x}
    for _ in range(20):
        a, b = random_poly(rng, 3), random_poly(rng, 3)
        assert (a * b).substitute(images) == a.substitute(images) * b.substitute(images)


def test_windows():
    p = NcPoly({(0, 2): 1})
    assert p.window == frozenset({0, 2})
    assert p.with_window({0, 1, 2}).window == frozenset({0, 1, 2})


# -- series ------------------------------------------------------------------

def test_series_cap_semantics():
    s = WindowSeries(NcPoly.one() + x, 3)
    t = WindowSeries(NcPoly.one() - x, 5)
    assert (s * t).cap == 3
    assert (s * t).equals_up_to_cap(WindowSeries(NcPoly.one() - x * x, 3))
    with pytest.raises(ValueError):
        s.component(4)
    with pytest.raises(ValueError):
        WindowSeries(x, -1)
    assert "O(deg > 3)" in s.format()


# -- linear algebra ----------------------------------------------------------

@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_echelon_rank_matches_sympy(field):
    rng = random.Random(11)
    for _ in range(40):
        vecs = [random_poly(rng, 2, field=field, max_terms=3)._terms for _ in range(rng.randint(1, 6))]
        assert rank_of(vecs, field) == sym_rank(vecs, field)


def test_echelon_provenance():
    ech = Echelon(QQ)
    a = {"u": QQ(1), "v": QQ(2)}
    b = {"v": QQ(1)}
    assert ech.add(a, "a") == (True, {})
    assert ech.add(b, "b") == (True, {})
    ok, rel = ech.add({"u": QQ(1)}, "c")
    assert not ok and rel == {"c": 1, "a": -1, "b": 2}
    combo = ech.solve({"u": QQ(3), "v": QQ(1)})
    assert combo == {"a": 3, "b": -5}
    assert ech.solve({"w": QQ(1)}) is None


def test_kernel_relations_vanish():
    rng = random.Random(5)
    for _ in range(20):
        vecs = [random_poly(rng, 1, max_terms=2)._terms for _ in range(5)]
        for rel in kernel(vecs, QQ):
            total = {}
            for i, c in rel.items():
                for k, v in vecs[i].items():
                    total[k] = total.get(k, 0) + c * v
            assert all(v == 0 for v in total.values())


def test_complement_prefers_earliest():
    span = [{(0,): QQ(1)}]
    cands = [{(0,): QQ(2)}, {(1,): QQ(1)}, {(0,): QQ(1), (1,): QQ(1)}]
    assert complement(span, cands, QQ) == [1]
