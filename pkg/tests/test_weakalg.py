import random

import pytest

from conftest import FIELDS, brute_family_dependent, planted_series_relation, random_homogeneous, random_poly, random_series
from freealg.exactalg import GF, QQ, NcPoly, WindowSeries
from freealg.weakalg import (
    ELEMENT_DEPENDENT,
    FAMILY_DEPENDENT,
    INDEPENDENT,
    family_dependent,
    right_normal_form,
    right_reduce,
    series_family_dependent,
    series_invert,
    series_reduce,
    strip_series_relation,
    verify_element_witness,
    verify_family_witness,
    verify_series_element_witness,
    verify_series_family_witness,
    weak_reduction_step,
)

x, y = NcPoly.gen(0), NcPoly.gen(1)
one = NcPoly.one()


def S(p, cap=4):
    return WindowSeries(p if isinstance(p, NcPoly) else NcPoly.constant(p), cap)


# -- graded engine -----------------------------------------------------------

def test_distinct_generators_independent():
    assert family_dependent([x, y]).kind == INDEPENDENT


def test_x_xy_dependent():
    w = family_dependent([x, x * y])
    assert w.kind == FAMILY_DEPENDENT and w.pivot == 1
    assert w.coefficients == (y, -one)
    assert verify_family_witness([x, x * y], w)


def test_zero_member_dependent():
    w = family_dependent([NcPoly.zero(), y])
    assert w.dependent and w.pivot == 0
    assert verify_family_witness([NcPoly.zero(), y], w)


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        family_dependent([])


def test_right_reduce_examples():
    w = right_reduce(x * y + y * y, [x, y])
    assert w.kind == ELEMENT_DEPENDENT and w.coefficients == (y, y) and w.remainder.is_zero
    assert right_reduce(x, [y]).kind == INDEPENDENT
    w0 = right_reduce(NcPoly.zero(), [x])
    assert w0.dependent and verify_element_witness(NcPoly.zero(), [x], w0)


def test_right_reduce_nonhomogeneous_drops_degree():
    a = x * y * x + y
    w = right_reduce(a, [x * y, y])
    assert w.dependent and verify_element_witness(a, [x * y, y], w)
    assert w.remainder.nu_top() < a.nu_top()


def test_right_normal_form():
    a = x * x * y + y * y * x + x
    cofs, nf = right_normal_form(a, [x * x])
    total = nf
    for c in cofs:
        total = total + x * x * c
    assert total == a
    # no homogeneous component of the normal form is right dependent on the family
    assert all(not right_reduce(c, [x * x]).dependent for c in nf.components().values())
    cofs, nf = right_normal_form(x * x * y + x, [x * x])
    assert cofs == (y,) and nf == x


def test_weak_reduction_step_examples():
    step = weak_reduction_step([x, x * y], [y * x, -x])
    assert step.pivot == 1 and step.expression == {0: y}
    assert step.trace == (1, 0)
    step = weak_reduction_step([x * x, x], [one, -x])
    assert step.pivot == 0 and step.expression == {1: x}
    with pytest.raises(ValueError):
        weak_reduction_step([x, y], [NcPoly.zero(), NcPoly.zero()])
    with pytest.raises(ValueError):
        weak_reduction_step([x + x * y, y], [one, one])
    with pytest.raises(ValueError):
        weak_reduction_step([x, y], [one, one])


@pytest.mark.parametrize("field", FIELDS)
def test_family_dependent_matches_definition_oracle(field):
    rng = random.Random(field.characteristic + 1)
    for _ in range(60):
        fam = [random_poly(rng, 3, field, max_terms=3) for _ in range(rng.randint(1, 3))]
        w = family_dependent(fam)
        assert w.dependent == brute_family_dependent(fam, 2)
        if w.dependent:
            assert verify_family_witness(fam, w)


@pytest.mark.parametrize("field", FIELDS)
def test_weak_algorithm_on_homogeneous_samples(field):
    rng = random.Random(7 + field.characteristic)
    seen = 0
    for _ in range(80):
        degs = [rng.randint(1, 3) for _ in range(3)]
        fam = [random_homogeneous(rng, d, field, max_terms=2) for d in degs]
        if rng.random() < 0.5:
            # plant a dependence on the lower-degree members
            j = max(range(3), key=lambda i: degs[i])
            k = min(range(3), key=lambda i: degs[i])
            if j != k:
                fam[j] = fam[k] * random_homogeneous(rng, degs[j] - degs[k], field, max_terms=2)
        w = family_dependent(fam)
        if not w.dependent:
            continue
        seen += 1
        step = weak_reduction_step(fam, list(w.coefficients))
        p = step.pivot
        total = NcPoly.zero(field)
        for j, c in step.expression.items():
            assert fam[j].nu_top() <= fam[p].nu_top()
            total = total + fam[j] * c
        assert total == fam[p]
        assert list(step.trace) == sorted(step.trace, reverse=True)
    assert seen > 10


# -- series engine -----------------------------------------------------------

def test_series_invert_examples():
    t = series_invert(S(one + x, 3))
    assert t.poly == one - x + x * x - x * x * x
    assert series_invert(S(2, 3)).poly == NcPoly.constant(QQ("1/2"))
    with pytest.raises(ValueError):
        series_invert(S(x, 3))


@pytest.mark.parametrize("field", FIELDS)
def test_series_invert_random(field):
    rng = random.Random(2 + field.characteristic)
    for _ in range(50):
        s = random_series(rng, rng.randint(1, 5), 0, field)
        t = series_invert(s)
        unit = WindowSeries(NcPoly.one(field), s.cap)
        assert (s * t).equals_up_to_cap(unit) and (t * s).equals_up_to_cap(unit)


def test_series_family_examples():
    fam = [S(one + x), S(x)]
    w = series_family_dependent(fam)
    assert w.dependent and w.pivot == 1
    assert w.coefficients[0].poly == x - x * x + x * x * x - x * x * x * x
    assert verify_series_family_witness(fam, w)
    assert series_family_dependent([S(x), S(y)]).kind == INDEPENDENT
    z = series_family_dependent([S(0), S(1)])
    assert z.dependent and z.pivot == 0


def test_series_reduce_examples():
    w = series_reduce(S(1, 3), [S(one + x, 3)])
    assert w.coefficients[0].poly == one - x + x * x - x * x * x
    assert w.remainder.is_zero
    w = series_reduce(S(x * x), [S(x)])
    assert w.coefficients[0].poly == x and w.remainder.is_zero
    assert series_reduce(S(y), [S(x)]).kind == INDEPENDENT
    with pytest.raises(ValueError):
        series_reduce(S(y, 3), [S(x, 4)])


def test_series_reduce_stripping_trace_strictly_decreases():
    rng = random.Random(99)
    runs = 0
    while runs < 50:
        fam, a, rel = planted_series_relation(rng)
        if a.is_zero or a.nu_low() != max(f.nu_low() for f in fam):
            continue
        w = series_reduce(a, fam, relation=rel)
        trace = w.trace[0]
        assert all(s > t for s, t in zip(trace, trace[1:])) and trace[-1] == 0
        assert trace[0] >= 1
        assert verify_series_element_witness(a, fam, w)
        runs += 1


def test_strip_rejects_non_relation():
    with pytest.raises(ValueError):
        strip_series_relation([S(x), S(y)], [S(1), S(1)])


def test_series_engine_gf5():
    F = GF(5)
    s = WindowSeries(NcPoly.one(F) + NcPoly.gen(0, F).scale(F(3)), 4)
    w = series_reduce(WindowSeries(NcPoly.one(F), 4), [s])
    assert verify_series_element_witness(WindowSeries(NcPoly.one(F), 4), [s], w)
