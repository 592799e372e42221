import itertools
import math
import random

import pytest

from conftest import planted_lie_family, sym_rank
from freealg.exactalg import QQ, NcPoly
from freealg.freelie import LieTemplate, bracket, evaluate_tree, lyndon_basis
from freealg.liedep import (
    INDEPENDENT,
    LIE_DEPENDENT,
    enumerate_templates,
    express_as_lie,
    lie_dependence,
    lie_family_dependent,
    multidegrees,
    raw_bracket_monomials,
    verify_family_lie_witness,
    verify_lie_witness,
)

x, y = NcPoly.gen(0), NcPoly.gen(1)
xy = bracket(x, y)


def test_multidegree_enumeration():
    assert sorted(multidegrees([1, 2], 4)) == sorted([(4, 0), (2, 1), (0, 2)])
    assert enumerate_templates(1, [1], 3) == []
    assert enumerate_templates(2, [1, 1], 2) == [(0, 1)]
    with pytest.raises(ValueError):
        enumerate_templates(2, [1], 2)


def test_template_counts_match_slot_lyndon_words():
    # independent count: brute force over all slot words with the multidegree, filtered by rotation
    def is_lyndon_brute(w):
        return all(w < w[i:] + w[:i] for i in range(1, len(w)))

    for degrees, d in [((1, 1), 4), ((1, 2), 5), ((1, 1, 2), 4), ((2, 3), 7)]:
        expected = 0
        for e in multidegrees(list(degrees), d):
            letters = [i for i, k in enumerate(e) for _ in range(k)]
            expected += sum(1 for w in set(itertools.permutations(letters)) if is_lyndon_brute(w))
        assert len(enumerate_templates(len(degrees), list(degrees), d)) == expected


def test_express_examples():
    assert express_as_lie(xy, [x, y]).template == LieTemplate.monomial((0, 1), 2)
    assert express_as_lie(bracket(x, xy), [x, xy]).template == LieTemplate.monomial((0, 1), 2)
    w = express_as_lie(bracket(xy, y), [x, y])
    assert w.template.evaluate([x, y]) == bracket(xy, y)
    assert w.template.format() == "[[b1,b2],b2]"
    with pytest.raises(ValueError):
        express_as_lie(xy + x, [x, y])


def test_lie_dependence_examples():
    w = lie_dependence(NcPoly.zero(), [x])
    assert w.kind == LIE_DEPENDENT
    w = lie_dependence(xy + x, [x, y])
    assert w.template.format() == "b1 + [b1,b2]"
    assert w.degree_drop == (2, -math.inf)
    assert verify_lie_witness(xy + x, [x, y], w)
    assert lie_dependence(bracket(x, xy), [y]).kind == INDEPENDENT


def test_lie_family_examples():
    w = lie_family_dependent([x, y, xy])
    assert w.pivot == 2 and w.template.format() == "[b1,b2]"
    assert lie_family_dependent([x, y]).kind == INDEPENDENT
    fam = [x, y, xy + bracket(x, xy)]
    w = lie_family_dependent(fam)
    assert w.pivot == 2 and w.template.format() == "[b1,b2] + [b1,[b1,b2]]"
    assert verify_family_lie_witness(fam, w)


def test_express_complete_against_full_slot_basis():
    """Agreement with a solve over every bracketing of slot words (no normalisation)."""
    rng = random.Random(12)
    fams = [[x, y], [x, xy], [y, xy], [xy, bracket(x, xy)]]
    for fam in fams:
        degs = [f.nu_top() for f in fam]
        for d in range(1, 6):
            basis = [b.carrier for b in lyndon_basis([0, 1], d)]
            for _ in range(6):
                p = NcPoly.zero()
                for b in basis:
                    p = p + b.scale(rng.randint(-1, 1))
                if p.is_zero:
                    continue
                cols = []
                for m in range(1, d // min(degs) + 1):
                    for t in raw_bracket_monomials(2, m):
                        v = evaluate_tree(t, fam)
                        if not v.is_zero and v.nu_top() == d:
                            cols.append(v._terms)
                brute = bool(cols) and sym_rank(cols + [p._terms], QQ) == sym_rank(cols, QQ)
                w = express_as_lie(p, fam)
                assert w.dependent == brute
                if w.dependent:
                    assert w.template.evaluate(fam) == p


def test_planted_families_return_valid_pivots():
    rng = random.Random(31)
    for _ in range(100):
        fam = planted_lie_family(rng)
        w = lie_family_dependent(fam)
        assert w.kind == LIE_DEPENDENT
        p = w.pivot
        for _, _, e in w.template.monomials:
            assert e[p] == 0
            assert all(fam[j].nu_top() <= fam[p].nu_top() for j in range(len(fam)) if e[j])
        assert w.template.evaluate(fam) == fam[p]
        assert verify_family_lie_witness(fam, w)


def test_nonhomogeneous_family_uses_top_components():
    fam = [x, y, xy + x]
    w = lie_family_dependent(fam)
    assert w.pivot == 2 and verify_family_lie_witness(fam, w)
