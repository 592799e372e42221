"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the report lines, or
``python tests/test_acceptance.py`` for the report alone.
"""

import io
import random
import sys
import time
from contextlib import redirect_stdout

from conftest import (
    brute_family_dependent,
    planted_lie_family,
    planted_series_relation,
    random_homogeneous,
    random_poly,
    sym_rank,
    words_of,
)
from freealg.cli import main
from freealg.exactalg import GF, QQ, NcPoly, WindowSeries
from freealg.freelie import bracket, dynkin, is_lie_element, lyndon_basis
from freealg.liedep import LIE_DEPENDENT, lie_family_dependent, verify_family_lie_witness
from freealg.limgen import (
    GradedPresentation,
    Window,
    assoc_free_generators,
    build_graded_automorphism,
    check_compatible,
    min_topdegree_of_nonzero_images,
    monomial_span_check,
    monomial_span_ranks,
    no_right_dependence_check,
    project,
)
from freealg.weakalg import family_dependent, series_invert, series_reduce, verify_family_witness, verify_series_element_witness

x, y = NcPoly.gen(0), NcPoly.gen(1)
XP = x + bracket(x, bracket(x, y))
YP = y + bracket(x, bracket(x, bracket(x, y)))


def report(label, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
    return ok


def test_membership_refutation_and_min_degree():
    start = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["membership", "--gens", "x+[x,[x,y]], y+[x,[x,[x,y]]]", "--target", "[x,y]",
                     "--length-cap", "4", "--no-stdin"])
    refuted = code == 1 and buf.getvalue().startswith("refuted-up-to-4")
    m = min_topdegree_of_nonzero_images([XP, YP], 3)
    elapsed = time.perf_counter() - start
    ok = refuted and m == 3 and elapsed < 10
    assert report("1 membership refuted up to 4, min degree 3", ok, f"{elapsed:.2f}s, min={m}")


def random_family(rng, field):
    """Up to four members of top degree <= 4; about half carry a planted dependence."""
    k = rng.randint(1, 4)
    fam = [random_poly(rng, 4, field, max_terms=3) for _ in range(k)]
    if k >= 2 and rng.random() < 0.5:
        i, j = rng.sample(range(k), 2)
        di = fam[i].nu_top()
        if di < 4:
            extra = random_homogeneous(rng, rng.randint(0, 4 - di), field, max_terms=2)
            lower = random_poly(rng, max(di, 0), field, max_terms=2)
            fam[j] = fam[i] * extra + lower
    return fam


def test_family_dependence_against_definition_oracle():
    rng = random.Random(2024)
    bad, dependent = 0, 0
    for n in range(200):
        field = QQ if n % 2 == 0 else GF(5)
        fam = random_family(rng, field)
        w = family_dependent(fam)
        if w.dependent != brute_family_dependent(fam, 2):
            bad += 1
        elif w.dependent:
            dependent += 1
            if not verify_family_witness(fam, w):
                bad += 1
    ok = bad == 0 and 20 < dependent < 180
    assert report("2 family dependence matches oracle on 200 families", ok, f"{dependent} dependent, {bad} bad")


def test_free_generators_of_full_algebra_and_span_checks():
    X = assoc_free_generators(GradedPresentation.full_associative(Window([0, 1]), 5))
    gens = [x, y + x * x]
    ranks = monomial_span_ranks(gens, 5)
    ok = (X == [x, y] and monomial_span_check(gens, 5)
          and all(ranks[d] == 2 ** d for d in range(6)) and no_right_dependence_check(gens))
    assert report("3 free generators {x,y}; span dims 2^d; no right dependence", ok, f"ranks={ranks}")


def test_series_inverse_and_stripping_trace():
    one = NcPoly.one()
    inv_ok = True
    for cap in range(3, 11):
        s = WindowSeries(one + x, cap)
        t = series_invert(s)
        unit = WindowSeries(one, cap)
        inv_ok &= (s * t).equals_up_to_cap(unit) and (t * s).equals_up_to_cap(unit)
    rng = random.Random(4)
    runs, trace_ok = 0, True
    while runs < 50:
        fam, a, rel = planted_series_relation(rng)
        if a.is_zero or a.nu_low() != max(f.nu_low() for f in fam):
            continue
        w = series_reduce(a, fam, relation=rel)
        trace = w.trace[0]
        trace_ok &= all(s > t for s, t in zip(trace, trace[1:]))
        trace_ok &= verify_series_element_witness(a, fam, w)
        runs += 1
    assert report("4 series inverse two-sided; stripping trace strictly decreasing", inv_ok and trace_ok)


def test_lie_recognition_matches_lyndon_span_and_theta_rank():
    rng = random.Random(5)
    dims, agree = [], True
    for d in range(1, 6):
        basis = [b.carrier._terms for b in lyndon_basis([0, 1], d)]
        theta_rank = sym_rank([dynkin(NcPoly.monomial(w)).terms for w in words_of(2, d)], QQ)
        dims.append(len(basis))
        agree &= theta_rank == len(basis) == sym_rank(basis, QQ)
        samples = [NcPoly.monomial(w) for w in words_of(2, d)]
        for _ in range(20):
            p = NcPoly.zero()
            for b in lyndon_basis([0, 1], d):
                p = p + b.carrier.scale(rng.randint(-2, 2))
            samples.append(p)
            samples.append(random_homogeneous(rng, d, max_terms=3))
        for p in samples:
            in_span = sym_rank(basis + [p._terms], QQ) == len(basis)
            agree &= is_lie_element(p) == in_span
    ok = agree and dims == [2, 1, 2, 3, 6]
    assert report("5 Lie recognition equals Lyndon span; dims (2,1,2,3,6)", ok, f"dims={dims}")


def test_planted_lie_families_give_valid_pivots():
    rng = random.Random(6)
    ok = True
    for _ in range(100):
        fam = planted_lie_family(rng)
        w = lie_family_dependent(fam)
        if w.kind != LIE_DEPENDENT:
            ok = False
            continue
        p = w.pivot
        for _, _, e in w.template.monomials:
            ok &= e[p] == 0
            ok &= all(fam[j].nu_top() <= fam[p].nu_top() for j in range(len(fam)) if e[j])
        ok &= w.template.evaluate(fam) == fam[p] and verify_family_lie_witness(fam, w)
    assert report("6 planted Lie families: pivot comparands lower, template exact", ok)


def test_graded_automorphism_basis_change():
    a = build_graded_automorphism([x, y], [x + y, y])
    b = a.inverse()
    samples = [e.carrier for d in range(1, 5) for e in lyndon_basis([0, 1], d)]
    ok = True
    for u in samples:
        ok &= a.apply(u).nu_top() == u.nu_top()
        ok &= a.apply(b.apply(u)) == u and b.apply(a.apply(u)) == u
        for v in samples:
            if u.nu_top() + v.nu_top() <= 4:
                ok &= a.apply(bracket(u, v)) == bracket(a.apply(u), a.apply(v))
    assert report("7 automorphism x->x+y preserves brackets, degrees, has inverse", ok, f"{len(samples)} samples")


def test_compatible_families_and_corruptions():
    rng = random.Random(8)
    chains = [
        [Window([0, 1, 2, 3]), Window([0, 1, 2]), Window([0, 1]), Window([0])],
        [Window([0, 1, 2]), Window([1, 2]), Window([2])],
        [Window([0, 1, 2, 3]), Window([0, 2]), Window([2])],
    ]
    accepted, rejected, functorial = True, 0, True
    for n in range(100):
        chain = chains[n % len(chains)]
        p = project(random_poly(rng, 3, n_gens=4, max_terms=6), chain[0])
        fam = {w: project(p, w) for w in chain}
        accepted &= check_compatible(fam)
        for i in range(len(chain)):
            for j in range(i, len(chain)):
                functorial &= project(project(p, chain[i]), chain[j]) == project(p, chain[j])
        # perturb one window by a term visible in a smaller window of the chain
        k = rng.randrange(len(chain) - 1)
        letters = sorted(chain[-1].generators)
        word = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
        bad = dict(fam)
        bad[chain[k]] = fam[chain[k]] + NcPoly.monomial(word, rng.choice([-2, -1, 1, 2]))
        rejected += not check_compatible(bad)
    ok = accepted and functorial and rejected == 100
    assert report("8 compatible families accepted, 100 corruptions rejected, functorial", ok, f"rejected={rejected}")


if __name__ == "__main__":
    tests = [v for k, v in list(globals().items()) if k.startswith("test_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
