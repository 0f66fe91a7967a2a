"""Acceptance criteria, one test each, at the stated sizes, tolerances and time limits.

Each test records a one-line verdict in ``RESULTS``; the pytest terminal
summary (see conftest.py) prints them, and running this file directly
prints them too.
"""

import math
import time


from trainalg.exact_linalg import Matrix
from trainalg.groups import GroupElement, pair_preset
from trainalg.relations import LAMBDA_SAMPLES, char_function, relation_compose
from trainalg.repharness import (
    SphericalParams, TensorRep, spherical_character_check, spherical_phi, theta_weak_limit_check,
)
from trainalg.suites import SuiteConfig, run_suite, trial_rng
from trainalg.train import (
    DoubleCoset, Verdict, coset_compose, coset_eq, involution, psi, unit, unit_lambda, unit_mu,
)

RESULTS: dict[int, str] = {}


def record(num, title, ok, elapsed, limit, note=""):
    within = elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    extra = f"; {note}" if note else ""
    RESULTS[num] = (f"criterion {num:2d} {verdict}  {title}  "
                    f"({elapsed:.2f}s of {limit:.0f}s{'' if within else ', over time'}{extra})")
    return ok and within


def suite_ok(name, trials, seed, **kw):
    rep = run_suite(SuiteConfig(name, trials=trials, seed=seed, **kw))
    return rep.passed, sum(not t.passed for t in rep.trials)


def test_criterion_01_block_formula():
    t = time.perf_counter()
    ok, bad = suite_ok("compose", 200, 1, max_support=3, max_index=2)
    assert record(1, "stabilized product equals the explicit block layout, 200 pairs",
                  ok, time.perf_counter() - t, 5, f"{bad} mismatches")


def test_criterion_02_representative_independence():
    t = time.perf_counter()
    ok, bad = suite_ok("representative_independence", 100, 2, pair="GL_R/O")
    assert record(2, "invariants unchanged by Cayley-sampled tail factors, 100 trials",
                  ok, time.perf_counter() - t, 30, f"{bad} differ")


def test_criterion_03_associativity():
    t = time.perf_counter()
    ok, bad = suite_ok("associativity", 50, 3, pair="GL_R/O")
    assert record(3, "(f o g) o h and f o (g o h) agree at all 6 sample points, 50 triples",
                  ok, time.perf_counter() - t, 60, f"{bad} disagree")


def test_criterion_04_chi_multiplicative_half_dimensional():
    t = time.perf_counter()
    glo = pair_preset("GL_R/O")
    from trainalg.groups import random_element
    failures = 0
    for i in range(100):
        rng = trial_rng("criterion4", i)
        a, b, c = (rng.randint(0, 2) for _ in range(3))
        g = DoubleCoset(glo, (c,), (b,), random_element(glo.G, rng.randint(1, 3), rng))
        h = DoubleCoset(glo, (b,), (a,), random_element(glo.G, rng.randint(1, 3), rng))
        gh = coset_compose(g, h)
        for lam in LAMBDA_SAMPLES:
            cg, ch, cgh = char_function(g, lam), char_function(h, lam), char_function(gh, lam)
            dims = cg.dim == b + c and ch.dim == a + b and cgh.dim == a + c
            if not dims or cgh != relation_compose(cg, ch):
                failures += 1
                break
    assert record(4, "chi(g o h) = chi(g) o chi(h) and dim = alpha + beta, 100 pairs x 6 points",
                  failures == 0, time.perf_counter() - t, 120, f"{failures} failures")


def test_criterion_05_ordered_category():
    t = time.perf_counter()
    glo = pair_preset("GL_R/O")
    W = Verdict.EQUAL_BY_WITNESS
    bad = []
    for b in range(4):
        for a in range(b + 1):
            lab, mba = unit_lambda(glo, a, b), unit_mu(glo, b, a)
            p = psi(glo, a, b)
            checks = [
                coset_eq(coset_compose(mba, lab), unit(glo, a)).verdict == W,
                coset_eq(coset_compose(p, p), p).verdict == W,
                coset_eq(involution(p), p).verdict == W,
            ]
            for c in range(b, 4):
                checks.append(coset_eq(coset_compose(unit_lambda(glo, b, c), lab),
                                       unit_lambda(glo, a, c)).verdict == W)
                checks.append(coset_eq(coset_compose(mba, unit_mu(glo, c, b)),
                                       unit_mu(glo, c, a)).verdict == W)
            if not all(checks):
                bad.append((a, b))
    assert record(5, "ordered-category identities and psi^2 = psi = psi* for alpha <= beta <= 3",
                  not bad, time.perf_counter() - t, 5, f"failing {bad}" if bad else "all by witness")


def test_criterion_06_pure_pair_commutativity():
    t = time.perf_counter()
    ok1, bad1 = suite_ok("commutativity", 50, 6, pair="GL_R/O")
    ok2, bad2 = suite_ok("commutativity", 50, 6, pair="GL_R^2/O")
    assert record(6, "block-swap conjugator J verifies, 50 pairs on each of two pure pairs",
                  ok1 and ok2, time.perf_counter() - t, 30, f"{bad1 + bad2} failures")


def test_criterion_07_centrality():
    t = time.perf_counter()
    ok, bad = suite_ok("centrality", 50, 7, max_index=2)
    assert record(7, "center exponent m <= max support, exact identity, cosets commute, 50 pairs",
                  ok, time.perf_counter() - t, 30, f"{bad} failures")


def test_criterion_08_mantle():
    t = time.perf_counter()
    ok, bad = suite_ok("mantle", 50, 8, max_support=4)
    assert record(8, "mantle image of g times mantle image of h equals image of gh, 50 pairs",
                  ok, time.perf_counter() - t, 30, f"{bad} failures")


def test_criterion_09_repcat():
    t = time.perf_counter()
    ok1, bad1 = suite_ok("repcat", 100, 9, d=1, n=10, max_index=2)
    ok2, bad2 = suite_ok("repcat", 20, 9, d=2, n=10, max_index=1)
    note = f"d=1: {100 - bad1}/100, d=2 n=10: {20 - bad2}/20 exact"
    assert record(9, "multiplicativity of compressed tensor representations",
                  ok1 and ok2, time.perf_counter() - t, 300, note)


def test_criterion_10_theta_limit():
    t = time.perf_counter()
    reports = [theta_weak_limit_check(TensorRep(12, 2), a, range(1, 6)) for a in (0, 1)]
    ok = all(r.passed for r in reports)
    note = ", ".join(f"alpha={r.alpha}: stable from m={r.stable_from}" for r in reports)
    assert record(10, "compressed rho(Theta_m) stabilizes at the identity, d=2, n=12",
                  ok, time.perf_counter() - t, 120, note)


def test_criterion_11_spherical():
    t = time.perf_counter()
    one = GroupElement.identity(pair_preset("GL_R/O").G)
    ident = spherical_phi(SphericalParams((0.3, -1.1), 0.7, 1), one) == 1
    val = spherical_phi(SphericalParams((0.0,)), Matrix([[2]]))
    diag = abs(val - 2 / math.sqrt(5)) < 1e-9
    ok, bad = suite_ok("spherical", 20, 11)
    checks = (ident and diag and ok and spherical_character_check(SphericalParams((1.0,), 0.5, 0),
                                                                  Matrix([[2]]), Matrix([[3]])))
    assert record(11, "Phi(1) = 1, Phi(diag 2) = 2/sqrt 5, character on disjoint supports, 20 trials",
                  checks, time.perf_counter() - t, 5, f"{bad} character failures")


if __name__ == "__main__":
    import sys
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    for k in sorted(RESULTS):
        print(RESULTS[k])
    sys.exit(1 if failed else 0)
