"""Acceptance gate: one test and one printed verdict line per criterion.

Every criterion is checked with exact arithmetic against an independent
oracle (brute-force probing, term-wise antiderivatives, parity filters,
exhaustive enumeration) and prints

    [criterion N] label: PASS|FAIL (detail)

so a log scrape shows the whole gate at a glance.  Stated time budgets are
asserted alongside correctness.
"""

import functools
import random
import time
from fractions import Fraction

import hahnsolve as hs

from .conftest import QZ, F5Z
from .test_cli import GOLDEN_CASES, GOLDEN_DIR, run_cli

OV = hs.OrderedValue
INF = hs.INFINITY

EULER = hs.DifferentialFieldSpec(hs.QQ, hs.INTEGERS, hs.euler(hs.QQ, hs.INTEGERS))
DDT = hs.DifferentialFieldSpec(hs.QQ, hs.INTEGERS, hs.ddt(hs.QQ, hs.INTEGERS))

SEED_ULTRAMETRIC = 101
SEED_BALLS = 102
SEED_EULER_RUNS = 103
SEED_DDT_RUNS = 104
SEED_OBSTRUCTED = 105
SEED_CHECKS = 505
SEED_NESTS = 108


def finish(index: int, label: str, problems: list, detail: str):
    status = "PASS" if not problems else "FAIL"
    print(f"[criterion {index}] {label}: {status} ({detail})")
    assert not problems, f"criterion {index} {label}: " + "; ".join(
        str(p) for p in problems[:5]
    )


def check_budget(problems: list, elapsed: float, budget: float):
    if elapsed >= budget:
        problems.append(f"took {elapsed:.2f}s, budget {budget:.0f}s")


@functools.lru_cache(maxsize=None)
def euler_runs():
    """200 seeded targets with support in [-20, 20] minus 0, solved exactly."""
    rng = random.Random(SEED_EULER_RUNS)
    runs = []
    for _ in range(200):
        b = hs.random_series(rng, QZ, -20, 20, 8, forbid={0})
        runs.append((b, hs.integrate(EULER, b)))
    return tuple(runs)


@functools.lru_cache(maxsize=None)
def ddt_runs():
    """Same harness for d/dt with supports avoiding the obstructed exponent."""
    rng = random.Random(SEED_DDT_RUNS)
    runs = []
    for _ in range(200):
        b = hs.random_series(rng, QZ, -20, 20, 8, forbid={-1})
        runs.append((b, hs.integrate(DDT, b)))
    return tuple(runs)


def solver_run_problems(dspec, runs):
    problems = []
    for b, result in runs:
        oracle = hs.termwise_integral_oracle(dspec, b)
        if not result.exact:
            problems.append(f"inexact solve for {b}")
        elif result.solution != oracle:
            problems.append(f"solution differs from term-wise oracle for {b}")
        elif hs.derive(dspec.derivation, result.solution) != b:
            problems.append(f"derivative of solution differs from {b}")
        elif result.iterations > len(b.terms):
            problems.append(f"{result.iterations} iterations for {len(b.terms)} terms")
        else:
            values = [b.valuation_lower_bound()] + [
                step.residual_value for step in result.trace
            ]
            if not all(x < y for x, y in zip(values, values[1:])):
                problems.append(f"residual values not strictly increasing for {b}")
    return problems


def test_criterion_01_ultrametric_axioms():
    rng = random.Random(SEED_ULTRAMETRIC)
    start = time.perf_counter()
    pairs = [
        (hs.random_series(rng, QZ, -10, 10, 8), hs.random_series(rng, QZ, -10, 10, 8))
        for _ in range(1000)
    ]
    report = hs.check_ultrametric(QZ, pairs)
    elapsed = time.perf_counter() - start
    problems = list(report.violations)
    if report.checked != 1000:
        problems.append(f"checked {report.checked} pairs, wanted 1000")
    check_budget(problems, elapsed, 1.0)
    finish(1, "ultrametric axioms", problems, f"{report.checked} pairs in {elapsed:.2f}s")


def brute_ball_subset(rng, inner, outer):
    """Extensional inclusion: probe points of the inner ball for membership.

    The probes include the inner center and points at distance exactly the
    inner radius, which between them witness every way inclusion can fail, so
    agreement with the subset criterion is a real equivalence, not sampling.
    """
    r = inner.radius.finite
    probes = [
        inner.center,
        inner.center.add(QZ.monomial(1, r)),
        inner.center.add(QZ.monomial(2, r)),
        inner.center.add(QZ.monomial(1, r + 1)),
    ]
    probes += [
        inner.center.add(hs.random_series(rng, QZ, r, r + 4, 3)) for _ in range(3)
    ]
    return all(outer.contains(p) for p in probes if inner.contains(p))


def test_criterion_02_ball_containment_criterion():
    rng = random.Random(SEED_BALLS)
    start = time.perf_counter()
    problems = []
    held = 0
    for _ in range(500):
        b1 = hs.random_ball(rng, QZ)
        b2 = hs.random_ball(rng, QZ)
        for inner, outer in ((b1, b2), (b2, b1)):
            fast = inner.subset(outer)
            brute = brute_ball_subset(rng, inner, outer)
            held += fast
            if fast != brute:
                problems.append(
                    f"subset criterion says {fast}, probing says {brute} "
                    f"for radii {inner.radius!r} vs {outer.radius!r}"
                )
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 5.0)
    finish(
        2,
        "ball containment criterion",
        problems,
        f"500 pairs both ways, {held} inclusions held, in {elapsed:.2f}s",
    )


def test_criterion_03_integration_scaling_derivation():
    start = time.perf_counter()
    problems = solver_run_problems(EULER, euler_runs())
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 5.0)
    finish(3, "integration via t*d/dt", problems, f"200 exact solves in {elapsed:.2f}s")


def test_criterion_04_integration_shifting_derivation():
    start = time.perf_counter()
    problems = solver_run_problems(DDT, ddt_runs())
    rng = random.Random(SEED_OBSTRUCTED)
    obstructed = 0
    for _ in range(200):
        base = hs.random_series(rng, QZ, -20, 20, 7, forbid={-1})
        b = base.add(QZ.monomial(rng.randint(1, 5), -1))
        try:
            hs.integrate(DDT, b)
            problems.append(f"no failure reported for obstructed target {b}")
        except hs.SectionFailure as e:
            if getattr(e, "exponent", None) == -1:
                obstructed += 1
            else:
                problems.append(f"failure does not name exponent -1: {e}")
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 5.0)
    finish(
        4,
        "integration via d/dt and its obstruction",
        problems,
        f"200 exact solves, {obstructed}/200 obstructions named, in {elapsed:.2f}s",
    )


def test_criterion_05_hypothesis_checks_and_broken_fixtures():
    intended = {
        "broken-order": "value_map_order",
        "broken-monotone": "value_monotonicity",
        "broken-progress": "section_progress",
    }
    start = time.perf_counter()
    problems = []
    for name in ("euler", "ddt"):
        reports = hs.run_instance_checks(
            hs.build_instance(name), seed=SEED_CHECKS, samples=500
        )
        for r in reports:
            if not r.ok:
                problems.append(f"{name}: {r.summary()}")
    for name, target in intended.items():
        reports = hs.run_instance_checks(
            hs.build_instance(name), seed=SEED_CHECKS, samples=500
        )
        for r in reports:
            if r.ok == (r.name == target):
                verdict = "passed" if r.ok else "failed"
                problems.append(f"{name}: {r.name} unexpectedly {verdict}")
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 5.0)
    finish(
        5,
        "hypothesis checks and broken fixtures",
        problems,
        f"2 honest + 3 broken instances at 500 samples in {elapsed:.2f}s",
    )


def achieved_section_elements(name):
    """Section elements produced by the solver runs and check samples."""
    runs = euler_runs() if name == "euler" else ddt_runs()
    elements = [step.term for _, result in runs for step in result.trace]
    instance = hs.build_instance(name)
    elements += instance.sample_sections(random.Random(SEED_CHECKS), 500)
    return elements


def test_criterion_06_value_map_round_trip():
    problems = []
    total_values = 0
    for name, dspec in (("euler", EULER), ("ddt", DDT)):
        spec, _, value_map = hs.integration_instance(dspec)
        by_value = {}
        for s in achieved_section_elements(name):
            by_value.setdefault(spec.domain.valuation(s), s)
        total_values += len(by_value)
        for vs, s in sorted(by_value.items()):
            ws = spec.codomain.valuation(spec.apply(s))
            if not value_map.domain_contains(vs):
                problems.append(f"{name}: achieved value {vs!r} rejected")
            elif value_map.forward(vs) != ws:
                problems.append(f"{name}: forward({vs!r}) != observed {ws!r}")
            elif value_map.inverse(ws) != vs:
                problems.append(f"{name}: inverse({ws!r}) != {vs!r}")
            elif value_map.inverse(value_map.forward(vs)) != vs:
                problems.append(f"{name}: inverse o forward != id at {vs!r}")
            elif value_map.forward(value_map.inverse(ws)) != ws:
                problems.append(f"{name}: forward o inverse != id at {ws!r}")
        audit = hs.verify_value_map(value_map, spec, list(by_value.values()))
        problems += [f"{name}: {v}" for v in audit.violations]
    finish(
        6,
        "value-map round-trip",
        problems,
        f"{total_values} achieved values across 2 derivations",
    )


def test_criterion_07_pseudo_direct_decomposition():
    even = hs.SupportSubgroup("even", lambda g: g % 2 == 0)
    odd = hs.SupportSubgroup("odd", lambda g: g % 2 == 1)
    rng = random.Random(SEED_CHECKS)
    start = time.perf_counter()
    problems = []
    for _ in range(200):
        a = hs.random_series(rng, F5Z, -10, 10, 8)
        parts = hs.decompose([even, odd], a)
        evens = F5Z.series([(c, g) for c, g in a.terms if g % 2 == 0])
        odds = F5Z.series([(c, g) for c, g in a.terms if g % 2 == 1])
        if parts.components != (evens, odds):
            problems.append(f"parity split differs for {a}")
        elif a.terms and not hs.check_pseudo_direct_witness(a, parts):
            problems.append(f"split of {a} is not a witness")

    # rank-one counterexample: span{1 + t} against span{1} cannot split t
    gen1 = QZ.series([(1, 0), (1, 1)])
    gen2 = QZ.monomial(1, 0)
    a = QZ.monomial(1, 1)
    a1 = hs.SpanSubgroup("a1", (gen1,))
    a2 = hs.SpanSubgroup("a2", (gen2,))
    try:
        hs.decompose([a1, a2], a)
        problems.append("rank-one counterexample unexpectedly decomposed")
    except hs.NotPseudoDirect:
        pass
    grid = [Fraction(n, d) for n in range(-12, 13) for d in range(1, 9)]
    assert len(grid) ** 2 >= 10**4
    witnesses = sum(
        hs.check_pseudo_direct_witness(
            a, hs.ProductElement((gen1.scale(x), gen2.scale(y)))
        )
        for x in grid
        for y in grid
    )
    if witnesses:
        problems.append(f"{witnesses} grid tuples unexpectedly witness the split")
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 10.0)
    finish(
        7,
        "pseudo-direct decomposition",
        problems,
        f"200 parity splits, {len(grid) ** 2} grid tuples refused, in {elapsed:.2f}s",
    )


def test_criterion_08_nest_pullback():
    spec, section, value_map = hs.integration_instance(EULER)
    rng = random.Random(SEED_NESTS)
    start = time.perf_counter()
    problems = []
    total_balls = 0
    for _ in range(50):
        while True:
            balls = hs.random_nest(rng, QZ, depth=rng.randint(1, 20), forbid={0})
            if all(ball.radius != OV(0) for ball in balls):
                break
        total_balls += len(balls)
        domain_nest, witness = hs.pull_nest(spec, section, value_map, balls)
        image = spec.apply(witness)
        for ball in balls:
            if not ball.contains(image):
                problems.append(f"image misses target ball of radius {ball.radius!r}")
        for ball in domain_nest:
            if not ball.contains(witness):
                problems.append(f"witness outside pulled ball of radius {ball.radius!r}")
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 5.0)
    finish(
        8,
        "nest pullback",
        problems,
        f"50 nests, {total_balls} balls, witnesses verified in {elapsed:.2f}s",
    )


def enumerate_small_series():
    """Every series with at most 2 terms, exponents in [-5, 5], coeffs 1 or 2."""
    elements = [QZ.zero]
    for g in range(-5, 6):
        for c in (1, 2):
            elements.append(QZ.monomial(c, g))
    for g1 in range(-5, 6):
        for g2 in range(g1 + 1, 6):
            for c1 in (1, 2):
                for c2 in (1, 2):
                    elements.append(QZ.series([(c1, g1), (c2, g2)]))
    return elements


def test_criterion_09_quotient_valuation():
    alphas = [OV(-2), OV(0), OV(3)]
    elements = enumerate_small_series()
    start = time.perf_counter()
    problems = []
    checked = 0
    for alpha in alphas:
        kernel = hs.Ball(QZ, QZ.zero, alpha)
        for s in elements:
            quotient_zero = s.truncate(alpha).terms == ()
            if quotient_zero != (s.quotient_valuation(alpha) == INF):
                problems.append(f"definiteness fails at alpha {alpha!r} for {s}")
            if quotient_zero != kernel.contains(s):
                problems.append(f"kernel differs from the zero ball for {s}")
    values = [[s.quotient_valuation(alpha) for s in elements] for alpha in alphas]
    truncated = [[s.truncate(alpha) for s in elements] for alpha in alphas]
    for i, a in enumerate(elements):
        for j in range(i, len(elements)):
            b = elements[j]
            diff = a.sub(b)
            total = a.add(b)
            checked += 1
            for k, alpha in enumerate(alphas):
                qa, qb = values[k][i], values[k][j]
                qd = diff.quotient_valuation(alpha)
                lower = min(qa, qb)
                if qd < lower:
                    problems.append(f"quotient triangle law fails for {a}, {b}")
                elif qa != qb and qd != lower:
                    problems.append(f"sharp quotient equality fails for {a}, {b}")
                if total.truncate(alpha) != truncated[k][i].add(truncated[k][j]):
                    problems.append(f"truncation not additive for {a}, {b}")
    elapsed = time.perf_counter() - start
    check_budget(problems, elapsed, 5.0)
    finish(
        9,
        "quotient valuation",
        problems,
        f"{len(elements)} elements, {checked} pairs, 3 cutoffs in {elapsed:.2f}s",
    )


def test_criterion_10_cli_golden_outputs():
    problems = []
    for name, argv in GOLDEN_CASES.items():
        golden = (GOLDEN_DIR / name).read_text()
        first = run_cli(argv)
        second = run_cli(argv)
        if first != second:
            problems.append(f"{name}: output differs between runs")
        code, out, err = first
        if code != 0 or err:
            problems.append(f"{name}: exited {code} with stderr {err!r}")
        elif out != golden:
            problems.append(f"{name}: output differs from the committed golden file")
    finish(
        10,
        "CLI golden outputs",
        problems,
        f"{len(GOLDEN_CASES)} commands, 2 runs each, byte-compared",
    )
