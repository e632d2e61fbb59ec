#!/usr/bin/env python3
"""Walk through the correction solver on five worked problems.

Each run prints its correction trace so the strictly rising residual value
is visible: an exact antiderivative under t*d/dt, a solve against a target
known only up to a precision bound, the d/dt obstruction at exponent -1, an
even/odd split over GF(5), and a nest pullback whose witness lands in every
target ball.  Output is deterministic and takes no arguments.
"""

import sys

from hahnsolve import (
    INTEGERS,
    Ball,
    DifferentialFieldSpec,
    Obstruction,
    OrderedValue,
    PrimeField,
    QQ,
    SeriesSpace,
    check_pseudo_direct_witness,
    ddt,
    decompose_solve,
    derive,
    euler,
    integrate,
    integration_instance,
    ov_format,
    parse_series,
    parse_subgroup,
    pull_nest,
    series_to_text,
)

SPACE = SeriesSpace(QQ, INTEGERS)


def value_str(v: OrderedValue) -> str:
    return ov_format(INTEGERS, v)


def show_trace(result) -> None:
    for step in result.trace:
        print(
            f"  step {step.iteration}: add {series_to_text(step.term)}"
            f"  (residual value now {value_str(step.residual_value)})"
        )
    print(
        f"  solution {series_to_text(result.solution)}"
        f"  [exact={result.exact}, residual value {value_str(result.residual_value)}]"
    )


def exact_antiderivative() -> None:
    print("1. t*d/dt, exact target: solve t*a' = b")
    dspec = DifferentialFieldSpec(QQ, INTEGERS, euler(QQ, INTEGERS))
    b = parse_series(QQ, INTEGERS, "3*t^-2 + 2*t^1 + t^5")
    result = integrate(dspec, b)
    show_trace(result)
    echo = derive(dspec.derivation, result.solution)
    print(f"  check: applying t*d/dt gives back {series_to_text(echo)}")


def blurred_target() -> None:
    print("2. t*d/dt, target known only below exponent 4")
    dspec = DifferentialFieldSpec(QQ, INTEGERS, euler(QQ, INTEGERS))
    b = parse_series(QQ, INTEGERS, "5*t^-1 + 3*t^2 + O(4)")
    result = integrate(dspec, b, precision=OrderedValue(4))
    show_trace(result)
    print("  requested precision matches the target's certainty bound; asking")
    print("  for more would be refused, since the data cannot support it")


def obstructed_exponent() -> None:
    print("3. d/dt: no term differentiates onto exponent -1")
    dspec = DifferentialFieldSpec(QQ, INTEGERS, ddt(QQ, INTEGERS))
    b = parse_series(QQ, INTEGERS, "4*t^3 + t^-1")
    try:
        integrate(dspec, b)
    except Obstruction as e:
        print(f"  refused: {e}")
        print(f"  residual at failure: {series_to_text(e.residual)}")


def parity_split() -> None:
    print("4. even/odd split over GF(5)")
    field = PrimeField(5)
    parts = [
        parse_subgroup(field, INTEGERS, "even"),
        parse_subgroup(field, INTEGERS, "odd"),
    ]
    a = parse_series(field, INTEGERS, "t^2 + 3*t^3 + 2*t^6")
    result = decompose_solve(parts, a)
    for sub, s in zip(parts, result.solution.components):
        print(f"  {sub.name} part: {series_to_text(s)}")
    verdict = "holds" if check_pseudo_direct_witness(a, result.solution) else "FAILS"
    print(f"  minimum-valuation witness {verdict} after {result.iterations} steps")


def nest_pullback() -> None:
    print("5. pull a nest of balls back through t*d/dt")
    dspec = DifferentialFieldSpec(QQ, INTEGERS, euler(QQ, INTEGERS))
    spec, section, vmap = integration_instance(dspec)
    targets = [
        Ball(SPACE, SPACE.zero, OrderedValue(1)),
        Ball(SPACE, parse_series(QQ, INTEGERS, "2*t^2"), OrderedValue(3)),
    ]
    pulled, witness = pull_nest(spec, section, vmap, targets)
    for ball in pulled.balls:
        print(
            f"  preimage ball: center {series_to_text(ball.center)},"
            f" radius {value_str(ball.radius)}"
        )
    image = spec.apply(witness)
    print(f"  witness {series_to_text(witness)} maps to {series_to_text(image)}")
    inside = all(ball.contains(image) for ball in targets)
    print(f"  image lies in every target ball: {inside}")


if __name__ == "__main__":
    for part in (
        exact_antiderivative,
        blurred_target,
        obstructed_exponent,
        parity_split,
        nest_pullback,
    ):
        part()
        print()
    sys.exit(0)
