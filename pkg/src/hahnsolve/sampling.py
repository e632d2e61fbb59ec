"""Seeded random generators for exponents, series, balls and nests.

Everything takes an explicit ``random.Random`` so runs are reproducible from
a seed; nothing touches global random state.  Exponent windows are inclusive
integer ranges, stretched appropriately for rational and lexicographic value
groups.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Collection

from .fields import CoefficientField, PrimeField
from .series import Series, SeriesSpace
from .ultrametric import Ball
from .valuegroups import (
    INFINITY,
    INTEGERS,
    RATIONALS,
    GroupElement,
    LexPair,
    OrderedValue,
    ValueGroup,
)

Forbid = Callable[[GroupElement], bool] | Collection[GroupElement] | None


def _forbidden(forbid: Forbid) -> Callable[[GroupElement], bool]:
    if forbid is None:
        return lambda _g: False
    if callable(forbid):
        return forbid
    members = set(forbid)
    return lambda g: g in members


def random_coefficient(rng: random.Random, field: CoefficientField, nonzero: bool = False):
    if isinstance(field, PrimeField):
        return rng.randrange(1 if nonzero else 0, field.p)
    while True:
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if c or not nonzero:
            return c


def random_exponent(
    rng: random.Random, group: ValueGroup, lo: int = -10, hi: int = 10
) -> GroupElement:
    if group == INTEGERS:
        return rng.randint(lo, hi)
    if group == RATIONALS:
        den = rng.choice([1, 2, 3, 4])
        return Fraction(rng.randint(lo * den, hi * den), den)
    if isinstance(group, LexPair):
        return (
            random_exponent(rng, group.left, lo, hi),
            random_exponent(rng, group.right, lo, hi),
        )
    raise ValueError(f"no exponent sampler for group {group!r}")


def random_positive(rng: random.Random, group: ValueGroup) -> GroupElement:
    """A strictly positive group element, for growing radii and offsets."""
    if group == INTEGERS:
        return rng.randint(1, 3)
    if group == RATIONALS:
        return Fraction(rng.randint(1, 6), rng.choice([1, 2, 3]))
    if isinstance(group, LexPair):
        if rng.random() < 0.3:
            return (random_positive(rng, group.left), random_exponent(rng, group.right, -2, 2))
        return (group.left.zero, random_positive(rng, group.right))
    raise ValueError(f"no positive sampler for group {group!r}")


def random_series(
    rng: random.Random,
    space: SeriesSpace,
    lo: int = -10,
    hi: int = 10,
    max_terms: int = 8,
    truncation: OrderedValue = INFINITY,
    nonzero: bool = False,
    forbid: Forbid = None,
) -> Series:
    """Random series with support drawn from the window, skipping forbidden
    exponents; resamples until nonempty when ``nonzero`` is set."""
    banned = _forbidden(forbid)
    for _ in range(200):
        count = rng.randint(1 if nonzero else 0, max_terms)
        terms = []
        for _ in range(count):
            g = random_exponent(rng, space.group, lo, hi)
            if banned(g):
                continue
            terms.append((random_coefficient(rng, space.field, nonzero=True), g))
        s = space.series(terms, truncation)
        if s.terms or not nonzero:
            return s
    raise RuntimeError("window and constraints left no nonzero series to sample")


def random_ball(
    rng: random.Random,
    space: SeriesSpace,
    lo: int = -5,
    hi: int = 5,
    max_terms: int = 5,
    forbid: Forbid = None,
) -> Ball:
    center = random_series(rng, space, lo, hi, max_terms, forbid=forbid)
    return Ball(space, center, OrderedValue(random_exponent(rng, space.group, lo, hi)))


def random_nest(
    rng: random.Random,
    space: SeriesSpace,
    depth: int = 3,
    lo: int = -5,
    hi: int = 5,
    max_terms: int = 4,
    forbid: Forbid = None,
) -> list[Ball]:
    """A strictly shrinking chain of balls, largest first.

    Each successive center perturbs the previous one only at or above the
    current radius, so membership is preserved while radii strictly grow.
    """
    if depth < 1:
        raise ValueError("a nest needs at least one ball")
    banned = _forbidden(forbid)
    group = space.group
    radius = random_exponent(rng, group, lo, hi)
    center = random_series(rng, space, lo, hi, max_terms, forbid=forbid)
    balls = [Ball(space, center, OrderedValue(radius))]
    for _ in range(depth - 1):
        delta_terms = []
        for _ in range(rng.randint(0, max_terms)):
            g = radius
            for _ in range(rng.randint(0, 3)):
                g = group.add(g, random_positive(rng, group))
            if banned(g):
                continue
            delta_terms.append((random_coefficient(rng, space.field, nonzero=True), g))
        center = center.add(space.series(delta_terms))
        radius = group.add(radius, random_positive(rng, group))
        balls.append(Ball(space, center, OrderedValue(radius)))
    return balls
