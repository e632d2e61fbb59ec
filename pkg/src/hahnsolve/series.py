"""Generalized power series with exact coefficients and a precision cutoff.

A series is a finite sorted list of nonzero terms ``c * t^g`` with exponents
in an ordered value group, together with a truncation bound: coefficients at
exponents with value at or above the bound are unknown.  An infinite bound
means the series is exact.  Truncating at ``alpha`` is the quotient map onto
the group modulo the ball of radius ``alpha`` around zero, so precision is an
algebraic notion here, not a floating-point afterthought.

The canonical valuation of a series is the least exponent of its support.  A
series with empty support and a finite bound has no determined valuation; the
element is only known to lie in the ball of radius ``truncation`` around zero,
and asking for its valuation raises ``IndeterminateValuation`` carrying that
lower bound.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import EmptySupport, IndeterminateValuation
from .fields import CoefficientField, FieldElement
from .ultrametric import ValuedGroup
from .valuegroups import (
    INFINITY,
    GroupElement,
    OrderedValue,
    ValueGroup,
    ov_add,
)


class Term(NamedTuple):
    coefficient: FieldElement
    exponent: GroupElement


@dataclass(frozen=True)
class Series:
    """Finite-support series over ``field`` with exponents in ``group``.

    Invariants: no stored coefficient is zero, every stored exponent has value
    strictly below ``truncation``, and exponents are strictly ascending.
    Construct through ``make_series`` (or the ``SeriesSpace`` helpers), which
    normalizes arbitrary term lists; the constructor only validates.
    """

    field: CoefficientField
    group: ValueGroup
    terms: tuple[Term, ...]
    truncation: OrderedValue = INFINITY

    def __post_init__(self):
        prev = None
        for t in self.terms:
            if self.field.is_zero(t.coefficient):
                raise ValueError(f"zero coefficient stored at exponent {t.exponent!r}")
            if not OrderedValue(t.exponent) < self.truncation:
                raise ValueError(f"exponent {t.exponent!r} at or above truncation")
            if prev is not None and self.group.compare(prev, t.exponent) >= 0:
                raise ValueError("exponents not strictly ascending")
            prev = t.exponent

    # -- structure ---------------------------------------------------------

    @property
    def support(self) -> tuple[GroupElement, ...]:
        return tuple(t.exponent for t in self.terms)

    @property
    def is_exact(self) -> bool:
        return self.truncation.is_infinite

    def coefficient(self, exponent: GroupElement) -> FieldElement:
        for t in self.terms:
            if self.group.compare(t.exponent, exponent) == 0:
                return t.coefficient
        return self.field.zero

    def valuation(self) -> OrderedValue:
        if self.terms:
            return OrderedValue(self.terms[0].exponent)
        if self.truncation.is_infinite:
            return INFINITY
        raise IndeterminateValuation(
            "series is zero to its precision; valuation only bounded below",
            bound=self.truncation,
        )

    def valuation_lower_bound(self) -> OrderedValue:
        """Greatest lower bound the data certifies for the valuation."""
        try:
            return self.valuation()
        except IndeterminateValuation as e:
            return e.bound

    def leading_term(self) -> Term:
        if not self.terms:
            raise EmptySupport("series has no determined terms")
        return self.terms[0]

    # -- arithmetic --------------------------------------------------------

    def _like(self, other: "Series") -> None:
        if self.field != other.field or self.group != other.group:
            raise ValueError("series live over different fields or value groups")

    def add(self, other: "Series") -> "Series":
        self._like(other)
        return make_series(
            self.field,
            self.group,
            tuple(self.terms) + tuple(other.terms),
            min(self.truncation, other.truncation),
        )

    def neg(self) -> "Series":
        return Series(
            self.field,
            self.group,
            tuple(Term(self.field.neg(c), g) for c, g in self.terms),
            self.truncation,
        )

    def sub(self, other: "Series") -> "Series":
        return self.add(other.neg())

    def scale(self, c: FieldElement) -> "Series":
        return make_series(
            self.field,
            self.group,
            tuple(Term(self.field.mul(c, t.coefficient), t.exponent) for t in self.terms),
            self.truncation,
        )

    def mul(self, other: "Series") -> "Series":
        self._like(other)
        products = tuple(
            Term(self.field.mul(c1, c2), self.group.add(g1, g2))
            for c1, g1 in self.terms
            for c2, g2 in other.terms
        )
        return make_series(self.field, self.group, products, self._mul_truncation(other))

    def _mul_truncation(self, other: "Series") -> OrderedValue:
        # Each factor's unknown tail enters the product at value at least
        # trunc(side) + v(other side); an exact factor contributes no tail.
        sides = []
        if not self.truncation.is_infinite:
            sides.append(ov_add(self.group, self.truncation, other.valuation()))
        if not other.truncation.is_infinite:
            sides.append(ov_add(self.group, other.truncation, self.valuation()))
        return min(sides) if sides else INFINITY

    # -- precision ---------------------------------------------------------

    def truncate(self, alpha: OrderedValue) -> "Series":
        """Quotient map modulo the ball of radius ``alpha`` around zero."""
        return make_series(
            self.field, self.group, self.terms, min(self.truncation, alpha)
        )

    def quotient_valuation(self, alpha: OrderedValue) -> OrderedValue:
        """Valuation induced on the quotient modulo the radius-``alpha`` ball.

        The class of ``s`` gets value ``v(s)`` when that lies below ``alpha``
        and the top value otherwise (the class is zero in the quotient).  The
        answer only needs the valuation's lower bound, so classes that are
        zero at sufficient precision are decided without an exact valuation.
        """
        try:
            v = self.valuation()
        except IndeterminateValuation as e:
            if e.bound >= alpha:
                return INFINITY
            raise
        return v if v < alpha else INFINITY

    def __str__(self) -> str:
        from .parsing import series_to_text

        return series_to_text(self)


def make_series(
    field: CoefficientField,
    group: ValueGroup,
    terms: Iterable[tuple[FieldElement, GroupElement]],
    truncation: OrderedValue = INFINITY,
) -> Series:
    """Normalize a raw term list into a valid ``Series``.

    Duplicate exponents are summed, zero coefficients dropped, and terms at or
    above the truncation bound discarded.
    """
    acc: dict[GroupElement, FieldElement] = {}
    for c, g in terms:
        acc[g] = field.add(acc[g], c) if g in acc else c
    kept = [
        Term(c, g)
        for g, c in acc.items()
        if not field.is_zero(c) and OrderedValue(g) < truncation
    ]
    kept.sort(key=functools.cmp_to_key(lambda s, t: group.compare(s.exponent, t.exponent)))
    return Series(field, group, tuple(kept), truncation)


@dataclass(frozen=True)
class SeriesSpace(ValuedGroup):
    """The valued additive group of series over a fixed field and value group."""

    field: CoefficientField
    group: ValueGroup

    @property
    def zero(self) -> Series:
        return Series(self.field, self.group, ())

    def add(self, a: Series, b: Series) -> Series:
        return a.add(b)

    def neg(self, a: Series) -> Series:
        return a.neg()

    def valuation(self, a: Series) -> OrderedValue:
        return a.valuation()

    def monomial(
        self, coefficient, exponent: GroupElement, truncation: OrderedValue = INFINITY
    ) -> Series:
        return make_series(
            self.field, self.group, [(self._coeff(coefficient), exponent)], truncation
        )

    def series(
        self,
        pairs: Iterable[tuple[FieldElement, GroupElement]],
        truncation: OrderedValue = INFINITY,
    ) -> Series:
        """Build from (coefficient, exponent) pairs; int/Fraction coefficients
        are coerced into the field."""
        return make_series(
            self.field,
            self.group,
            [(self._coeff(c), g) for c, g in pairs],
            truncation,
        )

    def _coeff(self, c) -> FieldElement:
        if isinstance(c, (int, Fraction)):
            return self.field.coerce(c)
        return c
