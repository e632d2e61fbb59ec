"""Totally ordered abelian value groups and values with an adjoined top element.

Built-in groups: integers, rationals, and lexicographic pairs (left dominant).
Group elements are plain Python values (``int``, ``Fraction``, nested tuples)
whose native ordering agrees with the group order, so values stay hashable and
cheap to compare.
"""

from __future__ import annotations

import functools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import ParseError

GroupElement = Any


class ValueGroup(ABC):
    """Ordered abelian group contract: add/neg/compare plus text round-trip."""

    name: str

    @property
    @abstractmethod
    def zero(self) -> GroupElement: ...

    @abstractmethod
    def add(self, a: GroupElement, b: GroupElement) -> GroupElement: ...

    @abstractmethod
    def neg(self, a: GroupElement) -> GroupElement: ...

    @abstractmethod
    def compare(self, a: GroupElement, b: GroupElement) -> int:
        """-1, 0 or +1; a total order, translation invariant."""

    @abstractmethod
    def parse(self, text: str) -> GroupElement: ...

    @abstractmethod
    def format(self, a: GroupElement) -> str: ...

    def sub(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.add(a, self.neg(b))

    def __repr__(self):
        return self.name


def _cmp(a, b) -> int:
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


@dataclass(frozen=True, repr=False)
class IntegerGroup(ValueGroup):
    name = "int"

    @property
    def zero(self):
        return 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def compare(self, a, b):
        return _cmp(a, b)

    def parse(self, text):
        try:
            return int(text.strip())
        except ValueError:
            raise ParseError(f"not an integer exponent: {text!r}") from None

    def format(self, a):
        return str(a)


@dataclass(frozen=True, repr=False)
class RationalGroup(ValueGroup):
    name = "rat"

    @property
    def zero(self):
        return Fraction(0)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def compare(self, a, b):
        return _cmp(a, b)

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational exponent: {text!r}") from None

    def format(self, a):
        return str(a)


@dataclass(frozen=True, repr=False)
class LexPair(ValueGroup):
    """Product of two value groups ordered lexicographically, left dominant."""

    left: ValueGroup
    right: ValueGroup

    @property
    def name(self):
        return f"lex({self.left.name},{self.right.name})"

    @property
    def zero(self):
        return (self.left.zero, self.right.zero)

    def add(self, a, b):
        return (self.left.add(a[0], b[0]), self.right.add(a[1], b[1]))

    def neg(self, a):
        return (self.left.neg(a[0]), self.right.neg(a[1]))

    def compare(self, a, b):
        c = self.left.compare(a[0], b[0])
        return c if c != 0 else self.right.compare(a[1], b[1])

    def parse(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError(f"lex pair must be parenthesised: {text!r}")
        inner = text[1:-1]
        depth = 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                return (self.left.parse(inner[:i]), self.right.parse(inner[i + 1 :]))
        raise ParseError(f"lex pair needs a top-level comma: {text!r}")

    def format(self, a):
        return f"({self.left.format(a[0])},{self.right.format(a[1])})"


INTEGERS = IntegerGroup()
RATIONALS = RationalGroup()
LEX2 = LexPair(INTEGERS, INTEGERS)


@functools.total_ordering
@dataclass(frozen=True)
class OrderedValue:
    """An element of a value group, or the adjoined top element.

    ``finite`` is ``None`` exactly for the top element, which compares strictly
    greater than every group value.
    """

    finite: GroupElement | None = None

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    def __lt__(self, other: "OrderedValue") -> bool:
        return ov_compare(self, other) < 0

    def __repr__(self):
        return "OrderedValue(inf)" if self.is_infinite else f"OrderedValue({self.finite!r})"


INFINITY = OrderedValue(None)


def finite(g: GroupElement) -> OrderedValue:
    return OrderedValue(g)


def ov_compare(x: OrderedValue, y: OrderedValue) -> int:
    """Total order on values with the top element maximal: -1, 0 or +1."""
    if x.is_infinite:
        return 0 if y.is_infinite else 1
    if y.is_infinite:
        return -1
    return _cmp(x.finite, y.finite)


def ov_add(group: ValueGroup, x: OrderedValue, y: OrderedValue) -> OrderedValue:
    """Sum of values; absorbing on the top element."""
    if x.is_infinite or y.is_infinite:
        return INFINITY
    return OrderedValue(group.add(x.finite, y.finite))


def ov_parse(group: ValueGroup, text: str) -> OrderedValue:
    text = text.strip()
    if text == "inf":
        return INFINITY
    return OrderedValue(group.parse(text))


def ov_format(group: ValueGroup, x: OrderedValue) -> str:
    return "inf" if x.is_infinite else group.format(x.finite)


_GROUPS = {"int": INTEGERS, "rat": RATIONALS, "lex2": LEX2}


def group_by_name(name: str) -> ValueGroup:
    try:
        return _GROUPS[name]
    except KeyError:
        raise ParseError(f"unknown value group {name!r} (choose from {sorted(_GROUPS)})") from None
