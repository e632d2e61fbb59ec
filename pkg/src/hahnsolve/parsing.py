"""Text and JSON round-trip for series.

Grammar (whitespace insignificant):

    series := term ('+' term)* | '0'
    term   := coeff '*' 't^' exp | 't^' exp | coeff
    coeff  := integer | integer '/' positive-integer
    exp    := value-group element, e.g. -3, 5/2, (1,-2)

A trailing ``+ O(exp)`` sets the truncation bound.  The printer emits a
canonical form: terms ascending, a unit coefficient dropped before ``t^``,
exponent-zero terms printed as bare coefficients, and the bound last.  Every
printed series re-parses to an equal series.
"""

from __future__ import annotations

import json
import re

from .errors import ParseError
from .fields import CoefficientField
from .series import Series, make_series
from .valuegroups import INFINITY, OrderedValue, ValueGroup

_COEFF_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside any parentheses or braces."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append(text[start:])
    return parts


def parse_coefficient(field: CoefficientField, text: str):
    text = text.strip()
    if not _COEFF_RE.match(text):
        raise ParseError(f"bad coefficient {text!r} (want integer or integer/positive-integer)")
    return field.parse(text)


def parse_series(field: CoefficientField, group: ValueGroup, text: str) -> Series:
    """Parse the series grammar; raises ``ParseError`` on any deviation."""
    if not text.strip():
        raise ParseError("empty series text")
    terms = []
    truncation = INFINITY
    tokens = _split_top_level(text, "+")
    for i, raw in enumerate(tokens):
        tok = raw.strip()
        if not tok:
            raise ParseError(f"empty term in {text!r}")
        if tok.startswith("O(") and tok.endswith(")"):
            if i != len(tokens) - 1:
                raise ParseError("truncation bound must be the last term")
            truncation = OrderedValue(group.parse(tok[2:-1]))
            continue
        terms.append(_parse_term(field, group, tok))
    return make_series(field, group, terms, truncation)


def _parse_term(field: CoefficientField, group: ValueGroup, tok: str):
    if "t^" in tok:
        head, _, exp_text = tok.partition("t^")
        head = head.strip()
        if head == "":
            coeff = field.one
        elif head.endswith("*"):
            coeff = parse_coefficient(field, head[:-1])
        else:
            raise ParseError(f"bad term {tok!r} (want coeff*t^exp or t^exp)")
        if not exp_text.strip():
            raise ParseError(f"missing exponent in {tok!r}")
        return (coeff, group.parse(exp_text))
    return (parse_coefficient(field, tok), group.zero)


def series_to_text(s: Series) -> str:
    parts = [_term_text(s, c, g) for c, g in s.terms]
    if not parts:
        parts = ["0"]
    if not s.truncation.is_infinite:
        parts.append(f"O({s.group.format(s.truncation.finite)})")
    return " + ".join(parts)


def _term_text(s: Series, coeff, exponent) -> str:
    if s.group.compare(exponent, s.group.zero) == 0:
        return s.field.format(coeff)
    body = f"t^{s.group.format(exponent)}"
    if coeff == s.field.one:
        return body
    return f"{s.field.format(coeff)}*{body}"


def series_to_json_dict(s: Series) -> dict:
    return {
        "terms": [[s.field.format(c), s.group.format(g)] for c, g in s.terms],
        "truncation": "inf" if s.truncation.is_infinite else s.group.format(s.truncation.finite),
    }


def series_from_json_dict(field: CoefficientField, group: ValueGroup, data: dict) -> Series:
    try:
        raw_terms = data["terms"]
        raw_trunc = data["truncation"]
    except (TypeError, KeyError) as e:
        raise ParseError(f"series JSON needs 'terms' and 'truncation': {e}") from None
    truncation = INFINITY if raw_trunc == "inf" else OrderedValue(group.parse(raw_trunc))
    terms = []
    for entry in raw_terms:
        if len(entry) != 2:
            raise ParseError(f"series JSON term must be [coeff, exp], got {entry!r}")
        terms.append((field.parse(entry[0]), group.parse(entry[1])))
    return make_series(field, group, terms, truncation)


def series_to_json(s: Series) -> str:
    return json.dumps(series_to_json_dict(s), separators=(", ", ": "))


def series_from_json(field: CoefficientField, group: ValueGroup, text: str) -> Series:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad series JSON: {e}") from None
    return series_from_json_dict(field, group, data)
