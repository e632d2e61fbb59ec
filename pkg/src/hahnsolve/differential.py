"""Term-wise derivations on generalized power series and formal integration.

A term-wise derivation is a pair (d, sigma): the monomial ``c t^g`` maps to
``(c * d(g)) t^{sigma(g)}``, extended additively.  Two built-ins cover the
classical cases on integer or rational exponents:

    ddt    d(g) = g, sigma(g) = g - 1   (ordinary d/dt)
    euler  d(g) = g, sigma(g) = g       (t * d/dt)

Such a derivation is an additive homomorphism of the series group, so the
correction engine applies: integration solves ``D(a) = b`` with the section
oracle that inverts ``D`` on the leading monomial.  The oracle is total
exactly when the leading exponent has an admissible preimage under sigma; for
``ddt`` the exponent -1 has none (the classical logarithm obstruction), and
the failure is reported, not silently absorbed.

The distinguished solution subset is the series without constant term, which
meets the kernel of either built-in only in zero, making the solution unique
there.  Differential-valuation compatibility conditions are checked on
samples by pure value arithmetic; no series division is ever performed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import AmbiguousShift, Obstruction, ParseError, UnmappedValue
from .fields import CoefficientField, FieldElement
from .reporting import CheckReport
from .series import Series, SeriesSpace, make_series
from .solver import (
    DEFAULT_MAX_ITER,
    AsymptoticSection,
    HomomorphismSpec,
    SolveResult,
    ValueMap,
    solve,
)
from .valuegroups import (
    INFINITY,
    INTEGERS,
    RATIONALS,
    GroupElement,
    OrderedValue,
    ValueGroup,
)


@dataclass(frozen=True)
class TermwiseDerivation:
    """Additive map acting per term: ``c t^g -> (c * d(g)) t^{sigma(g)}``.

    ``shift_inverse(g)`` returns the unique exponent ``g'`` with
    ``sigma(g') = g`` and ``d(g') != 0``, or ``None`` when no admissible
    preimage exists; uniqueness is the constructor's burden (table-built
    derivations reject ambiguous shifts outright).  ``map_truncation``
    carries a precision bound through the derivation conservatively.
    """

    name: str
    scale: Callable[[GroupElement], FieldElement]
    shift: Callable[[GroupElement], GroupElement]
    shift_inverse: Callable[[GroupElement], GroupElement | None]
    map_truncation: Callable[[OrderedValue], OrderedValue]


def _unit_for(group: ValueGroup) -> GroupElement:
    if group == INTEGERS:
        return 1
    if group == RATIONALS:
        return Fraction(1)
    raise ValueError(f"derivation needs integer or rational exponents, got {group!r}")


def ddt(field: CoefficientField, group: ValueGroup) -> TermwiseDerivation:
    """Ordinary differentiation: ``c t^g -> (c g) t^{g-1}``."""
    one = _unit_for(group)

    def scale(g):
        return field.coerce(g)

    def shift_inverse(g):
        g2 = g + one
        return g2 if not field.is_zero(field.coerce(g2)) else None

    return TermwiseDerivation(
        name="ddt",
        scale=scale,
        shift=lambda g: g - one,
        shift_inverse=shift_inverse,
        map_truncation=lambda t: OrderedValue(t.finite - one),
    )


def euler(field: CoefficientField, group: ValueGroup) -> TermwiseDerivation:
    """Euler operator ``t * d/dt``: ``c t^g -> (c g) t^g``."""
    _unit_for(group)

    def shift_inverse(g):
        return g if not field.is_zero(field.coerce(g)) else None

    return TermwiseDerivation(
        name="euler",
        scale=lambda g: field.coerce(g),
        shift=lambda g: g,
        shift_inverse=shift_inverse,
        map_truncation=lambda t: t,
    )


def from_tables(
    field: CoefficientField,
    group: ValueGroup,
    scale_table: dict[GroupElement, FieldElement],
    shift_table: dict[GroupElement, GroupElement] | None = None,
    name: str = "table",
) -> TermwiseDerivation:
    """Derivation from finite tables; ``d`` is zero off-table, ``sigma`` the
    identity off-table.

    Rejected at construction when the shift is not injective on the exponents
    that survive (``d != 0``): an ambiguous shift would leave the leading-term
    inverse ill defined.
    """
    shift_table = dict(shift_table or {})
    scale_table = dict(scale_table)
    live = {g for g, c in scale_table.items() if not field.is_zero(c)}
    inverse: dict[GroupElement, GroupElement] = {}
    for g in live:
        image = shift_table.get(g, g)
        if image in inverse:
            raise AmbiguousShift(image)
        inverse[image] = g

    def map_truncation(t: OrderedValue) -> OrderedValue:
        # Unknown terms sit at exponents >= t; only table entries there can
        # contribute, so the least of their images bounds the unknown output.
        images = [
            OrderedValue(shift_table.get(g, g))
            for g in live
            if not OrderedValue(g) < t
        ]
        return min(images) if images else INFINITY

    return TermwiseDerivation(
        name=name,
        scale=lambda g: scale_table.get(g, field.zero),
        shift=lambda g: shift_table.get(g, g),
        shift_inverse=inverse.get,
        map_truncation=map_truncation,
    )


@dataclass(frozen=True)
class DifferentialFieldSpec:
    """A coefficient field, exponent group and derivation bundled together.

    Requires ``d(0) = 0`` so that plain constants are constants of the
    derivation; whether they exhaust the constants is checked on samples
    elsewhere, never assumed.
    """

    field: CoefficientField
    group: ValueGroup
    derivation: TermwiseDerivation

    def __post_init__(self):
        if not self.field.is_zero(self.derivation.scale(self.group.zero)):
            raise ValueError("derivation must annihilate constants: d(0) != 0")

    @property
    def space(self) -> SeriesSpace:
        return SeriesSpace(self.field, self.group)


def derive(derivation: TermwiseDerivation, s: Series) -> Series:
    """Apply the derivation to every term; precision carried conservatively."""
    terms = [
        (s.field.mul(c, derivation.scale(g)), derivation.shift(g)) for c, g in s.terms
    ]
    truncation = (
        INFINITY if s.truncation.is_infinite else derivation.map_truncation(s.truncation)
    )
    return make_series(s.field, s.group, terms, truncation)


def has_no_constant_term(s: Series) -> bool:
    return all(s.group.compare(g, s.group.zero) != 0 for g in s.support)


def asymptotic_section(dspec: DifferentialFieldSpec, b: Series) -> Series:
    """The exact monomial whose derivative matches the leading term of ``b``.

    Subtracting its derivative strictly raises the residual's value.  Raises
    ``Obstruction`` naming the leading exponent when no admissible preimage
    exists under the shift.
    """
    c, g = b.leading_term()
    g2 = dspec.derivation.shift_inverse(g)
    if g2 is None:
        raise Obstruction(g)
    coeff = dspec.field.div(c, dspec.derivation.scale(g2))
    return make_series(dspec.field, dspec.group, [(coeff, g2)], INFINITY)


def integration_instance(
    dspec: DifferentialFieldSpec,
) -> tuple[HomomorphismSpec, AsymptoticSection, ValueMap]:
    """Solver instance for ``D(a) = b`` on series without constant term."""
    space = dspec.space
    derivation = dspec.derivation
    spec = HomomorphismSpec(
        domain=space, codomain=space, apply=lambda s: derive(derivation, s)
    )
    section = AsymptoticSection(
        section=lambda b: asymptotic_section(dspec, b),
        contains=has_no_constant_term,
    )

    def admissible(v: OrderedValue) -> bool:
        return (
            not v.is_infinite
            and dspec.group.compare(v.finite, dspec.group.zero) != 0
            and not dspec.field.is_zero(derivation.scale(v.finite))
        )

    def forward(v: OrderedValue) -> OrderedValue:
        return v if v.is_infinite else OrderedValue(derivation.shift(v.finite))

    def inverse(w: OrderedValue) -> OrderedValue:
        if w.is_infinite:
            raise UnmappedValue("the top value has no finite preimage")
        g2 = derivation.shift_inverse(w.finite)
        if g2 is None:
            raise UnmappedValue(f"no achieved value maps onto {w.finite!r}")
        return OrderedValue(g2)

    value_map = ValueMap(forward=forward, inverse=inverse, domain_contains=admissible)
    return spec, section, value_map


def integrate(
    dspec: DifferentialFieldSpec,
    b: Series,
    precision: OrderedValue = INFINITY,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SolveResult:
    """Solve ``D(a) = b`` for ``a`` without constant term, to ``precision``."""
    spec, section, _ = integration_instance(dspec)
    return solve(spec, section, b, precision=precision, max_iter=max_iter)


def termwise_integral_oracle(dspec: DifferentialFieldSpec, b: Series) -> Series:
    """Independent ground truth: antidifferentiate every term at once.

    Only defined for exact input with every exponent unobstructed; raises
    ``Obstruction`` on the first exponent without an admissible preimage.
    """
    if not b.is_exact:
        raise ValueError("term-wise oracle needs an exact series")
    derivation = dspec.derivation
    terms = []
    for c, g in b.terms:
        g2 = derivation.shift_inverse(g)
        if g2 is None:
            raise Obstruction(g)
        terms.append((dspec.field.div(c, derivation.scale(g2)), g2))
    return make_series(dspec.field, dspec.group, terms, INFINITY)


# -- differential-valuation compatibility checks ---------------------------


def check_differential_valuation(
    dspec: DifferentialFieldSpec, pairs: Sequence[tuple[Series, Series]]
) -> CheckReport:
    """For samples a (value >= 0) and b (value > 0): v(b) + v(Da) - v(Db) > 0.

    This is the no-division reading of "the derivative of a small element
    stays small relative to b"; pairs with ``Da = 0`` are vacuous (the
    quantity is formally the top value) and counted as skipped.  ``Db = 0``
    makes the condition fail outright and is flagged.
    """
    group = dspec.group
    violations = []
    skipped = 0
    checked = 0
    for a, b in pairs:
        checked += 1
        da = derive(dspec.derivation, a)
        db = derive(dspec.derivation, b)
        vda = da.valuation()
        if vda.is_infinite:
            skipped += 1
            continue
        vdb = db.valuation()
        if vdb.is_infinite:
            violations.append("derivative of the comparison element vanishes")
            continue
        vb = b.valuation()
        margin = group.sub(group.add(vb.finite, vda.finite), vdb.finite)
        if group.compare(margin, group.zero) <= 0:
            violations.append(
                f"v(b)+v(Da)-v(Db) = {group.format(margin)} is not positive"
            )
    return CheckReport("differential_valuation", checked, tuple(violations), skipped)


def check_derivative_monotonicity(
    dspec: DifferentialFieldSpec, pairs: Sequence[tuple[Series, Series]]
) -> CheckReport:
    """For nonzero samples with nonzero values: v(a) <= v(b) iff v(Da) <= v(Db)."""
    violations = []
    checked = 0
    for a, b in pairs:
        checked += 1
        va, vb = a.valuation(), b.valuation()
        vda = derive(dspec.derivation, a).valuation()
        vdb = derive(dspec.derivation, b).valuation()
        if (va <= vb) != (vda <= vdb):
            violations.append(
                f"v(a)={va!r}, v(b)={vb!r} but v(Da)={vda!r}, v(Db)={vdb!r}"
            )
    return CheckReport("derivative_monotonicity", checked, tuple(violations))


def check_leibniz(
    dspec: DifferentialFieldSpec, pairs: Sequence[tuple[Series, Series]]
) -> CheckReport:
    """Product rule ``D(ab) = a D(b) + D(a) b`` on exact sample pairs."""
    space = dspec.space
    violations = []
    checked = 0
    for a, b in pairs:
        checked += 1
        lhs = derive(dspec.derivation, a.mul(b))
        rhs = a.mul(derive(dspec.derivation, b)).add(derive(dspec.derivation, a).mul(b))
        if not space.eq(lhs, rhs):
            violations.append(f"product rule fails for v(a)={a.valuation()!r}")
    return CheckReport("leibniz_rule", checked, tuple(violations))


# -- derivation selector strings (CLI / config surface) --------------------


def parse_derivation(
    field: CoefficientField, group: ValueGroup, selector: str
) -> TermwiseDerivation:
    """Build a derivation from a selector string.

    ``ddt`` and ``euler`` name the built-ins.  Custom derivations use
    ``d:<g>=<c>,...;sigma:<g>=<g'>,...`` with finite tables; the sigma part
    is optional and defaults to the identity.
    """
    from .parsing import _split_top_level, parse_coefficient

    selector = selector.strip()
    if selector == "ddt":
        return ddt(field, group)
    if selector == "euler":
        return euler(field, group)
    if not selector.startswith("d:"):
        raise ParseError(
            f"unknown derivation {selector!r} (want ddt, euler, or d:...;sigma:...)"
        )
    scale_table: dict[GroupElement, FieldElement] = {}
    shift_table: dict[GroupElement, GroupElement] = {}
    for part in selector.split(";"):
        part = part.strip()
        if part.startswith("d:"):
            for entry in _split_top_level(part[2:], ","):
                g_text, _, c_text = entry.partition("=")
                scale_table[group.parse(g_text)] = parse_coefficient(field, c_text)
        elif part.startswith("sigma:"):
            for entry in _split_top_level(part[6:], ","):
                g_text, _, g2_text = entry.partition("=")
                shift_table[group.parse(g_text)] = group.parse(g2_text)
        else:
            raise ParseError(f"bad derivation table section {part!r}")
    return from_tables(field, group, scale_table, shift_table, name="custom")
