"""
Exact multivariate polynomials with rational coefficients.

A MultiPoly is a sparse map from monomials to nonzero Fractions. Monomials
are tuples of ``(variable, exponent)`` pairs sorted by variable name, so two
polynomials are equal exactly when their maps are equal. Terms are listed in
graded-lexicographic order (total degree first, then exponent vectors over
the sorted variable names).

gcd and exact division go through sympy's multivariate machinery over QQ.
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy import QQ, Poly, Rational, Symbol
from sympy.polys.polyerrors import ExactQuotientFailed

from core.errors import DomainError, UsageError

Monomial = Tuple[Tuple[str, int], ...]
Coefficient = Union[int, Fraction]


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps: Dict[str, int] = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


class MultiPoly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        accumulated: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            key = tuple(sorted((name, e) for name, e in mono if e))
            if any(e < 0 for _, e in key):
                raise UsageError(f"Negative exponent in monomial {mono}")
            accumulated[key] = accumulated.get(key, Fraction(0)) + Fraction(coeff)
        self._terms: Dict[Monomial, Fraction] = {m: c for m, c in accumulated.items() if c != 0}
        self._hash: Optional[int] = None

    @classmethod
    def constant(cls, value: Coefficient) -> "MultiPoly":
        return cls({(): value})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly._terms = {m: c for m, c in terms.items() if c != 0}
        poly._hash = None
        return poly

    # -- inspection ---------------------------------------------------------

    @property
    def variables(self) -> Tuple[str, ...]:
        names = {name for mono in self._terms for name, _ in mono}
        return tuple(sorted(names))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not mono for mono in self._terms)

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise UsageError(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    def _order_key(self, names: Sequence[str]):
        def key(mono: Monomial):
            exps = dict(mono)
            return (_mono_degree(mono), tuple(exps.get(name, 0) for name in names))

        return key

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        """(monomial, coefficient) pairs, largest first in graded-lex order."""
        key = self._order_key(self.variables)
        return sorted(self._terms.items(), key=lambda item: key(item[0]), reverse=True)

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.terms()[0][1]

    def coefficients(self) -> List[Fraction]:
        return list(self._terms.values())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Union["MultiPoly", Coefficient]) -> "MultiPoly":
        other = _coerce(other)
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            result[mono] = result.get(mono, Fraction(0)) + coeff
        return MultiPoly._raw(result)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Union["MultiPoly", Coefficient]) -> "MultiPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Coefficient) -> "MultiPoly":
        return _coerce(other) - self

    def __mul__(self, other: Union["MultiPoly", Coefficient]) -> "MultiPoly":
        other = _coerce(other)
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                result[mono] = result.get(mono, Fraction(0)) + c1 * c2
        return MultiPoly._raw(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise UsageError("Polynomials have no negative powers")
        result = ONE_POLY
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: Coefficient) -> "MultiPoly":
        factor = Fraction(factor)
        return MultiPoly._raw({mono: coeff * factor for mono, coeff in self._terms.items()})

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({render_poly(self)!r})"

    def __str__(self) -> str:
        return render_poly(self)


def _coerce(value: Union[MultiPoly, Coefficient]) -> MultiPoly:
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MultiPoly.constant(value)
    raise UsageError(f"Cannot use {value!r} as a polynomial")


ZERO_POLY = MultiPoly()
ONE_POLY = MultiPoly.constant(1)


def p_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Sum of two polynomials."""
    return a + b


def p_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Product of two polynomials."""
    return a * b


def p_neg(a: MultiPoly) -> MultiPoly:
    """Additive inverse."""
    return -a


def p_eval(a: MultiPoly, point: Mapping[str, Coefficient]) -> Fraction:
    """Exact value of a at a rational point."""
    total = Fraction(0)
    for mono, coeff in a._terms.items():
        value = coeff
        for name, e in mono:
            if name not in point:
                raise UsageError(f"Variable '{name}' is not bound")
            value *= Fraction(point[name]) ** e
        total += value
    return total


def derivative(a: MultiPoly, v: str) -> MultiPoly:
    """Formal partial derivative with respect to v."""
    result: Dict[Monomial, Fraction] = {}
    for mono, coeff in a._terms.items():
        exps = dict(mono)
        e = exps.get(v, 0)
        if e == 0:
            continue
        if e == 1:
            del exps[v]
        else:
            exps[v] = e - 1
        key = tuple(sorted(exps.items()))
        result[key] = result.get(key, Fraction(0)) + coeff * e
    return MultiPoly._raw(result)


def content_and_primitive(a: MultiPoly) -> Tuple[Fraction, MultiPoly]:
    """
    Split a into c * q where q has coprime integer coefficients and a
    positive leading coefficient.
    """
    if a.is_zero:
        raise DomainError("The zero polynomial has no primitive part")
    coefficients = a.coefficients()
    common_denominator = lcm(*(c.denominator for c in coefficients))
    integers = [int(c * common_denominator) for c in coefficients]
    content = gcd(*integers)
    factor = Fraction(common_denominator, content)
    primitive = a.scale(factor)
    if primitive.leading_coefficient < 0:
        primitive = -primitive
        factor = -factor
    return 1 / factor, primitive


def primitive_positive(a: MultiPoly) -> MultiPoly:
    """Scale a to coprime integer coefficients with positive leading coefficient."""
    return content_and_primitive(a)[1]


def _to_sympy(polys: Sequence[MultiPoly]) -> Tuple[Tuple[str, ...], List[Poly]]:
    names = tuple(sorted({name for poly in polys for name in poly.variables}))
    if not names:
        raise UsageError("sympy conversion needs at least one variable")
    gens = [Symbol(name) for name in names]
    index = {name: i for i, name in enumerate(names)}
    converted = []
    for poly in polys:
        data = {}
        for mono, coeff in poly._terms.items():
            exps = [0] * len(names)
            for name, e in mono:
                exps[index[name]] = e
            data[tuple(exps)] = Rational(coeff.numerator, coeff.denominator)
        converted.append(Poly.from_dict(data, *gens, domain=QQ))
    return names, converted


def _from_sympy(poly: Poly, names: Sequence[str]) -> MultiPoly:
    terms: Dict[Monomial, Fraction] = {}
    for exps, coeff in poly.terms():
        mono = tuple((name, e) for name, e in zip(names, exps) if e)
        terms[mono] = Fraction(int(coeff.p), int(coeff.q))
    return MultiPoly(terms)


def p_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Primitive-positive greatest common divisor; gcd(0, 0) = 0."""
    if a.is_zero and b.is_zero:
        return ZERO_POLY
    if a.is_zero:
        return primitive_positive(b)
    if b.is_zero:
        return primitive_positive(a)
    if a.is_constant or b.is_constant:
        return ONE_POLY
    names, (fa, fb) = _to_sympy([a, b])
    return primitive_positive(_from_sympy(fa.gcd(fb), names))


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """The quotient a / b; DomainError unless b divides a exactly."""
    if b.is_zero:
        raise DomainError("Division by the zero polynomial")
    if a.is_zero:
        return ZERO_POLY
    if b.is_constant:
        return a.scale(1 / b.constant_value)
    names, (fa, fb) = _to_sympy([a, b])
    try:
        quotient = fa.exquo(fb)
    except ExactQuotientFailed:
        raise DomainError(f"{b} does not divide {a}") from None
    return _from_sympy(quotient, names)


def radical(a: MultiPoly) -> MultiPoly:
    """
    Squarefree part of a, primitive-positive: a / gcd(a, da/dx1, ..., da/dxn).

    In characteristic zero two polynomials have the same zeros over the
    algebraic closure iff their radicals agree up to a constant.
    """
    if a.is_zero:
        raise DomainError("The zero polynomial has no radical")
    if a.is_constant:
        return ONE_POLY
    common = a
    for name in a.variables:
        common = p_gcd(common, derivative(a, name))
    result = primitive_positive(exact_divide(a, common))
    logger.trace("radical({}) = {}", a, result)
    return result


def _render_coefficient(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def render_poly(a: MultiPoly) -> str:
    """Expanded text form in graded-lex order, e.g. ``x^2*y - 2*x + 1``."""
    if a.is_zero:
        return "0"
    parts: List[str] = []
    for index, (mono, coeff) in enumerate(a.terms()):
        magnitude = abs(coeff)
        factors = [name if e == 1 else f"{name}^{e}" for name, e in mono]
        if not factors:
            body = _render_coefficient(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_render_coefficient(magnitude)] + factors)
        if index == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(parts)
