"""
Fraction normal forms for common-meadow terms.

A non-bottom form ``(num, den, support, guard)`` stands for::

    num * den^-1 + 0*(v1 + ... + vk) + 0*guard^-1

where ``v1 .. vk`` are the support variables. ``den`` is primitive-positive,
``num`` carries the rational scale, and ``guard`` is the squarefree product
of the integer contents divided out of denominators along the way. The guard
never matters in characteristic zero; in a prime field whose characteristic
divides it, the form (like the term it came from) is the additional value.

Numerator and denominator are never cancelled against each other: x^2/x and
x/1 differ at x = 0.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Any, Dict, FrozenSet, Iterable, Union

from loguru import logger
from sympy import primefactors

from core.errors import UsageError
from core.poly import MultiPoly, ONE_POLY, content_and_primitive
from core.terms import (
    Add,
    Assignment,
    BotConst,
    Inv,
    Mul,
    Neg,
    Term,
    Var,
    ZERO,
    BOTTOM,
    numeral,
    numeral_value,
    parse,
    render,
)
from core.values import BOT, Bottom, Model, Value


def _squarefree_lcm(*values: int) -> int:
    primes = set()
    for value in values:
        primes.update(primefactors(abs(value)))
    return prod(primes) if primes else 1


@dataclass(frozen=True)
class FractionForm:
    num: MultiPoly
    den: MultiPoly
    support: FrozenSet[str] = field(default_factory=frozenset)
    guard: int = 1

    @property
    def sorted_support(self):
        return sorted(self.support)

    def __str__(self) -> str:
        return render(to_term(self))


FNF = Union[FractionForm, Bottom]


def _normalize(num: MultiPoly, den: MultiPoly, support: Iterable[str], guard: int) -> FNF:
    if den.is_zero:
        return BOT
    content, primitive = content_and_primitive(den)
    if content != 1:
        num = num.scale(1 / content)
        guard = _squarefree_lcm(guard, content.numerator)
    support = frozenset(support) | frozenset(num.variables) | frozenset(primitive.variables)
    return FractionForm(num, primitive, support, guard)


def from_polynomial(poly: MultiPoly, support: Iterable[str] = ()) -> FractionForm:
    """The form poly / 1."""
    return FractionForm(poly, ONE_POLY, frozenset(support) | frozenset(poly.variables), 1)


def frac_add(a: FNF, b: FNF) -> FNF:
    """
    Sum of two forms: (n1*d2 + n2*d1) / (d1*d2) over the union of the supports.

    Args:
        a: Left form or BOT
        b: Right form or BOT

    Returns:
        The normalized sum; BOT when either side is BOT
    """
    if a is BOT or b is BOT:
        return BOT
    return _normalize(
        a.num * b.den + b.num * a.den,
        a.den * b.den,
        a.support | b.support,
        _squarefree_lcm(a.guard, b.guard),
    )


def frac_mul(a: FNF, b: FNF) -> FNF:
    """Product of two forms; supports and guards are merged."""
    if a is BOT or b is BOT:
        return BOT
    return _normalize(a.num * b.num, a.den * b.den, a.support | b.support, _squarefree_lcm(a.guard, b.guard))


def frac_neg(a: FNF) -> FNF:
    """Negate the numerator."""
    if a is BOT:
        return BOT
    return FractionForm(-a.num, a.den, a.support, a.guard)


def frac_inv(a: FNF) -> FNF:
    """(n, d, s)^-1 = d * n^-1 + 0 * d^-1 = (d^2, n*d, s); bottom when n is zero."""
    if a is BOT or a.num.is_zero:
        return BOT
    return _normalize(a.den * a.den, a.num * a.den, a.support, a.guard)


def to_fraction(t: Term) -> FNF:
    """Normal form of t; every term containing the bottom constant yields BOT."""
    value = numeral_value(t)
    if value is not None:
        return from_polynomial(MultiPoly.constant(value))
    if isinstance(t, BotConst):
        return BOT
    if isinstance(t, Var):
        return from_polynomial(MultiPoly.variable(t.name))
    if isinstance(t, Add):
        return frac_add(to_fraction(t.left), to_fraction(t.right))
    if isinstance(t, Mul):
        return frac_mul(to_fraction(t.left), to_fraction(t.right))
    if isinstance(t, Neg):
        return frac_neg(to_fraction(t.arg))
    if isinstance(t, Inv):
        return frac_inv(to_fraction(t.arg))
    raise UsageError(f"Not a term: {t!r}")


# -- back to syntax --------------------------------------------------------

def _coefficient_term(value: Fraction) -> Term:
    term = numeral(value.numerator)
    if value.denominator != 1:
        term = Mul(term, Inv(numeral(value.denominator)))
    return term


def polynomial_to_term(poly: MultiPoly) -> Term:
    """A term whose polynomial reading is poly, terms in graded-lex order."""
    result = None
    for mono, coeff in poly.terms():
        factors = [Var(name) for name, e in mono for _ in range(e)]
        magnitude = abs(coeff)
        if magnitude != 1 or not factors:
            factors.insert(0, _coefficient_term(magnitude))
        product = factors[0]
        for factor in factors[1:]:
            product = Mul(product, factor)
        if result is None:
            result = Neg(product) if coeff < 0 else product
        else:
            result = Add(result, Neg(product)) if coeff < 0 else Add(result, product)
    return ZERO if result is None else result


def to_term(form: FNF) -> Term:
    """Render a form as num * den^-1 + 0*(support) + 0*guard^-1."""
    if form is BOT:
        return BOTTOM
    term = polynomial_to_term(form.num)
    if form.den != ONE_POLY:
        term = Mul(term, Inv(polynomial_to_term(form.den)))
    names = form.sorted_support
    if names:
        total: Term = Var(names[0])
        for name in names[1:]:
            total = Add(total, Var(name))
        term = Add(term, Mul(ZERO, total))
    if form.guard > 1:
        term = Add(term, Mul(ZERO, Inv(numeral(form.guard))))
    return term


# -- semantics -------------------------------------------------------------

def integer_value(model: Model, n: int) -> Value:
    """The value of the numeral for |n| (negated when n < 0), by doubling."""
    result, addend, k = model.zero, model.one, abs(n)
    while k:
        if k & 1:
            result = model.add(result, addend)
        addend = model.add(addend, addend)
        k >>= 1
    return model.neg(result) if n < 0 else result


def _rational_value(model: Model, value: Fraction) -> Value:
    result = integer_value(model, value.numerator)
    if value.denominator != 1:
        result = model.mul(result, model.inv(integer_value(model, value.denominator)))
    return result


def evaluate_polynomial(poly: MultiPoly, assignment: Assignment, model: Model) -> Value:
    total = model.zero
    for mono, coeff in poly.terms():
        value = _rational_value(model, coeff)
        for name, e in mono:
            if name not in assignment:
                raise UsageError(f"Variable '{name}' is not bound")
            for _ in range(e):
                value = model.mul(value, assignment[name])
        total = model.add(total, value)
    return total


def evaluate_form(form: FNF, assignment: Assignment, model: Model) -> Value:
    """Value of a form in model; agrees with evaluating to_term(form)."""
    if form is BOT:
        return model.bot
    for name in form.support:
        if name not in assignment:
            raise UsageError(f"Variable '{name}' is not bound")
        model.check(assignment[name])
        if assignment[name] is BOT:
            return BOT
    if form.guard > 1 and model.has_bottom and model.inv(integer_value(model, form.guard)) is BOT:
        return BOT
    value = evaluate_polynomial(form.num, assignment, model)
    if form.den != ONE_POLY:
        value = model.mul(value, model.inv(evaluate_polynomial(form.den, assignment, model)))
    return value


def to_record(form: FNF) -> Dict[str, Any]:
    if form is BOT:
        return {"bottom": True}
    return {
        "num": str(form.num),
        "den": str(form.den),
        "support": form.sorted_support,
        "guard": form.guard,
    }


def normalize_text(text: str) -> FNF:
    """Parse text and return its fraction normal form."""
    form = to_fraction(parse(text))
    logger.debug("Normalized '{}' to {}", text, to_record(form))
    return form
