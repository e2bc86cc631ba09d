from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.errors import DomainError, UsageError
from core.poly import (
    ONE_POLY,
    ZERO_POLY,
    MultiPoly,
    content_and_primitive,
    derivative,
    exact_divide,
    p_add,
    p_eval,
    p_gcd,
    p_mul,
    p_neg,
    primitive_positive,
    radical,
    render_poly,
)

x = MultiPoly.variable("x")
y = MultiPoly.variable("y")


def polys(max_degree: int = 3):
    monomial = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree))
    return st.dictionaries(
        monomial, st.integers(-5, 5), max_size=4
    ).map(lambda terms: MultiPoly({(("x", ex), ("y", ey)): c for (ex, ey), c in terms.items()}))


class TestArithmetic:
    def test_named_operations(self):
        assert p_add(x, y) == MultiPoly({(("x", 1),): 1, (("y", 1),): 1})
        assert p_mul(x + 1, x - 1) == MultiPoly({(("x", 2),): 1, (): -1})
        assert p_neg(p_add(x, ONE_POLY)) == MultiPoly({(("x", 1),): -1, (): -1})
        assert p_add(x, p_neg(x)) == ZERO_POLY

    def test_sparse_equality(self):
        assert x + y == y + x
        assert x - x == ZERO_POLY
        assert (x + 1) * (x - 1) == x * x - 1

    @given(a=polys(), b=polys(), c=polys())
    def test_ring_laws(self, a, b, c):
        assert a * (b + c) == a * b + a * c
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a

    @given(a=polys(), b=polys(), px=st.integers(-4, 4), py=st.integers(-4, 4))
    def test_eval_is_homomorphic(self, a, b, px, py):
        point = {"x": px, "y": py}
        assert p_eval(p_mul(a, b), point) == p_eval(a, point) * p_eval(b, point)
        assert p_eval(p_add(a, b), point) == p_eval(a, point) + p_eval(b, point)
        assert p_eval(p_neg(a), point) == -p_eval(a, point)

    def test_eval_needs_all_variables(self):
        with pytest.raises(UsageError):
            p_eval(x * y, {"x": 1})

    def test_derivative(self):
        assert derivative(x ** 3 * y + 2 * x, "x") == 3 * x ** 2 * y + 2
        assert derivative(y, "x") == ZERO_POLY

    def test_variables_follow_terms(self):
        assert (x + y - y).variables == ("x",)


class TestOrderingAndText:
    def test_graded_lex_rendering(self):
        assert render_poly(x ** 2 * y - 2 * x + 1) == "x^2*y - 2*x + 1"
        assert render_poly(y + x) == "x + y"
        assert render_poly(ZERO_POLY) == "0"
        assert render_poly(x.scale(Fraction(-3, 2))) == "-3/2*x"

    def test_leading_coefficient(self):
        assert (1 - x).leading_coefficient == -1


class TestNormalization:
    def test_primitive_positive(self):
        assert primitive_positive(2 * x + 4) == x + 2
        assert primitive_positive(-x + 1) == x - 1
        assert primitive_positive(x.scale(Fraction(1, 2)) + Fraction(1, 3)) == 3 * x + 2
        with pytest.raises(DomainError):
            primitive_positive(ZERO_POLY)

    def test_content_and_primitive(self):
        content, primitive = content_and_primitive(-4 * x + 6)
        assert primitive == 2 * x - 3
        assert content == -2
        assert primitive.scale(content) == -4 * x + 6

    def test_constants_normalize_to_one(self):
        assert primitive_positive(MultiPoly.constant(-7)) == ONE_POLY


class TestGcdAndRadical:
    def test_gcd(self):
        assert p_gcd((x - 1) * (x + y), (x - 1) * (x - y)) == x - 1
        assert p_gcd(ZERO_POLY, 2 * x + 2) == x + 1
        assert p_gcd(ZERO_POLY, ZERO_POLY) == ZERO_POLY
        assert p_gcd(MultiPoly.constant(3), x) == ONE_POLY

    def test_exact_divide(self):
        assert exact_divide(x * x - 1, x - 1) == x + 1
        assert exact_divide(4 * x, MultiPoly.constant(2)) == 2 * x
        with pytest.raises(DomainError):
            exact_divide(x + 1, x - 1)
        with pytest.raises(DomainError):
            exact_divide(x, ZERO_POLY)

    def test_radical(self):
        assert radical((x - 1) ** 2 * (x + 1)) == x * x - 1
        assert radical(x ** 3 * y ** 2) == x * y
        assert radical(4 * x * x) == x
        assert radical(MultiPoly.constant(5)) == ONE_POLY
        with pytest.raises(DomainError):
            radical(ZERO_POLY)

    def test_radical_distinguishes_zero_sets(self):
        assert radical(x * x + 1) != radical(x * x + 2)

    @given(a=polys(2))
    def test_radical_of_square(self, a):
        if a.is_zero:
            return
        assert radical(a * a) == radical(a)

    @given(a=polys(2), b=polys(2))
    def test_gcd_divides_both(self, a, b):
        g = p_gcd(a, b)
        if g.is_zero:
            assert a.is_zero and b.is_zero
            return
        for operand in (a, b):
            assert exact_divide(operand, g) * g == operand

    @given(a=polys(2))
    def test_radical_is_squarefree(self, a):
        if a.is_zero:
            return
        r = radical(a)
        assert radical(a * a * a) == r
        common = p_gcd(p_gcd(r, derivative(r, "x")), derivative(r, "y"))
        assert common.is_constant


@given(a=polys(), c=st.fractions(min_value=-20, max_value=20, max_denominator=7))
def test_primitive_positive_is_scale_invariant(a, c):
    if a.is_zero or c == 0:
        return
    normalized = primitive_positive(a)
    assert primitive_positive(a.scale(c)) == normalized
    assert primitive_positive(normalized) == normalized
