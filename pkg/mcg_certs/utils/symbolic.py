from fractions import Fraction
from typing import Union

import sympy

from mcg_certs.utils.constants import DECIMAL_DIGITS


# The universal constant of the lower bound; never given a numeric value.
C = sympy.Symbol("C", positive=True)
g = sympy.Symbol("g", positive=True, integer=True)


def to_sympy(value: Union[int, Fraction]) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def decimal(expr: sympy.Expr, digits: int = DECIMAL_DIGITS) -> str:
    """Decimal rendering at `digits` significant digits."""
    return str(sympy.N(expr, digits))


def render(expr: sympy.Expr) -> str:
    return sympy.sstr(expr)
