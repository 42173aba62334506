#
# egcore -- Exact equilibrium analysis of the police/drivers enforcement game
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.
#

import re
import numbers
from fractions import Fraction

import numpy
import sympy

from .exceptions import ParseError, InvalidDiscount

"""
THIS MODULE MUST NOT DEPEND ON ANY GAME MODULE!
"""

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


def parse_rational(text, location=None):
    """
    Parse a rational number written as "p/q" or as an integer.

    Decimals are rejected so that inputs stay exact end-to-end.

    :param text: str
    :param location: str, used in error messages
    :return: Fraction
    """
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", location)
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"cannot parse {text!r} as a rational number; write it as p/q", location)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", location)
    return Fraction(num, den)


def as_rational(x, location=None):
    """
    Convert an int, a Fraction, a "p/q" string or a [num, den] pair to Fraction.
    Floats are refused.
    """
    if isinstance(x, bool):
        raise ParseError(f"expected a rational number, got {x!r}", location)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x, location)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, (list, tuple)) and len(x) == 2 \
            and all(isinstance(v, numbers.Integral) and not isinstance(v, bool) for v in x):
        if x[1] == 0:
            raise ParseError(f"zero denominator in {list(x)!r}", location)
        return Fraction(int(x[0]), int(x[1]))
    raise ParseError(f"expected a rational number ([num, den], int or 'p/q'), got {x!r}", location)


def rational_pair(x):
    """ Fraction -> [numerator, denominator] """
    x = Fraction(x)
    return [x.numerator, x.denominator]


def format_rational(x, digits=6):
    """
    Exact value followed by a decimal rendering with `digits` significant digits,
    e.g. '1/3 (0.333333)'.
    """
    x = Fraction(x)
    exact = str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{exact} ({float(x):.{digits}g})"


def format_exact(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def check_discount(delta, name='delta'):
    """
    Validate a discount factor, 0 <= delta < 1.

    :return: Fraction
    """
    try:
        delta = as_rational(delta, name)
    except ParseError as e:
        raise InvalidDiscount(str(e))
    if delta < 0 or delta >= 1:
        raise InvalidDiscount(f"{name}={delta} must satisfy 0 <= {name} < 1")
    return delta


def rational_array(values):
    """ Build a numpy array of Fractions (dtype=object) """
    arr = numpy.empty(numpy.shape(values), dtype=object)
    for idx, v in numpy.ndenumerate(numpy.asarray(values, dtype=object)):
        arr[idx] = as_rational(v)
    return arr


def solve_rational_system(a, b):
    """
    Solve a x = b exactly for a square, nonsingular matrix of rationals.

    :param a: 2D array-like of Fraction
    :param b: 1D array-like of Fraction
    :return: list of Fraction
    """
    n = len(b)
    mat = sympy.Matrix(n, n, lambda i, j: sympy.Rational(a[i][j].numerator, a[i][j].denominator))
    rhs = sympy.Matrix(n, 1, lambda i, j: sympy.Rational(b[i].numerator, b[i].denominator))
    if mat.det() == 0:
        raise ZeroDivisionError("Singular linear system")
    x = mat.LUsolve(rhs)
    return [as_rational(sympy.Rational(v)) for v in x]
