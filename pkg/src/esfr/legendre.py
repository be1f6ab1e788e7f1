"""Exact Legendre polynomials and rational power series.

Coefficients are ``fractions.Fraction`` throughout, so downstream
superconvergence checks (which hinge on Taylor coefficients vanishing
exactly) are settled by integer arithmetic, never by float comparisons.

The modified spherical Bessel functions are stored with their sqrt(pi)/2
prefactor folded in: the half-integer Gamma values in the classical series
reduce against it, leaving purely rational coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial


class ExactPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies the monomial x^k.

    Trailing zeros are trimmed, so the zero polynomial has empty coeffs and
    degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    def __sub__(self, other):
        other = _coerce_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(
            [self.coefficient(k) - other.coefficient(k) for k in range(n)]
        )

    def __neg__(self):
        return ExactPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPoly([c * other for c in self.coeffs])
        other = _coerce_poly(other)
        if not self.coeffs or not other.coeffs:
            return ExactPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "ExactPoly":
        return ExactPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "ExactPoly":
        return ExactPoly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def integrate(self, a, b) -> Fraction:
        big = self.antiderivative()
        return big(Fraction(b)) - big(Fraction(a))

    def reflected(self) -> "ExactPoly":
        """p(-x)."""
        return ExactPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)])

    def __eq__(self, other):
        return isinstance(other, ExactPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ExactPoly({list(self.coeffs)!r})"


def _coerce_poly(v):
    if isinstance(v, ExactPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return ExactPoly([v])
    raise TypeError(f"cannot treat {type(v).__name__} as a polynomial")


class ExactSeries:
    """Power series truncated at a fixed order (highest retained exponent).

    Arithmetic between two series truncates to the smaller order; attempting
    to read a coefficient beyond the truncation raises.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, poly: ExactPoly, order: int) -> "ExactSeries":
        return cls(poly.coeffs, order)

    def coefficient(self, m: int) -> Fraction:
        if not 0 <= m <= self.order:
            raise IndexError(f"coefficient {m} beyond truncation order {self.order}")
        return self.coeffs[m]

    def first_nonzero(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def __add__(self, other):
        other = _coerce_series(other, self.order)
        n = min(self.order, other.order)
        return ExactSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n)

    def __sub__(self, other):
        other = _coerce_series(other, self.order)
        n = min(self.order, other.order)
        return ExactSeries([self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n)

    def __neg__(self):
        return ExactSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactSeries([c * other for c in self.coeffs], self.order)
        other = _coerce_series(other, self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return ExactSeries(out, n)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, ExactSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"ExactSeries(order={self.order}, coeffs={list(self.coeffs)!r})"


def _coerce_series(v, order):
    if isinstance(v, ExactSeries):
        return v
    if isinstance(v, (int, Fraction)):
        return ExactSeries([v], order)
    raise TypeError(f"cannot treat {type(v).__name__} as a series")


@lru_cache(maxsize=None)
def legendre_poly(j: int) -> ExactPoly:
    """Legendre polynomial of degree j, normalized to value 1 at x = 1.

    Three-term recurrence (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1} in exact
    arithmetic.
    """
    if j < 0:
        raise ValueError("degree must be >= 0")
    if j == 0:
        return ExactPoly([1])
    if j == 1:
        return ExactPoly([0, 1])
    x = ExactPoly([0, 1])
    prev, cur = legendre_poly(j - 2), legendre_poly(j - 1)
    return (x * cur * (2 * j - 1) - prev * (j - 1)) * Fraction(1, j)


@lru_cache(maxsize=None)
def _legendre_derivative_poly(j: int, k: int) -> ExactPoly:
    poly = legendre_poly(j)
    for _ in range(k):
        poly = poly.derivative()
    return poly


def legendre_derivative_at(j: int, k: int, xi) -> Fraction:
    """Exact k-th derivative of the degree-j Legendre polynomial at xi."""
    if j < 0 or k < 0:
        raise ValueError("degree and derivative order must be >= 0")
    if k > j:
        return Fraction(0)
    return _legendre_derivative_poly(j, k)(Fraction(xi))


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def bessel_series(j: int, order: int) -> ExactSeries:
    """Series of the j-th modified spherical Bessel function (first kind).

    Coefficient of z^(2k+j) is 1 / (k! 2^k (2k+2j+1)!!); the leading power is
    z^j.  The sqrt(pi)/2 prefactor of the classical Gamma-function form is
    folded in so every coefficient is rational.
    """
    if j < 0:
        raise ValueError("index must be >= 0")
    if order < j:
        raise ValueError(f"truncation order {order} below leading power {j}")
    coeffs = [Fraction(0)] * (order + 1)
    k = 0
    while 2 * k + j <= order:
        coeffs[2 * k + j] = Fraction(1, factorial(k) * 2**k * _double_factorial(2 * k + 2 * j + 1))
        k += 1
    return ExactSeries(coeffs, order)


def a_coefficient(p: int) -> Fraction:
    """Leading series coefficient 2^p p!/(2p)! of (2p+1) times the p-th
    modified spherical Bessel function."""
    if p < 0:
        raise ValueError("degree must be >= 0")
    return Fraction(2**p * factorial(p), factorial(2 * p))


def exp_series(sign: int, order: int) -> ExactSeries:
    """Taylor series of exp(sign * z) with exact coefficients."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return ExactSeries([Fraction(sign**n, factorial(n)) for n in range(order + 1)], order)
