"""Rational approximants of exp(-z) generated by flux reconstruction schemes.

Each operator bundle induces a numerator/denominator pair

    P(z) = 2^-(p+1) z^(p+1) - sum_{j,k} (-1)^j 2^(k-p) q_j psi_j^(k)(-1) z^(p-k)
    Q(z) =                  - sum_{j,k} (-1)^j 2^(k-p) q_j psi_j^(k)(+1) z^(p-k)

whose residual P(z) - Q(z) exp(-z) controls the dispersion-dissipation error:
its first nonzero Taylor coefficient sits at z^(2p+2) for the DG scheme
(where P/Q is the (p+1, p) Pade approximant), at z^(2p+1) for c != 0, and at
z^(p+1+kbar) for a general symmetric bundle with smallest filtered index kbar.
The leading residual coefficients are b1/2^(p+1) and b2/2^(p+1) with

    b1 = (1 - f(c)) p!/(2p)!
    b2 = (f(c) - 1) p!/(2 (2p)!) + (p+1)!/(2p+2)!
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp

from esfr.legendre import ExactPoly, ExactSeries, exp_series, legendre_derivative_at
from esfr.numerics import DEFAULT_PRECISION, to_big
from esfr.operators import FrOperators, f_of_c


@dataclass(frozen=True)
class ApproximantPair:
    """Numerator P (degree p+1, leading coefficient 2^-(p+1)) and
    denominator Q (degree <= p) induced by one operator bundle."""

    P: ExactPoly
    Q: ExactPoly
    p: int
    q: tuple


@dataclass(frozen=True)
class Residual:
    """Exact Taylor expansion of P(z) - Q(z) exp(-z) up to a truncation order."""

    series: ExactSeries
    first_nonzero: int | None


@dataclass(frozen=True)
class ErrorEstimate:
    """Leading residual coefficients b1, b2 for an energy-stable scheme."""

    b1: Fraction
    b2: Fraction
    p: int
    c: Fraction


def build_pq(ops: FrOperators) -> ApproximantPair:
    """Exact P, Q coefficients from the q diagonal of a bundle."""
    p = ops.p
    pc = [Fraction(0)] * (p + 2)
    qc = [Fraction(0)] * (p + 1)
    pc[p + 1] = Fraction(1, 2 ** (p + 1))
    for j in range(p + 1):
        sign = (-1) ** j
        for k in range(j + 1):  # derivatives of order > j vanish
            w = sign * Fraction(2**k, 2**p) * ops.q[j]
            pc[p - k] -= w * legendre_derivative_at(j, k, -1)
            qc[p - k] -= w * legendre_derivative_at(j, k, 1)
    return ApproximantPair(P=ExactPoly(pc), Q=ExactPoly(qc), p=p, q=ops.q)


def residual_series(pair: ApproximantPair, order: int) -> Residual:
    """Taylor coefficients of P(z) - Q(z) exp(-z), exactly.

    The truncation order must reach past the superconvergence window
    (order >= 2p+3) so the first nonzero coefficient is meaningful.
    """
    if order < 2 * pair.p + 3:
        raise ValueError(f"order must be >= {2 * pair.p + 3} to resolve the residual")
    ps = ExactSeries.from_poly(pair.P, order)
    qs = ExactSeries.from_poly(pair.Q, order)
    series = ps - qs * exp_series(-1, order)
    return Residual(series=series, first_nonzero=series.first_nonzero())


def b_coefficients(p: int, c) -> ErrorEstimate:
    """Exact b1, b2; b1 vanishes iff f(c) = 1 iff c = 0."""
    if p < 1:
        raise ValueError("degree must be >= 1")
    c = Fraction(c)
    fc = f_of_c(p, c)
    b1 = (1 - fc) * Fraction(factorial(p), factorial(2 * p))
    b2 = (fc - 1) * Fraction(factorial(p), 2 * factorial(2 * p)) + Fraction(
        factorial(p + 1), factorial(2 * p + 2)
    )
    return ErrorEstimate(b1=b1, b2=b2, p=p, c=c)


def estimate_F(p: int, c, theta, precision: int = DEFAULT_PRECISION):
    """Error-estimate magnitude |b1 (i theta)^(2p+1) + b2 (i theta)^(2p+2)|.

    Both terms are powers of i times real coefficients, so the magnitude
    reduces to theta^(2p+1) * sqrt(b1^2 + b2^2 theta^2); evaluating this real
    closed form avoids complex powers at extreme exponents.
    """
    est = b_coefficients(p, c)
    with mp.workprec(precision):
        t = mp.mpf(theta) if not isinstance(theta, Fraction) else to_big(theta, precision)
        b1 = to_big(est.b1, precision)
        b2 = to_big(est.b2, precision)
        return abs(t) ** (2 * p + 1) * mp.sqrt(b1 * b1 + b2 * b2 * t * t)


def semianalytic_AT(p: int, c, dtheta, lambda1_at_zero, precision: int = DEFAULT_PRECISION):
    """Convergence-rate estimate from the error model F(theta)/|lambda1 - theta|.

    Mirrors the two-point numerical rate measurement: evaluates the model at
    dtheta and dtheta/2 and returns the log2 slope minus one.  lambda1 is the
    zero-wavenumber value of the special eigenvalue (the one that shrinks as
    c grows); it must be nonzero.
    """
    with mp.workprec(precision):
        lam = mp.mpc(lambda1_at_zero)
        if lam == 0:
            raise ValueError("lambda1 must be nonzero (the c -> infinity limit is excluded)")
        t = mp.mpf(dtheta) if not isinstance(dtheta, Fraction) else to_big(dtheta, precision)
        if t <= 0:
            raise ValueError("dtheta must be positive")
        e1 = estimate_F(p, c, t, precision) / abs(lam - t)
        e2 = estimate_F(p, c, t / 2, precision) / abs(lam - t / 2)
        return (mp.log(e1) - mp.log(e2)) / mp.log(2) - 1
