"""Flux reconstruction operator bundles in the modal Legendre basis.

In this basis the mass matrix M and the filter matrix K are both diagonal,
the differentiation matrix D is strictly upper triangular with integer
entries, and the endpoint trace vectors are l_j = (-1)^j, r_j = 1.  The
energy-stable family is parameterized by a scalar c through

    K_pp = c * ((2p)! / (2^p p!))^2        (single nonzero entry)
    h_R  = (M+K)^{-1} r,   h_L = -(M+K)^{-1} l.

A general symmetric scheme is instead specified by its h_R vector directly;
when every component is nonzero there is a diagonal K reproducing it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

ESFR = "esfr"
SYMMETRIC_GENERAL = "symmetric_general"


class OperatorConstructionError(ValueError):
    """Requested scheme parameters make M+K singular or are malformed."""


class StabilityWarning(UserWarning):
    """Scheme parameter outside the energy-stable range c > c_minus."""


class SpecialC(NamedTuple):
    c_minus: Fraction
    c_sd: Fraction
    c_hu: Fraction


@dataclass(frozen=True)
class FrOperators:
    """Immutable operator bundle for one scheme of degree p.

    mass / filt / q are the diagonals of M, K and (M+K)^{-1}; diff is the
    dense (p+1)^2 differentiation matrix; trace_left / trace_right evaluate
    modal coefficients at the endpoints; h_left / h_right are the correction
    derivative coefficient vectors.  fc is the scalar factor by which the
    last q entry deviates from its DG value (q_p = (2p+1)/2 * fc); kbar is
    the smallest index of a nonzero K entry, or None when K = 0.
    """

    p: int
    kind: str
    c: Fraction | None
    mass: tuple
    diff: tuple
    filt: tuple
    trace_left: tuple
    trace_right: tuple
    q: tuple
    fc: Fraction
    h_left: tuple
    h_right: tuple
    kbar: int | None

    @property
    def size(self) -> int:
        return self.p + 1


def leading_derivative(p: int) -> Fraction:
    """Constant p-th derivative (2p)!/(2^p p!) of the degree-p Legendre polynomial."""
    return Fraction(factorial(2 * p), 2**p * factorial(p))


def kappa(p: int) -> Fraction:
    """Coefficient of c in 1/f(c): (2p+1)((2p)!)^2 / (2^(2p+1) (p!)^2)."""
    if p < 1:
        raise ValueError("degree must be >= 1")
    return Fraction((2 * p + 1) * factorial(2 * p) ** 2, 2 ** (2 * p + 1) * factorial(p) ** 2)


def f_of_c(p: int, c) -> Fraction:
    """Filter factor f(c) = 1 / (1 + c * kappa(p))."""
    c = Fraction(c)
    denom = 1 + c * kappa(p)
    if denom == 0:
        raise OperatorConstructionError(
            f"c = {c} makes M+K singular (c equals -1/kappa for p={p})"
        )
    return 1 / denom


def special_c(p: int) -> SpecialC:
    """Distinguished scheme parameters: stability bound c_minus, spectral
    difference recovery c_sd, and Huynh g2 recovery c_hu.

    Closed forms follow the standard one-parameter family convention with
    a_tilde = (2p)!/(2^p (p!)^2); they satisfy kappa(p) * c_minus = -1
    exactly, which the construction cross-checks.
    """
    if p < 1:
        raise ValueError("degree must be >= 1")
    ap = Fraction(factorial(2 * p), 2**p * factorial(p) ** 2) * factorial(p)  # = (2p)!/(2^p p!)
    denom = (2 * p + 1) * ap**2
    c_minus = Fraction(-2, 1) / denom
    c_sd = Fraction(2 * p, p + 1) / denom
    c_hu = Fraction(2 * (p + 1), p) / denom
    assert kappa(p) * c_minus == -1
    return SpecialC(c_minus, c_sd, c_hu)


def _diff_matrix(p: int) -> tuple:
    # D[j][k] = 2j+1 when j < k and j+k odd: modal differentiation.
    return tuple(
        tuple(
            Fraction(2 * j + 1) if j < k and (j + k) % 2 == 1 else Fraction(0)
            for k in range(p + 1)
        )
        for j in range(p + 1)
    )


def _mass_diag(p: int) -> tuple:
    return tuple(Fraction(2, 2 * j + 1) for j in range(p + 1))


def build_esfr(p: int, c) -> FrOperators:
    """Exact operator bundle of the energy-stable scheme (degree p, scalar c).

    c at or below the stability bound does not stop construction (the
    dispersion analysis stays well defined); c strictly below c_minus raises
    a StabilityWarning, while c = c_minus exactly makes M+K singular and is
    an error.
    """
    if p < 1:
        raise ValueError("degree must be >= 1")
    c = Fraction(c)
    fc = f_of_c(p, c)  # raises on the singular c
    bounds = special_c(p)
    if c < bounds.c_minus:
        warnings.warn(
            f"c = {c} < c_minus = {bounds.c_minus}: scheme is not linearly stable",
            StabilityWarning,
            stacklevel=2,
        )
    mass = _mass_diag(p)
    lead = leading_derivative(p)
    filt = tuple(c * lead**2 if j == p else Fraction(0) for j in range(p + 1))
    q = tuple(
        Fraction(2 * j + 1, 2) * (fc if j == p else 1) for j in range(p + 1)
    )
    trace_left = tuple(Fraction((-1) ** j) for j in range(p + 1))
    trace_right = tuple(Fraction(1) for _ in range(p + 1))
    h_right = q  # (M+K)^{-1} r with r_j = 1
    h_left = tuple(-q[j] * trace_left[j] for j in range(p + 1))
    return FrOperators(
        p=p,
        kind=ESFR,
        c=c,
        mass=mass,
        diff=_diff_matrix(p),
        filt=filt,
        trace_left=trace_left,
        trace_right=trace_right,
        q=q,
        fc=fc,
        h_left=h_left,
        h_right=h_right,
        kbar=p if c != 0 else None,
    )


def dg_correction_vector(p: int) -> tuple:
    """h_R of the plain DG scheme (K = 0): entries (2j+1)/2."""
    return tuple(Fraction(2 * j + 1, 2) for j in range(p + 1))


def build_symmetric_fr(p: int, h_right) -> FrOperators:
    """Operator bundle of a general symmetric scheme given its h_R vector.

    Every component must be nonzero; the diagonal filter reproducing the
    vector is K_jj = 1/(h_R)_j - M_jj and the left correction follows from
    symmetry, (h_L)_j = (-1)^(j+1) (h_R)_j.
    """
    if p < 1:
        raise ValueError("degree must be >= 1")
    hr = tuple(Fraction(v) for v in h_right)
    if len(hr) != p + 1:
        raise ValueError(f"h_R must have {p + 1} entries, got {len(hr)}")
    for j, v in enumerate(hr):
        if v == 0:
            raise OperatorConstructionError(
                f"h_R entry {j} is zero: the correction projection must not vanish"
            )
    mass = _mass_diag(p)
    filt = tuple(1 / hr[j] - mass[j] for j in range(p + 1))
    kbar = next((j for j, v in enumerate(filt) if v != 0), None)
    trace_left = tuple(Fraction((-1) ** j) for j in range(p + 1))
    h_left = tuple((-1) ** (j + 1) * hr[j] for j in range(p + 1))
    return FrOperators(
        p=p,
        kind=SYMMETRIC_GENERAL,
        c=None,
        mass=mass,
        diff=_diff_matrix(p),
        filt=filt,
        trace_left=trace_left,
        trace_right=tuple(Fraction(1) for _ in range(p + 1)),
        q=hr,
        fc=Fraction(2, 2 * p + 1) * hr[p],
        h_left=h_left,
        h_right=hr,
        kbar=kbar,
    )
