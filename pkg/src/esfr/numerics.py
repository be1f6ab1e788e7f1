"""Numeric substrate: exact rationals, big floats, and small dense complex
linear algebra at arbitrary precision.

Exact values ride on stdlib ``fractions.Fraction``.  Floating values are
mpmath ``mpf``/``mpc`` snapshots taken at an explicit mantissa width in bits;
every routine that rounds runs under ``mp.workprec`` at the precision recorded
in its matrix argument (or passed explicitly), so results are deterministic
and independent of the ambient mpmath context.

The eigenvalue solver is a complex shifted-QR iteration on a Householder
Hessenberg form.  All matrices in this package are tiny (dimension <= 16);
the constraint is precision, not scale, so a dense method with explicit
control of the deflation tolerance is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp
from mpmath.libmp import from_rational, round_nearest

Rational = Fraction

DEFAULT_PRECISION = 192
MIN_PRECISION = 64

# Maximum dimension accepted by the dense eigen/determinant routines.
MAX_DIM = 16


class SingularMatrixError(ArithmeticError):
    """Linear solve hit an exactly zero pivot at working precision."""


class EigenConvergenceError(ArithmeticError):
    """QR iteration exhausted its sweep budget.

    The ``partial`` attribute carries the eigenvalues deflated so far plus the
    diagonal of the unconverged block, flagged ``converged=False``.
    """

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


def to_big(x, precision: int = DEFAULT_PRECISION):
    """Correctly rounded conversion of a rational to an mpf at ``precision`` bits."""
    if precision < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} bits, got {precision}")
    x = Fraction(x)
    return mp.make_mpf(from_rational(x.numerator, x.denominator, precision, round_nearest))


def to_big_complex(re, im=0, precision: int = DEFAULT_PRECISION):
    """Rational (re, im) pair to an mpc, each part correctly rounded."""
    return mp.mpc(to_big(re, precision), to_big(im, precision))


def machine_epsilon(precision: int):
    """Unit roundoff 2^(1-precision) as an mpf."""
    with mp.workprec(precision):
        return mp.mpf(2) ** (1 - precision)


class ComplexMatrix:
    """Dense complex matrix with all entries created at one precision (bits).

    Immutable container: algorithms copy the entries out, work under
    ``mp.workprec(self.precision)`` and return fresh values.
    """

    __slots__ = ("rows", "cols", "precision", "_a")

    def __init__(self, entries, precision: int = DEFAULT_PRECISION):
        if precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION} bits, got {precision}")
        with mp.workprec(precision):
            data = tuple(tuple(_as_mpc(v, precision) for v in row) for row in entries)
        if not data or not data[0]:
            raise ValueError("matrix must be nonempty")
        ncols = len(data[0])
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        self._a = data
        self.rows = len(data)
        self.cols = ncols
        self.precision = precision

    @classmethod
    def identity(cls, n: int, precision: int = DEFAULT_PRECISION):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], precision)

    @classmethod
    def diagonal(cls, values, precision: int = DEFAULT_PRECISION):
        vals = list(values)
        n = len(vals)
        return cls([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)], precision)

    def __getitem__(self, ij):
        i, j = ij
        return self._a[i][j]

    def to_lists(self):
        return [list(row) for row in self._a]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        prec = max(self.precision, other.precision)
        with mp.workprec(prec):
            out = [
                [
                    mp.fsum(self._a[i][k] * other._a[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ]
        return ComplexMatrix(out, prec)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        prec = max(self.precision, other.precision)
        with mp.workprec(prec):
            out = [
                [self._a[i][j] - other._a[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        return ComplexMatrix(out, prec)

    def scaled(self, factor) -> "ComplexMatrix":
        with mp.workprec(self.precision):
            f = _as_mpc(factor, self.precision)
            out = [[f * v for v in row] for row in self._a]
        return ComplexMatrix(out, self.precision)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        with mp.workprec(self.precision):
            return mp.fsum(self._a[i][i] for i in range(self.rows))

    def frobenius_norm(self):
        with mp.workprec(self.precision):
            return mp.sqrt(mp.fsum(abs(v) ** 2 for row in self._a for v in row))

    def __repr__(self):
        return f"ComplexMatrix({self.rows}x{self.cols} @ {self.precision} bits)"


def _as_mpc(v, precision):
    if isinstance(v, Fraction):
        return mp.mpc(to_big(v, precision))
    if isinstance(v, tuple) and len(v) == 2:
        return to_big_complex(v[0], v[1], precision)
    return mp.mpc(v)


@dataclass(frozen=True)
class EigenResult:
    """Full eigenvalue set of a square matrix, sorted by (real, imag).

    ``residual_bound`` is a backward-error style bound: the returned values
    are exact eigenvalues of some A+E with ||E|| of that order.
    """

    eigenvalues: tuple
    iterations: int
    converged: bool
    residual_bound: object


def determinant(a: ComplexMatrix):
    """Determinant via LU with partial pivoting at the matrix precision.

    Singular matrices return 0 (a zero pivot short-circuits exactly).
    """
    if not a.is_square():
        raise ValueError("determinant of non-square matrix")
    n = a.rows
    with mp.workprec(a.precision):
        m = a.to_lists()
        sign, ok = _lu_inplace(m, n)
        if not ok:
            return mp.mpc(0)
        det = mp.mpc(sign)
        for k in range(n):
            det *= m[k][k]
        return det


def solve(a: ComplexMatrix, b):
    """Solve a x = b (b a sequence) by LU with partial pivoting."""
    if not a.is_square():
        raise ValueError("solve needs a square matrix")
    n = a.rows
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    with mp.workprec(a.precision):
        m = a.to_lists()
        rhs = [_as_mpc(v, a.precision) for v in b]
        perm = list(range(n))
        for k in range(n):
            piv, pmax = k, abs(m[k][k])
            for i in range(k + 1, n):
                mag = abs(m[i][k])
                if mag > pmax:
                    piv, pmax = i, mag
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                perm[k], perm[piv] = perm[piv], perm[k]
            if m[k][k] == 0:
                raise SingularMatrixError(f"zero pivot at column {k}")
            inv = 1 / m[k][k]
            for i in range(k + 1, n):
                f = m[i][k] * inv
                m[i][k] = f
                for j in range(k + 1, n):
                    m[i][j] -= f * m[k][j]
        x = [rhs[perm[i]] for i in range(n)]
        for i in range(n):  # forward
            for j in range(i):
                x[i] -= m[i][j] * x[j]
        for i in reversed(range(n)):  # backward
            for j in range(i + 1, n):
                x[i] -= m[i][j] * x[j]
            x[i] /= m[i][i]
        return x


def eigenvalues(a: ComplexMatrix, tol=None, max_sweeps: int | None = None) -> EigenResult:
    """All eigenvalues (with multiplicity) of a small dense complex matrix.

    ``tol`` is the relative subdiagonal deflation threshold of the QR
    iteration; default 2^(16 - precision).  Deterministic: no randomness,
    eigenvalues sorted by (real part, imaginary part).

    Raises EigenConvergenceError (carrying the partial result) if the sweep
    budget is exhausted, which does not happen in practice for the matrices
    this package builds.
    """
    if not a.is_square():
        raise ValueError("eigenvalues of non-square matrix")
    n = a.rows
    if n > MAX_DIM:
        raise ValueError(f"dense eigensolver accepts dimension <= {MAX_DIM}, got {n}")
    prec = a.precision
    if max_sweeps is None:
        max_sweeps = 60 * n
    with mp.workprec(prec):
        if tol is None:
            tol = mp.mpf(2) ** (16 - prec)
        else:
            tol = mp.mpf(tol)
        if tol <= 0:
            raise ValueError("tol must be positive")
        h = a.to_lists()
        norm = mp.sqrt(mp.fsum(abs(v) ** 2 for row in h for v in row))
        bound = 4 * n * tol * norm
        _hessenberg_inplace(h, n)
        eigs, sweeps, ok = _qr_eigenvalues(h, n, tol, norm, max_sweeps)
        eigs = tuple(sorted((mp.mpc(e) for e in eigs), key=lambda z: (z.real, z.imag)))
    result = EigenResult(eigs, sweeps, ok, bound if ok else norm)
    if not ok:
        raise EigenConvergenceError(
            f"QR iteration did not deflate within {max_sweeps} sweeps", result
        )
    return result


def _lu_inplace(m, n):
    """Row-pivoted LU; returns (permutation sign, nonsingular flag)."""
    sign = 1
    for k in range(n):
        piv, pmax = k, abs(m[k][k])
        for i in range(k + 1, n):
            mag = abs(m[i][k])
            if mag > pmax:
                piv, pmax = i, mag
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        if m[k][k] == 0:
            return sign, False
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            m[i][k] = f
            for j in range(k + 1, n):
                m[i][j] -= f * m[k][j]
    return sign, True


def _hessenberg_inplace(h, n):
    """Unitary reduction to upper Hessenberg form by Householder reflectors."""
    for k in range(n - 2):
        scale = mp.fsum(abs(h[i][k]) for i in range(k + 1, n))
        if scale == 0:
            continue
        v = [h[i][k] / scale for i in range(k + 1, n)]
        vnorm = mp.sqrt(mp.fsum(abs(x) ** 2 for x in v))
        if vnorm == 0:
            continue
        x0 = v[0]
        phase = x0 / abs(x0) if x0 != 0 else mp.mpf(1)
        v[0] += phase * vnorm
        vsq = mp.fsum(abs(x) ** 2 for x in v)
        if vsq == 0:
            continue
        beta = 2 / vsq
        off = k + 1
        for col in range(k, n):
            acc = mp.fsum(mp.conj(v[i - off]) * h[i][col] for i in range(off, n))
            w = beta * acc
            for i in range(off, n):
                h[i][col] -= v[i - off] * w
        for row in range(n):
            acc = mp.fsum(h[row][j] * v[j - off] for j in range(off, n))
            w = beta * acc
            for j in range(off, n):
                h[row][j] -= w * mp.conj(v[j - off])
        for i in range(k + 2, n):
            h[i][k] = mp.mpc(0)


def _givens(a, b):
    """Unitary 2x2 [[c, s], [-conj(s), c]] with c real >= 0 zeroing b below a."""
    if b == 0:
        return mp.mpf(1), mp.mpc(0)
    if a == 0:
        return mp.mpf(0), mp.mpc(1)
    r = mp.sqrt(abs(a) ** 2 + abs(b) ** 2)
    c = abs(a) / r
    s = (a / abs(a)) * mp.conj(b) / r
    return c, s


def _eig_2x2(a, b, c, d):
    """Eigenvalues of [[a, b], [c, d]]; the larger root first, mate via det."""
    t = (a + d) / 2
    det = a * d - b * c
    disc = mp.sqrt(t * t - det)
    lam1 = t + disc if abs(t + disc) >= abs(t - disc) else t - disc
    if lam1 == 0:
        return mp.mpc(0), mp.mpc(0)
    return lam1, det / lam1


def _wilkinson_shift(h, hi):
    a, b = h[hi - 1][hi - 1], h[hi - 1][hi]
    c, d = h[hi][hi - 1], h[hi][hi]
    e1, e2 = _eig_2x2(a, b, c, d)
    return e1 if abs(e1 - d) <= abs(e2 - d) else e2


def _shifted_qr_sweep(h, lo, hi, mu):
    """One explicit shifted QR step on the Hessenberg block h[lo..hi, lo..hi]."""
    for i in range(lo, hi + 1):
        h[i][i] -= mu
    rot = []
    for i in range(lo, hi):
        c, s = _givens(h[i][i], h[i + 1][i])
        rot.append((c, s))
        for col in range(i, hi + 1):
            x, y = h[i][col], h[i + 1][col]
            h[i][col] = c * x + s * y
            h[i + 1][col] = -mp.conj(s) * x + c * y
        h[i + 1][i] = mp.mpc(0)
    for idx, i in enumerate(range(lo, hi)):
        c, s = rot[idx]
        top = min(i + 1, hi)
        for row in range(lo, top + 1):
            x, y = h[row][i], h[row][i + 1]
            h[row][i] = c * x + mp.conj(s) * y
            h[row][i + 1] = -s * x + c * y
    for i in range(lo, hi + 1):
        h[i][i] += mu


def _qr_eigenvalues(h, n, tol, norm, max_sweeps):
    """Shifted QR with deflation on an upper Hessenberg matrix (in place)."""
    eigs = []
    hi = n - 1
    sweeps = 0
    stuck = 0
    while hi >= 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1][lo - 1]) + abs(h[lo][lo])
            if s == 0:
                s = norm
            if abs(h[lo][lo - 1]) <= tol * s:
                h[lo][lo - 1] = mp.mpc(0)
                break
            lo -= 1
        if lo == hi:
            eigs.append(h[hi][hi])
            hi -= 1
            stuck = 0
            continue
        if lo == hi - 1:
            e1, e2 = _eig_2x2(h[lo][lo], h[lo][hi], h[hi][lo], h[hi][hi])
            eigs.append(e1)
            eigs.append(e2)
            hi -= 2
            stuck = 0
            continue
        if sweeps >= max_sweeps:
            eigs.extend(h[i][i] for i in range(hi + 1))
            return eigs, sweeps, False
        if stuck and stuck % 12 == 0:
            mu = h[hi][hi] + mp.mpf("1.5") * abs(h[hi][hi - 1])  # exceptional shift
        else:
            mu = _wilkinson_shift(h, hi)
        _shifted_qr_sweep(h, lo, hi, mu)
        sweeps += 1
        stuck += 1
    return eigs, sweeps, True
