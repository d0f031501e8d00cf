"""Static, complementary, and extended correlation kernels, and correlation determinants.

The extended kernel couples two time slices through products of coupling
coefficients.  Every entry is an exact rational multiple of a single square
root, so correlation determinants can be computed exactly: a diagonal gauge
built from the slice weights and 0-th norms turns the kernel matrix into a
rational matrix without changing any determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import ModelParams
from .errors import GaugeSingularError, IncompatibleRadicalsError
from .hahn import EXACT, NumericBackend, slice_basis
from .process import coupling_coefficient_sq
from .radicals import SignedSqrt, sqrt_fraction, sum_signed_sqrts


@dataclass(frozen=True)
class CorrelationQuery:
    """A list of distinct space-time points (x, t)."""

    points: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError(f"query points must be distinct: {self.points}")

    def __len__(self) -> int:
        return len(self.points)


def static_kernel(model: ModelParams, t: int, x: int, y: int) -> SignedSqrt:
    """Projection kernel onto the first N orthonormal functions of slice t."""
    basis = slice_basis(model, t)
    if x not in basis.support or y not in basis.support:
        return SignedSqrt.zero()
    coeff = Fraction(0)
    for n in range(model.N):
        coeff += basis.q(n, x) * basis.q(n, y) / basis.norm2(n)
    return SignedSqrt(coeff, basis.weights[x] * basis.weights[y])


def complementary_kernel(model: ModelParams, t: int, x: int, y: int) -> SignedSqrt:
    """Minus the projection onto the tail functions: K - delta on the support."""
    basis = slice_basis(model, t)
    if x not in basis.support or y not in basis.support:
        return SignedSqrt.zero()
    value = static_kernel(model, t, x, y)
    if x == y:
        value = value - 1
    return value


def _gauge_factor_sq(model: ModelParams, t: int) -> Fraction:
    """Squared diagonal gauge rationalizing kernel entries across time slices.

    The norm recursion n_i^{t+1} = n_i^t c_i(t)^2 kappa_t (rational square)
    has an i-independent core kappa_t; since c_0 = 1 identically the
    accumulated product of cores telescopes to the 0-th norm itself.
    """
    return slice_basis(model, t).norm2(0)


def extended_kernel(
    model: ModelParams, p: tuple[int, int], q: tuple[int, int]
) -> SignedSqrt:
    """Space-time kernel entry K(p; q) with p = (x, s), q = (y, t), exactly."""
    x, s = p
    y, t = q
    for u in (s, t):
        if not 0 <= u <= model.T:
            raise ValueError(f"time {u} outside 0..{model.T}")
    b_s = slice_basis(model, s)
    b_t = slice_basis(model, t)
    if x not in b_s.support or y not in b_t.support:
        return SignedSqrt.zero()
    w_pair = b_s.weights[x] * b_t.weights[y]
    terms = []
    if s >= t:
        for i in range(model.N):
            prod_c2 = Fraction(1)
            for j in range(t, s):
                c2 = coupling_coefficient_sq(model, j, i)
                if c2 == 0:
                    if b_s.q(i, x) != 0 and b_t.q(i, y) != 0:
                        raise GaugeSingularError(
                            f"c_{i}^{j} = 0 divides a nonzero term of K({p}; {q})"
                        )
                    prod_c2 = None
                    break
                prod_c2 *= c2
            if prod_c2 is None:
                continue
            coeff = b_s.q(i, x) * b_t.q(i, y)
            if coeff == 0:
                continue
            rad = w_pair / (b_s.norm2(i) * b_t.norm2(i) * prod_c2)
            terms.append(SignedSqrt(coeff, rad))
    else:
        top = min(b_s.params.M, b_t.params.M)
        for i in range(model.N, top + 1):
            prod_c2 = Fraction(1)
            for j in range(s, t):
                prod_c2 *= coupling_coefficient_sq(model, j, i)
                if prod_c2 == 0:
                    break
            if prod_c2 == 0:
                continue
            coeff = -b_s.q(i, x) * b_t.q(i, y)
            if coeff == 0:
                continue
            rad = w_pair * prod_c2 / (b_s.norm2(i) * b_t.norm2(i))
            terms.append(SignedSqrt(coeff, rad))
    return sum_signed_sqrts(terms)


def gauged_extended_kernel(
    model: ModelParams, p: tuple[int, int], q: tuple[int, int]
) -> Fraction:
    """The kernel entry in the rationalizing gauge (same correlation determinants)."""
    value = extended_kernel(model, p, q)
    if value.is_zero():
        return Fraction(0)
    x, s = p
    y, t = q
    scale = (
        slice_basis(model, t).weights[y]
        / slice_basis(model, s).weights[x]
        * _gauge_factor_sq(model, t)
        / _gauge_factor_sq(model, s)
    )
    root = sqrt_fraction(value.radicand * scale)
    if root is None:
        raise IncompatibleRadicalsError(
            f"gauged kernel entry K({p}; {q}) did not rationalize"
        )
    return value.coeff * root


def _det_fraction(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(row) for row in matrix]
    det = Fraction(1)
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if m[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        pivot = m[k][k]
        det *= pivot
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            if factor == 0:
                continue
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return det


@dataclass(frozen=True)
class DetReport:
    """Float determinant with partial-pivoting conditioning diagnostics."""

    value: float
    size: int
    min_pivot: float
    max_pivot: float

    @property
    def condition_hint(self) -> float:
        if self.min_pivot == 0.0:
            return float("inf")
        return self.max_pivot / self.min_pivot


def _det_float_report(matrix: list[list[float]]) -> DetReport:
    n = len(matrix)
    if n == 0:
        return DetReport(1.0, 0, 1.0, 1.0)
    m = [list(row) for row in matrix]
    det = 1.0
    min_pivot = float("inf")
    max_pivot = 0.0
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(m[i][k]))
        if m[pivot_row][k] == 0.0:
            return DetReport(0.0, n, 0.0, max_pivot)
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        pivot = m[k][k]
        det *= pivot
        min_pivot = min(min_pivot, abs(pivot))
        max_pivot = max(max_pivot, abs(pivot))
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return DetReport(det, n, min_pivot, max_pivot)


def _det_leibniz_signed(entries: tuple[tuple, ...]) -> Fraction:
    """Exact determinant of a small SignedSqrt matrix by permutation expansion.

    Every permutation product carries a perfect-square radicand (each point
    contributes its weight once per row and once per column), so the sum is
    rational.
    """
    from itertools import permutations

    n = len(entries)
    total = SignedSqrt.zero()
    for perm in permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        product = SignedSqrt(Fraction(-1 if inversions % 2 else 1))
        for i in range(n):
            product = product * entries[i][perm[i]]
            if product.is_zero():
                break
        total = total + product
    return total.as_rational()


@dataclass(frozen=True)
class KernelMatrix:
    """Extended-kernel values on all ordered pairs of query points.

    ``pristine`` marks a matrix whose entries are untransformed kernel
    values; its exact determinant can then go through the fast rational
    gauge.  Transformed matrices fall back to permutation expansion.
    """

    model: ModelParams
    points: tuple[tuple[int, int], ...]
    entries: tuple[tuple, ...]
    backend: NumericBackend
    pristine: bool = True

    @classmethod
    def build(
        cls, model: ModelParams, query: CorrelationQuery, backend: NumericBackend = EXACT
    ) -> KernelMatrix:
        pts = query.points
        rows = []
        for p in pts:
            row = []
            for q in pts:
                value = extended_kernel(model, p, q)
                row.append(value if backend.is_exact else float(value))
            rows.append(tuple(row))
        return cls(model, pts, tuple(rows), backend)

    def determinant(self):
        if self.backend.is_exact:
            if self.pristine:
                matrix = [
                    [gauged_extended_kernel(self.model, p, q) for q in self.points]
                    for p in self.points
                ]
                return _det_fraction(matrix)
            return _det_leibniz_signed(self.entries)
        return self.determinant_report().value

    def determinant_report(self) -> DetReport:
        matrix = [[float(v) for v in row] for row in self.entries]
        return _det_float_report(matrix)


def correlation(
    model: ModelParams,
    query: CorrelationQuery | list[tuple[int, int]],
    backend: NumericBackend = EXACT,
):
    """Probability that the process occupies every queried (x, t) point.

    Exact backend returns a Fraction; float backend a float from the
    pivoted elimination.
    """
    if not isinstance(query, CorrelationQuery):
        query = CorrelationQuery(tuple(query))
    for x, t in query.points:
        if not 0 <= t <= model.T:
            raise ValueError(f"query time {t} outside 0..{model.T}")
    if len(query) == 0:
        return Fraction(1) if backend.is_exact else 1.0
    return KernelMatrix.build(model, query, backend).determinant()


def gauge_transform(matrix: KernelMatrix, gauge) -> KernelMatrix:
    """Conjugate the kernel matrix by a pointwise gauge F: entry *= F(p)/F(q)."""
    factors = [gauge(x, t) for x, t in matrix.points]
    if any(f == 0 for f in factors):
        raise ValueError("gauge function vanishes at a queried point")
    rows = []
    for fi, row in zip(factors, matrix.entries):
        new_row = []
        for fj, value in zip(factors, row):
            if matrix.backend.is_exact:
                new_row.append(value * Fraction(fi) / Fraction(fj))
            else:
                new_row.append(value * fi / fj)
        rows.append(tuple(new_row))
    return KernelMatrix(
        matrix.model, matrix.points, tuple(rows), matrix.backend, pristine=False
    )
