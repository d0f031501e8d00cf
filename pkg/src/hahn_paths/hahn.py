"""Hahn weights, polynomials, norms, and the per-time parameterization.

Each time slice t of the path process carries a discrete orthogonal
polynomial system on its support.  Four parameter regimes (cases I-IV)
cover the growing / steady / shrinking phases of the support; on boundary
times the admissible parameterizations coincide and the lower-numbered
case is reported.

All evaluation is exact rational arithmetic.  The weight is kept in the
manifestly positive factorial form; the Pochhammer form (with large
negative integer parameters) is used only where the classical identities
need it, with its constant sign tracked explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .combinatorics import ModelParams
from .errors import DegenerateParameterError, ParameterRegimeError
from .radicals import SignedSqrt


class Case(Enum):
    I = 1
    II = 2
    III = 3
    IV = 4


@dataclass(frozen=True)
class NumericBackend:
    """EXACT keeps every value rational; FLOAT rounds exact values to binary64."""

    mode: str
    tol: float = 1e-10

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown backend mode {self.mode!r}")
        if self.mode == "float" and not self.tol > 0:
            raise ValueError("tol must be positive in float mode")

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"


EXACT = NumericBackend("exact")
FLOAT = NumericBackend("float")


@dataclass(frozen=True)
class SliceParams:
    """Hahn data of one time slice: case tag, (alpha, beta, M), shift, support."""

    t: int
    case: Case
    alpha: int
    beta: int
    M: int
    shift: int
    support_lo: int
    support_hi: int


def pochhammer(a, n: int):
    """Rising factorial a (a+1) ... (a+n-1)."""
    result = 1
    for i in range(n):
        result *= a + i
    return result


def _case_params(model: ModelParams, t: int, case: Case) -> tuple[int, int, int, int]:
    N, S, T = model.N, model.S, model.T
    if case is Case.I:
        return (t + N - 1, -S - N, S - T - N, 0)
    if case is Case.II:
        return (S + N - 1, -t - N, t - N - T, 0)
    if case is Case.III:
        return (T + N - S - 1, -T + t - N, -t - N, t + S - T)
    return (T + N - t - 1, -T - N + S, -S - N, t + S - T)


def _admissible_cases(model: ModelParams, t: int) -> list[Case]:
    S, T = model.S, model.T
    cases = []
    if t <= S and t <= T - S:
        cases.append(Case.I)
    if S <= t <= T - S:
        cases.append(Case.II)
    if T - S <= t <= S:
        cases.append(Case.III)
    if t >= S and t >= T - S:
        cases.append(Case.IV)
    return cases


def slice_params(model: ModelParams, t: int) -> SliceParams:
    """Case tag and Hahn parameters of the time-t slice.

    On boundary times several cases apply; their parameter tuples are
    checked to agree and the lower-numbered case wins.
    """
    if not 0 <= t <= model.T:
        raise ValueError(f"t={t} outside 0..{model.T}")
    cases = _admissible_cases(model, t)
    params = [_case_params(model, t, case) for case in cases]
    if any(p != params[0] for p in params[1:]):
        raise ParameterRegimeError(
            f"boundary cases disagree at t={t} for {model}: {list(zip(cases, params))}"
        )
    M, alpha, beta, shift = params[0]
    lo = max(0, t + model.S - model.T)
    hi = min(t, model.S) + model.N - 1
    if hi - lo != M or lo != shift:
        raise ParameterRegimeError(
            f"support [{lo}, {hi}] inconsistent with M={M}, shift={shift} at t={t}"
        )
    return SliceParams(t, cases[0], alpha, beta, M, shift, lo, hi)


def slice_weight(model: ModelParams, t: int, x: int) -> Fraction:
    """Factorial-form weight at (t, x); zero outside the slice support."""
    N, S, T = model.N, model.S, model.T
    if not 0 <= t <= T:
        raise ValueError(f"t={t} outside 0..{T}")
    args = (x, t - x + N - 1, S - x + N - 1, T - t - S + x)
    if any(a < 0 for a in args):
        return Fraction(0)
    denom = 1
    for a in args:
        denom *= factorial(a)
    return Fraction(1, denom)


def hahn_q(k: int, xp: int, alpha: int, beta: int, M: int) -> Fraction:
    """Hahn polynomial Q_k(x'; alpha, beta, M) via its terminating series.

    Exact rational evaluation; valid for any integer x' (it is a polynomial).
    Raises DegenerateParameterError if a denominator Pochhammer vanishes
    before the numerator terminates the series.
    """
    if not 0 <= k <= M:
        raise ValueError(f"need 0 <= k <= M, got k={k}, M={M}")
    total = Fraction(1)
    term = Fraction(1)
    for i in range(1, k + 1):
        num = (-k + i - 1) * (-xp + i - 1) * (k + alpha + beta + i)
        if num == 0:
            break
        den = (-M + i - 1) * (alpha + i) * i
        if den == 0:
            raise DegenerateParameterError(
                f"zero denominator at term {i} of Q_{k}(x'={xp}; {alpha}, {beta}, {M})"
            )
        term *= Fraction(num, den)
        total += term
    return total


def _pochhammer_weight(xp: int, alpha: int, beta: int, M: int) -> Fraction:
    return Fraction(
        pochhammer(alpha + 1, xp) * pochhammer(beta + 1, M - xp),
        factorial(xp) * factorial(M - xp),
    )


def _hahn_norm2_signed(k: int, alpha: int, beta: int, M: int) -> Fraction:
    """Closed-form squared norm of Q_k w.r.t. the (signed) Pochhammer weight."""
    num = (-1) ** k * pochhammer(k + alpha + beta + 1, M + 1) * pochhammer(beta + 1, k)
    num *= factorial(k)
    den = (2 * k + alpha + beta + 1) * pochhammer(alpha + 1, k) * pochhammer(-M, k)
    den *= factorial(M)
    if den == 0:
        raise DegenerateParameterError(
            f"degenerate norm denominator for k={k}, alpha={alpha}, beta={beta}, M={M}"
        )
    return Fraction(num, den)


def hahn_norm2(k: int, alpha: int, beta: int, M: int) -> Fraction:
    """Squared norm of Q_k w.r.t. the positive (sign-normalized) weight.

    The closed form is cross-checked against the direct sum
    sum_x w(x) Q_k(x)^2 on every call; a mismatch or a non-positive result
    raises ParameterRegimeError.
    """
    weights = [_pochhammer_weight(xp, alpha, beta, M) for xp in range(M + 1)]
    signs = {1 if w > 0 else (-1 if w < 0 else 0) for w in weights}
    signs.discard(0)
    if len(signs) != 1:
        raise ParameterRegimeError(
            f"weight sign is not constant on 0..{M} for alpha={alpha}, beta={beta}"
        )
    sigma = signs.pop()
    closed = _hahn_norm2_signed(k, alpha, beta, M)
    direct = sum(w * hahn_q(k, xp, alpha, beta, M) ** 2 for xp, w in enumerate(weights))
    if closed != direct:
        raise ParameterRegimeError(
            f"closed-form norm {closed} != direct sum {direct} "
            f"(k={k}, alpha={alpha}, beta={beta}, M={M})"
        )
    result = sigma * closed
    if result <= 0:
        raise ParameterRegimeError(f"non-positive squared norm {result}")
    return result


class _SliceBasis:
    """Cached per-slice data: weights, polynomial values, norms.

    Norms are taken w.r.t. the factorial-form weight, obtained from the
    closed form through the constant Pochhammer/factorial ratio lambda
    (whose constancy across the support is asserted here).
    """

    def __init__(self, model: ModelParams, t: int):
        self.model = model
        self.params = slice_params(model, t)
        p = self.params
        self.support = range(p.support_lo, p.support_hi + 1)
        self.weights = {x: slice_weight(model, t, x) for x in self.support}
        self._q_memo: dict[tuple[int, int], Fraction] = {}
        self._norm_memo: dict[int, Fraction] = {}
        self.lam = self._proportionality_constant()

    def _proportionality_constant(self) -> Fraction:
        p = self.params
        lam = None
        poch_a = 1
        for xp in range(p.M + 1):
            x = xp + p.shift
            w_p = Fraction(
                poch_a * pochhammer(p.beta + 1, p.M - xp),
                factorial(xp) * factorial(p.M - xp),
            )
            ratio = w_p / self.weights[x]
            if lam is None:
                lam = ratio
            elif ratio != lam:
                raise ParameterRegimeError(
                    f"Pochhammer/factorial weight ratio not constant on slice t={p.t}"
                )
            poch_a *= p.alpha + 1 + xp
        if lam is None or lam * (-1) ** p.M <= 0:
            raise ParameterRegimeError(f"unexpected weight sign on slice t={p.t}")
        return lam

    def q(self, k: int, x: int) -> Fraction:
        """Q_k at model coordinate x (shift applied), as a polynomial value."""
        key = (k, x)
        value = self._q_memo.get(key)
        if value is None:
            p = self.params
            value = hahn_q(k, x - p.shift, p.alpha, p.beta, p.M)
            self._q_memo[key] = value
        return value

    def norm2(self, k: int) -> Fraction:
        """Squared norm of Q_k w.r.t. the factorial-form weight."""
        value = self._norm_memo.get(k)
        if value is None:
            p = self.params
            value = _hahn_norm2_signed(k, p.alpha, p.beta, p.M) / self.lam
            if value <= 0:
                raise ParameterRegimeError(
                    f"non-positive norm at k={k}, slice t={p.t} of {self.model}"
                )
            self._norm_memo[k] = value
        return value

    def f(self, n: int, x: int) -> SignedSqrt:
        if x not in self.support:
            return SignedSqrt.zero()
        return SignedSqrt(self.q(n, x), self.weights[x] / self.norm2(n))


@lru_cache(maxsize=None)
def slice_basis(model: ModelParams, t: int) -> _SliceBasis:
    return _SliceBasis(model, t)


def orthonormal_function(model: ModelParams, n: int, t: int, x: int) -> SignedSqrt:
    """f_n at (t, x): Q_n(x') sqrt(w(x)) / sqrt(norm2), zero off the support."""
    basis = slice_basis(model, t)
    if not 0 <= n <= basis.params.M:
        raise ValueError(f"n={n} outside 0..{basis.params.M}")
    return basis.f(n, x)


def contiguous_relation_residuals(
    model: ModelParams, t: int, k: int, x: int
) -> tuple[Fraction, Fraction]:
    """LHS - RHS of the two contiguous relations tying neighboring slices.

    First relation lowers M by one at fixed (alpha, beta); second shifts
    (alpha, beta) to (alpha+1, beta-1) at fixed M.  Both are exactly zero
    wherever all polynomial evaluations are defined.
    """
    p = slice_params(model, t)
    xp = x - p.shift
    alpha, beta, M = p.alpha, p.beta, p.M
    r1 = (
        xp * hahn_q(k, xp - 1, alpha, beta, M - 1)
        + (M - xp) * hahn_q(k, xp, alpha, beta, M - 1)
        - M * hahn_q(k, xp, alpha, beta, M)
    )
    r2 = (
        xp * hahn_q(k, xp - 1, alpha + 1, beta - 1, M)
        + (-xp - alpha - 1) * hahn_q(k, xp, alpha + 1, beta - 1, M)
        + (alpha + 1) * hahn_q(k, xp, alpha, beta, M)
    )
    return (r1, r2)


def dual_orthogonality_residual(
    alpha: int, beta: int, M: int, x: int, y: int
) -> Fraction:
    """Residual of the dual orthogonality relation at lattice points (x, y)."""
    if not (0 <= x <= M and 0 <= y <= M):
        raise ValueError(f"need 0 <= x, y <= M, got x={x}, y={y}, M={M}")
    total = Fraction(0)
    for k in range(M + 1):
        coeff = 1 / _hahn_norm2_signed(k, alpha, beta, M)
        total += coeff * hahn_q(k, x, alpha, beta, M) * hahn_q(k, y, alpha, beta, M)
    target = Fraction(0)
    if x == y:
        target = 1 / _pochhammer_weight(x, alpha, beta, M)
    return total - target


def difference_relation_residual(model: ModelParams, t: int, k: int, x: int) -> Fraction:
    """Residual of the second-order difference equation satisfied by Q_k.

    Holds as a polynomial identity, so x may sit anywhere (neighbor values
    outside the support are polynomial evaluations).
    """
    p = slice_params(model, t)
    xp = x - p.shift
    alpha, beta, M = p.alpha, p.beta, p.M
    b_coeff = (xp + alpha + 1) * (xp - M)
    d_coeff = xp * (xp - beta - M - 1)
    q_mid = hahn_q(k, xp, alpha, beta, M)
    q_up = hahn_q(k, xp + 1, alpha, beta, M)
    q_dn = hahn_q(k, xp - 1, alpha, beta, M)
    lhs = k * (k + alpha + beta + 1) * q_mid
    rhs = b_coeff * (q_up - q_mid) + d_coeff * (q_dn - q_mid)
    return lhs - rhs
