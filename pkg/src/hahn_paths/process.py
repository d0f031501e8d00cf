"""The Markov process of particle configurations: slice laws, transitions, sampling.

Slice distributions are squared-Vandermonde ensembles with the slice weight;
one-step transitions have an exact product form and an equivalent
determinantal form.  The transfer matrix couples the orthonormal systems of
consecutive slices through the coupling coefficients c_i^t.  The sampler
enumerates the at most 2^N admissible mover subsets per step and draws from
the exact transition law.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .combinatorics import Configuration, ModelParams, PathFamily, det_bareiss
from .errors import ParameterRegimeError, SamplerSizeError
from .hahn import pochhammer, slice_basis, slice_params
from .radicals import SignedSqrt, sum_signed_sqrts

SAMPLER_MAX_PATHS = 20


def coupling_coefficient_sq(model: ModelParams, t: int, i: int) -> Fraction:
    """Square of c_i^t, clamped to zero where either factor turns negative."""
    if not 0 <= t <= model.T - 1:
        raise ValueError(f"t={t} outside 0..{model.T - 1}")
    N, T = model.N, model.T
    f1 = Fraction(t + N - i, t + N)
    f2 = Fraction(T + N - t - 1 - i, T + N - t - 1)
    if f1 < 0 or f2 < 0:
        return Fraction(0)
    return f1 * f2


@dataclass(frozen=True)
class CouplingCoefficients:
    """c_i^t for i = 0 .. dimension of the larger of slices t, t+1."""

    t: int
    values: tuple[SignedSqrt, ...]

    @property
    def squares(self) -> tuple[Fraction, ...]:
        return tuple(v.square() for v in self.values)


def coupling_coefficients(model: ModelParams, t: int) -> CouplingCoefficients:
    dim = max(slice_params(model, t).M, slice_params(model, t + 1).M) + 1
    values = tuple(
        SignedSqrt.sqrt(coupling_coefficient_sq(model, t, i)) for i in range(dim)
    )
    return CouplingCoefficients(t, values)


def _vandermonde_sq(z: tuple[int, ...]) -> int:
    v = 1
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            v *= (z[j] - z[i]) ** 2
    return v


def _leading_coefficient(k: int, alpha: int, beta: int, M: int) -> Fraction:
    return Fraction(
        pochhammer(k + alpha + beta + 1, k),
        pochhammer(-M, k) * pochhammer(alpha + 1, k),
    )


@lru_cache(maxsize=None)
def _normalization(model: ModelParams, t: int) -> Fraction:
    """Partition function of the slice-t ensemble, cross-computed two ways."""
    basis = slice_basis(model, t)
    p = basis.params
    if model.N > p.M + 1:
        raise ValueError(f"N={model.N} exceeds support size {p.M + 1} at t={t}")
    z_norms = Fraction(1)
    for k in range(model.N):
        kappa = _leading_coefficient(k, p.alpha, p.beta, p.M)
        z_norms *= basis.norm2(k) / (kappa * kappa)
    z_subsets = Fraction(0)
    for subset in combinations(basis.support, model.N):
        w_prod = Fraction(1)
        for x in subset:
            w_prod *= basis.weights[x]
        z_subsets += _vandermonde_sq(subset) * w_prod
    assert z_norms == z_subsets, (
        f"normalization mismatch at t={t} of {model}: {z_norms} vs {z_subsets}"
    )
    return z_norms


def slice_distribution(model: ModelParams, t: int, z: tuple[int, ...]) -> Fraction:
    """Probability of the configuration z at time t, exactly."""
    z = tuple(z)
    if len(z) != model.N:
        raise ValueError(f"configuration has {len(z)} points, expected {model.N}")
    if any(b <= a for a, b in zip(z, z[1:])):
        raise ValueError(f"configuration must be strictly increasing: {z}")
    basis = slice_basis(model, t)
    if any(x not in basis.support for x in z):
        return Fraction(0)
    w_prod = Fraction(1)
    for x in z:
        w_prod *= basis.weights[x]
    return _vandermonde_sq(z) * w_prod / _normalization(model, t)


def _validate_config(model: ModelParams, t: int, z: tuple[int, ...]) -> None:
    if len(z) != model.N:
        raise ValueError(f"configuration has {len(z)} points, expected {model.N}")
    if any(b <= a for a, b in zip(z, z[1:])):
        raise ValueError(f"configuration must be strictly increasing: {z}")
    support = slice_basis(model, t).support
    if any(x not in support for x in z):
        raise ValueError(f"configuration {z} not inside the time-{t} support")


def transition_probability(
    model: ModelParams, t: int, x: tuple[int, ...], y: tuple[int, ...]
) -> Fraction:
    """One-step law P(H_{t+1} = y | H_t = x) in exact product form."""
    x, y = tuple(x), tuple(y)
    _validate_config(model, t, x)
    _validate_config(model, t + 1, y)
    N, S, T = model.N, model.S, model.T
    if any(d not in (0, 1) for d in (yi - xi for xi, yi in zip(x, y))):
        return Fraction(0)
    num = 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= y[j] - y[i]
    den = 1
    for i in range(N):
        for j in range(i + 1, N):
            den *= x[j] - x[i]
    for xi, yi in zip(x, y):
        if yi == xi + 1:
            num *= N + S - xi - 1
        else:
            num *= xi + T - t - S
    return Fraction(num, den * pochhammer(T - t, N))


def transition_probability_determinantal(
    model: ModelParams, t: int, x: tuple[int, ...], y: tuple[int, ...]
) -> Fraction:
    """The same one-step law via the bidiagonal determinant form."""
    x, y = tuple(x), tuple(y)
    _validate_config(model, t, x)
    _validate_config(model, t + 1, y)
    N, S, T = model.N, model.S, model.T
    matrix = [
        [
            (N + S - xi - 1) * (yj == xi + 1) + (T - t - S + xi) * (yj == xi)
            for yj in y
        ]
        for xi in x
    ]
    det = det_bareiss(matrix)
    num = det
    den = pochhammer(T - t, N)
    for i in range(N):
        for j in range(i + 1, N):
            num *= y[j] - y[i]
            den *= x[j] - x[i]
    return Fraction(num, den)


def transfer_matrix(model: ModelParams, t: int, x: int, y: int) -> SignedSqrt:
    """Bidiagonal transfer-matrix entry v_{t,t+1}(x, y) in closed form."""
    N, S, T = model.N, model.S, model.T
    if not 0 <= t <= T - 1:
        raise ValueError(f"t={t} outside 0..{T - 1}")
    if x not in slice_basis(model, t).support or y not in slice_basis(model, t + 1).support:
        return SignedSqrt.zero()
    den = (t + N) * (T + N - t - 1)
    if y == x + 1:
        num = (S + N - x - 1) * (x + 1)
    elif y == x:
        num = (T - t - S + x) * (t + N - x)
    else:
        return SignedSqrt.zero()
    if num < 0:
        raise ParameterRegimeError(f"negative transfer weight at t={t}, x={x}, y={y}")
    return SignedSqrt.sqrt(Fraction(num, den))


def transfer_matrix_series(model: ModelParams, t: int, x: int, y: int) -> SignedSqrt:
    """v_{t,t+1}(x, y) as the coupled series sum_k c_k^t f_k^t(x) f_k^{t+1}(y)."""
    b_t = slice_basis(model, t)
    b_next = slice_basis(model, t + 1)
    if x not in b_t.support or y not in b_next.support:
        return SignedSqrt.zero()
    terms = []
    for k in range(min(b_t.params.M, b_next.params.M) + 1):
        c2 = coupling_coefficient_sq(model, t, k)
        if c2 == 0:
            continue
        coeff = b_t.q(k, x) * b_next.q(k, y)
        rad = c2 * b_t.weights[x] * b_next.weights[y] / (b_t.norm2(k) * b_next.norm2(k))
        terms.append(SignedSqrt(coeff, rad))
    return sum_signed_sqrts(terms)


@dataclass(frozen=True)
class Trajectory:
    """A full history of the configuration over t = 0..T."""

    model: ModelParams
    configurations: tuple[Configuration, ...]

    def __post_init__(self):
        model = self.model
        if len(self.configurations) != model.T + 1:
            raise ValueError("trajectory must cover t = 0..T")
        first = self.configurations[0].positions
        if first != tuple(range(model.N)):
            raise ValueError(f"trajectory must start at {tuple(range(model.N))}")
        for t, conf in enumerate(self.configurations):
            if conf.t != t:
                raise ValueError(f"configuration at index {t} has t={conf.t}")
        for a, b in zip(self.configurations, self.configurations[1:]):
            diffs = [y - x for x, y in zip(a.positions, b.positions)]
            if any(d not in (0, 1) for d in diffs):
                raise ValueError(f"illegal step between t={a.t} and t={b.t}")
        last = self.configurations[-1].positions
        expected = tuple(model.S + i for i in range(model.N))
        if last != expected:
            raise ValueError(f"trajectory must end at {expected}")

    def moves(self, i: int) -> tuple[int, ...]:
        """Per-step increments of path i."""
        return tuple(
            b.positions[i] - a.positions[i]
            for a, b in zip(self.configurations, self.configurations[1:])
        )

    def as_path_family(self) -> PathFamily:
        return PathFamily(
            self.model, tuple(self.moves(i) for i in range(self.model.N))
        )


@lru_cache(maxsize=None)
def _transition_table(
    model: ModelParams, t: int, positions: tuple[int, ...]
) -> tuple[tuple[tuple[int, ...], ...], tuple[Fraction, ...]]:
    """Admissible successor configurations and their exact CDF."""
    candidates = []
    probs = []
    for mv in product((0, 1), repeat=model.N):
        y = tuple(p + m for p, m in zip(positions, mv))
        if any(b <= a for a, b in zip(y, y[1:])):
            continue
        support = slice_basis(model, t + 1).support
        if any(v not in support for v in y):
            continue
        p = transition_probability(model, t, positions, y)
        if p > 0:
            candidates.append(y)
            probs.append(p)
    total = sum(probs, start=Fraction(0))
    assert total == 1, f"transition row sum {total} != 1 at t={t}, x={positions}"
    cdf = []
    acc = Fraction(0)
    for p in probs:
        acc += p
        cdf.append(acc)
    return tuple(candidates), tuple(cdf)


def sample_trajectory(model: ModelParams, seed: int) -> Trajectory:
    """Draw one trajectory exactly from the uniform path-family measure.

    Reproducibility contract: the generator is Python's Mersenne Twister
    seeded with the given 64-bit integer; each step consumes exactly one
    64-bit draw u = getrandbits(64) / 2**64 and walks the exact CDF of the
    one-step law.  Identical seeds give identical trajectories on any
    platform.
    """
    if model.N > SAMPLER_MAX_PATHS:
        raise SamplerSizeError(
            f"subset sampler limited to N <= {SAMPLER_MAX_PATHS}, got N={model.N}"
        )
    rng = random.Random(seed)
    positions = tuple(range(model.N))
    configs = [Configuration(0, positions)]
    for t in range(model.T):
        candidates, cdf = _transition_table(model, t, positions)
        u = Fraction(rng.getrandbits(64), 2**64)
        idx = 0
        while cdf[idx] <= u:
            idx += 1
        positions = candidates[idx]
        configs.append(Configuration(t + 1, positions))
    return Trajectory(model, tuple(configs))
