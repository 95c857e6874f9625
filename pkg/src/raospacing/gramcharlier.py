"""Gram-Charlier approximation to the null distribution of ``U_n``.

The statistic is standardized to ``z = (t - mean) / sd`` and the CDF is

    Phi(z) - phi(z) * sum_{j=3}^{d} B_j(0, 0, l_3, ..., l_j) He_{j-1}(z) / j!

where ``l_j`` are standardized cumulants, ``B_j`` complete exponential Bell
polynomials and ``He`` probabilists' Hermite polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr

from .errors import ApproximationError
from .moments import DEFAULT_ORDER, MAX_ORDER, MIN_ORDER, CumulantSet, null_cumulants

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def hermite(j: int, x):
    """Probabilists' Hermite polynomial ``He_j(x)``.

    Uses ``He_{j+1}(x) = x He_j(x) - j He_{j-1}(x)``; ``x`` may be an array.
    """
    if j < 0:
        raise ValueError("degree must be nonnegative")
    x = np.asarray(x, dtype=float)
    h_prev, h = np.ones_like(x), x
    if j == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    for i in range(1, j):
        h_prev, h = h, x * h - i * h_prev
    return h if h.ndim else float(h)


def bell_arguments(cumulants: CumulantSet, order: Optional[int] = None) -> tuple[float, ...]:
    """``(0, 0, l_3, ..., l_d)``: the first two slots are zeroed by standardization."""
    order = order or cumulants.order
    return (0.0, 0.0) + tuple(cumulants.standardized(j) for j in range(3, order + 1))


def bell_complete_all(args: Sequence[float], degree: Optional[int] = None) -> list[float]:
    """``[B_0, ..., B_degree]`` by ``B_{m+1} = sum_k C(m, k) B_{m-k} x_{k+1}``."""
    degree = len(args) if degree is None else degree
    if degree > len(args):
        raise ValueError(f"degree {degree} needs {degree} arguments, got {len(args)}")
    b = [1.0]
    for m in range(degree):
        b.append(math.fsum(math.comb(m, k) * b[m - k] * args[k] for k in range(m + 1)))
    return b


def bell_complete(j: int, args: Sequence[float]) -> float:
    """Complete exponential Bell polynomial ``B_j(x_1, ..., x_j)``."""
    return bell_complete_all(args, j)[j]


def _partitions(j: int, k: int, largest: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    # partitions of j into exactly k parts, nonincreasing
    largest = j if largest is None else largest
    if k == 0:
        if j == 0:
            yield ()
        return
    for first in range(min(j - k + 1, largest), 0, -1):
        for rest in _partitions(j - first, k - 1, first):
            yield (first,) + rest


def bell_partial(j: int, k: int, args: Sequence[float]) -> float:
    """Partial Bell polynomial ``B_{j,k}`` by enumerating partitions of ``j``.

    Direct transcription of the multinomial definition; an oracle for the
    recurrence, not a fast path.
    """
    total = []
    for parts in _partitions(j, k):
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        term = math.factorial(j)
        for i, c in counts.items():
            term *= args[i - 1] ** c / (math.factorial(i) ** c * math.factorial(c))
        total.append(term)
    return math.fsum(total)


def bell_complete_enumerated(j: int, args: Sequence[float]) -> float:
    """``B_j`` as ``sum_k B_{j,k}`` over partition enumeration."""
    if j == 0:
        return 1.0
    return math.fsum(bell_partial(j, k, args) for k in range(1, j + 1))


@dataclass(frozen=True)
class CdfValue:
    """A CDF evaluation with its diagnostics.

    ``raw`` is the unclamped series value; ``clamped`` is set when it fell
    outside ``[0, 1]``.
    """

    value: float
    raw: float
    clamped: bool
    outside_support: bool


@dataclass(frozen=True)
class CdfApproximation:
    """Truncated expansion for one ``(n, order)``, reusable across ``t``.

    ``bell_values[i]`` holds ``B_{i+3}``.
    """

    n: int
    order: int
    mean: float
    sd: float
    bell_values: tuple[float, ...]

    @classmethod
    def from_cumulants(cls, cumulants: CumulantSet, order: Optional[int] = None) -> "CdfApproximation":
        order = order or cumulants.order
        if not MIN_ORDER <= order <= cumulants.order:
            raise ValueError(f"order must be in {MIN_ORDER}..{cumulants.order}, got {order}")
        b = bell_complete_all(bell_arguments(cumulants, order), order)
        return cls(
            n=cumulants.n,
            order=order,
            mean=cumulants.mean,
            sd=cumulants.sd,
            bell_values=tuple(b[3:]),
        )

    @property
    def upper(self) -> float:
        """Right end of the support, ``2*pi*(1 - 1/n)``."""
        return 2.0 * math.pi * (1.0 - 1.0 / self.n)

    def standardize(self, t):
        return (np.asarray(t, dtype=float) - self.mean) / self.sd

    def _correction(self, z: np.ndarray) -> np.ndarray:
        # sum_j B_j He_{j-1}(z) / j!, Hermite values built alongside
        h_prev, h = np.ones_like(z), z  # He_0, He_1
        total = np.zeros_like(z)
        for j in range(2, self.order):
            h_prev, h = h, z * h - (j - 1) * h_prev  # now He_j
            total += self.bell_values[j - 2] * h / math.factorial(j + 1)
        return total

    def raw_cdf(self, t):
        """Series value before clamping; may stray outside ``[0, 1]``."""
        z = self.standardize(t)
        out = ndtr(z) - _INV_SQRT_2PI * np.exp(-0.5 * z * z) * self._correction(z)
        return out if out.ndim else float(out)

    def cdf(self, t):
        out = np.clip(self.raw_cdf(t), 0.0, 1.0)
        return out if np.ndim(out) else float(out)

    def p_value(self, t):
        """Upper-tail probability ``Pr(U_n > t)``."""
        out = 1.0 - self.cdf(t)
        return out if np.ndim(out) else float(out)

    def density(self, t):
        """Derivative of the truncated CDF with respect to ``t``."""
        z = self.standardize(t)
        h_prev, h = np.ones_like(z), z
        total = np.ones_like(z)
        for j in range(2, self.order + 1):
            h_prev, h = h, z * h - (j - 1) * h_prev
            if j >= 3:
                total += self.bell_values[j - 3] * h / math.factorial(j)
        out = _INV_SQRT_2PI * np.exp(-0.5 * z * z) * total / self.sd
        return out if out.ndim else float(out)

    def evaluate(self, t: float) -> CdfValue:
        raw = self.raw_cdf(t)
        value = min(max(raw, 0.0), 1.0)
        return CdfValue(
            value=value,
            raw=raw,
            clamped=value != raw,
            outside_support=not 0.0 <= t <= self.upper,
        )

    def monotone_bracket(self, grid_size: int = 4001) -> tuple[float, float]:
        """Largest grid interval around the mean where the CDF is nondecreasing.

        The truncated series can wiggle far in the tails; root searches are
        confined to the interval returned here.
        """
        grid = np.linspace(0.0, self.upper, grid_size)
        values = self.raw_cdf(grid)
        ok = np.diff(values) >= -1e-15
        start = int(np.clip(np.searchsorted(grid, self.mean) - 1, 0, grid_size - 2))
        lo = start
        while lo > 0 and ok[lo - 1]:
            lo -= 1
        hi = start
        while hi < grid_size - 2 and ok[hi + 1]:
            hi += 1
        if not ok[start]:
            raise ApproximationError(f"truncated CDF decreases at the mean for n={self.n}")
        return float(grid[lo]), float(grid[hi + 1])

    def critical_value(self, alpha: float) -> float:
        """Statistic in radians whose upper-tail probability equals ``alpha``."""
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        lo, hi = self.monotone_bracket()
        f_lo = self.p_value(lo) - alpha
        f_hi = self.p_value(hi) - alpha
        if f_lo * f_hi > 0:
            raise ApproximationError(
                f"no root of p_value = {alpha} inside the monotone range "
                f"[{math.degrees(lo):.4f}, {math.degrees(hi):.4f}] deg for n={self.n}"
            )
        return brentq(lambda t: self.p_value(t) - alpha, lo, hi, xtol=1e-10, rtol=1e-14)


@lru_cache(maxsize=256)
def approximation(n: int, order: int = DEFAULT_ORDER) -> CdfApproximation:
    """Cached :class:`CdfApproximation` for the null distribution of ``U_n``."""
    if not MIN_ORDER <= order <= MAX_ORDER:
        raise ValueError(f"order must be in {MIN_ORDER}..{MAX_ORDER}, got {order}")
    return CdfApproximation.from_cumulants(null_cumulants(n, order))


def _resolve(n: int, cumulants: Optional[CumulantSet], order: int) -> CdfApproximation:
    if cumulants is None:
        return approximation(n, order)
    if cumulants.n and cumulants.n != n:
        raise ValueError(f"cumulants are for n={cumulants.n}, not n={n}")
    return CdfApproximation.from_cumulants(cumulants)


def cdf(n: int, t, cumulants: Optional[CumulantSet] = None, order: int = DEFAULT_ORDER):
    """Approximate ``Pr(U_n <= t)`` for ``t`` in radians, clamped to ``[0, 1]``."""
    return _resolve(n, cumulants, order).cdf(t)


def p_value(n: int, t, cumulants: Optional[CumulantSet] = None, order: int = DEFAULT_ORDER):
    """Approximate ``Pr(U_n > t)``."""
    return _resolve(n, cumulants, order).p_value(t)


def critical_value(
    n: int,
    alpha: float,
    cumulants: Optional[CumulantSet] = None,
    order: int = DEFAULT_ORDER,
) -> float:
    """Upper-``alpha`` critical value of ``U_n`` in degrees.

    Raises
    ------
    ApproximationError
        If the truncated CDF never crosses ``1 - alpha`` where it is monotone,
        which can happen for extreme ``alpha`` at very small ``n``.
    """
    return math.degrees(_resolve(n, cumulants, order).critical_value(alpha))
