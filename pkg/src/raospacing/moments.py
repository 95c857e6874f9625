"""Null moments and cumulants of the spacing statistic.

Raw moments come from a closed sum over a triangular integer table. Every
term is positive, so the sum is formed in the log domain. The cumulant
recursion, by contrast, cancels heavily once the standard deviation is
small relative to the mean (about ``order * log10(n)`` digits are lost), so
moments feeding it are carried in mpmath multiprecision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

import mpmath

from .errors import DegenerateVarianceError, UnsupportedRangeError

DEFAULT_ORDER = 10
MAX_ORDER = 10
MIN_ORDER = 3

# exact-integer range of the Stirling oracle
STIRLING_MAX_N = 25
STIRLING_MAX_R = 10


@dataclass(frozen=True)
class CoefficientTable:
    """Rows ``a_1^(r) .. a_r^(r)`` for ``r = 1 .. max_order`` as Python ints."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def max_order(self) -> int:
        return len(self.rows)

    def __getitem__(self, rj: tuple[int, int]) -> int:
        r, j = rj
        if not 1 <= r <= self.max_order:
            raise IndexError(f"order {r} outside table of order {self.max_order}")
        if j < 1 or j > r:
            return 0
        return self.rows[r - 1][j - 1]

    def row(self, r: int) -> tuple[int, ...]:
        return self.rows[r - 1]


@dataclass(frozen=True)
class MomentSet:
    """Raw moments ``E(U_n^r)``, ``r = 1 .. order``, as mpmath numbers.

    ``dps`` records the decimal precision the moments were computed at.
    """

    n: int
    raw_moments: tuple
    dps: int

    @property
    def order(self) -> int:
        return len(self.raw_moments)

    def as_floats(self) -> list[float]:
        return [float(m) for m in self.raw_moments]


@dataclass(frozen=True)
class CumulantSet:
    """Raw cumulants ``k_1 .. k_d`` and standardized ``k_j / k_2**(j/2)``.

    ``standardized_cumulants[0]`` is the order-3 value.
    """

    n: int
    raw_cumulants: tuple[float, ...]
    standardized_cumulants: tuple[float, ...]

    @property
    def order(self) -> int:
        return len(self.raw_cumulants)

    @property
    def mean(self) -> float:
        return self.raw_cumulants[0]

    @property
    def sd(self) -> float:
        return math.sqrt(self.raw_cumulants[1])

    def standardized(self, j: int) -> float:
        if j < 3:
            return 0.0
        return self.standardized_cumulants[j - 3]


def rising_factorial(n: int, r: int) -> int:
    """``n (n+1) ... (n+r-1)``; 1 when ``r == 0``."""
    return math.prod(range(n, n + r))


def falling_factorial(n: int, r: int) -> int:
    """``n (n-1) ... (n-r+1)``; 1 when ``r == 0`` and 0 when ``r > n >= 0``."""
    return math.prod(range(n - r + 1, n + 1)) if r <= n else 0


def build_coefficients(r_max: int = MAX_ORDER) -> CoefficientTable:
    """Triangular table of moment coefficients.

    ``a_r^(r) = 1``, ``a_1^(r+1) = (r+1) a_1^(r)`` and
    ``a_j^(r+1) = (r+j) a_j^(r) + a_{j-1}^(r)`` for ``2 <= j <= r``.
    Entries are exact Python integers, so any ``r_max`` is representable.
    """
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    rows = [(1,)]
    for r in range(1, r_max):
        prev = rows[-1]
        row = [(r + 1) * prev[0]]
        row.extend((r + j) * prev[j - 1] + prev[j - 2] for j in range(2, r + 1))
        row.append(1)
        rows.append(tuple(row))
    return CoefficientTable(tuple(rows))


@lru_cache(maxsize=None)
def _table(r_max: int) -> CoefficientTable:
    return build_coefficients(r_max)


def default_dps(n: int, order: int) -> int:
    """Decimal digits needed to keep ~25 significant digits in cumulants."""
    return 30 + int(math.ceil(order * math.log10(max(n, 2))))


def _log_moment(n: int, r: int, table: CoefficientTable):
    # log E(U_n^r) at the current mpmath precision
    lf = mpmath.loggamma
    terms = [
        mpmath.log(table[r, j]) + lf(n + 1) - lf(n - j + 1) + (n + r - 1) * mpmath.log(n - j)
        for j in range(1, min(r, n - 1) + 1)
    ]
    top = max(terms)
    lse = top + mpmath.log(mpmath.fsum(mpmath.exp(t - top) for t in terms))
    log_rising = lf(n + r) - lf(n)
    return r * mpmath.log(2 * mpmath.pi) - (n + r - 1) * mpmath.log(n) - log_rising + lse


def _check_nr(n: int, r: int, table: CoefficientTable) -> None:
    if n < 2:
        raise ValueError(f"sample size must be at least 2, got {n}")
    if not 1 <= r <= table.max_order:
        raise ValueError(f"moment order must be in 1..{table.max_order}, got {r}")


def raw_moment(n: int, r: int, table: Optional[CoefficientTable] = None) -> float:
    """``E(U_n^r)`` under uniformity, as a float.

    Evaluated as a log-sum-exp of positive terms, so it stays finite for
    sample sizes in the millions.
    """
    table = table or _table(MAX_ORDER)
    _check_nr(n, r, table)
    with mpmath.workdps(30):
        return float(mpmath.exp(_log_moment(n, r, table)))


def moment_set(n: int, order: int = DEFAULT_ORDER, dps: Optional[int] = None) -> MomentSet:
    """Raw moments of orders ``1 .. order`` at ``dps`` decimal digits."""
    table = _table(max(order, MAX_ORDER))
    _check_nr(n, order, table)
    dps = dps or default_dps(n, order)
    with mpmath.workdps(dps):
        moments = tuple(+mpmath.exp(_log_moment(n, r, table)) for r in range(1, order + 1))
    return MomentSet(n=n, raw_moments=moments, dps=dps)


def second_moment_closed_form(n: int) -> float:
    """Closed form of ``E(U_n^2)``, written via ``log1p`` to survive large n."""
    if n < 3:
        raise UnsupportedRangeError(f"closed-form second moment needs n >= 3, got {n}")
    a = 2.0 * math.exp((n + 1) * math.log1p(-1.0 / n))
    b = (n - 1) * math.exp((n + 1) * math.log1p(-2.0 / n))
    return (2.0 * math.pi) ** 2 / (n + 1) * (a + b)


def cumulants(moments: Union[MomentSet, Sequence[float]], n: Optional[int] = None) -> CumulantSet:
    """Cumulants from raw moments by the binomial recursion.

    ``k_r = m_r - sum_{k=1}^{r-1} C(r-1, k-1) k_k m_{r-k}``. The recursion
    runs at the precision of a :class:`MomentSet`; a plain sequence of
    moments is treated at 50 digits.

    Raises
    ------
    DegenerateVarianceError
        If the second cumulant is not positive.
    """
    if isinstance(moments, MomentSet):
        mu, dps, n = moments.raw_moments, moments.dps, moments.n
    else:
        mu, dps = tuple(moments), 50
    if len(mu) < 2:
        raise ValueError("need at least two raw moments")
    with mpmath.workdps(dps):
        mu = [mpmath.mpf(m) for m in mu]
        kappa: list = []
        for r in range(1, len(mu) + 1):
            acc = mpmath.fsum(
                math.comb(r - 1, k - 1) * kappa[k - 1] * mu[r - k - 1] for k in range(1, r)
            )
            kappa.append(mu[r - 1] - acc)
        if kappa[1] <= 0:
            raise DegenerateVarianceError(
                f"non-positive variance {mpmath.nstr(kappa[1], 5)} from raw moments"
            )
        sd = mpmath.sqrt(kappa[1])
        std = tuple(float(kappa[j - 1] / sd**j) for j in range(3, len(mu) + 1))
        raw = tuple(float(k) for k in kappa)
    return CumulantSet(n=n if n is not None else 0, raw_cumulants=raw, standardized_cumulants=std)


@lru_cache(maxsize=256)
def null_cumulants(n: int, order: int = DEFAULT_ORDER) -> CumulantSet:
    """Cumulants of ``U_n`` under uniformity, cached per ``(n, order)``."""
    return cumulants(moment_set(n, order))


@lru_cache(maxsize=None)
def _stirling_row(m: int) -> tuple[int, ...]:
    if m == 0:
        return (1,)
    prev = _stirling_row(m - 1) + (0,)
    return (0,) + tuple(prev[j - 1] + j * prev[j] for j in range(1, m + 1))


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind via ``S(m+1, j) = S(m, j-1) + j S(m, j)``."""
    if m < 0 or k < 0:
        raise ValueError("arguments must be nonnegative")
    if k > m:
        return 0
    return _stirling_row(m)[k]


def moment_via_stirling(n: int, r: int) -> float:
    """``E(U_n^r)`` from the Stirling-number sum, in exact rationals.

    Independent of the coefficient table; used only as a cross-check of
    :func:`raw_moment` for small ``n`` and ``r``.
    """
    if not (2 <= n <= STIRLING_MAX_N and 1 <= r <= STIRLING_MAX_R):
        raise UnsupportedRangeError(
            f"Stirling oracle supports 2 <= n <= {STIRLING_MAX_N}, 1 <= r <= {STIRLING_MAX_R}"
        )
    m = n - 1 + r
    total = sum(
        Fraction(falling_factorial(n, j) * falling_factorial(n - 1, j), falling_factorial(m, j))
        * stirling2(m, j)
        for j in range(1, n)
    )
    scaled = total / n ** (n + r - 1)
    with mpmath.workdps(40):
        return float((2 * mpmath.pi) ** r * mpmath.mpf(scaled.numerator) / scaled.denominator)
