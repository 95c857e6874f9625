"""Exact null density of ``U_n`` for small samples.

The density mixes Irwin-Hall densities of sums of uniforms on ``[0, 2*pi]``.
Their alternating inner sums cancel badly as ``j`` grows; reflecting about
the Irwin-Hall midpoint and summing with ``math.fsum`` keeps the density
accurate to ~1e-14 up to the supported cap ``n = 30``.
"""

from __future__ import annotations

import math

from .errors import QuadratureError, UnsupportedRangeError

TWO_PI = 2.0 * math.pi
MAX_N = 30


def irwin_hall_pdf(j: int, x: float) -> float:
    """Density of a sum of ``j`` independent uniforms on ``[0, 2*pi]`` at ``x``."""
    if j < 1:
        raise ValueError("j must be at least 1")
    y = x / TWO_PI
    if y <= 0.0 or y >= j:
        # the j == 1 density is flat on the closed interval
        return 1.0 / TWO_PI if j == 1 and 0.0 <= y <= 1.0 else 0.0
    if y > 0.5 * j:
        y = j - y
    terms = [(-1) ** k * math.comb(j, k) * (y - k) ** (j - 1) for k in range(j) if y > k]
    return math.fsum(terms) / (TWO_PI * math.factorial(j - 1))


def _check_n(n: int) -> None:
    if not 2 <= n <= MAX_N:
        raise UnsupportedRangeError(f"exact density supports 2 <= n <= {MAX_N}, got {n}")


def exact_pdf(n: int, u: float) -> float:
    """Exact density of the spacing statistic ``U_n`` at ``u`` radians."""
    _check_n(n)
    if u < 0.0 or u > TWO_PI * (1.0 - 1.0 / n):
        return 0.0
    log_fact_n1 = math.lgamma(n)
    terms = []
    for j in range(1, n):
        ih = irwin_hall_pdf(j, n * u)
        if ih == 0.0:
            continue
        log_c = (
            log_fact_n1
            + math.log(math.comb(n, j))
            - math.lgamma(n - j)
            - (j - 1) * math.log(n)
        )
        power = n - j - 1
        if power:
            if u == 0.0:
                continue
            log_c += power * math.log(u / TWO_PI)
        terms.append(math.exp(log_c) * ih)
    return math.fsum(terms)


def _simpson(f, a: float, b: float, panels: int) -> float:
    h = (b - a) / panels
    # the density jumps at knots; end nodes take the interior one-sided value
    nudge = 1e-12 * (b - a)
    ys = [f(a + nudge)] + [f(a + i * h) for i in range(1, panels)] + [f(b - nudge)]
    odd = math.fsum(ys[1:-1:2])
    even = math.fsum(ys[2:-1:2])
    return h / 3.0 * (ys[0] + ys[-1] + 4.0 * odd + 2.0 * even)


def _integrate(f, a: float, b: float, tol: float, max_panels: int) -> float:
    panels = 8
    prev = _simpson(f, a, b, panels)
    while panels < max_panels:
        panels *= 2
        cur = _simpson(f, a, b, panels)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise QuadratureError(
        f"Simpson rule on [{a:.6g}, {b:.6g}] did not settle: last estimates {prev!r}, {cur!r}"
    )


def exact_cdf(n: int, t: float, tol: float = 1e-9, max_panels: int = 1 << 14) -> float:
    """``Pr(U_n <= t)`` by composite Simpson quadrature of :func:`exact_pdf`.

    The density is a polynomial between the knots ``2*pi*k/n``, so each knot
    interval is integrated separately, doubling its panel count until two
    successive estimates agree to ``tol`` (relative once above 1).
    """
    _check_n(n)
    upper = TWO_PI * (1.0 - 1.0 / n)
    if t <= 0.0:
        return 0.0
    t = min(t, upper)
    knots = [TWO_PI * k / n for k in range(n)]
    pieces = []
    for a, b in zip(knots[:-1], knots[1:]):
        if a >= t:
            break
        pieces.append(_integrate(lambda u: exact_pdf(n, u), a, min(b, t), tol / n, max_panels))
    return min(max(math.fsum(pieces), 0.0), 1.0)


def exact_moment(n: int, r: int, tol: float = 1e-10) -> float:
    """``E(U_n^r)`` by integrating ``u^r`` against the exact density."""
    _check_n(n)
    knots = [TWO_PI * k / n for k in range(n)]
    return math.fsum(
        _integrate(lambda u: u**r * exact_pdf(n, u), a, b, tol, 1 << 14)
        for a, b in zip(knots[:-1], knots[1:])
    )
