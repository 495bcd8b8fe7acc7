"""Closed-form expected squared L2 discrepancy of the diagonal partition.

For even N the expectation decomposes as

    E[L2^2] = 1/(4N) - (1/N^2) * sum_{i=1}^N Q_i,      Q_i = integral of q_i^2

and each strip integral Q_i has an explicit elementary form.  Four regimes
occur: the first strip (the triangle at the origin), strips below the
anti-diagonal (2 <= i <= N/2), strips above it (N/2 < i < N), and the last
strip, which contributes exactly 1/(15N).  The formulas are transcribed
verbatim; their only validation is numerical, against midpoint quadrature of
q_i^2 (see the test suite) and against the quasi-Monte Carlo estimator.

Odd N is rejected throughout: the strip boundaries exist (the partition
module handles them), but no closed form is available here for the middle
strip that straddles the anti-diagonal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .estimators import DiscrepancyEstimate, Method

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class StripIntegralTable:
    """The strip integrals Q_1..Q_N for one even N."""

    n: int
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.n:
            raise ValueError("table length must equal n")
        if any(v < 0.0 for v in self.values):
            raise ValueError("strip integrals cannot be negative")
        last = 1.0 / (15.0 * self.n)
        if not math.isclose(self.values[-1], last, rel_tol=1e-12):
            raise ValueError(f"last strip integral must be 1/(15n), got {self.values[-1]}")


def _require_even(n: int, smallest: int) -> None:
    if n < smallest or n % 2:
        raise ValueError(f"closed forms require even n >= {smallest}, got n={n}")


def _safe_sqrt(v: float) -> float:
    # rounding may push a radicand a few ulp below zero near i = n
    if v < 0.0:
        if v < -1e-12:
            raise ValueError(f"negative radicand {v}")
        return 0.0
    return math.sqrt(v)


def strip_integral_first(n: int) -> float:
    """Q_1 = 1 - 14*sqrt(2)/(15*sqrt(N)) + 2/(5N)."""
    _require_even(n, 2)
    return 1.0 - 14.0 * _SQRT2 / (15.0 * math.sqrt(n)) + 2.0 / (5.0 * n)


def strip_integral_last(n: int) -> float:
    """Q_N = 1/(15N), the strip at the far corner."""
    _require_even(n, 2)
    return 1.0 / (15.0 * n)


def strip_integral_lower(n: int, i: int) -> float:
    """Q_i for a strip below the anti-diagonal, 2 <= i <= N/2."""
    _require_even(n, 4)
    if not 2 <= i <= n // 2:
        raise ValueError(f"lower strips are 2 <= i <= n/2, got i={i}, n={n}")
    a = _safe_sqrt(2.0 * n) * _safe_sqrt(i - 1.0)
    b = _safe_sqrt((i - 1.0) * i)
    c = _safe_sqrt(2.0 * n) * _safe_sqrt(float(i))
    return (
        -4.0 * i**3
        + i**2 * (-16.0 * a + 4.0 * b + 16.0 * c + 10.0)
        + i * (32.0 * a - 8.0 * b - 40.0 * c + 5.0)
        + (-16.0 * a + 4.0 * b + 10.0 * c + 15.0 * n - 5.0)
    ) / (15.0 * n)


def strip_integral_upper(n: int, i: int) -> float:
    """Q_i for a strip above the anti-diagonal, N/2 < i < N."""
    _require_even(n, 4)
    if not n // 2 < i < n:
        raise ValueError(f"upper strips are n/2 < i < n, got i={i}, n={n}")
    t = _safe_sqrt(1.0 - i / n) * _safe_sqrt((n + 1.0 - i) / n)
    return (
        4.0 * i**3
        + i**2 * (4.0 * n * t - 12.0 * n - 2.0)
        + i * (-8.0 * n**2 * t + 12.0 * n**2 + 4.0 * n - 3.0)
        + (4.0 * n**3 * t - 4.0 * n**3 - 2.0 * n**2 + 3.0 * n + 1.0)
    ) / (15.0 * n)


def strip_integral_table(n: int) -> StripIntegralTable:
    """All strip integrals for even n >= 4, in strip order."""
    _require_even(n, 4)
    values = [strip_integral_first(n)]
    values.extend(strip_integral_lower(n, i) for i in range(2, n // 2 + 1))
    values.extend(strip_integral_upper(n, i) for i in range(n // 2 + 1, n))
    values.append(strip_integral_last(n))
    return StripIntegralTable(n=n, values=tuple(values))


def expected_l2_sq_exact(n: int) -> DiscrepancyEstimate:
    """E[L2^2] of the diagonal partition, exactly, for even n >= 2.

    n = 2 has only the first and last strips; larger n uses the full table.
    """
    _require_even(n, 2)
    if n == 2:
        total = strip_integral_first(2) + strip_integral_last(2)
    else:
        total = math.fsum(strip_integral_table(n).values)
    value = 1.0 / (4.0 * n) - total / (n * n)
    return DiscrepancyEstimate(value=value, method=Method.EXACT, meta={"n": n})


def expected_l2_sq_asymptotic(n: int) -> float:
    """Leading-order expectation 5/(72n); valid for any n >= 1."""
    if n < 1:
        raise ValueError(f"need n >= 1, got n={n}")
    return 5.0 / (72.0 * n)
