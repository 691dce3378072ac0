"""Rate formulas and comparison tables, in exact rational arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Optional, Union

from .pir import InfeasibleParameters, compute_params


class ComparisonRate(NamedTuple):
    value: Fraction
    feasible: bool


@dataclass(frozen=True)
class RatePoint:
    scheme: str
    m: Optional[int]  # None for the m -> infinity limit
    rate: Union[Fraction, None]
    feasible: bool = True


def rate_theorem2(n: int, k: int, t: int, b: int, r: int) -> Fraction:
    return compute_params(n, k, t, b, r).rate


def unpunctured_rate(n: int, k: int, t: int, b: int, r: int) -> Fraction:
    """1 - (k+t+2b+r-1)/n, the benchmark the comparison inequalities use."""
    return 1 - Fraction(k + t + 2 * b + r - 1, n)


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError(f"invalid binomial C({n},{k})")
    return comb(n, k)


def rate_zhangge_unresponsive(n: int, k: int, t: int, r: int) -> ComparisonRate:
    """Asymptotic rate of the comparison scheme with r silent servers and b = 0."""
    if k > n - r or k > n - t or r >= n:
        raise ValueError(f"binomials undefined for n={n}, k={k}, t={t}, r={r}")
    total = _binom(n, k)
    value = Fraction(n, n - r) * Fraction(_binom(n - r, k) + _binom(n - t, k) - total, total)
    return ComparisonRate(value, value > 0)


def rate_zhangge_byzantine(n: int, k: int, t: int, b: int) -> ComparisonRate:
    """Asymptotic rate of the comparison scheme with b byzantine servers and r = 0."""
    if k > n - b or k > n - t:
        raise ValueError(f"binomials undefined for n={n}, k={k}, t={t}, b={b}")
    total = _binom(n, k)
    value = Fraction(2 * (_binom(n - b, k) - total) + _binom(n - t, k), total)
    return ComparisonRate(value, value > 0)


def _finite_m_curve(lead: Fraction, ratio: Fraction, m: int) -> Fraction:
    # lead * (1 - ratio) / (1 - ratio^m); equals lead at m = 1.
    return lead * (1 - ratio) / (1 - ratio**m)


PLOT_N, PLOT_K, PLOT_T = 12, 2, 3
# Finite-m comparison curves plotted for (n, k, t) = (12, 2, 3): (lead, ratio).
PLOT_CURVES = {
    "zhangge_b2_r0": (Fraction(4, 11), Fraction(5, 4)),
    "zhangge_b0_r2": (Fraction(9, 11), Fraction(2, 3)),
}


def zhangge_curve(label: str, m: int) -> Fraction:
    lead, ratio = PLOT_CURVES[label]
    return _finite_m_curve(lead, ratio, m)


def figure1_curves(m_max: int) -> list[RatePoint]:
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    thm_b = rate_theorem2(PLOT_N, PLOT_K, PLOT_T, 2, 0)
    thm_r = rate_theorem2(PLOT_N, PLOT_K, PLOT_T, 0, 2)
    points = []
    for m in range(1, m_max + 1):
        points.append(RatePoint("thm2_b2_r0", m, thm_b))
        points.append(RatePoint("thm2_b0_r2", m, thm_r))
        for label in PLOT_CURVES:
            points.append(RatePoint(label, m, zhangge_curve(label, m)))
    return points


def crossover_m(label: str, constant: Fraction, m_limit: int = 1000) -> int:
    """Largest m at which the finite-m comparison curve still beats ``constant``."""
    last = 0
    for m in range(1, m_limit + 1):
        if zhangge_curve(label, m) > constant:
            last = m
    return last


def rate_table(
    n: int, k: int, t: int, b_list: Iterable[int], r_list: Iterable[int], m_max: int
) -> list[RatePoint]:
    """Rates of the GRS scheme (constant in m) plus the comparison scheme's rates.

    For the plotted configuration (12, 2, 3) with b=2 or r=2 the finite-m
    comparison curves are emitted; otherwise the comparison scheme is
    reported only through its m -> infinity rate.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    points: list[RatePoint] = []
    configs = [(b, 0) for b in b_list] + [(0, r) for r in r_list]
    for b, r in configs:
        tag = f"b{b}_r{r}"
        try:
            rate = rate_theorem2(n, k, t, b, r)
            points.extend(RatePoint(f"thm2_{tag}", m, rate) for m in range(1, m_max + 1))
        except InfeasibleParameters:
            points.append(RatePoint(f"thm2_{tag}", None, None, False))
        try:
            if b > 0 or r == 0:
                zg = rate_zhangge_byzantine(n, k, t, b)
            else:
                zg = rate_zhangge_unresponsive(n, k, t, r)
            points.append(RatePoint(f"zhangge_{tag}", None, zg.value, zg.feasible))
        except ValueError:
            points.append(RatePoint(f"zhangge_{tag}", None, None, False))
        label = f"zhangge_{tag}"
        if (n, k, t) == (PLOT_N, PLOT_K, PLOT_T) and label in PLOT_CURVES:
            points.extend(
                RatePoint(label, m, zhangge_curve(label, m)) for m in range(1, m_max + 1)
            )
    return points


# -- output ------------------------------------------------------------------------


def _decimal(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 50
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN))


def _sort_key(pt: RatePoint):
    return (pt.scheme, float("inf") if pt.m is None else pt.m)


def _cells(pt: RatePoint) -> tuple[str, str, str, str]:
    m = "inf" if pt.m is None else str(pt.m)
    exact = "infeasible" if pt.rate is None else str(pt.rate)
    if pt.rate is None or not pt.feasible:
        dec = "infeasible"
    else:
        dec = _decimal(pt.rate)
    return pt.scheme, m, exact, dec


def emit_csv(table: Iterable[RatePoint]) -> str:
    lines = ["scheme,m,rate_exact,rate_decimal"]
    lines.extend(",".join(_cells(pt)) for pt in sorted(table, key=_sort_key))
    return "\n".join(lines) + "\n"


def emit_table(table: Iterable[RatePoint]) -> str:
    """Whitespace-separated table that gnuplot reads directly."""
    lines = ["# scheme m rate_exact rate_decimal"]
    lines.extend(" ".join(_cells(pt)) for pt in sorted(table, key=_sort_key))
    return "\n".join(lines) + "\n"
