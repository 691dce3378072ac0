from fractions import Fraction
from math import comb

import pytest

from robustpir.analysis import (
    RatePoint,
    crossover_m,
    emit_csv,
    emit_table,
    figure1_curves,
    rate_table,
    rate_theorem2,
    rate_zhangge_byzantine,
    rate_zhangge_unresponsive,
    unpunctured_rate,
    zhangge_curve,
)
from robustpir.pir import InfeasibleParameters, compute_params


class TestSchemeRate:
    @pytest.mark.parametrize(
        "args, expected",
        [((13, 2, 3, 2, 1), Fraction(4, 13)), ((12, 2, 3, 2, 0), Fraction(1, 3)), ((12, 2, 3, 0, 2), Fraction(1, 2))],
    )
    def test_values(self, args, expected):
        assert rate_theorem2(*args) == expected

    def test_infeasible(self):
        with pytest.raises(InfeasibleParameters):
            rate_theorem2(6, 2, 3, 2, 1)


class TestZhangGe:
    def test_unresponsive(self):
        # (12/10) * (45 + 36 - 66) / 66
        assert Fraction(12, 10) * Fraction(comb(10, 2) + comb(9, 2) - comb(12, 2), comb(12, 2)) == Fraction(3, 11)
        z = rate_zhangge_unresponsive(12, 2, 3, 2)
        assert z.value == Fraction(3, 11) and z.feasible

    def test_unresponsive_infeasible(self):
        z = rate_zhangge_unresponsive(6, 2, 3, 3)
        assert comb(3, 2) + comb(3, 2) <= comb(6, 2)
        assert not z.feasible

    def test_byzantine_negative(self):
        z = rate_zhangge_byzantine(12, 2, 3, 2)
        assert z.value == Fraction(2 * (45 - 66) + 36, 66) == Fraction(-1, 11)
        assert not z.feasible

    def test_byzantine_b0(self):
        assert rate_zhangge_byzantine(13, 2, 3, 0).value == Fraction(45, 78)

    def test_no_adversary(self):
        assert rate_zhangge_byzantine(10, 3, 0, 0).value == 1

    def test_invalid_binomials(self):
        with pytest.raises(ValueError):
            rate_zhangge_unresponsive(5, 4, 1, 3)


class TestFigure1:
    def test_m1(self):
        assert zhangge_curve("zhangge_b0_r2", 1) == Fraction(9, 11)
        assert zhangge_curve("zhangge_b2_r0", 1) == Fraction(4, 11)

    def test_limit_matches_asymptotic_rate(self):
        # (9/11)(1 - 2/3)/(1 - (2/3)^m) -> (9/11)(1/3) = 3/11.
        lim = Fraction(9, 11) * (1 - Fraction(2, 3))
        assert lim == rate_zhangge_unresponsive(12, 2, 3, 2).value
        assert abs(zhangge_curve("zhangge_b0_r2", 400) - lim) < Fraction(1, 10**60)
        assert lim < Fraction(12 - (2 + 3 + 2 - 1), 12)

    def test_monotone_and_constant(self):
        pts = figure1_curves(100)
        assert len(pts) == 400
        by = {}
        for pt in pts:
            by.setdefault(pt.scheme, []).append(pt.rate)
        assert set(by["thm2_b2_r0"]) == {Fraction(1, 3)}
        assert set(by["thm2_b0_r2"]) == {Fraction(1, 2)}
        for label in ("zhangge_b2_r0", "zhangge_b0_r2"):
            seq = by[label]
            assert all(a >= b for a, b in zip(seq, seq[1:]))

    def test_crossover(self):
        assert crossover_m("zhangge_b0_r2", Fraction(1, 2)) == 1
        assert crossover_m("zhangge_b2_r0", Fraction(1, 3)) == 1


def _grid():
    for n in range(1, 21):
        for k in range(1, 5):
            for t in range(1, 5):
                for r in range(1, 4):
                    try:
                        compute_params(n, k, t, 0, r)
                        z = rate_zhangge_unresponsive(n, k, t, r)
                    except ValueError:
                        continue
                    if z.feasible:
                        yield "unresponsive", n, k, t, r, z.value, unpunctured_rate(n, k, t, 0, r)
                for b in range(1, 4):
                    try:
                        compute_params(n, k, t, b, 0)
                        z = rate_zhangge_byzantine(n, k, t, b)
                    except ValueError:
                        continue
                    if z.feasible:
                        yield "byzantine", n, k, t, b, z.value, unpunctured_rate(n, k, t, b, 0)


def test_strict_inequalities_for_k_at_least_2():
    rows = [g for g in _grid() if g[2] >= 2]
    assert len(rows) > 400
    for kind, n, k, t, x, value, bound in rows:
        assert value < bound, (kind, n, k, t, x)


def test_k1_closed_forms():
    # For k = 1 the comparison rates reduce to (n-t-r)/(n-r) and (n-t-2b)/n.
    for kind, n, k, t, x, value, bound in _grid():
        if k != 1:
            continue
        if kind == "unresponsive":
            assert value == Fraction(n - t - x, n - x) and value > bound
        else:
            assert value == Fraction(n - t - 2 * x, n) == bound


class TestOutput:
    def test_single_line(self):
        assert emit_csv([RatePoint("thm2", 1, Fraction(1, 3))]) == (
            "scheme,m,rate_exact,rate_decimal\nthm2,1,1/3,0.333333\n"
        )

    def test_empty(self):
        assert emit_csv([]) == "scheme,m,rate_exact,rate_decimal\n"

    def test_figure_rows(self):
        assert len(emit_csv(figure1_curves(100)).splitlines()) == 401

    def test_sorted(self):
        lines = emit_csv(figure1_curves(12)).splitlines()[1:]
        keys = [(l.split(",")[0], int(l.split(",")[1])) for l in lines]
        assert keys == sorted(keys)

    def test_infeasible_marked(self):
        text = emit_csv(rate_table(12, 2, 3, [2, 5], [2], 1))
        assert "zhangge_b2_r0,inf,-1/11,infeasible" in text
        assert "thm2_b5_r0,inf,infeasible,infeasible" in text

    def test_gnuplot(self):
        text = emit_table([RatePoint("thm2", 2, Fraction(1, 2))])
        assert text.splitlines()[1] == "thm2 2 1/2 0.500000"

    def test_default_table_has_figure_curves(self):
        lines = emit_csv(rate_table(12, 2, 3, [2], [2], 100)).splitlines()
        for label in ("thm2_b2_r0", "thm2_b0_r2", "zhangge_b2_r0", "zhangge_b0_r2"):
            assert sum(1 for l in lines if l.startswith(label + ",") and ",inf," not in l) == 100
