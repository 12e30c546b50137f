from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from patcorr.correlation import CorrelationTable, bootstrap, correlation, restricted_correlation
from patcorr.pattern_sets import PatternSet, evaluate


def ps(text, base=2):
    return PatternSet.parse(text, base)


F = Fraction


class TestBootstrap:
    def test_single_digit_entries(self):
        table = bootstrap(ps("1"))
        assert table.modulus == 2
        assert table.entries == (F(-1), F(1, 3))

    def test_double_digit_entries(self):
        table = bootstrap(ps("11"))
        assert table.modulus == 4
        assert table.entries == (F(1), F(0), F(-1), F(0))

    def test_wider_level_agrees(self):
        narrow = bootstrap(ps("1"))
        wide = bootstrap(ps("1"), level=3)
        for shift in range(0, 40):
            assert narrow.correlation(shift) == wide.correlation(shift)

    def test_level_below_length_rejected(self):
        with pytest.raises(ValueError):
            bootstrap(ps("101"), level=2)


class TestKnownValues:
    def test_single_digit_correlations(self):
        # a(2n)a(2n+1) = -1 forces gamma(1) = -1/3 through the odd terms
        table = bootstrap(ps("1"))
        assert table.correlation(1) == F(-1, 3)
        for j in range(1, 9):
            assert table.correlation(2**j) == F(-1, 3)
        assert table.correlation(3) == F(1, 3)

    def test_single_digit_recurrences(self):
        table = bootstrap(ps("1"))
        for m in range(1, 65):
            assert table.correlation(2 * m) == table.correlation(m)
            assert table.correlation(2 * m + 1) == (
                -(table.correlation(m) + table.correlation(m + 1)) / 2
            )

    def test_double_digit_vanishes(self):
        table = bootstrap(ps("11"))
        for m in range(1, 65):
            assert table.correlation(m) == 0

    def test_shift_zero_is_one(self):
        for text in ("", "1", "11", "10,101"):
            table = bootstrap(ps(text))
            assert table.correlation(0) == 1
            for r in range(table.modulus):
                assert table.restricted(r, 0) == 1

    def test_empty_set_is_constant(self):
        table = bootstrap(ps(""))
        for m in range(10):
            assert table.correlation(m) == 1


class TestAgainstDirectAverages:
    # the exact values are limits of averages over n < 2^t; on a pattern set
    # of operating length l the restricted average over one full period block
    # n in [0, 2^t) with t >= l matches the limit whenever the recursion has
    # bottomed out, so compare against large partial sums instead: the
    # difference must shrink like 2^-t
    @pytest.mark.parametrize("text", ["1", "11", "10", "1,11", "101", "10,11"])
    def test_partial_sums_converge(self, text):
        a = ps(text)
        table = bootstrap(a)
        span = 1 << 14
        values = [evaluate(a, n) for n in range(span + 8)]
        for m in (1, 2, 3, 5, 8):
            partial = F(sum(values[n] * values[n + m] for n in range(span)), span)
            assert abs(partial - table.correlation(m)) <= F(64, span)

    def test_restricted_partial_sums(self):
        a = ps("10,11")
        table = bootstrap(a)
        K = table.modulus
        span = 1 << 14
        values = [evaluate(a, n) for n in range(K * span + K + 4)]
        for r in range(K):
            for m in (1, 2, 3):
                partial = F(
                    sum(values[K * n + r] * values[K * n + r + m] for n in range(span)),
                    span,
                )
                assert abs(partial - table.restricted(r, m)) <= F(64, span)


class TestModuleHelpers:
    def test_wrappers_match_table(self):
        a = ps("1,11")
        table = bootstrap(a)
        assert correlation(a, 5) == table.correlation(5)
        assert restricted_correlation(a, 3, 5) == table.restricted(3, 5)

    def test_residue_out_of_range(self):
        table = bootstrap(ps("11"))
        with pytest.raises(ValueError):
            table.restricted(4, 1)
        with pytest.raises(ValueError):
            table.restricted(-1, 1)

    def test_negative_shift_rejected(self):
        table = bootstrap(ps("11"))
        with pytest.raises(ValueError):
            table.restricted(0, -1)


@st.composite
def small_sets(draw):
    mask = draw(st.integers(min_value=0, max_value=(1 << 7) - 1))
    return PatternSet.from_mask(2, 3, mask << 1)


class TestProperties:
    @given(small_sets(), st.integers(min_value=0, max_value=80))
    @settings(max_examples=60, deadline=None)
    def test_bounded_by_one(self, a, m):
        table = bootstrap(a)
        value = table.correlation(m)
        assert -1 <= value <= 1

    @given(small_sets(), st.integers(min_value=0, max_value=40))
    @settings(max_examples=40, deadline=None)
    def test_class_average_identity(self, a, m):
        table = bootstrap(a)
        K = table.modulus
        assert table.correlation(m) == sum(table.restricted(r, m) for r in range(K)) / K

    @given(small_sets())
    @settings(max_examples=30, deadline=None)
    def test_level_invariance(self, a):
        low = bootstrap(a)
        high = bootstrap(a, level=a.length + 1)
        for m in range(0, 20):
            assert low.correlation(m) == high.correlation(m)
