import pytest
from hypothesis import given, strategies as st

from tailscope.errors import EmptySample, InvalidParameter
from tailscope.frequencies import (
    FrequencyTable,
    build_frequency_table,
    occupancy_count,
    turing_estimate,
)

symbols = st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=200)


class TestBuild:
    def test_counts(self):
        ft = build_frequency_table(["a", "b", "a", "c"])
        assert dict(ft.counts) == {"a": 2, "b": 1, "c": 1}
        assert ft.n == 4

    def test_single_symbol(self):
        ft = build_frequency_table(["a", "a", "a"])
        assert dict(ft.counts) == {"a": 3}
        assert ft.n == 3

    def test_empty(self):
        with pytest.raises(EmptySample):
            build_frequency_table([])

    def test_rejects_nonpositive_counts(self):
        with pytest.raises(InvalidParameter):
            FrequencyTable({"a": 0})

    def test_immutable(self):
        ft = build_frequency_table("abca")
        with pytest.raises(TypeError):
            ft.counts["a"] = 5

    @given(symbols, st.randoms())
    def test_permutation_invariant(self, obs, rnd):
        shuffled = list(obs)
        rnd.shuffle(shuffled)
        assert build_frequency_table(obs) == build_frequency_table(shuffled)


class TestOccupancy:
    @pytest.mark.parametrize("counts,r,expected", [
        ({"a": 2, "b": 1, "c": 1}, 1, 2),
        ({"a": 3}, 1, 0),
        ({"a": 2, "b": 2}, 2, 2),
    ])
    def test_examples(self, counts, r, expected):
        assert occupancy_count(FrequencyTable(counts), r) == expected

    def test_r_above_n(self):
        assert occupancy_count(FrequencyTable({"a": 3}), 10) == 0

    def test_r_zero_rejected(self):
        with pytest.raises(InvalidParameter):
            occupancy_count(FrequencyTable({"a": 3}), 0)

    @given(symbols)
    def test_weighted_sum_is_n(self, obs):
        ft = build_frequency_table(obs)
        assert sum(r * occupancy_count(ft, r) for r in range(1, ft.n + 1)) == ft.n


class TestTuring:
    def test_half(self):
        assert turing_estimate(FrequencyTable({"a": 2, "b": 1, "c": 1})) == 0.5

    def test_all_distinct(self):
        assert turing_estimate(build_frequency_table("abcde")) == 1.0

    def test_no_singletons(self):
        assert turing_estimate(FrequencyTable({"a": 3})) == 0.0

    @given(symbols)
    def test_bounds_and_extremes(self, obs):
        ft = build_frequency_table(obs)
        t = turing_estimate(ft)
        assert 0.0 <= t <= 1.0
        assert (t == 1.0) == all(c == 1 for c in ft.counts.values())
        assert (t == 0.0) == all(c != 1 for c in ft.counts.values())
