import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tailscope.errors import EmptySample, InvalidDelta, ParseError
from tailscope.estimator import TailProfile
from tailscope.ingestion import (
    NEG,
    POS,
    DiscretizationSpec,
    TailSide,
    discretize,
    load_counts,
    load_profile,
    load_values,
    write_profile_csv,
)


def test_right_tail_example():
    ft = discretize([0.00005, 0.00012, -0.3], DiscretizationSpec(1e-4, "right"))
    assert dict(ft.counts) == {0: 1, 1: 1, NEG: 1}


def test_left_tail_example():
    ft = discretize([-0.00005, 0.2], DiscretizationSpec(1e-4, TailSide.LEFT))
    assert dict(ft.counts) == {0: 1, POS: 1}


def test_zero_belongs_to_right_tail():
    assert dict(discretize([0.0], DiscretizationSpec()).counts) == {0: 1}
    assert dict(discretize([0.0], DiscretizationSpec(tail_side="left")).counts) == {POS: 1}


@pytest.mark.parametrize("delta", [0, -1e-4, float("nan"), float("inf")])
def test_invalid_delta(delta):
    with pytest.raises(InvalidDelta):
        DiscretizationSpec(delta)


def test_empty_and_nonfinite():
    with pytest.raises(EmptySample):
        discretize([], DiscretizationSpec())
    with pytest.raises(ParseError):
        discretize([1.0, float("nan")], DiscretizationSpec())


finite = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


@given(st.lists(finite, min_size=1, max_size=200), st.sampled_from([1e-4, 1e-2, 0.3]))
def test_sample_size_preserved(xs, delta):
    for side in TailSide:
        assert discretize(xs, DiscretizationSpec(delta, side)).n == len(xs)


@given(st.lists(finite.filter(lambda x: x != 0), min_size=1, max_size=200))
def test_mirror_isomorphism(xs):
    right = discretize(xs, DiscretizationSpec(1e-2, "right"))
    left = discretize([-x for x in xs], DiscretizationSpec(1e-2, "left"))
    relabel = {NEG: POS}
    assert {relabel.get(k, k): c for k, c in right.counts.items()} == dict(left.counts)


def test_load_values(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("# returns\n0.1\n\n-2.5e-3  # comment\n3\n")
    assert load_values(p) == [0.1, -0.0025, 3.0]


def test_load_values_reports_line(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("0.1\n0.2\nabc\n")
    with pytest.raises(ParseError) as info:
        load_values(p)
    assert info.value.line == 3


def test_load_values_empty(tmp_path):
    p = tmp_path / "v.txt"
    p.write_text("# nothing\n")
    with pytest.raises(EmptySample):
        load_values(p)


def test_load_counts(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("symbol,count\na,2\nb,1\n\"c,d\",4\n")
    assert dict(load_counts(p).counts) == {"a": 2, "b": 1, "c,d": 4}


@pytest.mark.parametrize("body,line", [
    ("a,2\na,3\n", 2),
    ("a,2\nb,0\n", 2),
    ("a,2\nb,x\n", 2),
    ("a,2\nb\n", 2),
    ("a,1\nb,2,3\n", 2),
])
def test_load_counts_errors(tmp_path, body, line):
    p = tmp_path / "c.csv"
    p.write_text(body)
    with pytest.raises(ParseError) as info:
        load_counts(p)
    assert info.value.line == line


def test_profile_roundtrip(tmp_path):
    prof = TailProfile(np.arange(6, 11), np.array([1.5, 1.75, 2.0, 1 / 3, 2.5]))
    buf = io.StringIO()
    write_profile_csv(prof, buf)
    assert buf.getvalue().splitlines()[:2] == ["v,T_v", "6,1.5"]
    p = tmp_path / "p.csv"
    p.write_text(buf.getvalue())
    back = load_profile(p)
    np.testing.assert_array_equal(back.v, prof.v)
    np.testing.assert_allclose(back.t, prof.t, rtol=1e-14)
