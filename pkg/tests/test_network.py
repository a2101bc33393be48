import numpy as np
import pytest
from hypothesis import given, strategies as st

from asymbias.network import (
    EdgeListError,
    InfluenceGraph,
    as_opinions,
    check_opinion,
    parse_edge_list,
    sensed_expectation,
    sensed_expectations,
)

opinion = st.floats(-1, 1, allow_nan=False)


def test_parse_single_edge():
    g = parse_edge_list("0 1 1.0", 2)
    assert g.w.tolist() == [[0.0, 1.0], [0.0, 0.0]]


def test_parse_empty_text():
    g = parse_edge_list("", 3)
    assert g.n == 3
    assert not g.w.any()


def test_parse_comments_and_crlf():
    g = parse_edge_list("# header\r\n0 1 2.5\r\n\r\n1 0 0.5\r\n", 2)
    assert g.w[0, 1] == 2.5 and g.w[1, 0] == 0.5


def test_self_loop_allowed():
    assert parse_edge_list("1 1 3", 2).w[1, 1] == 3


@pytest.mark.parametrize(
    "text, lineno, fragment",
    [
        ("0 1 1.0\n0 1 2.0", 2, "duplicate"),
        ("0 2 1.0", 1, "out of range"),
        ("# c\n-1 0 1.0", 2, "out of range"),
        ("0 1 -0.5", 1, "nonnegative"),
        ("0 1", 1, "expected"),
        ("0 x 1", 1, "cannot parse"),
        ("0 1 nan", 1, "finite"),
    ],
)
def test_parse_errors_carry_line_number(text, lineno, fragment):
    with pytest.raises(EdgeListError) as info:
        parse_edge_list(text, 2)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)
    assert f"line {lineno}" in str(info.value)


def test_graph_rejects_negative_and_nonsquare():
    with pytest.raises(ValueError):
        InfluenceGraph(np.array([[0.0, -1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        InfluenceGraph(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        InfluenceGraph(np.zeros((0, 0)))


def test_graph_is_read_only():
    g = InfluenceGraph(np.eye(2))
    with pytest.raises(ValueError):
        g.w[0, 0] = 5.0


def test_opinion_validation():
    assert check_opinion(-1) == -1.0
    for bad in (1.0000001, -2, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            check_opinion(bad)
    with pytest.raises(ValueError):
        as_opinions([0.0, 1.5])


def test_expectation_plain_mean():
    g = InfluenceGraph(np.array([[1.0, 1.0], [0.0, 0.0]]))
    assert sensed_expectation(g, [0.2, -0.4], 0) == pytest.approx(-0.1, abs=1e-15)


def test_expectation_single_neighbour_scale_cancels():
    g = InfluenceGraph(np.array([[0.0, 2.5], [0.0, 0.0]]))
    assert sensed_expectation(g, [-0.9, 0.7], 0) == pytest.approx(0.7, abs=1e-15)


def test_expectation_weighted():
    g = InfluenceGraph(np.array([[1.0, 3.0], [0.0, 0.0]]))
    # (0.4 - 0.6) / 4
    assert sensed_expectation(g, [0.4, -0.2], 0) == pytest.approx(-0.05, abs=1e-15)


def test_zero_row_falls_back_to_own_opinion():
    g = InfluenceGraph(np.zeros((3, 3)))
    assert sensed_expectation(g, [0.3, -0.2, 0.9], 1) == -0.2
    assert sensed_expectations(g, [0.3, -0.2, 0.9]).tolist() == [0.3, -0.2, 0.9]


def test_expectation_bad_inputs():
    g = InfluenceGraph(np.ones((2, 2)))
    with pytest.raises(ValueError):
        sensed_expectation(g, [0.1], 0)
    with pytest.raises(IndexError):
        sensed_expectation(g, [0.1, 0.2], 2)


weights_and_opinions = st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.lists(st.floats(0, 10, allow_nan=False), min_size=n * n, max_size=n * n),
        st.lists(opinion, min_size=n, max_size=n),
        st.integers(0, n - 1),
    )
)


@given(weights_and_opinions)
def test_expectation_within_neighbour_range(data):
    flat, x, i = data
    n = len(x)
    g = InfluenceGraph(np.array(flat).reshape(n, n))
    got = sensed_expectation(g, x, i)
    if g.w[i].sum() > 0:
        support = [x[j] for j in range(n) if g.w[i, j] > 0]
        assert min(support) - 1e-12 <= got <= max(support) + 1e-12
    assert got == pytest.approx(sensed_expectations(g, x)[i], abs=1e-12)


@given(weights_and_opinions, st.floats(1e-3, 1e3))
def test_expectation_row_scale_invariant(data, lam):
    flat, x, i = data
    n = len(x)
    w = np.array(flat).reshape(n, n)
    a = sensed_expectation(InfluenceGraph(w), x, i)
    b = sensed_expectation(InfluenceGraph(w * lam), x, i)
    assert a == pytest.approx(b, abs=1e-12)


@given(weights_and_opinions, opinion)
def test_expectation_constant_vector(data, v):
    flat, x, i = data
    n = len(x)
    g = InfluenceGraph(np.array(flat).reshape(n, n))
    assert sensed_expectation(g, [v] * n, i) == pytest.approx(v, abs=1e-12)
