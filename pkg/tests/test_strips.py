import math

import pytest

from algebra.words import mult
from boundary.compactification import line_between, line_contains
from boundary.ends import act_on_point, same_end, symbolic_end
from groups.tree import Vertex
from suites.base import REDUCED, suite_rng
from suites.strip_suites import CRITERION_FROM, PAIRS, _end_pairs, _same_line, criterion_window
from tests.helpers import word
from utils.errors import BoundaryError, DomainError
from walks.strips import loglog_slope, seminorm_comparison, strip_count, strip_members

REDUCED_SEED = 20240611


def test_axis_strip_counts(free_ab):
    result = strip_count(free_ab.group, free_ab.ends["a_minus"], free_ab.ends["a_plus"], 6)
    assert result.counts() == [2 * k + 1 for k in range(1, 7)]
    assert 0.6 < result.slope < 1.2


def test_axis_strip_members_are_powers(free_ab):
    members = strip_members(free_ab.group, free_ab.ends["a_minus"], free_ab.ends["a_plus"], 2)
    assert sorted(str(g) for g in members) == sorted(["ε", "a", "a a", "a^-1", "a^-1 a^-1"])


def test_same_end_has_no_strip(free_ab):
    a = free_ab.ends["a_plus"]
    with pytest.raises(BoundaryError):
        strip_count(free_ab.group, a, symbolic_end(word("a", 1), word("a", 1)), 3)


def test_kmax_must_be_positive(free_ab):
    with pytest.raises(DomainError):
        strip_count(free_ab.group, free_ab.ends["a_minus"], free_ab.ends["a_plus"], 0)


def test_not_min_strip_between_u_ends(not_min):
    result = strip_count(not_min.group, not_min.ends["u_minus"], not_min.ends["u_plus"], 3)
    counts = result.counts()
    assert counts[0] == 5
    assert counts == sorted(counts)
    for row in result.rows:
        assert row.hbar_count <= row.count
        assert row.criterion == pytest.approx(math.log(row.count) / row.k)


def test_loglog_slope():
    assert loglog_slope([1, 2, 4, 8], [1, 4, 16, 64]) == pytest.approx(2.0)
    assert math.isnan(loglog_slope([1], [3]))


def test_seminorm_bound_holds(not_min):
    assert seminorm_comparison(not_min.group, 2) == []


def test_criterion_window_starts_at_the_largest_generator_hbar(not_min, free_ab):
    assert criterion_window(not_min.group) == 5
    assert criterion_window(free_ab.group) == CRITERION_FROM


def test_reduced_scale_fits_the_trend_past_the_jump(not_min):
    assert REDUCED.strip_kmax >= criterion_window(not_min.group) + 2


def test_end_pairs_span_distinct_lines():
    pairs = _end_pairs(suite_rng(REDUCED_SEED, "strip_growth"), PAIRS)
    assert len(pairs) == PAIRS
    for i, (a, b) in enumerate(pairs):
        assert not same_end(a, b)
        for p, q in pairs[:i]:
            assert not (same_end(a, p) and same_end(b, q))
            assert not (same_end(a, q) and same_end(b, p))


def test_swapped_pair_is_the_same_line(not_min):
    u_minus, u_plus = not_min.ends["u_minus"], not_min.ends["u_plus"]
    assert _same_line([u_plus, u_minus], (u_minus, u_plus))


@pytest.mark.parametrize(
    "name, g_name, ends",
    [
        ("free_ab", "b", ("a_minus", "a_plus")),
        ("not_min", "b", ("u_minus", "u_plus")),
        ("not_min", "u5", ("u_minus", "u_plus")),
        ("not_min", "a", ("u_minus", "u_plus")),
    ],
)
def test_strips_are_equivariant(request, name, g_name, ends):
    ws = request.getfixturevalue(name)
    g = ws.group.element(g_name)
    g_inv = ws.group.inv(g)
    a, b = (ws.ends[e] for e in ends)
    ga, gb = act_on_point(g.word, a), act_on_point(g.word, b)
    line, moved = line_between(a, b), line_between(ga, gb)
    for m in strip_members(ws.group, a, b, 2):
        assert line_contains(moved, Vertex(mult(g.word, m.word)))
    for m in strip_members(ws.group, ga, gb, 3):
        assert line_contains(line, Vertex(mult(g_inv.word, m.word)))
