import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from insdel_lab.channel import apply_script, make_rng
from insdel_lab.errors import DomainError
from insdel_lab.experiments import adversary_experiment, balanced_word
from insdel_lab.region import adversary_single, adversary_timeshare, boundary_line, contains, region_vertices
from insdel_lab.seqcore import Seq

F = Fraction


def test_vertices_examples():
    assert set(region_vertices(5).vertices) == {(0, F(4, 5)), (F(2, 5), F(3, 5)), (F(6, 5), F(2, 5)),
                                                (F(12, 5), F(1, 5)), (4, 0), (0, 0)}
    assert set(region_vertices(2).vertices) == {(0, F(1, 2)), (1, 0), (0, 0)}
    assert set(region_vertices(3).vertices) == {(0, F(2, 3)), (F(2, 3), F(1, 3)), (2, 0), (0, 0)}
    with pytest.raises(DomainError):
        region_vertices(1)


@pytest.mark.parametrize("q", [2, 3, 5, 9])
def test_intercepts_on_the_chord(q):
    r = region_vertices(q)
    for g, d in (r.delta_intercept, r.gamma_intercept):
        assert d / (1 - F(1, q)) + g / (q - 1) == 1
    assert r.delta_intercept in r.vertices and r.gamma_intercept in r.vertices


def test_boundary_line_examples():
    assert boundary_line(5, 3) == (1, 6, F(18, 5))
    assert boundary_line(2, 1) == (1, 2, 1)
    a, b, c = boundary_line(5, 3)
    assert a * F("1.8") + b * F("0.3") == c
    with pytest.raises(DomainError):
        boundary_line(5, 5)


@pytest.mark.parametrize("q", range(2, 13))
def test_segment_endpoints_on_line(q):
    verts = region_vertices(q).vertices
    for i in range(1, q):
        a, b, c = boundary_line(q, i)
        for g, d in (verts[i - 1], verts[i]):
            assert a * g + b * d == c


def test_contains_examples():
    assert contains(2, F("0.9"), 0) == (True, 1)
    assert contains(5, F("1.2"), F("0.4")) == (False, None)
    assert contains(5, F("1.19"), F("0.4")) == (True, 2)
    # axis segments are part of the region, the far ends are not
    assert contains(3, F("1.9"), 0)[0] and not contains(3, 2, 0)[0]
    assert contains(3, 0, F("0.66"))[0] and not contains(3, 0, F(2, 3))[0]
    # with shrink the scaled boundary counts as inside
    assert contains(2, F(1, 2), 0, F(1, 2)) == (True, 1)


rat = st.fractions(min_value=0, max_value=5, max_denominator=60)


@given(st.integers(2, 7), rat, rat, rat, rat, st.fractions(0, F(9, 10), max_denominator=20))
def test_contains_monotone(q, g, d, dg, dd, shrink):
    if contains(q, g + dg, d + dd, shrink)[0]:
        assert contains(q, g, d, shrink)[0]


def test_binary_boundary_law():
    for g in (F(0), F(1, 4), F(3, 5)):
        d = (1 - g) / 2
        assert not contains(2, g, d)[0]
        assert contains(2, g, d - F(1, 1000))[0]


def test_adversary_single_examples():
    x = Seq.from_str("001122" * 2, 3)
    r = adversary_single(x, 2)
    assert (r.deletions_used, r.insertions_used, len(r.output)) == (4, 8, 16)
    assert apply_script(x, r.script) == r.output
    assert r.output.symbols == r.pattern_id * 8

    x = Seq.from_str("0123" * 4, 4)
    r = adversary_single(x, 4)
    assert (r.deletions_used, r.insertions_used) == (0, 48)
    assert str(r.output) == "0123" * 16

    r = adversary_single(x, 1)
    assert r.insertions_used == 0 and r.output.symbols == (r.pattern_id[0],) * 4


def test_adversary_skewed_input_uses_tail_trim():
    x = Seq.from_str("000000000111", 3)
    r = adversary_single(x, 2)
    assert r.deletions_used == 4 and len(r.output) == 16
    assert apply_script(x, r.script) == r.output


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_adversary_budgets_exact(q):
    n = 12 * q
    rng = make_rng(q)
    for i in range(1, q + 1):
        for _ in range(5):
            x = balanced_word(q, n, rng)
            r = adversary_single(x, i)
            assert r.deletions_used == n * (q - i) // q
            assert r.insertions_used == n * i * (i - 1) // q
            assert apply_script(x, r.script) == r.output


def test_collapse_cardinality():
    rep = adversary_experiment(4, 16, 2, 200, seed=9)
    assert rep["summary"]["budgets_exact"]
    assert rep["summary"]["distinct_outputs"] <= math.comb(4, 2)


def test_timeshare_examples():
    x = Seq.from_str("012" * 4, 3)
    r = adversary_timeshare(x, 1, F(1, 2))
    # midpoint of (0, 2/3) and (2/3, 1/3), scaled by n = 12
    assert (r.insertions_used, r.deletions_used) == (4, 6)
    assert apply_script(x, r.script) == r.output
    assert adversary_timeshare(x, 1, 1).output == adversary_single(x, 1).output
    with pytest.raises(DomainError):
        adversary_timeshare(x, 1, F(1, 5))


def test_timeshare_collapses_same_kept_sets():
    a = Seq.from_str("012012" + "012012", 3)
    b = Seq.from_str("210210" + "102102", 3)
    ra, rb = adversary_timeshare(a, 1, F(1, 2)), adversary_timeshare(b, 1, F(1, 2))
    assert a != b and ra.pattern_id == rb.pattern_id
    assert str(ra.output) == str(rb.output)
