import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from insdel_lab.align import advantage, advantage_periodic
from insdel_lab.analysis import (block_length, classify_blocks, f_max, fit_to_blocks, martingale_trace,
                                 nonpositivity_lhs, three_valued_var_bound, variance_increments)
from insdel_lab.bukhma import alternating_prefix
from insdel_lab.errors import DomainError
from insdel_lab.seqcore import Seq, bias, freq_vector

from oracles import grid_fmax

F = Fraction


def test_trace_example():
    v = Seq.from_str("0" * 16 + "1" * 16)
    tr = martingale_trace(v, [16], F(1, 2))
    lv = tr.levels[1]
    assert lv.block_length == 4 and lv.block_count == 8
    assert lv.mean_bias == 0 and lv.var_bias == 1
    assert lv.mean_adv == 1 >= lv.adv_lower_bound


def test_trace_divisibility_error_names_level():
    v = Seq.from_str("01" * 9)
    with pytest.raises(DomainError, match="level 1"):
        martingale_trace(v, [16], F(1, 2))


def test_block_length_rounding():
    assert block_length(256, F(1, 2)) == 64
    assert block_length(1, F(1, 2)) == 1
    assert block_length(6, F(1, 2)) == 2  # 1.5 rounds up


def test_fit_to_blocks():
    v = Seq.from_str("0011001")
    w, note = fit_to_blocks(v, 4, period=2)
    assert str(w) == "00110011" and "padded" in note
    w, note = fit_to_blocks(v, 4)
    assert str(w) == "0011" and "truncated" in note


@settings(deadline=None, max_examples=30)
@given(st.integers(0, 10 ** 6), st.sampled_from([[64, 16, 4], [256, 16, 1], [16, 4]]))
def test_martingale_identities(seed, periods):
    rng = random.Random(seed)
    v = Seq(tuple(rng.randrange(2) for _ in range(256)))
    tr = martingale_trace(v, periods, F(1, 2))
    for lv in tr.levels:
        assert lv.mean_bias == bias(v)
        assert lv.mean_freq == freq_vector(v)
        assert lv.conditional_mean_ok
        if lv.mean_adv is not None:
            assert lv.mean_adv >= lv.adv_lower_bound


def test_qary_trace():
    rng = random.Random(2)
    v = Seq(tuple(rng.randrange(3) for _ in range(144)), 3)
    tr = martingale_trace(v, [36, 4], F(1, 2))
    for lv in tr.levels[1:]:
        assert lv.mean_freq == freq_vector(v)
        assert lv.mean_adv >= lv.adv_lower_bound
        assert lv.biases is None


def test_variance_never_decreases():
    v = alternating_prefix(16, 256) + alternating_prefix(4, 256)
    tr = martingale_trace(v, [64, 16, 4], F(1, 2))
    assert all(d >= 0 for d in variance_increments(tr))


def test_classify_alternating():
    v = alternating_prefix(16, 128)
    c = classify_blocks(v, 16, 4)
    assert c.crossing <= len(v) // 16
    assert set(c.labels) <= {"U0", "U1", "Ue"}


def test_classify_single_run():
    v = Seq.from_str("1" * 8)
    c = classify_blocks(v, 32, 2)
    assert set(c.labels) == {"U1"}


def test_classify_counting_bound_random():
    rng = random.Random(7)
    eps = F(1, 2)
    r = 256
    l = int(r * eps ** 4)
    for _ in range(10):
        v = Seq(tuple(rng.randrange(2) for _ in range(512)))
        c = classify_blocks(v, r, l)
        assert c.crossing <= c.boundary_count
        start, end = c.span
        assert c.boundary_count <= (end - start) // r + 1


def test_classify_divisibility():
    with pytest.raises(DomainError):
        classify_blocks(Seq.from_str("0101"), 2, 3)


def test_f_max_examples():
    assert f_max(1, 1, 1, 3) == 1
    assert f_max(1, 1, 0.001, 4) == pytest.approx(0.004)
    assert f_max(1, 1, 0.3, 2) == pytest.approx(0.3 + (1 - math.sqrt(0.3)) ** 2, abs=1e-12)
    assert f_max(1, 1, 0.3, 2) == pytest.approx(0.50455, abs=1e-4)
    with pytest.raises(DomainError):
        f_max(0, 1, 1, 2)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("frac", [0.03, 0.2, 0.45, 0.9, 1.5])
def test_f_max_against_optimizer(q, frac):
    F_, P_ = 1.3, 0.7
    m = F_ * P_ * frac
    assert abs(f_max(F_, P_, m, q) - grid_fmax(F_, P_, m, q)) < 1e-3


def test_nonpositivity_examples():
    q = 4
    u = [F(1, q)] * q
    assert nonpositivity_lhs(u, u, q, 1) == F(10, 16)
    for q in range(2, 7):
        for z in range(1, q):
            for m in (z, z + 1):
                if m > q:
                    continue
                v = [F(1, m)] * m + [F(0)] * (q - m)
                assert nonpositivity_lhs(v, v, q, z) == 1
    with pytest.raises(DomainError):
        nonpositivity_lhs([F(1, 4), F(3, 4)], [F(1, 4), F(3, 4)], 2, 1)
    with pytest.raises(DomainError):
        nonpositivity_lhs([F(1, 2), F(1, 4)], [F(1, 2), F(1, 2)], 2, 1)


@settings(deadline=None)
@given(st.integers(2, 6), st.data())
def test_nonpositivity_random(q, data):
    z = data.draw(st.integers(1, q - 1))
    raw_f = data.draw(st.lists(st.integers(0, 50), min_size=q, max_size=q).filter(any))
    raw_p = data.draw(st.lists(st.integers(0, 50), min_size=q, max_size=q).filter(any))
    f = [F(x, sum(raw_f)) for x in raw_f]
    p = [F(x, sum(raw_p)) for x in raw_p]
    pairs = sorted(zip(f, p), key=lambda t: -t[0] * t[1])
    f, p = [a for a, _ in pairs], [b for _, b in pairs]
    assert nonpositivity_lhs(f, p, q, z) <= 1


def test_three_valued_examples():
    assert three_valued_var_bound((1, -1, 0), (F(1, 2), F(1, 2), 0), F(1, 2)) == (1, 1)
    var, bound = three_valued_var_bound((1, 1, 0), (F(1, 3), F(1, 3), F(1, 3)), F(1, 4))
    assert bound == 0 <= var
    with pytest.raises(DomainError):
        three_valued_var_bound((1, 2, 3), (F(1, 10), F(1, 2), F(2, 5)), F(1, 5))


@given(st.lists(st.fractions(-3, 3, max_denominator=10), min_size=3, max_size=3),
       st.lists(st.integers(1, 30), min_size=3, max_size=3), st.data())
def test_three_valued_random(a, w, data):
    probs = [F(x, sum(w)) for x in w]
    xi = data.draw(st.fractions(0, min(probs[0], probs[1])))
    var, bound = three_valued_var_bound(a, probs, xi)
    assert var >= bound
