from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from insdel_lab.bukhma import code_from_periods
from insdel_lab.channel import EditScript, apply_script, make_rng, random_script, script_cost
from insdel_lab.concat import (ConcatParams, SubstituteOuterCode, block_error_counts, concat_decode, concat_encode,
                               corrupt_blocks, default_outer_tolerances, deletion_buckets, good_blocks,
                               params_from_json, params_to_json, qary_window_width, substitute_outer,
                               window_width, windows)
from insdel_lab.errors import DomainError, OuterListOverflow
from insdel_lab.seqcore import Seq

HALF = Fraction(1, 2)


def small_params(n_out=6, sigma=4, delta_out=HALF, L_out=None, count=20):
    inner = code_from_periods(128, Fraction(17, 20), 2, [1, 2, 4, 8])
    outer = substitute_outer(sigma, n_out, count, seed=1, delta_out=delta_out, L_out=L_out)
    return ConcatParams(HALF, 2, 128, inner, outer, Fraction(3, 32))


def test_window_width_examples():
    assert window_width(HALF, 1) == 61
    assert window_width(HALF, 16) == 16
    for i in range(1, 17):
        assert window_width(HALF, i) * 512 * HALF / 16 >= 512 * (2 - HALF / 4 - 3 * HALF * (i - 1) / 16)
    with pytest.raises(DomainError):
        window_width(HALF, 17)


def test_qary_window_width_examples():
    assert qary_window_width(HALF, 1, 2, 1) == 61
    assert qary_window_width(HALF, 1, 3, 1) == 70
    for q in (3, 4):
        for z in range(1, q):
            ws = [qary_window_width(HALF, i, q, z) for i in range(1, 16 * q * 2 + 1)]
            assert ws == sorted(ws, reverse=True)
    with pytest.raises(DomainError):
        qary_window_width(HALF, 1, 3, 3)


def test_windows_cover_the_string():
    ws = windows(1000, 61, Fraction(16), Fraction(16))
    assert ws[0] == (0, 976) and ws[-1][1] == 1000
    assert all(b - a == 16 for (a, _), (b, _) in zip(ws, ws[1:]))
    assert windows(100, 61, Fraction(16), Fraction(16)) == [(0, 100)]


def test_outer_examples():
    outer = substitute_outer(8, 32, 50, seed=4)
    for m in (0, 17, 49):
        y = outer.encode(m)
        assert m in outer.list_decode(y)
        cut = list(y)
        for p in (31, 20, 9, 3) * 4:
            cut.pop(p % len(cut))
        assert len(cut) == 32 - 16
        assert m in outer.list_decode(cut)
    assert outer.list_decode([]) == []
    assert len(set(outer.codebook)) == 50


def test_outer_overflow_is_loud():
    outer = substitute_outer(2, 4, 10, seed=0, delta_out=1, L_out=3)
    with pytest.raises(OuterListOverflow):
        outer.list_decode([0, 1])


def test_outer_insertion_cap():
    outer = SubstituteOuterCode(2, 4, ((0, 0, 1, 1),), HALF, Fraction(1, 2))
    assert outer.list_decode([0, 0, 1, 1, 1, 0]) == [0]
    assert outer.list_decode([0, 0, 1, 1, 1, 0, 0]) == []


def test_outer_rejects_impossible_size():
    with pytest.raises(DomainError):
        substitute_outer(2, 3, 9, seed=0)


def test_default_tolerances():
    assert default_outer_tolerances(HALF, 2, 8) == (1 - Fraction(3, 512), 512)
    assert default_outer_tolerances(HALF, 3, 8)[0] == 1 - Fraction(3, 128 * 4 * 9)


def test_params_validation():
    inner = code_from_periods(128, Fraction(17, 20), 2, [1, 2, 4, 8])
    outer = substitute_outer(4, 6, 5, seed=1)
    with pytest.raises(DomainError):
        ConcatParams(HALF, 2, 128, inner, outer, Fraction(1, 8))
    with pytest.raises(DomainError):
        ConcatParams(HALF, 2, 128, inner, substitute_outer(9, 6, 5, seed=1), Fraction(3, 32))
    p = small_params()
    assert params_from_json(params_to_json(p)).outer.codebook == p.outer.codebook


def test_encode_examples():
    p = small_params(n_out=1, count=4)
    x = concat_encode(p, 3)
    assert x == p.inner.codeword(p.outer.encode(3)[0])
    p = small_params()
    for m in range(5):
        assert len(concat_encode(p, m)) == 128 * 6
        assert m in concat_decode(concat_encode(p, m), p)


def test_decode_empty_and_determinism():
    p = small_params()
    assert concat_decode(Seq(()), p) == []
    x = concat_encode(p, 2)
    y = apply_script(x, random_script(x, 40, 40, 5))
    assert concat_decode(y, p) == concat_decode(y, p)


def test_decode_trace_length_bound():
    p = small_params()
    x = concat_encode(p, 7)
    y = apply_script(x, random_script(x, 60, 30, 8))
    tr = concat_decode(y, p, trace=True)
    L_in = len(p.inner)
    for r in tr.rounds:
        assert len(r.T) <= r.window_count * L_in
        assert r.window_count <= len(y) / p.step + 1
    assert 7 in tr.messages


def test_qary_decode_round_trip():
    inner = code_from_periods(48, Fraction(9, 10), 3, [1, 2, 4])
    outer = substitute_outer(3, 4, 10, seed=2, delta_out=HALF)
    p = ConcatParams(HALF, 3, 48, inner, outer, Fraction(1, 32))
    for m in (0, 5):
        assert m in concat_decode(concat_encode(p, m), p)


@settings(deadline=None, max_examples=50)
@given(st.integers(2, 12), st.data())
def test_error_count_bookkeeping(n_out, data):
    n_in = 32
    eps = HALF
    rng = make_rng(data.draw(st.integers(0, 10 ** 6)))
    x = Seq(tuple(int(s) for s in rng.integers(2, size=n_in * n_out)))
    total_cap = int((1 - eps) * n_in * n_out)
    scripts = []
    left = total_cap
    for b in range(n_out):
        D = data.draw(st.integers(0, min(n_in, left // 2)))
        I = data.draw(st.integers(0, left - 2 * D))
        left -= I + 2 * D
        scripts.append(random_script(x[:n_in], D, I, rng))
    y, glob = corrupt_blocks(x, n_in, scripts)
    assert apply_script(x, glob) == y
    counts = block_error_counts(scripts)
    assert sum(c for _, _, c in counts) == script_cost(glob, 1)[2] <= total_cap
    good = good_blocks(counts, n_in, eps)
    assert len(good) >= Fraction(3, 4) * eps * n_out
    buckets = deletion_buckets(counts, good, n_in, eps)
    flat = sorted(b for v in buckets.values() for b in v)
    assert flat == sorted(good)
    width = n_in * eps / 16
    for i, bs in buckets.items():
        for b in bs:
            assert width * (i - 1) <= counts[b][0] < width * i
