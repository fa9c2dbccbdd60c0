import random

import pytest
from hypothesis import given, settings, strategies as st

from fuzzyecc.curve import INFINITY, NotOnCurveError, negate, point_add
from fuzzyecc.recoding import ones_complement_recode, predict_cost, sliding_windows
from fuzzyecc.scalarmul import (
    STRATEGIES,
    mul_double_add,
    mul_runs,
    mul_signed_window,
    mul_window,
    multiply,
    precompute_table,
)

from conftest import CHAINS_763, SIGNED_CHAIN_763, random_point


def repeated_addition(k, P, E):
    acc = INFINITY
    for _ in range(k):
        acc = point_add(acc, P, E, validate=False)
    return acc


def test_zero_and_one(small23):
    E, G = small23.curve, small23.base
    for strat in STRATEGIES:
        Q, rep = multiply(0, G, E, strat)
        assert Q == INFINITY and rep.doublings == rep.additions == 0
        Q, rep = multiply(1, G, E, strat)
        assert Q == G and rep.doublings == rep.additions == 0


def test_negative_scalar_rejected(small23):
    with pytest.raises(ValueError):
        mul_double_add(-1, small23.base, small23.curve)


def test_off_curve_point_rejected(small23):
    E = small23.curve
    bad = E.point(1, 1, validate=False)
    for strat in STRATEGIES:
        with pytest.raises(NotOnCurveError):
            multiply(5, bad, E, strat)


def test_unknown_strategy(small23):
    with pytest.raises(ValueError):
        multiply(5, small23.base, small23.curve, "naf")


def test_763_equals_repeated_addition(small23, small_points):
    E = small23.curve
    for P in small_points:
        assert mul_double_add(763, P, E)[0] == repeated_addition(763, P, E)


def test_binary_cost(small23):
    _, rep = mul_double_add(763, small23.base, small23.curve)
    assert (rep.doublings, rep.additions) == (9, 7)


@pytest.mark.parametrize("psize", range(2, 11))
def test_763_window_chain(psize, secp160r1):
    E, G = secp160r1.curve, secp160r1.base
    Q, rep = mul_window(763, G, psize, E)
    assert rep.chain == CHAINS_763[psize]
    assert Q == mul_double_add(763, G, E)[0]
    assert (rep.doublings, rep.additions) == (
        predict_cost(sliding_windows(763, psize)).doublings,
        predict_cost(sliding_windows(763, psize)).additions,
    )


def test_763_signed_chain(secp160r1):
    E, G = secp160r1.curve, secp160r1.base
    Q, rep = mul_signed_window(763, G, 3, E)
    assert rep.chain == SIGNED_CHAIN_763
    assert (rep.doublings, rep.additions, rep.table_size) == (8, 1, 3)
    assert Q == mul_double_add(763, G, E)[0]


def test_511_and_power_of_two(demo64):
    E, G = demo64.curve, demo64.base
    _, rep = mul_runs(511, G, E)
    assert (rep.doublings, rep.additions) == (9, 1)
    for w in range(2, 11):
        assert mul_signed_window(511, G, w, E)[1].additions <= 1
    Q, rep = mul_signed_window(1 << 20, G, 4, E)
    assert (rep.doublings, rep.additions) == (20, 0)
    assert Q == mul_double_add(1 << 20, G, E)[0]


def test_runs_without_runs_costs_like_binary(small23):
    E, G = small23.curve, small23.base
    a, b = mul_runs(5, G, E)[1], mul_double_add(5, G, E)[1]
    assert (a.doublings, a.additions) == (b.doublings, b.additions)


def test_precompute_table(secp160r1):
    E, G = secp160r1.curve, secp160r1.base
    t, rep = precompute_table(G, 3, E)
    assert [t.odd_multiple(d) for d in (1, 3, 5, 7)] == [mul_double_add(d, G, E)[0] for d in (1, 3, 5, 7)]
    assert len(t.entries) == 4
    assert (rep.doublings, rep.additions, rep.table_size, rep.paper_precomp) == (1, 3, 3, 7)
    t2, rep2 = precompute_table(G, 2, E)
    assert len(t2.entries) == 2 and rep2.table_size == 1
    with pytest.raises(ValueError):
        t.odd_multiple(9)


def test_psize12_table(demo64):
    E, G = demo64.curve, demo64.base
    t, rep = precompute_table(G, 12, E)
    assert len(t.entries) == 2048 and rep.table_size == 2047
    assert t.odd_multiple(4095) == mul_double_add(4095, G, E)[0]


def test_table_must_match_base(demo64):
    E, G = demo64.curve, demo64.base
    t, _ = precompute_table(G, 4, E)
    H = mul_double_add(2, G, E)[0]
    with pytest.raises(ValueError):
        mul_window(11, H, 4, E, t)
    small, _ = precompute_table(G, 3, E)
    with pytest.raises(ValueError):
        mul_window(763, G, 4, E, small)


def test_nested_table_gives_same_result_and_cost(demo64):
    E, G = demo64.curve, demo64.base
    big, _ = precompute_table(G, 10, E)
    for w in range(2, 11):
        a = mul_window(123456789, G, w, E)
        b = mul_window(123456789, G, w, E, big)
        assert a[0] == b[0]
        assert (a[1].doublings, a[1].additions, a[1].table_size) == (b[1].doublings, b[1].additions, b[1].table_size)


def test_k_beyond_group_order(small23):
    E, G = small23.curve, small23.base
    for k in (33, 34, 66, 1000):
        expected = mul_double_add(k % 33, G, E)[0]
        for strat in STRATEGIES:
            assert multiply(k, G, E, strat, 3)[0] == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2**64), st.integers(2, 8), st.integers(0, 2**32))
def test_strategies_agree_and_counts_match_prediction(k, w, seed):
    from conftest import bundled

    spec = bundled("demo64")
    E = spec.curve
    P = random_point(spec, random.Random(seed))
    ref, _ = mul_double_add(k, P, E)
    runs, rep = mul_runs(k, P, E)
    assert runs == ref and rep.additions <= bin(k).count("1") - 1
    for mul, recode in ((mul_window, sliding_windows), (mul_signed_window, ones_complement_recode)):
        Q, rep = mul(k, P, w, E)
        assert Q == ref
        c = predict_cost(recode(k, w))
        assert (rep.doublings, rep.additions) == (c.doublings, c.additions)
        # chain ends at k and steps by doubling or by a table digit
        assert rep.chain[-1] == k
        assert len(rep.chain) == 1 + rep.doublings + rep.additions


def test_subtraction_uses_negated_entry(small23, small_points):
    E = small23.curve
    for P in small_points[1:]:
        assert mul_signed_window(31, P, 2, E)[0] == negate(mul_double_add(2, P, E)[0])
