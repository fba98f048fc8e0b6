import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from insdel.channel_oracle import corrupt
from insdel.concat_codec import (
    ConcatParams,
    DecodingError,
    ParameterError,
    concat_encode,
    covering_window,
    derive_insertion_params,
    derive_params,
    list_decode_insdel,
    list_decode_insertions,
    sqrt_upper,
    windows,
)
from insdel.field_rs import Polynomial, agreement, rs_encode
from insdel.inner_code import inner_encode, inner_list_decode, search_inner_code
from insdel.metric import in_insdel_ball, levenshtein_distance

Q, M, P, N = 4, 16, 7, 7


@pytest.fixture(scope="module")
def inner():
    return search_inner_code(Q, M, P, F(1, 4), seed=1)


@pytest.fixture(scope="module")
def params():
    return derive_params(F(1, 5), F(1, 25), 2, N, M, P, override_rate=F(2, 7))


@pytest.fixture(scope="module")
def ins_params():
    return derive_insertion_params(F(1, 5), F(1, 2), 4, 2, N, M, P, override_rate=F(2, 7))


def test_derived_example():
    # the rate check needs n >= 1/r; compute the formulas with a large enough n
    p = derive_params(F(1, 5), F(1, 25), 2, 565, M, 569)
    assert p.tau_D_prime == F(1, 5)
    assert p.tau_I_prime == F(9, 10)
    assert p.r == F(256, 144400)
    assert p.ell == F(1805, 8) == F(225625, 1000)
    assert math.floor(p.ell) == 225
    assert not p.rate_overridden


def test_derived_noiseless_example():
    p = derive_params(0, 0, 1, 72, M, 73)
    assert p.tau_D_prime == 0 and p.tau_I_prime == F(1, 2)
    assert p.r == F(1, 72)
    assert p.ell == 36  # 16 * (3/2)^2 * 1


def test_tau_d_zero_collapse():
    p = derive_params(F(1, 3), 0, 1, 7, M, 7, override_rate=F(1, 7))
    assert p.tau_I_prime == 2 * F(1, 3) + F(1, 2)


def test_rate_too_small_reports_minimum_n():
    with pytest.raises(ParameterError, match="n >= 565"):
        derive_params(F(1, 5), F(1, 25), 2, N, M, P)


def test_sqrt_upper():
    assert sqrt_upper(F(1, 25)) == F(1, 5)
    assert sqrt_upper(F(0)) == 0
    x = sqrt_upper(F(1, 2))
    assert x * x >= F(1, 2)
    assert x.denominator <= 2**16
    assert float(x) - math.sqrt(0.5) < 1e-9


def test_params_validation():
    with pytest.raises(ParameterError):
        derive_params(F(1, 5), F(1, 25), 2, 8, M, 7, override_rate=F(1, 7))  # n > p
    with pytest.raises(ParameterError):
        derive_params(F(1, 5), F(1, 25), 2, 4, M, 4, override_rate=F(1, 4))  # p not prime
    with pytest.raises(ParameterError):
        derive_insertion_params(F(1, 5), F(3, 2), 4, 2, N, M, P, override_rate=F(1, 7))


def test_params_text_roundtrip(params, ins_params):
    for p in (params, ins_params):
        assert ConcatParams.from_text(p.to_text()) == p


def test_derived_window_quantities(params, ins_params):
    assert params.stride == 6  # floor(0.8 * 16 / 2)
    assert params.j_max == 21  # ceil(2 * 1.2 * 7 / 0.8)
    assert params.jp_max == 5  # ceil(2 * 1.9 / 0.8)
    assert params.threshold == 3
    assert (params.inner_insertions, params.inner_deletions) == (14, 3)
    assert (params.outer_insertions, params.outer_deletions) == (22, 4)
    assert params.pair_cap == 21 * 5 * 2
    assert ins_params.b == 5  # ceil(1.2 * 16 / 4)
    assert ins_params.tau_I_prime * M >= F(1, 5) * M + ins_params.b
    assert ins_params.threshold == 2
    assert ins_params.ell == 256
    assert ins_params.pair_cap == N * 16 * 2


def _message(params, seed):
    rng = random.Random(seed)
    return [rng.randrange(params.p) for _ in range(params.message_length)]


def test_encode_structure(params, inner):
    s = [3, 5]
    x = concat_encode(params, inner, s)
    assert len(x) == N * M
    outer = rs_encode(s, range(N), P)
    for i in range(N):
        assert x[i * M:(i + 1) * M] == inner_encode(inner, i, outer[i])
    with pytest.raises(ParameterError):
        concat_encode(params, inner, [1])


def test_distinct_messages_far_apart(params, inner):
    # two degree-<2 polynomials agree on at most 1 of 7 points, so >= 6 blocks differ
    codewords = {tuple(s): concat_encode(params, inner, list(s)) for s in [(a, b) for a in range(3) for b in range(3)]}
    items = list(codewords.items())
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            d = levenshtein_distance(items[i][1], items[j][1])
            assert d >= inner.min_distance > 0


def test_uncorrupted_decode(params, ins_params, inner):
    for p, decode in ((params, list_decode_insdel), (ins_params, list_decode_insertions)):
        s = _message(p, 0)
        out = decode(p, inner, concat_encode(p, inner, s))
        assert tuple(s) in out.messages


def test_length_precondition(params, inner):
    x = concat_encode(params, inner, [1, 2])
    with pytest.raises(ValueError):
        list_decode_insdel(params, inner, x[:80])
    with pytest.raises(ParameterError):
        list_decode_insertions(params, inner, x)


def test_brute_force_cap(params, inner):
    x = concat_encode(params, inner, [1, 2])
    with pytest.raises(DecodingError):
        list_decode_insdel(params, inner, x, brute_force_cap=10)


@pytest.mark.parametrize("seed", range(8))
def test_noisy_decode_and_filter(params, inner, seed):
    s = _message(params, seed)
    x = concat_encode(params, inner, s)
    v, _ = corrupt(x, params.outer_insertions, params.outer_deletions, seed=seed, block_length=M)
    out = list_decode_insdel(params, inner, v)
    assert tuple(s) in out
    assert len(out) <= math.floor(params.ell)
    assert out.diagnostics.pair_count == len(out.pairs)
    for msg in out.messages:
        c = concat_encode(params, inner, list(msg))
        assert in_insdel_ball(c, v, params.outer_insertions, params.outer_deletions)
    f = Polynomial(tuple(s), P)
    assert agreement(f, out.pairs) >= params.threshold


def test_threads_and_determinism(params, inner):
    s = _message(params, 3)
    v, _ = corrupt(concat_encode(params, inner, s), 22, 4, seed=3)
    a = list_decode_insdel(params, inner, v)
    b = list_decode_insdel(params, inner, v, threads=4)
    assert a.messages == b.messages and a.pairs == b.pairs
    assert vars(a.diagnostics) == vars(b.diagnostics)


def test_windows_are_clamped_and_distinct(params):
    wins = windows(params, 100)
    assert len(wins) == len(set(wins))
    assert all(0 <= a < b <= 100 for a, b in wins)
    assert all(a % params.stride == 0 for a, _ in wins)


@pytest.mark.parametrize("seed", range(40))
def test_good_block_accounting(params, inner, seed):
    x = concat_encode(params, inner, _message(params, seed))
    _, ledger = corrupt(x, params.outer_insertions, params.outer_deletions, seed=seed, block_length=M)
    tdp = params.tau_D_prime
    many_del = sum(1 for d in ledger.block_deletions if d > tdp * M)
    many_ins = sum(1 for i in ledger.block_insertions if i > 2 * params.tau_I * M / (1 - tdp))
    assert many_del <= tdp * N
    assert many_ins <= (1 - tdp) * N / 2


@pytest.mark.parametrize("seed", range(40))
def test_window_coverage(params, inner, seed):
    s = _message(params, seed)
    x = concat_encode(params, inner, s)
    v, ledger = corrupt(x, params.outer_insertions, params.outer_deletions, seed=seed, block_length=M)
    generated = set(windows(params, len(v)))
    stride = params.stride
    outer = rs_encode(s, range(N), P)
    tdp = params.tau_D_prime
    for i, (a, b) in enumerate(ledger.block_spans):
        good = ledger.block_deletions[i] <= tdp * M and ledger.block_insertions[i] <= 2 * params.tau_I * M / (1 - tdp)
        if not good or a == b:
            continue
        j, jp = covering_window(params, (a, b))
        assert j <= params.j_max and jp <= params.jp_max
        win = (stride * j, min(stride * (j + jp), len(v)))
        assert win in generated
        assert win[0] <= a and b <= win[1]
        excess = (win[1] - win[0]) - (b - a)
        # both window ends are rounded to the stride grid, so up to 2(s - 1) extra symbols
        assert excess <= 2 * (stride - 1)
        if ledger.block_insertions[i] + excess <= params.inner_insertions:
            pair = (i, outer[i])
            assert pair in inner_list_decode(inner, v[win[0]:win[1]], params.inner_insertions, params.inner_deletions)


def test_insertion_decoder(ins_params, inner):
    for seed in range(6):
        s = _message(ins_params, seed)
        x = concat_encode(ins_params, inner, s)
        v, _ = corrupt(x, ins_params.outer_insertions, 0, seed=seed)
        out = list_decode_insertions(ins_params, inner, v)
        assert tuple(s) in out
        assert len(out) <= ins_params.ell
        assert out.diagnostics.pair_count <= ins_params.pair_cap


def test_covering_window_can_exceed_one_stride(params):
    # a block occupying [5, 19) with stride 6: the tightest grid window is [0, 24)
    assert params.stride == 6
    j, jp = covering_window(params, (5, 19))
    assert (6 * j, 6 * (j + jp)) == (0, 24)
    assert 24 - 14 == 10 > params.stride


@given(
    st.lists(st.integers(0, N - 1), min_size=4, max_size=4),
    st.lists(st.integers(0, N - 1), min_size=22, max_size=22),
)
@settings(max_examples=300, deadline=None)
def test_good_block_accounting_adversarial(del_blocks, ins_blocks):
    # every deletion and insertion is assigned to an arbitrary block, not just random channels
    p = derive_params(F(1, 5), F(1, 25), 2, N, M, P, override_rate=F(2, 7))
    assert (p.outer_deletions, p.outer_insertions) == (4, 22)
    dels = [del_blocks.count(b) for b in range(N)]
    ins = [ins_blocks.count(b) for b in range(N)]
    tdp = p.tau_D_prime
    assert sum(1 for d in dels if d > tdp * M) <= tdp * N
    assert sum(1 for i in ins if i > 2 * p.tau_I * M / (1 - tdp)) <= (1 - tdp) * N / 2
