import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from robustpir.decoder import (
    ERASED,
    AmbiguousDecoding,
    DecodingFailure,
    brute_force_decode,
    decode_errors_erasures,
)
from robustpir.field import PrimeField
from robustpir.grs import default_grs, grs_encode, make_grs, puncture

F7 = PrimeField(7)


def _rep5():
    return make_grs(F7, (1, 2, 3, 4, 5), (1,) * 5, 1)


def test_majority_on_repetition_code():
    rw = [3, 3, 1, 3, 3]
    # Oracle: a GRS_1 code with v = 1 is a repetition code, so majority vote.
    majority = max(set(rw), key=rw.count)
    cw, msg = decode_errors_erasures(_rep5(), rw)
    assert cw == [majority] * 5
    assert msg == [3]


def test_erasures_only():
    cw, msg = decode_errors_erasures(_rep5(), [3, ERASED, 3, ERASED, 3])
    assert cw == [3] * 5 and msg == [3]


def test_example_star_code_two_errors_one_erasure():
    F = PrimeField(17)
    C = default_grs(F, 13, 8)
    rng = random.Random(13)
    for _ in range(200):
        msg = [rng.randrange(17) for _ in range(8)]
        cw = grs_encode(C, msg)
        rw = list(cw)
        pos = rng.sample(range(13), 3)
        for j in pos[:2]:
            rw[j] = (rw[j] + rng.randrange(1, 17)) % 17
        rw[pos[2]] = ERASED
        out, f = decode_errors_erasures(C, rw)
        assert out == cw
        assert f == _trim(msg)


def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def test_brute_force_matches_first_example():
    assert brute_force_decode(_rep5(), [3, 3, 1, 3, 3]) == [3] * 5


def test_brute_force_all_erased_is_ambiguous():
    with pytest.raises(AmbiguousDecoding):
        brute_force_decode(_rep5(), [ERASED] * 5)


def test_brute_force_clean_codeword():
    C = make_grs(F7, (1, 2, 3, 4, 5, 6), (1, 2, 3, 4, 5, 6), 2)
    cw = grs_encode(C, [4, 5])
    assert brute_force_decode(C, cw) == cw


def test_brute_force_budget_guard():
    C = default_grs(PrimeField(101), 10, 4)
    with pytest.raises(ValueError):
        brute_force_decode(C, [0] * 10)


def test_wrong_length():
    with pytest.raises(ValueError):
        decode_errors_erasures(_rep5(), [1, 2, 3])


def _patterns(n, d):
    """Every (error set, erasure set) with 2e + s <= d - 1."""
    for s in range(d):
        for er in itertools.combinations(range(n), s):
            rest = [j for j in range(n) if j not in er]
            for e in range((d - 1 - s) // 2 + 1):
                for ep in itertools.combinations(rest, e):
                    yield ep, er


def _corrupt(cw, errs, erasures, rng, p):
    rw = list(cw)
    for j in errs:
        rw[j] = (rw[j] + rng.randrange(1, p)) % p
    for j in erasures:
        rw[j] = ERASED
    return rw


@pytest.mark.parametrize("p, n, k", [(7, 5, 1), (7, 6, 2), (7, 6, 3), (11, 7, 2), (11, 8, 3)])
def test_all_patterns_match_oracle(p, n, k):
    F = PrimeField(p)
    rng = random.Random(p * 100 + n * 10 + k)
    C = make_grs(F, rng.sample(range(p), n), [rng.randrange(1, p) for _ in range(n)], k)
    for errs, erasures in _patterns(n, C.d):
        cw = grs_encode(C, [rng.randrange(p) for _ in range(k)])
        rw = _corrupt(cw, errs, erasures, rng, p)
        got, _ = decode_errors_erasures(C, rw)
        assert got == brute_force_decode(C, rw) == cw


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_puncture_on_erasures(data):
    p = 11
    F = PrimeField(p)
    n = data.draw(st.integers(3, 10))
    k = data.draw(st.integers(1, min(3, n - 1)))
    alpha = data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n, unique=True))
    v = data.draw(st.lists(st.integers(1, p - 1), min_size=n, max_size=n))
    C = make_grs(F, alpha, v, k)
    s = data.draw(st.integers(0, C.d - 1))
    erasures = data.draw(st.lists(st.integers(0, n - 1), min_size=s, max_size=s, unique=True))
    rest = [j for j in range(n) if j not in erasures]
    e = data.draw(st.integers(0, (C.d - 1 - s) // 2))
    errs = data.draw(st.lists(st.sampled_from(rest), min_size=e, max_size=e, unique=True))
    msg = data.draw(st.lists(st.integers(0, p - 1), min_size=k, max_size=k))
    rw = _corrupt(grs_encode(C, msg), errs, erasures, random.Random(e), p)

    full, f_full = decode_errors_erasures(C, rw)
    P = puncture(C, rest)
    part, f_part = decode_errors_erasures(P, [rw[j] for j in rest])
    assert f_full == f_part
    assert [full[j] for j in rest] == part


@pytest.mark.parametrize("seed", range(5))
def test_beyond_budget_never_returns_non_codeword(seed):
    p = 11
    F = PrimeField(p)
    rng = random.Random(seed)
    C = make_grs(F, range(1, 9), [rng.randrange(1, p) for _ in range(8)], 2)
    failures = 0
    for _ in range(300):
        cw = grs_encode(C, [rng.randrange(p) for _ in range(2)])
        s = rng.randint(0, 5)
        pos = rng.sample(range(8), min(8, s + rng.randint(0, 4)))
        errs, erasures = pos[s:], pos[:s]
        if 2 * len(errs) + len(erasures) <= C.d - 1:
            continue
        rw = _corrupt(cw, errs, erasures, rng, p)
        try:
            out, f = decode_errors_erasures(C, rw)
        except DecodingFailure:
            failures += 1
            continue
        # Whatever comes back is a genuine codeword consistent with its message.
        assert out == grs_encode(C, f + [0] * (2 - len(f)))
        assert len(f) <= 2
    assert failures > 0
