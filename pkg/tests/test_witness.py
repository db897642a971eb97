"""Colex machinery, implicit witness matrices, sampling, and structural checks."""

import random
from functools import cmp_to_key
from itertools import combinations

import pytest

from monomat.errors import (
    EqualVectorsError,
    ExhaustedAttemptsError,
    FormatError,
    LengthMismatchError,
    RankOutOfRangeError,
)
from monomat.matrix import DECREASING, INCREASING, sign_diff
from monomat.oracle import SearchBudget, brute_force_row_monotone
from monomat.witness import (
    SignMatrix,
    WitnessMatrix,
    build_witness,
    colex_compare,
    colex_delta,
    colex_unrank,
    format_sign_matrix,
    parse_sign_matrix,
    row_set_profiles,
    sample_sign_matrix,
    structural_counterexample,
    verify_witness,
)


def test_colex_compare_examples():
    assert colex_compare((1, 0), (0, 1)) == -1  # highest differing coordinate is 2, y holds 1
    assert colex_compare((1, 1), (1, 1)) == 0
    order = [(0, 0), (1, 0), (0, 1), (1, 1)]
    for i, x in enumerate(order):
        for j, y in enumerate(order):
            expected = (i > j) - (i < j)
            assert colex_compare(x, y) == expected
    with pytest.raises(LengthMismatchError):
        colex_compare((0,), (0, 1))


def test_colex_delta():
    assert colex_delta((0, 0), (1, 0)) == 1
    assert colex_delta((1, 0), (0, 1)) == 2
    with pytest.raises(EqualVectorsError):
        colex_delta((1, 1), (1, 1))


def test_colex_delta_matches_linear_scan():
    rng = random.Random(2)
    for _ in range(300):
        t = rng.randrange(1, 12)
        x = tuple(rng.getrandbits(1) for _ in range(t))
        y = tuple(rng.getrandbits(1) for _ in range(t))
        if x == y:
            continue
        expected = max(i + 1 for i in range(t) if x[i] != y[i])
        assert colex_delta(x, y) == expected


def test_colex_unrank_examples():
    assert colex_unrank(2, 1) == (0, 0)
    assert colex_unrank(2, 3) == (0, 1)
    with pytest.raises(RankOutOfRangeError):
        colex_unrank(2, 5)
    with pytest.raises(RankOutOfRangeError):
        colex_unrank(2, 0)


@pytest.mark.parametrize("t", range(0, 11))
def test_colex_sort_reproduces_rank_order(t):
    vectors = [colex_unrank(t, k) for k in range(1, (1 << t) + 1)]
    assert sorted(vectors, key=cmp_to_key(colex_compare)) == vectors


def test_build_witness_small_instance():
    sm = SignMatrix.from_rows([[1, -1]])
    w = build_witness(sm)
    assert [w.entry(0, k) for k in range(1, 5)] == [0, 2, -4, -2]
    assert w.entry(0, 3) == -4
    for k in range(1, 5):
        for l in range(k + 1, 5):
            b = colex_delta(colex_unrank(2, k), colex_unrank(2, l))
            assert sign_diff(w.column(k), w.column(l)) == sm.col(b - 1)


def test_witness_t0_single_zero_column():
    w = build_witness(SignMatrix.from_rows([[], []]))
    assert w.cols == 1
    assert w.column(1) == (0, 0)


def test_sign_identity_exhaustive_t8():
    rng = random.Random(8)
    sm = SignMatrix.from_rows(
        [[1 - 2 * rng.getrandbits(1) for _ in range(8)] for _ in range(4)]
    )
    w = build_witness(sm)
    cols = [w.column(k) for k in range(1, 257)]
    bits = [colex_unrank(8, k) for k in range(1, 257)]
    for k in range(256):
        for l in range(k + 1, 256):
            b = colex_delta(bits[k], bits[l])
            assert sign_diff(cols[k], cols[l]) == sm.col(b - 1)


def test_entry_magnitude_bound():
    rng = random.Random(13)
    sm = SignMatrix.from_rows(
        [[1 - 2 * rng.getrandbits(1) for _ in range(12)] for _ in range(3)]
    )
    w = build_witness(sm)
    bound = (1 << 13) - 2
    for k in rng.sample(range(1, w.cols + 1), 200):
        for a in range(3):
            assert abs(w.entry(a, k)) <= bound


def test_materialize_limit():
    from monomat.errors import MonomatError

    sm = SignMatrix.from_rows([[1] * 21])
    with pytest.raises(MonomatError):
        build_witness(sm).materialize()


def test_sample_sign_matrix_verified_and_deterministic():
    first = sample_sign_matrix(6, 5, 3, 2, seed=1)
    second = sample_sign_matrix(6, 5, 3, 2, seed=1)
    assert first == second
    other = sample_sign_matrix(6, 5, 3, 2, seed=2)
    assert isinstance(other, SignMatrix)


def test_sample_sign_matrix_trivially_small():
    sm = sample_sign_matrix(1, 1, 2, 2, seed=0)
    assert sm.rows == 1 and sm.cols == 1  # no 2x2 submatrix exists at all


def test_sample_sign_matrix_impossible_target():
    with pytest.raises(ExhaustedAttemptsError):
        sample_sign_matrix(2, 2, 1, 1, seed=0, max_attempts=20)


def test_verify_witness_boundary_fail():
    sm = SignMatrix.from_rows([[1, -1], [1, 1]])  # column 0 is all +1
    report = verify_witness(build_witness(sm), 2)
    assert report.verdict == "FAIL"
    assert report.clique_bound >= 2
    rows, ranks, direction = structural_counterexample(build_witness(sm), report)
    assert len(ranks) >= 2
    dense = build_witness(sm).materialize()
    picked = [dense.column(k - 1) for k in ranks]
    for r in rows:
        run = [col[r] for col in picked]
        if direction == INCREASING:
            assert all(x <= y for x, y in zip(run, run[1:]))
        else:
            assert all(x >= y for x, y in zip(run, run[1:]))


def test_verify_witness_pass_for_sampled_matrix():
    # no n x s single-sign block with s = ceil(log2 n) forces |B| < log2 n
    sm = sample_sign_matrix(8, 6, 4, 2, seed=3)
    report = verify_witness(build_witness(sm), 4)
    assert report.verdict == "PASS"
    assert report.mode == "exhaustive"
    assert report.clique_bound < 4
    for rows, plus, minus in row_set_profiles(build_witness(sm), 4):
        assert len(plus) < 2 and len(minus) < 2


def test_verify_witness_pass_agrees_with_oracle():
    sm = sample_sign_matrix(6, 5, 3, 2, seed=1)
    w = build_witness(sm)
    assert verify_witness(w, 3).verdict == "PASS"
    assert brute_force_row_monotone(w.materialize(), 3, SearchBudget(10**6, 10**6)) is None


def test_verify_witness_more_rows_than_matrix():
    sm = SignMatrix.from_rows([[1, -1]])
    report = verify_witness(build_witness(sm), 5)
    assert report.verdict == "PASS" and report.row_sets_total == 0


def test_verify_witness_sampled_mode():
    rng = random.Random(21)
    sm = SignMatrix.from_rows(
        [[1 - 2 * rng.getrandbits(1) for _ in range(4)] for _ in range(30)]
    )
    report = verify_witness(build_witness(sm), 10, max_row_sets=500, seed=0)
    assert report.mode == "sampled"
    assert 0 < report.coverage < 1
    assert report.row_sets_tested <= 500


def test_sign_matrix_round_trip():
    sm = SignMatrix.from_rows([[1, -1, 1], [-1, -1, 1]])
    text = format_sign_matrix(sm)
    assert parse_sign_matrix(text) == sm
    assert parse_sign_matrix("1 2\n+1 -1\n") == SignMatrix.from_rows([[1, -1]])
    assert parse_sign_matrix("1 2\n+-\n") == SignMatrix.from_rows([[1, -1]])
    with pytest.raises(FormatError):
        parse_sign_matrix("1 2\n+ x\n")
    with pytest.raises(FormatError):
        parse_sign_matrix("")


def test_row_set_profiles_definition():
    sm = SignMatrix.from_rows([[1, -1], [1, 1], [-1, -1]])
    w = build_witness(sm)
    profiles = {rows: (plus, minus) for rows, plus, minus in row_set_profiles(w, 2)}
    assert profiles[(0, 1)] == ((0,), ())
    assert profiles[(0, 2)] == ((), (1,))
    assert profiles[(1, 2)] == ((), ())


def test_witness_column_count():
    sm = SignMatrix.from_rows([[1] * 5, [-1] * 5])
    w = build_witness(sm)
    assert w.cols == 32 and w.rows == 2


def test_sampled_witness_end_to_end_no_submatrix():
    sm = sample_sign_matrix(6, 5, 3, 2, seed=1)
    w = build_witness(sm)
    dense = w.materialize()
    assert dense.rows == 6 and dense.cols == 32
    found = brute_force_row_monotone(dense, 3, SearchBudget(10**7, 10**7))
    assert found is None
