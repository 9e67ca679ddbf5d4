import pytest

from fermat_tiles import PrimeContext, totient_power
from fermat_tiles import published as pub
from fermat_tiles.digits import (
    DigitVector,
    all_digit_vectors,
    carry,
    digit_g,
    exp_series,
    h_eval,
    h_matrix,
    shift_lemma_report,
    shifted_arguments,
)

from oracles import digit, h_oracle

SMALL = [3, 5, 7, 11, 13, 17]


def test_digit_vector_round_trip():
    v = DigitVector.from_int(38, 5, 3)
    assert v.digits == (3, 2, 1)
    assert v.value == 38
    assert v.extend(4).value == 38 + 4 * 125


def test_digit_vector_rejects_bad_digits():
    with pytest.raises(ValueError):
        DigitVector(5, (5,))
    with pytest.raises(ValueError):
        DigitVector.from_int(25, 5, 2)


def test_all_digit_vectors_order():
    vs = [v.digits for v in all_digit_vectors(3, 2)]
    assert len(vs) == 9
    assert vs[:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]


@pytest.mark.parametrize("s, j_max, expected", [(0, 3, (1, 0, 0)), (7, 2, (3, 0))])
def test_exp_series_p5(ctx5, s, j_max, expected):
    assert exp_series(ctx5, s, j_max).coefficients == expected


def test_exp_series_p97(ctx97):
    assert exp_series(ctx97, 1, 2).coefficients == (5, 0)


def test_exp_series_range_check(ctx5):
    with pytest.raises(ValueError):
        exp_series(ctx5, 20, 2)


@pytest.mark.parametrize("p", SMALL)
def test_digit_quotient_is_exact(p):
    ctx = PrimeContext.create(p)
    for j in (1, 2):
        for t in range(totient_power(p, j + 1)):
            q = digit_g(ctx, j, t)
            assert 0 <= q < p
            assert q == digit(pow(ctx.g, t, p ** (j + 1)), p, j)


@pytest.mark.parametrize("p", SMALL)
def test_series_reconstruction(p):
    ctx = PrimeContext.create(p)
    for s in range(totient_power(p, 3)):
        ser = exp_series(ctx, s, 3)
        assert ser.partial_sum(p, 3) == pow(ctx.g, s, p**3)
        assert ser.partial_sum(p, 3) == ctx.exp(3, s)


@pytest.mark.parametrize("p", [5, 7])
def test_smallness_criterion(p):
    ctx = PrimeContext.create(p)
    for j in (1, 2, 3):
        for s in range(totient_power(p, j)):
            small = ctx.exp(j, s) <= p
            zero_tail = all(c == 0 for c in exp_series(ctx, s, j).coefficients[1:])
            assert small == zero_tail


@pytest.mark.parametrize(
    "a, j, s, r, expected",
    [(0, 1, 3, (1,), 0), (3, 1, 0, (0,), 3), (0, 2, 3, (1, 0), 0)],
)
def test_h_eval_examples(ctx5, a, j, s, r, expected):
    assert h_eval(ctx5, a, j, s, r) == expected


def test_h_eval_digit_count(ctx5):
    with pytest.raises(ValueError):
        h_eval(ctx5, 0, 2, 0, (1,))


def test_h_tables_p5(ctx5):
    grid = lambda m: tuple(map(tuple, m))  # noqa: E731
    assert grid(h_matrix(ctx5, 0, 1)) == pub.H1_P5_A0
    assert grid(h_matrix(ctx5, 3, 1)) == pub.H1_P5_A3
    assert grid(h_matrix(ctx5, 0, 2, s=3)) == pub.H2_P5_A0_S3
    assert grid(h_matrix(ctx5, 0, 2, s=2)) == pub.H2_P5_A0_S2


@pytest.mark.parametrize("p", [5, 7, 11])
def test_h_eval_matches_oracle(p):
    ctx = PrimeContext.create(p)
    for a in range(p - 1):
        for j in (1, 2):
            for s in range(p - 1):
                for r in all_digit_vectors(p, j):
                    assert h_eval(ctx, a, j, s, r) == h_oracle(p, ctx.g, a, j, s, r.value)


def test_h_matrix_needs_prefix(ctx5):
    with pytest.raises(ValueError):
        h_matrix(ctx5, 0, 3, s=0)
    with pytest.raises(ValueError):
        h_matrix(ctx5, 0, 2)


def test_h_matrix_level3_slice(ctx5):
    m = h_matrix(ctx5, 1, 3, s=2, prefix=(4,))
    assert m[1][3] == h_oracle(5, 2, 1, 3, 2, 4 + 1 * 5 + 3 * 25)


def test_carry():
    assert [carry(m, 5) for m in (0, 3, 4, 6, 9)] == [0, 0, 1, 1, 2]


def test_shifted_arguments_readings():
    r = DigitVector(5, (4, 4))
    assert shifted_arguments(5, 3, 3, r, "digitwise") == (2, DigitVector(5, (3, 3)))
    # 8 + 8*5 = 48 = 3 + 4*5 + 1*25, truncated to two digits
    assert shifted_arguments(5, 3, 3, r, "carry") == (2, DigitVector(5, (3, 4)))
    with pytest.raises(ValueError):
        shifted_arguments(5, 3, 3, r, "other")


def test_shift_example_point(ctx5):
    # (s, r) = (3, 1) with a = 3: carry 1, so the right side is h_1^0(2; 0)
    s2, r2 = shifted_arguments(5, 3, 3, DigitVector(5, (1,)), "digitwise")
    assert (s2, r2.digits) == (2, (0,))
    assert h_eval(ctx5, 3, 1, 3, (1,)) == h_eval(ctx5, 0, 1, s2, r2) == 0
    assert h_eval(ctx5, 0, 1, 3, (1,)) == 0


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("j", [1, 2])
def test_zero_shift_holds_everywhere(p, j):
    rep = shift_lemma_report(PrimeContext.create(p), 0, j)
    assert rep.total == (p - 1) * p**j
    for res in rep.readings.values():
        assert res.holds and res.agree == rep.total


def test_shift_report_level1(ctx5, ctx7):
    for ctx, a in ((ctx5, 3), (ctx7, 2)):
        rep = shift_lemma_report(ctx, a, 1)
        assert rep.readings["digitwise"].holds
        assert rep.readings["carry"].holds
    assert shift_lemma_report(ctx7, 2, 1).readings["digitwise"].agree == 42


def test_shift_report_level2_is_partial(ctx5):
    rep = shift_lemma_report(ctx5, 3, 2)
    assert rep.total == 100
    assert rep.readings["digitwise"].agree == 70
    assert rep.readings["carry"].agree == 25
    assert rep.readings["digitwise"].first_counterexample is not None


def test_shift_report_sample(ctx5):
    rep = shift_lemma_report(ctx5, 3, 1, sample=[(3, (1,))])
    assert rep.total == 1
    assert rep.readings["digitwise"].holds
