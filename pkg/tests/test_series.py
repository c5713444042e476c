from fractions import Fraction

import mpmath
import pytest

from qkernel import InvalidParameterError
from series import (
    BoundedValue,
    TermCapExceededError,
    UnsupportedTargetError,
    classical_target,
    classical_zeta,
    euler_q_analogue,
    limit_probe,
    two_one_eval,
    zbar_q,
    zeta_star_q_direct,
    zeta_star_twos,
    zeta_star_twos_one,
    zhat_q,
)
from strings import Ending, parse_two_one, two_one_strings

HALF = Fraction(1, 2)
TWO_THIRDS = Fraction(2, 3)
EPS_FAST = "1e-20"
EPS_FULL = "1e-30"


def _close(a, b):
    return abs(a.partial_sum - b.partial_sum) <= a.tail_bound + b.tail_bound


def _mp(value):
    return mpmath.mpf(value.numerator) / value.denominator


def test_empty_inputs_are_one():
    assert zeta_star_q_direct((), HALF, EPS_FAST) == BoundedValue(Fraction(1), Fraction(0), 1)
    assert zhat_q((), (), HALF, EPS_FAST).partial_sum == 1
    assert zbar_q((), (), HALF, EPS_FAST).partial_sum == 1
    assert two_one_eval(None, HALF, EPS_FAST).partial_sum == 1


def test_first_term_of_zhat():
    value = zhat_q((3,), (2,), HALF, EPS_FAST, terms=1)
    assert value.partial_sum == HALF ** 2 * (1 + HALF)
    assert value.terms_used == 1


@pytest.mark.parametrize("q", [HALF, TWO_THIRDS])
def test_zbar_zero_telescopes(q):
    for K in range(1, 51):
        value = zbar_q((0,), (0,), q, EPS_FAST, terms=K)
        assert value.partial_sum == 1 + (-1) ** (K - 1) * q ** (K * (K + 1) // 2)


@pytest.mark.parametrize("q", [HALF, TWO_THIRDS])
def test_zbar_zero_limit_is_one(q):
    value = zbar_q((0,), (0,), q, EPS_FULL)
    assert value.tail_bound <= Fraction(1, 10 ** 30)
    assert abs(value.partial_sum - 1) <= value.tail_bound


def test_bound_respects_eps_and_partial_sums_increase():
    previous = Fraction(0)
    for K in range(1, 8):
        value = zeta_star_q_direct((2, 1), HALF, EPS_FAST, terms=K)
        assert value.partial_sum >= previous
        previous = value.partial_sum
    final = zeta_star_q_direct((2, 1), HALF, EPS_FAST)
    assert final.tail_bound <= Fraction(1, 10 ** 20)


@pytest.mark.parametrize("text", ["2,1", "1,1", "2", "1,2", "2,2"])
def test_two_one_matches_direct_sum(text):
    s = parse_two_one(text)
    formula = two_one_eval(s, HALF, EPS_FAST)
    direct = zeta_star_q_direct(s.expanded(), HALF, EPS_FAST)
    assert formula.tail_bound <= Fraction(1, 10 ** 20)
    assert _close(formula, direct)


@pytest.mark.parametrize(
    "evaluate",
    [
        lambda q, eps, terms=None: zeta_star_q_direct((1, 2), q, eps, terms),
        lambda q, eps, terms=None: zhat_q((3, 3), (2, 2), q, eps, terms),
        lambda q, eps, terms=None: zbar_q((1, 2), (1, 1), q, eps, terms),
        lambda q, eps, terms=None: zbar_q((3, 2), (2, 0), q, eps, terms),
    ],
)
def test_doubling_terms_stays_inside_bound(evaluate):
    for q in (HALF, TWO_THIRDS):
        first = evaluate(q, EPS_FAST)
        doubled = evaluate(q, EPS_FAST, 2 * first.terms_used)
        assert abs(doubled.partial_sum - first.partial_sum) <= first.tail_bound
        assert doubled.tail_bound <= first.tail_bound


def test_special_cases_agree():
    assert euler_q_analogue(HALF, EPS_FAST) == two_one_eval(parse_two_one("2,1"), HALF, EPS_FAST)
    assert zeta_star_twos_one(1, HALF, EPS_FAST) == euler_q_analogue(HALF, EPS_FAST)
    assert _close(zeta_star_twos(1, HALF, EPS_FAST), zeta_star_q_direct((2,), HALF, EPS_FAST))


def test_composition_budgets_add_up():
    s = parse_two_one("2,1,2,1")
    value = two_one_eval(s, HALF, EPS_FAST)
    assert value.tail_bound <= Fraction(1, 10 ** 20)
    assert _close(value, zeta_star_q_direct(s.expanded(), HALF, EPS_FAST))


def test_precision_rounds_outer_terms():
    exact = zhat_q((3,), (2,), HALF, EPS_FAST)
    rounded = zhat_q((3,), (2,), HALF, EPS_FAST, precision=30)
    assert (10 ** 30) % rounded.partial_sum.denominator == 0
    assert rounded.tail_bound <= Fraction(1, 10 ** 20)
    assert _close(exact, rounded)


@pytest.mark.parametrize("eps", [0, "-1e-5", "abc", 0.5])
def test_bad_eps_rejected(eps):
    with pytest.raises(InvalidParameterError):
        zhat_q((3,), (2,), HALF, eps)


def test_bad_exponents_rejected():
    with pytest.raises(InvalidParameterError):
        zhat_q((3,), (0,), HALF, EPS_FAST)
    with pytest.raises(InvalidParameterError):
        zbar_q((3, 1), (2,), HALF, EPS_FAST)
    with pytest.raises(InvalidParameterError):
        zeta_star_q_direct((2, 0), HALF, EPS_FAST)


def test_term_cap_raises(monkeypatch):
    monkeypatch.setenv("QZETA_TERM_CAP", "3")
    with pytest.raises(TermCapExceededError):
        zeta_star_q_direct((2,), HALF, EPS_FULL)
    with pytest.raises(TermCapExceededError):
        zhat_q((3,), (2,), HALF, EPS_FULL, terms=4)


def test_invalid_term_cap(monkeypatch):
    monkeypatch.setenv("QZETA_TERM_CAP", "many")
    with pytest.raises(InvalidParameterError):
        zhat_q((3,), (2,), HALF, EPS_FAST)


def test_bounded_value_json():
    payload = BoundedValue(Fraction(1, 3), Fraction(1, 10 ** 6), 7).to_json(5)
    assert payload == {
        "exact_partial": "1/3",
        "decimal": "0.33333",
        "tail_bound_decimal": "0.00000",
        "terms": 7,
    }


@pytest.mark.parametrize("w", [2, 3, 5])
def test_classical_zeta_matches_mpmath(w):
    mpmath.mp.dps = 40
    value = classical_zeta(w, "1e-12")
    assert value.tail_bound <= Fraction(1, 10 ** 12)
    assert abs(_mp(value.partial_sum) - mpmath.zeta(w)) <= _mp(value.tail_bound)


def test_classical_targets():
    mpmath.mp.dps = 40
    zeta3 = classical_target(parse_two_one("2,1"))
    assert zeta3.tail_bound <= Fraction(1, 10 ** 15)
    assert abs(_mp(zeta3.partial_sum) - 2 * mpmath.zeta(3)) <= _mp(zeta3.tail_bound)

    twos = classical_target(parse_two_one("2,2"), "1e-12")
    # zeta*(2,2) = (zeta(2)^2 + zeta(4))/2 = 7/4 zeta(4)
    assert abs(_mp(twos.partial_sum) - mpmath.mpf(7) / 4 * mpmath.zeta(4)) <= _mp(twos.tail_bound)


@pytest.mark.parametrize("text", ["1", "2,1,2,1", "1,2", "1,1"])
def test_unsupported_targets(text):
    with pytest.raises(UnsupportedTargetError):
        classical_target(parse_two_one(text))


def test_two_two_one_has_target():
    mpmath.mp.dps = 40
    target = classical_target(parse_two_one("2,2,1"), "1e-12")
    assert abs(_mp(target.partial_sum) - 2 * mpmath.zeta(5)) <= _mp(target.tail_bound)


def test_limit_probe_moves_towards_target():
    rows = limit_probe(parse_two_one("2,1"), ["9/10", "99/100"])
    assert [row.q for row in rows] == [Fraction(9, 10), Fraction(99, 100)]
    assert rows[1].distance < rows[0].distance
    for row in rows:
        assert row.value.tail_bound <= Fraction(1, 10 ** 12)
        assert row.target.tail_bound <= Fraction(1, 10 ** 15)
        assert row.distance > row.uncertainty


def test_limit_probe_rejects_unsupported_strings():
    with pytest.raises(UnsupportedTargetError):
        limit_probe(parse_two_one("2,1,2,1"), ["9/10"])


@pytest.mark.slow
def test_limit_probe_default_points():
    rows = limit_probe(parse_two_one("2,1"))
    distances = [row.distance for row in rows]
    assert distances == sorted(distances, reverse=True)
    assert len(set(distances)) == 3
    assert all(row.value.tail_bound <= Fraction(1, 10 ** 12) for row in rows)


# every two-one string with sum(s) + m <= 4, both endings
ACCEPTANCE_GRID = [
    s for m in range(1, 5) for s in two_one_strings(Ending.ONE, (m, m), (0, 4 - m))
] + [s for m in range(0, 4) for s in two_one_strings(Ending.TWO, (m, m), (1, 4 - m))]


def test_acceptance_grid_covers_both_endings():
    texts = {s.to_text() for s in ACCEPTANCE_GRID}
    for text in ["1", "2", "2,2,2,1", "1,2,2", "2,1,2", "2,2,2,2", "1,1,1,1", "1,1,1,2", "2,2,1,1"]:
        assert text in texts
    assert len(texts) == len(ACCEPTANCE_GRID)
    assert all(sum(s.exponents) + s.ones <= 4 for s in ACCEPTANCE_GRID)


@pytest.mark.parametrize("s", ACCEPTANCE_GRID, ids=lambda s: s.to_text())
def test_two_one_matches_direct_sum_on_grid(s):
    formula = two_one_eval(s, HALF, "1e-10")
    direct = zeta_star_q_direct(s.expanded(), HALF, "1e-10")
    assert formula.tail_bound <= Fraction(1, 10 ** 10)
    assert _close(formula, direct)


@pytest.mark.slow
@pytest.mark.parametrize("s", ACCEPTANCE_GRID, ids=lambda s: s.to_text())
@pytest.mark.parametrize("q", [HALF, TWO_THIRDS])
def test_two_one_acceptance(s, q):
    formula = two_one_eval(s, q, EPS_FULL)
    direct = zeta_star_q_direct(s.expanded(), q, EPS_FULL)
    assert _close(formula, direct)
    doubled = two_one_eval(s, q, EPS_FULL, terms=2 * formula.terms_used)
    assert abs(doubled.partial_sum - formula.partial_sum) <= formula.tail_bound


@pytest.mark.parametrize("q", ["3/2", 0.5, "0", None])
def test_two_one_eval_checks_q_for_empty_string(q):
    with pytest.raises(InvalidParameterError):
        two_one_eval(None, q, EPS_FAST)
