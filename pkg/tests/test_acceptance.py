"""Acceptance criteria 1-8, full size. Each test prints one pass/fail line."""

from mql.core import Model
from mql.questioners import run_majority3, run_pairing_bins
from mql.solver import existence_table, worst_case_count
from mql import verify
from mql.verify import exact_value, play_greedy

YN, PAIRING = Model.YN, Model.PAIRING


def test_criterion_1_exact_small_yn(report):
    r = verify.check_exact_small_yn()
    got = {n: exact_value(n, 3, YN) for n in (4, 5, 6)}
    ok = r.passed and got == {4: 4, 5: 4, 6: 7} and r.seconds < 300
    report(1, ok, r.detail)
    assert ok, r.detail


def test_criterion_2_pairing_closed_form(report):
    r = verify.check_pairing_closed_form()
    got = {n: exact_value(n, 3, PAIRING) for n in range(3, 9)}
    ok = r.passed and got == {3: 1, 4: 3, 5: 2, 6: 4, 7: 3, 8: 5} and r.seconds < 600
    report(2, ok, r.detail)
    assert ok, r.detail


def test_criterion_3_pair_queries(report):
    r = verify.check_pair_queries()
    expected = [1, 1, 3, 3, 4, 4, 7, 7]  # n - popcount(n), n = 2..9
    got = {m: [exact_value(n, 2, m) for n in range(2, 10)] for m in Model}
    ok = r.passed and all(v == expected for v in got.values())
    report(3, ok, r.detail)
    assert ok, r.detail


def test_criterion_4_existence(report):
    r = verify.check_existence()
    literal = {
        (3, YN): {3: False, 4: True},
        (4, YN): {5: False, 6: True},
        (3, PAIRING): {2: False, 3: True},
        (4, PAIRING): {4: False, 5: True},
    }
    ok = r.passed
    for (k, model), want in literal.items():
        lo = min(want)
        ok = ok and dict(existence_table(k, model, lo + 1, n_min=lo)) == want
    report(4, ok, r.detail)
    assert ok, r.detail


def test_criterion_5_upper_bounds(report):
    r = verify.check_upper_bounds()
    yn_bounds = dict(zip(range(4, 15), [4, 4, 7, 7, 8, 8, 11, 11, 12, 12, 15]))
    ok = r.passed and r.seconds < 600
    ok = ok and all(worst_case_count(run_majority3, n, 3, YN)[0] <= b for n, b in yn_bounds.items() if n <= 10)
    report(5, ok, r.detail)
    assert ok, r.detail


def test_criterion_6_lower_bound_adversaries(report):
    r = verify.check_lower_bound_adversaries()
    forced = [play_greedy(run_pairing_bins, n)[0] for n in range(3, 13)]
    ok = r.passed and forced == [1, 3, 2, 4, 3, 5, 4, 6, 5, 7]
    report(6, ok, r.detail)
    assert ok, r.detail


def test_criterion_7_property_suites(report):
    r = verify.check_properties()
    report(7, r.passed, r.detail)
    assert r.passed, r.detail


def test_criterion_8_sandwich(report):
    r = verify.check_sandwich()
    vals = {n: exact_value(n, 3, YN) for n in range(4, 9)}
    bands = all(n - 1 <= vals[n] for n in (4, 6, 8)) and all(vals[n] >= n - 3 for n in (5, 7))
    ok = r.passed and bands
    report(8, ok, f"{r.detail}; q_3(4..8) = {[vals[n] for n in range(4, 9)]}")
    assert ok, r.detail
