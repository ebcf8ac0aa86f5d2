import pytest
from hypothesis import given, settings, strategies as st

from mql.adversaries import HonestOracle
from mql.core import NO_MAJORITY, Coloring, Model, QuestionerError, Verdict, verdict_holds
from mql.questioners import (
    Session,
    majority3_bound,
    nu,
    odd_reduce,
    pair_value,
    pairing_value,
    run_majority3,
    run_majority3_with_gap,
    run_pair_bins,
    run_pairing_bins,
)
from mql.solver import worst_case_count


def play(questioner, spec, model=Model.YN, **kw):
    return questioner(HonestOracle(Coloring.parse(spec), model), len(spec), model=model, **kw)


def test_bound_table():
    assert [majority3_bound(n) for n in range(4, 12)] == [4, 4, 7, 7, 8, 8, 11, 11]
    assert [pairing_value(n) for n in range(3, 9)] == [1, 3, 2, 4, 3, 5]
    assert [nu(n) for n in (1, 2, 3, 6, 7, 8)] == [1, 1, 2, 2, 3, 1]
    assert pair_value(6) == 4


def test_majority3_small_examples():
    run = play(run_majority3, "RRRB")
    assert run.verdict == Verdict.majority(0) and run.query_count <= 4
    run = play(run_majority3, "RRBB")
    assert run.verdict == NO_MAJORITY
    assert run.query_count == 4 and not any(a.yes for _, a in run.transcript.steps)
    run = play(run_majority3, "RRRRBB")
    assert verdict_holds(Coloring.parse("RRRRBB"), run.verdict)
    assert run.verdict.ball in {0, 1, 2, 3} and run.query_count <= 7


def test_gap_examples():
    run = play(run_majority3_with_gap, "RRRB")
    assert run.gap == 3
    c = "RRBRBRR"
    run = play(run_majority3_with_gap, c)
    assert run.gap == 5 and verdict_holds(Coloring.parse(c), run.verdict)
    assert run.query_count <= play(run_majority3, c).query_count + 1
    run = play(run_majority3_with_gap, "RBRBBRBR")
    assert run.gap == 4 and run.verdict == NO_MAJORITY


def test_odd_reduce_examples():
    run = play(run_majority3, "RRBBR")
    assert run.verdict == Verdict.majority(4)
    run = play(run_majority3, "RRRBB")
    assert run.verdict.ball in {0, 1, 2}
    run = play(run_majority3, "R" * 9)
    assert verdict_holds(Coloring.parse("R" * 9), run.verdict)
    assert run.transcript.n == 9
    with pytest.raises(ValueError):
        odd_reduce(run_majority3, HonestOracle(Coloring.parse("RRBB")), 4)


def test_pairing_bins_examples():
    for spec in ("RRB", "RBB", "BRB", "RRR"):
        run = play(run_pairing_bins, spec, Model.PAIRING)
        assert run.query_count == 1 and verdict_holds(Coloring.parse(spec), run.verdict)
    run = play(run_pairing_bins, "RRRRRR", Model.PAIRING)
    assert [a.yes for _, a in run.transcript.steps] == [True, True, True]
    assert run.verdict == Verdict.majority(0)
    assert worst_case_count(run_pairing_bins, 4, 3, Model.PAIRING) == (3, True)


def test_pairing_bins_needs_witnesses():
    with pytest.raises(ValueError):
        run_pairing_bins(HonestOracle(Coloring.parse("RRBB")), 4, model=Model.YN)


def test_pair_bins_examples():
    run = play(run_pair_bins, "RRB")
    assert run.query_count == 1 and run.verdict == Verdict.majority(0)
    assert worst_case_count(run_pair_bins, 4, 2, Model.YN)[0] <= 3
    assert worst_case_count(run_pair_bins, 5, 2, Model.YN)[0] <= 3
    assert worst_case_count(run_pair_bins, 6, 2, Model.YN) == (4, True)


def test_worst_case_examples():
    assert worst_case_count(run_majority3, 4, 3, Model.YN) == (4, True)
    assert worst_case_count(run_pairing_bins, 7, 3, Model.PAIRING) == (3, True)


@pytest.mark.parametrize("n", range(4, 12))
def test_majority3_worst_case_hits_bound(n):
    assert worst_case_count(run_majority3, n, 3, Model.YN) == (majority3_bound(n), True)


@pytest.mark.parametrize("n", range(3, 10))
def test_pairing_bins_worst_case_equals_formula(n):
    assert worst_case_count(run_pairing_bins, n, 3, Model.PAIRING) == (pairing_value(n), True)


@pytest.mark.parametrize("n", range(2, 11))
def test_pair_bins_worst_case(n):
    for model in Model:
        assert worst_case_count(run_pair_bins, n, 2, model) == (pair_value(n), True)


@pytest.mark.parametrize("n", range(4, 10))
def test_majority3_also_works_with_witnesses(n):
    worst, ok = worst_case_count(run_majority3, n, 3, Model.PAIRING)
    assert ok and worst <= majority3_bound(n)


def test_session_ceiling():
    s = Session(HonestOracle(Coloring.parse("RRBB")), 4, 3, Model.YN, ceiling=1)
    s.ask(0, 1, 2)
    with pytest.raises(QuestionerError):
        s.ask(0, 1, 3)


@settings(max_examples=200)
@given(st.integers(4, 16), st.data())
def test_gap_reports_larger_class(n, data):
    c = Coloring.from_mask(n, data.draw(st.integers(0, (1 << n) - 1)))
    run = run_majority3_with_gap(HonestOracle(c), n)
    assert run.gap == max(len(c.reds), len(c.blues))
    assert verdict_holds(c, run.verdict)
    assert run.query_count <= majority3_bound(n) + 1


@settings(max_examples=200)
@given(st.integers(3, 16), st.data())
def test_pairing_bins_random_colorings(n, data):
    c = Coloring.from_mask(n, data.draw(st.integers(0, (1 << n) - 1)))
    run = run_pairing_bins(HonestOracle(c, Model.PAIRING), n)
    assert verdict_holds(c, run.verdict)
    assert run.query_count <= pairing_value(n)
