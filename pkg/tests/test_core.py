import itertools
import json

import pytest
from hypothesis import given, strategies as st

from mql.core import (
    NO,
    NO_MAJORITY,
    YES,
    Answer,
    Coloring,
    InfeasibleInstance,
    Model,
    Query,
    Transcript,
    Verdict,
    all_colorings,
    ground_truth,
    honest_answer,
    is_consistent,
    make_coloring,
    verdict_holds,
)


def test_make_coloring():
    assert str(make_coloring(4, {0, 1, 2})) == "RRRB"
    assert str(make_coloring(2, set())) == "BB"
    assert str(make_coloring(5, range(5))) == "RRRRR"


def test_coloring_rejects_bad_ids():
    with pytest.raises(ValueError):
        make_coloring(3, {3})
    with pytest.raises(ValueError):
        Coloring.parse("RXB")


def test_parse_roundtrip_and_swap():
    c = Coloring.parse("RBBR")
    assert c.reds == {0, 3}
    assert str(c.swap()) == "BRRB"
    assert c.swap().swap() == c


def test_ground_truth():
    assert ground_truth(Coloring.parse("RRRB")) == Verdict.majority(0)
    assert ground_truth(make_coloring(4, {0, 3})) == NO_MAJORITY
    assert ground_truth(make_coloring(5, {2, 3, 4})) == Verdict.majority(2)


def test_verdict_holds_accepts_any_majority_ball():
    c = Coloring.parse("BRRBR")
    assert verdict_holds(c, Verdict.majority(4))
    assert not verdict_holds(c, Verdict.majority(0))
    assert not verdict_holds(c, NO_MAJORITY)


def test_honest_answers():
    assert honest_answer(Coloring.parse("RRRB"), Query.of(0, 1, 2), Model.YN) == YES
    a = honest_answer(Coloring.parse("RRRB"), Query.of(1, 2, 3), Model.PAIRING)
    assert not a.yes and a.witness == (1, 3)
    assert honest_answer(Coloring.parse("RRBB"), Query.of(0, 1), Model.YN) == YES
    assert honest_answer(Coloring.parse("RRBB"), Query.of(1, 2), Model.YN) == NO


def test_is_consistent():
    yes = Transcript(Model.YN, 3, 4, ((Query.of(0, 1, 2), YES),))
    assert is_consistent(Coloring.parse("RRRB"), yes)
    no = Transcript(Model.YN, 3, 4, ((Query.of(0, 1, 2), NO),))
    assert not is_consistent(Coloring.parse("RRRR"), no)
    w = Transcript(Model.PAIRING, 3, 4, ((Query.of(0, 1, 2), Answer.no((0, 2))),))
    assert is_consistent(Coloring.parse("RRBB"), w)
    assert not is_consistent(Coloring.parse("RRRB"), w)


def test_query_normalizes_and_validates():
    assert Query.of(2, 0, 1).balls == (0, 1, 2)
    assert Query.of(0, 1, 2).pairs() == [(0, 1), (0, 2), (1, 2)]
    with pytest.raises(ValueError):
        Query.of(1, 1, 2)
    with pytest.raises(ValueError):
        Query.of(0, 1, 5).check(4)
    with pytest.raises(ValueError):
        Query.of(0, 1).check(4, 3)


def test_transcript_step_rules():
    with pytest.raises(ValueError):
        Transcript(Model.YN, 3, 4, ((Query.of(0, 1, 2), Answer.no((0, 1))),))
    with pytest.raises(ValueError):
        Transcript(Model.PAIRING, 3, 4, ((Query.of(0, 1, 2), NO),))
    with pytest.raises(ValueError):
        Transcript(Model.PAIRING, 3, 4, ((Query.of(0, 1, 2), Answer.no((0, 3))),))


def test_enumeration_cap():
    assert sum(1 for _ in all_colorings(3)) == 8
    with pytest.raises(InfeasibleInstance):
        next(all_colorings(17))


@st.composite
def transcripts(draw):
    model = draw(st.sampled_from(list(Model)))
    n = draw(st.integers(3, 8))
    k = draw(st.integers(2, 3))
    c = Coloring.from_mask(n, draw(st.integers(0, (1 << n) - 1)))
    t = Transcript(model, k, n)
    for _ in range(draw(st.integers(0, 6))):
        q = Query(tuple(draw(st.permutations(range(n)))[:k]))
        t = t.append(q, honest_answer(c, q, model))
    return t


@given(transcripts())
def test_transcript_json_roundtrip(t):
    text = json.dumps(t.to_json())
    assert Transcript.from_json(json.loads(text)) == t


@given(transcripts(), st.data())
def test_swap_symmetry_of_consistency(t, data):
    c = Coloring.from_mask(t.n, data.draw(st.integers(0, (1 << t.n) - 1)))
    assert is_consistent(c, t) == is_consistent(c.swap(), t)


@pytest.mark.parametrize("n", range(3, 7))
def test_swap_symmetry_exhaustive_single_steps(n):
    # every one-step pairing transcript against every coloring
    for balls in itertools.combinations(range(n), 3):
        q = Query(balls)
        for a in [YES] + [Answer.no(p) for p in q.pairs()]:
            t = Transcript(Model.PAIRING, 3, n, ((q, a),))
            for c in all_colorings(n):
                assert is_consistent(c, t) == is_consistent(c.swap(), t)
