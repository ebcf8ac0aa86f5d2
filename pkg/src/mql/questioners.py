"""Deterministic questioner strategies.

Each strategy is a function ``run(answers, n, model=...) -> QuestionerRun``
where ``answers`` maps a ``Query`` to an ``Answer``. Strategies never see
colors; they only see answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    NO_MAJORITY,
    Answer,
    AnswerSource,
    InconsistentAnswers,
    Model,
    Query,
    QuestionerError,
    Transcript,
    Verdict,
    VerdictKind,
)


@dataclass(frozen=True)
class QuestionerRun:
    verdict: Verdict
    transcript: Transcript
    gap: int | None = None

    @property
    def query_count(self) -> int:
        return len(self.transcript)


Questioner = Callable[..., QuestionerRun]


class Session:
    """Asks queries through an answer source and records the transcript."""

    def __init__(self, answers: AnswerSource, n: int, k: int, model: Model, ceiling: int | None = None):
        self.answers = answers
        self.n = n
        self.k = k
        self.model = Model(model)
        self.transcript = Transcript(self.model, k, n)
        self.ceiling = n + 2 if ceiling is None else ceiling

    def ask(self, *balls: int) -> Answer:
        if len(self.transcript) >= self.ceiling:
            raise QuestionerError(f"questioner exceeded its ceiling of {self.ceiling} queries")
        q = Query(tuple(balls))
        a = self.answers(q)
        if self.model is Model.YN and a.witness is not None:
            a = Answer.no()
        elif self.model is Model.PAIRING and not a.yes and a.witness is None and q.k == 2:
            a = Answer.no(q.balls)
        try:
            self.transcript = self.transcript.append(q, a)
        except ValueError as exc:
            raise InconsistentAnswers(str(exc)) from exc
        return a

    def finish(self, verdict: Verdict, gap: int | None = None) -> QuestionerRun:
        return QuestionerRun(verdict, self.transcript, gap)


# -- Y/N model, triple queries -------------------------------------------------

# upper bounds on q_3(n) by residue of n mod 4, as offsets from n
_MAJORITY3_BOUND_OFFSET = {0: 0, 1: -1, 2: 1, 3: 0}


def majority3_bound(n: int) -> int:
    """Guaranteed worst-case query count of ``run_majority3`` (n >= 4)."""
    return n + _MAJORITY3_BOUND_OFFSET[n % 4]


def _count_against(s: Session, ref: tuple[int, int], same: int, others: list[int],
                   remaining: Sequence[int], total: int, early_exit: bool):
    """Compare each remaining ball with the monochromatic pair ``ref``.

    Returns (verdict, size of the larger class among the ``total`` balls, or None
    if counting stopped early).
    """
    other = len(others)
    other_ball = others[0] if others else None
    complete = True
    for e in remaining:
        if early_exit and (2 * same > total or 2 * other > total):
            complete = False
            break
        if s.ask(ref[0], ref[1], e).yes:
            same += 1
        else:
            other += 1
            if other_ball is None:
                other_ball = e
    if same > other:
        verdict = Verdict.majority(ref[0])
    elif other > same:
        verdict = Verdict.majority(other_ball)
    else:
        verdict = NO_MAJORITY
    return verdict, (max(same, other) if complete else None)


def _majority3(s: Session, balls: Sequence[int], early_exit: bool, gap: bool):
    n = len(balls)
    m, r = divmod(n, 4)
    groups = [tuple(balls[4 * i:4 * i + 4]) for i in range(m)]
    rest = list(balls[4 * m:])
    for j, (a, b, c, d) in enumerate(groups):
        # triples of the group in lexicographic order; stop at the first yes
        if s.ask(a, b, c).yes:
            ref, same, others, unknown = (a, b), 3, [], [d]
        elif s.ask(a, b, d).yes:
            ref, same, others, unknown = (a, b), 3, [c], []
        elif s.ask(a, c, d).yes:
            ref, same, others, unknown = (a, c), 3, [b], []
        elif s.ask(b, c, d).yes:
            ref, same, others, unknown = (b, c), 3, [a], []
        else:
            continue
        remaining = unknown + [x for g in groups[j + 1:] for x in g] + rest
        # earlier groups answered no four times, so each is split 2-2 and cancels out
        verdict, larger = _count_against(s, ref, same, others, remaining, n - 4 * j, early_exit)
        return verdict, (None if larger is None else larger + 2 * j)

    # every group is split 2-2; the leftover balls decide
    if r == 0:
        return NO_MAJORITY, n // 2
    if r == 1:
        return Verdict.majority(rest[0]), 2 * m + 1
    x, y = rest[0], rest[1]
    # the first group holds both colors among its first three balls
    xy_same = any(s.ask(x, y, t).yes for t in groups[0][:3])
    if r == 2:
        return (Verdict.majority(x), 2 * m + 2) if xy_same else (NO_MAJORITY, 2 * m + 1)
    z = rest[2]
    if not xy_same:
        return Verdict.majority(z), 2 * m + 2
    if not gap:
        return Verdict.majority(x), None
    return Verdict.majority(x), (2 * m + 3 if s.ask(x, y, z).yes else 2 * m + 2)


def odd_reduce(inner: Questioner, answers: AnswerSource, n: int, model: Model = Model.YN,
               **kwargs) -> QuestionerRun:
    """Solve n (odd) balls by solving the first n-1 and setting ball n-1 aside.

    A tie among n-1 balls makes ball n-1 the majority; otherwise the
    sub-majority leads by at least two and stays the majority.
    """
    if n % 2 == 0:
        raise ValueError(f"odd reduction needs odd n, got {n}")
    sub = inner(answers, n - 1, model=model, **kwargs)
    verdict = Verdict.majority(n - 1) if sub.verdict.kind is VerdictKind.NO_MAJORITY else sub.verdict
    t = Transcript(sub.transcript.model, sub.transcript.k, n, sub.transcript.steps)
    return QuestionerRun(verdict, t)


def run_majority3(answers: AnswerSource, n: int, model: Model = Model.YN,
                  early_exit: bool = True) -> QuestionerRun:
    """Group-of-four strategy with triple queries; odd n goes through odd_reduce."""
    if n < 4:
        raise ValueError(f"run_majority3 needs n >= 4, got {n}")
    if n % 2:
        return odd_reduce(run_majority3, answers, n, model=model, early_exit=early_exit)
    s = Session(answers, n, 3, model)
    verdict, _ = _majority3(s, range(n), early_exit, gap=False)
    return s.finish(verdict)


def run_majority3_with_gap(answers: AnswerSource, n: int, model: Model = Model.YN) -> QuestionerRun:
    """Like run_majority3 but also reports the size of the larger color class.

    Counts every ball (no early exit) and handles odd residues directly.
    """
    if n < 4:
        raise ValueError(f"run_majority3_with_gap needs n >= 4, got {n}")
    s = Session(answers, n, 3, model)
    verdict, larger = _majority3(s, range(n), early_exit=False, gap=True)
    return s.finish(verdict, larger)


# -- pairing model, triple queries ------------------------------------------------


def pairing_value(n: int) -> int:
    """Exact pairing-model value for triple queries: n/2+1 for even n, floor(n/2) for odd n."""
    return n // 2 + 1 if n % 2 == 0 else n // 2


def _pick_equal_bins(bins: list[list[int]], count: int) -> list[list[int]] | None:
    by_size: dict[int, list[list[int]]] = {}
    for b in bins:
        by_size.setdefault(len(b), []).append(b)
    best = None
    for group in by_size.values():
        if len(group) >= count:
            pick = sorted(group, key=lambda b: b[0])[:count]
            if best is None or [b[0] for b in pick] < [b[0] for b in best]:
                best = pick
    return best


def run_pairing_bins(answers: AnswerSource, n: int, model: Model = Model.PAIRING) -> QuestionerRun:
    """Bin strategy: merge three equal bins on yes, drop the witness bins on no."""
    if n < 3:
        raise ValueError(f"run_pairing_bins needs n >= 3, got {n}")
    if Model(model) is not Model.PAIRING:
        raise ValueError("run_pairing_bins relies on witness pairs")
    s = Session(answers, n, 3, model)
    bins = [[b] for b in range(n)]

    while (pick := _pick_equal_bins(bins, 3)) is not None:
        a = s.ask(*(b[0] for b in pick))
        if a.yes:
            for b in pick:
                bins.remove(b)
            bins.append(sorted(x for b in pick for x in b))
        else:
            u, v = a.witness
            bins = [b for b in bins if b[0] not in (u, v)]

    while True:
        if not bins:
            return s.finish(NO_MAJORITY)
        top = max(len(b) for b in bins)
        largest = sorted((b for b in bins if len(b) == top), key=lambda b: b[0])
        if len(largest) == 1:
            return s.finish(Verdict.majority(largest[0][0]))
        b1, b2 = largest
        if top > 1:
            if s.ask(b1[0], b2[0], b1[1]).yes:
                return s.finish(Verdict.majority(b1[0]))
            bins = [b for b in bins if b is not b1 and b is not b2]
            continue
        # two singletons left; n is even and some earlier no answer gave a differing pair
        (a_ball,), (b_ball,) = b1, b2
        c, c2 = s.transcript.witnesses()[0]
        first = s.ask(a_ball, b_ball, c)
        if first.yes:
            return s.finish(Verdict.majority(a_ball))
        if first.witness == (min(a_ball, b_ball), max(a_ball, b_ball)):
            return s.finish(NO_MAJORITY)
        if s.ask(a_ball, b_ball, c2).yes:
            return s.finish(Verdict.majority(a_ball))
        return s.finish(NO_MAJORITY)


# -- pair queries -------------------------------------------------------------------


def nu(n: int) -> int:
    """Number of ones in the binary expansion of n."""
    return bin(n).count("1")


def pair_value(n: int) -> int:
    return n - nu(n)


def run_pair_bins(answers: AnswerSource, n: int, model: Model = Model.YN) -> QuestionerRun:
    """Binary bin strategy for pair queries.

    Equal bins are compared until all bin sizes differ. Sizes are distinct
    powers of two, so the largest bin outweighs all others together.
    """
    if n < 2:
        raise ValueError(f"run_pair_bins needs n >= 2, got {n}")
    s = Session(answers, n, 2, model)
    bins = [[b] for b in range(n)]
    while (pick := _pick_equal_bins(bins, 2)) is not None:
        b1, b2 = pick
        bins = [b for b in bins if b is not b1 and b is not b2]
        if s.ask(b1[0], b2[0]).yes:
            bins.append(sorted(b1 + b2))
    if not bins:
        return s.finish(NO_MAJORITY)
    return s.finish(Verdict.majority(max(bins, key=lambda b: (len(b), -b[0]))[0]))


QUESTIONERS: dict[str, tuple[Questioner, int, tuple[Model, ...]]] = {
    "majority3": (run_majority3, 3, (Model.YN, Model.PAIRING)),
    "majority3-gap": (run_majority3_with_gap, 3, (Model.YN, Model.PAIRING)),
    "pairing-bins": (run_pairing_bins, 3, (Model.PAIRING,)),
    "pair-bins": (run_pair_bins, 2, (Model.YN, Model.PAIRING)),
}
