"""Answer sources: an honest oracle, two scripted lower-bound adversaries, and
an optimal adversary driven by the exact solver.

Every adversary is a callable ``Query -> Answer`` holding the state of a
single game. Use a fresh instance per game.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .core import (
    NO,
    YES,
    Answer,
    AnswerSource,
    Coloring,
    InconsistentAnswers,
    Model,
    Query,
    honest_answer,
)
from .knowledge import KnowledgeSet, PairingGraph, full_knowledge, refine
from .solver import ComponentSpace, Solver


class HonestOracle:
    def __init__(self, coloring: Coloring, model: Model = Model.YN):
        self.coloring = coloring
        self.model = Model(model)

    def __call__(self, q: Query) -> Answer:
        return honest_answer(self.coloring, q, self.model)


class ConsistencyGuard:
    """Wraps an answer source and raises as soon as its answers stop fitting any coloring."""

    def __init__(self, source: AnswerSource, n: int, model: Model):
        self.source = source
        self.n = n
        self.model = Model(model)
        self.knowledge: KnowledgeSet | None = full_knowledge(n) if self.model is Model.YN else None
        self.graph = PairingGraph(n)

    def __call__(self, q: Query) -> Answer:
        a = self.source(q)
        q.check(self.n)
        if self.model is Model.YN:
            self.knowledge = refine(self.knowledge, q, Answer(a.yes))
        else:
            if not a.yes and a.witness is None:
                raise InconsistentAnswers(f"pairing-model no answer to {q} lacks a witness")
            if a.witness is not None and not set(a.witness) <= set(q.balls):
                raise InconsistentAnswers(f"witness {a.witness} lies outside query {q}")
            self.graph = self.graph.with_step(q, a)
            if not self.graph.is_satisfiable():
                raise InconsistentAnswers(f"answer {a} to {q} contradicts earlier answers")
        return a


# -- partition adversary (Y/N, triples, even n) ---------------------------------------


def _half_sets(n: int) -> Iterator[int]:
    for xs in itertools.combinations(range(n), n // 2):
        yield sum(1 << b for b in xs)


def _splits(x: int, qmask: int) -> bool:
    """Query neither inside X nor inside its complement."""
    inside = qmask & x
    return inside != 0 and inside != qmask


def find_partition_witness(queries: list[Query], n: int) -> frozenset[int] | None:
    """Lexicographically smallest half-size set that no query fits inside (on either side).

    None means every half-size set is blocked, i.e. the covering property holds.
    """
    if n % 2:
        raise ValueError("half-size sets need even n")
    masks = [q.mask for q in queries]
    for x in _half_sets(n):
        if all(_splits(x, qm) for qm in masks):
            return frozenset(b for b in range(n) if x >> b & 1)
    return None


class PartitionAdversary:
    """Answers no until the asked triples block every half-size split, then
    commits to one split X and answers yes exactly for triples inside X or its
    complement."""

    def __init__(self, n: int):
        if n % 2 or n < 4:
            raise ValueError(f"the partition adversary needs even n >= 4, got {n}")
        self.n = n
        self.queries: list[Query] = []
        self.answers: list[Answer] = []
        self.committed: frozenset[int] | None = None

    def __call__(self, q: Query) -> Answer:
        q.check(self.n, 3)
        qm = q.mask
        if self.committed is None:
            if find_partition_witness(self.queries + [q], self.n) is None:
                self.committed = self._commit(qm)
        if self.committed is None:
            a = NO
        else:
            x = sum(1 << b for b in self.committed)
            a = NO if _splits(x, qm) else YES
        self.queries.append(q)
        self.answers.append(a)
        return a

    def _commit(self, qm: int) -> frozenset[int]:
        prior = [p.mask for p in self.queries]
        for x in _half_sets(self.n):
            if not _splits(x, qm) and all(_splits(x, p) for p in prior):
                return frozenset(b for b in range(self.n) if x >> b & 1)
        raise AssertionError("covering property cannot switch on without a splitting set")


# -- greedy pairing adversary -------------------------------------------------------------


class GreedyPairingAdversary:
    """Says no whenever some pair in the query may still differ.

    The witness is the lexicographically smallest such pair, except when the
    different-color edges form a matching that leaves exactly two balls
    uncovered: then joining those two would prove a tie, so another pair is
    used if the query offers one.
    """

    def __init__(self, n: int, k: int = 3):
        self.n = n
        self.k = k
        self.space = ComponentSpace(n, k, Model.PAIRING, relabel=False)
        self.state = self.space.initial()
        self.diff_edges: list[tuple[int, int]] = []
        self.queries: list[Query] = []
        self.answers: list[Answer] = []

    def _forced_equal(self, u: int, v: int) -> bool:
        return self.state[u] == self.state[v]

    def _isolated_pair(self) -> tuple[int, int] | None:
        if self.n % 2 or len(self.diff_edges) != self.n // 2 - 1:
            return None
        touched = [b for e in self.diff_edges for b in e]
        if len(set(touched)) != len(touched):
            return None
        rest = sorted(set(range(self.n)) - set(touched))
        return tuple(rest)

    def __call__(self, q: Query) -> Answer:
        q.check(self.n, self.k)
        legal = [p for p in q.pairs() if not self._forced_equal(*p)]
        if not legal:
            a = YES
        else:
            pick = legal[0]
            avoid = self._isolated_pair()
            if pick == avoid and len(legal) > 1:
                pick = legal[1]
            a = Answer.no(pick)
            if pick not in self.diff_edges:
                self.diff_edges.append(pick)
        self.state = self.space.apply(self.state, q, a)
        self.queries.append(q)
        self.answers.append(a)
        return a


# -- optimal adversary -------------------------------------------------------------------


class ExactAdversary:
    """Picks, among all consistent answers, one whose remaining game value is largest."""

    def __init__(self, n: int, k: int, model: Model | str, solver: Solver | None = None):
        self.solver = solver or Solver(n, k, model)
        if (self.solver.n, self.solver.k, self.solver.model) != (n, k, Model(model)):
            raise ValueError("solver does not match the instance")
        self.n, self.k, self.model = n, k, Model(model)
        self.state = self.solver.space.initial()
        self.queries: list[Query] = []
        self.answers: list[Answer] = []

    def __call__(self, q: Query) -> Answer:
        q.check(self.n, self.k)
        qi = self.solver.space.queries.index(q)
        best = None
        for a, child in self.solver.space.answer_options(self.state, qi):
            v = self.solver.value_of(child)
            if best is None or v > best[0]:
                best = (v, a, child)
        _, a, self.state = best
        self.queries.append(q)
        self.answers.append(a)
        return a

    def remaining_value(self) -> int:
        return self.solver.value_of(self.state)


def make_adversary(spec: str, n: int, k: int, model: Model | str, solver: Solver | None = None) -> AnswerSource:
    """Build an adversary from a CLI name: honest:<RB string>, partition, greedy, exact."""
    model = Model(model)
    name, _, arg = spec.partition(":")
    if name == "honest":
        c = Coloring.parse(arg)
        if c.n != n:
            raise ValueError(f"coloring {arg!r} has {c.n} balls, expected {n}")
        return HonestOracle(c, model)
    if name == "partition":
        if model is not Model.YN or k != 3:
            raise ValueError("the partition adversary plays the Y/N model with triples")
        return PartitionAdversary(n)
    if name == "greedy":
        if model is not Model.PAIRING:
            raise ValueError("the greedy adversary plays the pairing model")
        return GreedyPairingAdversary(n, k)
    if name == "exact":
        return ExactAdversary(n, k, model, solver)
    raise ValueError(f"unknown adversary {spec!r}")
