"""Balls, colorings, queries, answers and transcripts.

Balls are integers ``0..n-1``. A coloring is the set of red balls; every
other ball is blue. Everything here is immutable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator


class MajorityError(Exception):
    """Base class for errors raised by this package."""


class InconsistentAnswers(MajorityError):
    """An answer source contradicted itself (no coloring fits the transcript)."""


class InfeasibleInstance(MajorityError):
    """The requested instance is too large for exhaustive treatment."""


class QuestionerError(MajorityError):
    """A questioner misbehaved: wrong verdict, bad query, or ran past its ceiling."""


class Model(str, enum.Enum):
    YN = "yn"
    PAIRING = "pairing"


# Exhaustive enumeration over 2**n colorings is supported up to this size.
MAX_ENUM_N = 16
MAX_N = 30


@dataclass(frozen=True)
class Coloring:
    n: int
    reds: frozenset[int]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"n must be in [0, {MAX_N}], got {self.n}")
        object.__setattr__(self, "reds", frozenset(self.reds))
        bad = [b for b in self.reds if not 0 <= b < self.n]
        if bad:
            raise ValueError(f"ball ids out of range for n={self.n}: {sorted(bad)}")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> Coloring:
        return cls(n, frozenset(b for b in range(n) if mask >> b & 1))

    @classmethod
    def parse(cls, spec: str) -> Coloring:
        """Parse a string over {R, B}; character i is the color of ball i."""
        spec = spec.strip().upper()
        if not spec or set(spec) - {"R", "B"}:
            raise ValueError(f"coloring spec must be a non-empty string over R/B: {spec!r}")
        return cls(len(spec), frozenset(i for i, ch in enumerate(spec) if ch == "R"))

    @property
    def mask(self) -> int:
        return sum(1 << b for b in self.reds)

    @property
    def blues(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.reds

    def is_red(self, ball: int) -> bool:
        return ball in self.reds

    def swap(self) -> Coloring:
        return Coloring(self.n, self.blues)

    def __str__(self) -> str:
        return "".join("R" if b in self.reds else "B" for b in range(self.n))


def make_coloring(n: int, reds: Iterable[int]) -> Coloring:
    return Coloring(n, frozenset(reds))


def all_colorings(n: int) -> Iterator[Coloring]:
    if n > MAX_ENUM_N:
        raise InfeasibleInstance(f"enumerating 2**{n} colorings is not supported")
    for mask in range(1 << n):
        yield Coloring.from_mask(n, mask)


@dataclass(frozen=True)
class Query:
    balls: tuple[int, ...]

    def __post_init__(self):
        balls = tuple(sorted(self.balls))
        if len(set(balls)) != len(balls):
            raise ValueError(f"query balls must be distinct: {self.balls}")
        if balls and balls[0] < 0:
            raise ValueError(f"negative ball id in query: {self.balls}")
        object.__setattr__(self, "balls", balls)

    @classmethod
    def of(cls, *balls: int) -> Query:
        return cls(tuple(balls))

    @property
    def k(self) -> int:
        return len(self.balls)

    @property
    def mask(self) -> int:
        return sum(1 << b for b in self.balls)

    def pairs(self) -> list[tuple[int, int]]:
        """All 2-subsets, in lexicographic order."""
        return list(itertools.combinations(self.balls, 2))

    def check(self, n: int, k: int | None = None) -> None:
        if k is not None and self.k != k:
            raise ValueError(f"query {self.balls} has arity {self.k}, expected {k}")
        if self.balls and self.balls[-1] >= n:
            raise ValueError(f"query {self.balls} has ball ids >= n={n}")

    def __contains__(self, ball: int) -> bool:
        return ball in self.balls

    def __iter__(self):
        return iter(self.balls)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.balls)) + "}"


@dataclass(frozen=True)
class Answer:
    yes: bool
    witness: tuple[int, int] | None = None

    def __post_init__(self):
        if self.witness is not None:
            if self.yes:
                raise ValueError("a yes answer cannot carry a witness")
            a, b = self.witness
            if a == b:
                raise ValueError(f"witness balls must differ: {self.witness}")
            object.__setattr__(self, "witness", (min(a, b), max(a, b)))

    @classmethod
    def no(cls, witness: tuple[int, int] | None = None) -> Answer:
        return cls(False, witness)

    def __str__(self) -> str:
        if self.yes:
            return "yes"
        if self.witness is None:
            return "no"
        return f"no{{{self.witness[0]},{self.witness[1]}}}"


YES = Answer(True)
NO = Answer(False)

AnswerSource = Callable[[Query], Answer]


class VerdictKind(str, enum.Enum):
    NO_MAJORITY = "no-majority"
    MAJORITY = "majority"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    ball: int | None = None

    def __post_init__(self):
        if (self.kind is VerdictKind.MAJORITY) != (self.ball is not None):
            raise ValueError("a Majority verdict carries exactly one ball")
        if self.ball is not None and self.ball < 0:
            raise ValueError(f"invalid ball id {self.ball}")

    @classmethod
    def majority(cls, ball: int) -> Verdict:
        return cls(VerdictKind.MAJORITY, ball)

    @property
    def decided(self) -> bool:
        return self.kind is not VerdictKind.UNKNOWN

    def __str__(self) -> str:
        if self.kind is VerdictKind.MAJORITY:
            return f"Majority({self.ball})"
        return {VerdictKind.NO_MAJORITY: "NoMajority", VerdictKind.UNKNOWN: "Unknown"}[self.kind]


NO_MAJORITY = Verdict(VerdictKind.NO_MAJORITY)
UNKNOWN = Verdict(VerdictKind.UNKNOWN)


def ground_truth(c: Coloring) -> Verdict:
    """The true answer for a known coloring; ties go to the lowest-id ball."""
    if c.n < 1:
        raise ValueError("need at least one ball")
    r = len(c.reds)
    if 2 * r == c.n:
        return NO_MAJORITY
    winners = c.reds if 2 * r > c.n else c.blues
    return Verdict.majority(min(winners))


def is_majority_ball(c: Coloring, ball: int) -> bool:
    r = len(c.reds)
    if 2 * r == c.n:
        return False
    return (ball in c.reds) == (2 * r > c.n)


def verdict_holds(c: Coloring, v: Verdict) -> bool:
    """True when ``v`` is a correct output for coloring ``c``."""
    if v.kind is VerdictKind.NO_MAJORITY:
        return 2 * len(c.reds) == c.n
    if v.kind is VerdictKind.MAJORITY:
        return is_majority_ball(c, v.ball)
    return False


def is_monochromatic(c: Coloring, balls: Iterable[int]) -> bool:
    colors = {b in c.reds for b in balls}
    return len(colors) <= 1


def honest_answer(c: Coloring, q: Query, model: Model) -> Answer:
    q.check(c.n)
    if is_monochromatic(c, q.balls):
        return YES
    if model is Model.YN:
        return NO
    for a, b in q.pairs():
        if (a in c.reds) != (b in c.reds):
            return Answer.no((a, b))
    raise AssertionError("unreachable: non-monochromatic query without a differing pair")


def answer_consistent(c: Coloring, q: Query, a: Answer) -> bool:
    """Whether coloring ``c`` could have produced answer ``a`` to ``q``."""
    mono = is_monochromatic(c, q.balls)
    if a.yes:
        return mono
    if mono:
        return False
    if a.witness is not None:
        u, v = a.witness
        return (u in c.reds) != (v in c.reds)
    return True


@dataclass(frozen=True)
class Transcript:
    model: Model
    k: int
    n: int
    steps: tuple[tuple[Query, Answer], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "steps", tuple(self.steps))
        for q, a in self.steps:
            _check_step(self.model, self.n, self.k, q, a)

    def append(self, q: Query, a: Answer) -> Transcript:
        _check_step(self.model, self.n, self.k, q, a)
        return Transcript(self.model, self.k, self.n, self.steps + ((q, a),))

    def __len__(self) -> int:
        return len(self.steps)

    def witnesses(self) -> list[tuple[int, int]]:
        return [a.witness for _, a in self.steps if a.witness is not None]

    def to_json(self) -> dict:
        steps = []
        for q, a in self.steps:
            step = {"query": list(q.balls), "answer": "yes" if a.yes else "no"}
            if a.witness is not None:
                step["witness"] = list(a.witness)
            steps.append(step)
        return {"model": self.model.value, "k": self.k, "n": self.n, "steps": steps}

    @classmethod
    def from_json(cls, data: dict) -> Transcript:
        steps = []
        for step in data["steps"]:
            if step["answer"] not in ("yes", "no"):
                raise ValueError(f"answer must be 'yes' or 'no': {step['answer']!r}")
            witness = step.get("witness")
            answer = Answer(step["answer"] == "yes", tuple(witness) if witness is not None else None)
            steps.append((Query(tuple(step["query"])), answer))
        return cls(Model(data["model"]), int(data["k"]), int(data["n"]), tuple(steps))


def _check_step(model: Model, n: int, k: int, q: Query, a: Answer) -> None:
    q.check(n, k)
    if a.witness is not None:
        if model is not Model.PAIRING:
            raise ValueError("witness pairs only exist in the pairing model")
        if not set(a.witness) <= set(q.balls):
            raise ValueError(f"witness {a.witness} lies outside query {q}")
    elif model is Model.PAIRING and not a.yes:
        raise ValueError(f"pairing-model no answer to {q} lacks a witness")


def is_consistent(c: Coloring, t: Transcript) -> bool:
    if c.n != t.n:
        raise ValueError(f"coloring has n={c.n}, transcript has n={t.n}")
    return all(answer_consistent(c, q, a) for q, a in t.steps)
