"""Exact evaluation of the majority game by memoized minimax.

The questioner minimizes and the adversary maximizes the number of queries
until the verdict is decided. Knowledge states come in two flavours:

``MaskSpace``
    A bitmask over colorings, one bit per swap-pair (ball n-1 fixed blue).
    Handles the Y/N model for any k, and the pairing model unlabelled.
``ComponentSpace``
    Same/different constraint components, as a per-ball label
    ``2 * component + side``. Exact for the pairing model, and for the Y/N
    model when k = 2 (a no on a pair says the two balls differ).

Queries that some answer leaves without effect are pruned: that answer is
always available to the adversary, so the query can only waste a turn. Every
surviving transition strictly shrinks knowledge, which bounds the depth by
the number of distinct queries.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator

import numpy as np

from .core import (
    NO,
    NO_MAJORITY,
    UNKNOWN,
    YES,
    Answer,
    AnswerSource,
    InconsistentAnswers,
    InfeasibleInstance,
    Model,
    Query,
    QuestionerError,
    Verdict,
    all_colorings,
    honest_answer,
    verdict_holds,
)
from .knowledge import PairingGraph, graph_certifies
from .questioners import QuestionerRun, Session

UNSOLVABLE = 1 << 30

# feasibility guidelines
MAX_N_MASK = 8
MAX_N_COMPONENTS = 12
_PERM_CHUNK = 2048


@dataclass(frozen=True)
class GameValue:
    solvable: bool
    queries: int | None = None

    def __post_init__(self):
        if self.solvable != (self.queries is not None):
            raise ValueError("queries is present exactly when the game is solvable")
        if self.queries is not None and self.queries < 0:
            raise ValueError("negative query count")

    @classmethod
    def of(cls, value: int) -> GameValue:
        return cls(False) if value >= UNSOLVABLE else cls(True, value)

    def __str__(self) -> str:
        return str(self.queries) if self.solvable else "unsolvable"


@dataclass
class StrategyNode:
    query: Query
    children: list[tuple[Answer, StrategyNode | Verdict]] = field(default_factory=list)

    def depth(self) -> int:
        return 1 + max((c.depth() if isinstance(c, StrategyNode) else 0 for _, c in self.children), default=0)

    def to_json(self) -> dict:
        out = []
        for a, child in self.children:
            entry: dict = {"answer": "yes" if a.yes else "no"}
            if a.witness is not None:
                entry["witness"] = list(a.witness)
            if isinstance(child, StrategyNode):
                entry["node"] = child.to_json()
            else:
                entry["verdict"] = str(child)
            out.append(entry)
        return {"query": list(self.query.balls), "children": out}


# -- state spaces -------------------------------------------------------------------


class MaskSpace:
    """Knowledge as a bitmask over swap-normalized colorings."""

    def __init__(self, n: int, k: int, model: Model, relabel: bool):
        if model is Model.PAIRING and relabel:
            raise ValueError("use ComponentSpace for relabel-invariant pairing states")
        self.n, self.k, self.model, self.relabel = n, k, Model(model), relabel
        self.reps = 1 << (n - 1)
        self.full_coloring = (1 << n) - 1
        self.queries = [Query(q) for q in itertools.combinations(range(n), k)]
        self.yes_masks = []
        for q in self.queries:
            qm = q.mask
            self.yes_masks.append(sum(1 << j for j in range(self.reps) if j & qm in (0, qm)))
        self.diff_masks = {}
        if self.model is Model.PAIRING:
            for a, b in itertools.combinations(range(n), 2):
                self.diff_masks[a, b] = sum(1 << j for j in range(self.reps) if (j >> a & 1) != (j >> b & 1))
        self.balanced = 0
        self.majority = [0] * n
        for j in range(self.reps):
            r = bin(j).count("1")
            if 2 * r == n:
                self.balanced |= 1 << j
                continue
            red_wins = 2 * r > n
            for b in range(n):
                if bool(j >> b & 1) == red_wins:
                    self.majority[b] |= 1 << j
        self.bits = np.array([[j >> b & 1 for b in range(n)] for j in range(self.reps)], dtype=np.int64)
        self._keys: dict[int, int] = {}

    def initial(self) -> int:
        return (1 << self.reps) - 1

    def verdict(self, s: int) -> Verdict:
        if s & ~self.balanced == 0:
            return NO_MAJORITY
        for b in range(self.n):
            if s & ~self.majority[b] == 0:
                return Verdict.majority(b)
        return UNKNOWN

    def answer_options(self, s: int, qi: int) -> list[tuple[Answer, int]]:
        y = s & self.yes_masks[qi]
        out = [(YES, y)] if y else []
        if self.model is Model.YN:
            if s ^ y:
                out.append((NO, s ^ y))
        else:
            for pair in self.queries[qi].pairs():
                d = s & self.diff_masks[pair]
                if d:
                    out.append((Answer.no(pair), d))
        return out

    def apply(self, s: int, q: Query, a: Answer) -> int:
        qi = self.queries.index(q)
        y = s & self.yes_masks[qi]
        if a.yes:
            child = y
        elif self.model is Model.YN or a.witness is None:
            child = s ^ y
        else:
            child = s & self.diff_masks[a.witness]
        if not child:
            raise InconsistentAnswers(f"answer {a} to {q} leaves no consistent coloring")
        return child

    def is_solvable(self, s: int) -> bool | None:
        if self.model is not Model.YN:
            return None
        classes = [s]
        for y in self.yes_masks:
            classes = [part for c in classes for part in (c & y, c & ~y) if part]
        return all(self.verdict(c).decided for c in classes)

    def key(self, s: int) -> Hashable:
        if not self.relabel:
            return s
        key = self._keys.get(s)
        if key is None:
            key = self._keys[s] = self._canonical(s)
        return key

    def _canonical(self, s: int) -> tuple:
        # Orbit minimum over relabelings that sort balls by a relabel-equivariant
        # signature. Any relabeling of s gets the same key.
        idx = [j for j in range(self.reps) if s >> j & 1]
        cols = self.bits[idx]                                  # |S| x n
        eq = (cols[:, :, None] == cols[:, None, :]).sum(axis=0)  # agreement counts, swap-invariant
        eq = eq.tolist()
        sig = [tuple(sorted(row)) for row in eq]
        sig = [(sig[b], tuple(sorted((sig[c], eq[b][c]) for c in range(self.n) if c != b))) for b in range(self.n)]
        order = sorted(set(sig))
        classes = [[b for b in range(self.n) if sig[b] == s_] for s_ in order]
        targets = []
        pos = 0
        for cl in classes:
            targets.append(list(range(pos, pos + len(cl))))
            pos += len(cl)
        perms = []
        for choice in itertools.product(*(itertools.permutations(t) for t in targets)):
            p = [0] * self.n
            for cl, tgt in zip(classes, choice):
                for b, t in zip(cl, tgt):
                    p[b] = t
            perms.append(p)
        perm_arr = np.array(perms, dtype=np.int64)             # P x n, ball -> position
        best = None
        for start in range(0, len(perm_arr), _PERM_CHUNK):
            chunk = perm_arr[start:start + _PERM_CHUNK]
            img = (cols[None, :, :] << chunk[:, None, :]).sum(axis=2)  # P x |S|
            flip = (img >> (self.n - 1)) & 1
            img = np.where(flip == 1, img ^ self.full_coloring, img)
            # encode each image set as 62-bit words, most significant word first
            words = []
            for lo in range(0, self.reps, 62)[::-1]:
                inside = (img >= lo) & (img < lo + 62)
                shift = np.where(inside, img - lo, 0)
                words.append(np.where(inside, np.int64(1) << shift, 0).sum(axis=1))
            rows = np.stack(words, axis=1)
            cand = tuple(int(x) for x in rows[np.lexsort(rows.T[::-1])[0]])
            if best is None or cand < best:
                best = cand
        return (tuple(order), best)


class ComponentSpace:
    """Knowledge as same/different constraint components."""

    def __init__(self, n: int, k: int, model: Model, relabel: bool):
        if Model(model) is Model.YN and k != 2:
            raise ValueError("components capture Y/N knowledge only for pair queries")
        self.n, self.k, self.model, self.relabel = n, k, Model(model), relabel
        self.queries = [Query(q) for q in itertools.combinations(range(n), k)]

    def initial(self) -> tuple[int, ...]:
        return tuple(2 * b for b in range(self.n))

    @staticmethod
    def _normalize(lab: list[int]) -> tuple[int, ...]:
        ids: dict[int, tuple[int, int]] = {}
        out = []
        for x in lab:
            c, p = x >> 1, x & 1
            if c not in ids:
                ids[c] = (len(ids), p)
            new_c, p0 = ids[c]
            out.append(2 * new_c + (p ^ p0))
        return tuple(out)

    def _join(self, lab: tuple[int, ...], u: int, v: int, rel: int) -> tuple[int, ...] | None:
        cu, pu = lab[u] >> 1, lab[u] & 1
        cv, pv = lab[v] >> 1, lab[v] & 1
        if cu == cv:
            return lab if pu ^ pv == rel else None
        flip = pu ^ pv ^ rel
        return self._normalize([(2 * cu + ((x & 1) ^ flip)) if x >> 1 == cv else x for x in lab])

    def sides(self, lab: tuple[int, ...]) -> dict[int, list[int]]:
        sizes: dict[int, list[int]] = {}
        for x in lab:
            sizes.setdefault(x >> 1, [0, 0])[x & 1] += 1
        return sizes

    def verdict(self, lab: tuple[int, ...]) -> Verdict:
        sizes = self.sides(lab)
        total = sum(abs(a - b) for a, b in sizes.values())
        if total == 0:
            return NO_MAJORITY
        for ball, x in enumerate(lab):
            a, b = sizes[x >> 1]
            own, other = (a, b) if x & 1 == 0 else (b, a)
            if own - other > total - abs(a - b):
                return Verdict.majority(ball)
        return UNKNOWN

    def answer_options(self, lab: tuple[int, ...], qi: int) -> list[tuple[Answer, tuple[int, ...]]]:
        balls = self.queries[qi].balls
        out = []
        mono = lab
        for b in balls[1:]:
            mono = self._join(mono, balls[0], b, 0)
            if mono is None:
                break
        if mono is not None:
            out.append((YES, mono))
        for u, v in self.queries[qi].pairs():
            child = self._join(lab, u, v, 1)
            if child is not None:
                out.append((NO if self.model is Model.YN else Answer.no((u, v)), child))
        return out

    def apply(self, lab: tuple[int, ...], q: Query, a: Answer) -> tuple[int, ...]:
        if a.yes:
            child = lab
            for b in q.balls[1:]:
                child = self._join(child, q.balls[0], b, 0) if child is not None else None
        else:
            u, v = a.witness if a.witness is not None else q.balls
            child = self._join(lab, u, v, 1)
        if child is None:
            raise InconsistentAnswers(f"answer {a} to {q} contradicts earlier answers")
        return child

    def is_solvable(self, lab) -> bool | None:
        return None

    def key(self, lab: tuple[int, ...]) -> Hashable:
        if not self.relabel:
            return lab
        return tuple(sorted((max(a, b), min(a, b)) for a, b in self.sides(lab).values()))

    def graph(self, lab: tuple[int, ...]) -> PairingGraph:
        """A PairingGraph with the same knowledge (stars around each component's first member)."""
        first: dict[int, int] = {}
        same, diff = set(), set()
        for b, x in enumerate(lab):
            root = first.setdefault(x >> 1, b)
            if root != b:
                (diff if (x ^ lab[root]) & 1 else same).add((root, b))
        return PairingGraph(self.n, frozenset(same), frozenset(diff))


def make_space(n: int, k: int, model: Model, relabel: bool | None = None):
    model = Model(model)
    if n < 1:
        raise ValueError("need at least one ball")
    if model is Model.PAIRING or k == 2:
        if relabel is None:
            relabel = True
        if relabel:
            if n > MAX_N_COMPONENTS:
                raise InfeasibleInstance(f"n={n} exceeds the supported size {MAX_N_COMPONENTS}")
            return ComponentSpace(n, k, model, True)
        if n > MAX_N_MASK:
            raise InfeasibleInstance(f"n={n} exceeds the supported size {MAX_N_MASK}")
        return MaskSpace(n, k, model, False)
    if n > MAX_N_MASK:
        raise InfeasibleInstance(f"n={n} exceeds the supported size {MAX_N_MASK}")
    return MaskSpace(n, k, model, relabel if relabel is not None else True)


# -- search ------------------------------------------------------------------------


class Solver:
    """Memoized minimax over canonical knowledge states."""

    def __init__(self, n: int, k: int, model: Model | str, relabel: bool | None = None):
        self.n, self.k, self.model = n, k, Model(model)
        self.space = make_space(n, k, self.model, relabel)
        self.ceiling = len(self.space.queries)
        self.memo: dict[Hashable, tuple[int, int]] = {}
        self.expanded = 0
        self.lookups = 0
        self.hits = 0
        self._root_solvable: bool | None = None

    # moves with at least one answer that changes nothing are dropped
    def moves(self, state) -> Iterator[tuple[int, list[tuple[Answer, object]]]]:
        seen = set()
        for qi in range(len(self.space.queries)):
            opts = self.space.answer_options(state, qi)
            if not opts or any(child == state for _, child in opts):
                continue
            sig = tuple(sorted({self.space.key(child) for _, child in opts}))
            if sig in seen:
                continue
            seen.add(sig)
            yield qi, opts

    def _search(self, state, limit: int) -> int:
        """Exact value if it is <= limit, otherwise a lower bound > limit."""
        if self.space.verdict(state).decided:
            return 0
        key = self.space.key(state)
        self.lookups += 1
        lb, ub = self.memo.get(key, (1, UNSOLVABLE))
        if lb == ub or lb > limit:
            self.hits += 1
            return lb
        self.expanded += 1
        best = UNSOLVABLE
        lower = UNSOLVABLE
        for _, opts in self.moves(state):
            sub = min(best, limit + 1) - 2
            worst = 0
            for _, child in sorted(opts, key=lambda o: -self._size_hint(o[1])):
                v = self._search(child, sub)
                worst = max(worst, v)
                if v > sub:
                    break
            if worst > sub:
                lower = min(lower, 1 + worst)
            else:
                best = 1 + worst
        if best <= limit:
            self.memo[key] = (best, best)
            return best
        lower = max(lower, lb)
        self.memo[key] = (lower, ub)
        return lower

    def _size_hint(self, state) -> int:
        # try the larger child first: it usually fails the bound soonest
        if isinstance(state, int):
            return state.bit_count() if hasattr(state, "bit_count") else bin(state).count("1")
        return -len(set(x >> 1 for x in state))

    def value_of(self, state) -> int:
        """Exact game value of ``state``; ``UNSOLVABLE`` when no strategy exists."""
        if self.space.verdict(state).decided:
            return 0
        if self.space.is_solvable(state) is False:
            return UNSOLVABLE
        limit = self.memo.get(self.space.key(state), (1, UNSOLVABLE))[0]
        while limit <= self.ceiling:
            v = self._search(state, limit)
            if v <= limit:
                return v
            limit = v
        return UNSOLVABLE

    def solve(self) -> GameValue:
        return GameValue.of(self.value_of(self.space.initial()))

    def best_move(self, state) -> tuple[Query, list[tuple[Answer, object]]] | None:
        """A query achieving the state's value, with its answer options."""
        v = self.value_of(state)
        if v == 0 or v >= UNSOLVABLE:
            return None
        for qi, opts in self.moves(state):
            if all(self.value_of(child) <= v - 1 for _, child in opts):
                return self.space.queries[qi], opts
        raise AssertionError("no move achieves the computed value")

    def strategy(self, state=None) -> StrategyNode | Verdict:
        state = self.space.initial() if state is None else state
        verdict = self.space.verdict(state)
        if verdict.decided:
            return verdict
        move = self.best_move(state)
        if move is None:
            return UNKNOWN
        q, opts = move
        return StrategyNode(q, [(a, self.strategy(child)) for a, child in opts])

    def stats(self) -> dict:
        return {
            "states_expanded": self.expanded,
            "memo_entries": len(self.memo),
            "lookups": self.lookups,
            "hit_rate": self.hits / self.lookups if self.lookups else 0.0,
        }


def _child_value(args) -> int:
    n, k, model, relabel, child = args
    return Solver(n, k, model, relabel).value_of(child)


def solve(n: int, k: int, model: Model | str, relabel: bool | None = None, threads: int = 1) -> GameValue:
    """Minimum worst-case number of k-queries that settles the majority question.

    With ``threads > 1`` the children of the first query are valued in worker
    processes with independent memo tables; the result does not depend on
    scheduling.
    """
    solver = Solver(n, k, model, relabel)
    if threads <= 1:
        return solver.solve()
    root = solver.space.initial()
    if solver.space.verdict(root).decided:
        return GameValue(True, 0)
    if solver.space.is_solvable(root) is False:
        return GameValue(False)
    moves = list(solver.moves(root))
    jobs = [(n, k, solver.model, relabel, child) for _, opts in moves for _, child in opts]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        values = iter(list(pool.map(_child_value, jobs)))
    best = UNSOLVABLE
    for _, opts in moves:
        best = min(best, 1 + max(next(values) for _ in opts))
    return GameValue.of(best)


def canonicalize(solver: Solver, state) -> Hashable:
    return solver.space.key(state)


def existence_threshold(k: int, model: Model | str) -> int:
    """Smallest n for which the game is solvable (k >= 3)."""
    return 2 * k - 2 if Model(model) is Model.YN else 2 * k - 3


def existence_table(k: int, model: Model | str, n_max: int, n_min: int = 2) -> list[tuple[int, bool]]:
    return [(n, solve(n, k, model).solvable) for n in range(n_min, n_max + 1)]


# -- questioners backed by the solver ------------------------------------------------


def optimal_questioner(solver: Solver) -> Callable[..., QuestionerRun]:
    """A questioner that always asks a value-achieving query of ``solver``."""

    def run(answers: AnswerSource, n: int, model: Model = solver.model) -> QuestionerRun:
        if n != solver.n:
            raise ValueError(f"solver is for n={solver.n}, not {n}")
        s = Session(answers, n, solver.k, solver.model, ceiling=solver.ceiling)
        state = solver.space.initial()
        while not (v := solver.space.verdict(state)).decided:
            move = solver.best_move(state)
            if move is None:
                raise QuestionerError("instance is unsolvable")
            q, _ = move
            a = s.ask(*q.balls)
            state = solver.space.apply(state, q, a)
        return s.finish(v)

    return run


# -- measuring questioners -----------------------------------------------------------


def _pairing_options(g_lab: tuple[int, ...], space: ComponentSpace, q: Query) -> list[tuple[Answer, tuple]]:
    return space.answer_options(g_lab, space.queries.index(q))


def worst_case_count(questioner: Callable[..., QuestionerRun], n: int, k: int,
                     model: Model | str) -> tuple[int, bool]:
    """Worst-case query count of a deterministic questioner, and whether it is always right.

    Y/N: every coloring against the honest oracle. Pairing: every sequence of
    answers (every witness choice) that some coloring supports; the verdict
    at each leaf must hold for all surviving colorings.
    """
    model = Model(model)
    if model is Model.YN:
        worst, ok = 0, True
        for c in all_colorings(n):
            run = questioner(lambda q, c=c: honest_answer(c, q, Model.YN), n, model=Model.YN)
            worst = max(worst, run.query_count)
            ok = ok and verdict_holds(c, run.verdict)
        return worst, ok

    space = ComponentSpace(n, k, Model.PAIRING, relabel=False)
    worst, ok = 0, True
    choices: list[int] = []
    while True:
        widths: list[int] = []
        state = space.initial()

        def source(q: Query) -> Answer:
            nonlocal state
            q.check(n, k)
            opts = _pairing_options(state, space, q)
            i = choices[len(widths)] if len(widths) < len(choices) else 0
            widths.append(len(opts))
            a, state = opts[i]
            return a

        run = questioner(source, n, model=Model.PAIRING)
        worst = max(worst, run.query_count)
        ok = ok and graph_certifies(space.graph(state), run.verdict)
        taken = choices[:len(widths)] + [0] * (len(widths) - len(choices))
        while taken and taken[-1] + 1 >= widths[len(taken) - 1]:
            taken.pop()
        if not taken:
            return worst, ok
        taken[-1] += 1
        choices = taken


def threads_default() -> int:
    try:
        return max(1, int(os.environ.get("MQL_THREADS", "1")))
    except ValueError:
        return 1

