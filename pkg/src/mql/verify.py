"""Named verification checks, shared by ``mql verify`` and the test suite.

Each check returns a ``CheckResult``; ``fast=True`` shrinks the instance
ranges so the whole run stays under a minute.
"""

from __future__ import annotations

import functools
import itertools
import random
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

from .adversaries import ConsistencyGuard, GreedyPairingAdversary, PartitionAdversary
from .core import Answer, Coloring, InconsistentAnswers, Model, Query, Transcript, Verdict, honest_answer
from .knowledge import (
    KnowledgeSet,
    PairingGraph,
    bipartite_diff_graphs,
    certifies,
    edge_lower_bound_check,
    full_knowledge,
    graph_certifies,
    majority_by_matching,
    refine,
    structural_verdict,
    verdict,
)
from .questioners import (
    majority3_bound,
    pair_value,
    pairing_value,
    run_majority3,
    run_majority3_with_gap,
    run_pair_bins,
    run_pairing_bins,
)
from .solver import Solver, existence_table, existence_threshold, optimal_questioner, worst_case_count


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return asdict(self)


@functools.lru_cache(maxsize=None)
def get_solver(n: int, k: int, model: Model) -> Solver:
    return Solver(n, k, Model(model))


def exact_value(n: int, k: int, model: Model) -> int | None:
    v = get_solver(n, k, Model(model)).solve()
    return v.queries


def yn_lower_bound(n: int) -> int:
    """Lower bound on q_3(n) for n >= 4: n-1 for even n, n-3 for odd n."""
    return n - 1 if n % 2 == 0 else n - 3


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, ok, detail, time.perf_counter() - t0)


# -- 1. small exact Y/N values ------------------------------------------------------


def check_exact_small_yn(fast: bool = False) -> CheckResult:
    def run():
        expected = {4: 4, 5: 4, 6: 7}
        t0 = time.perf_counter()
        got = {n: exact_value(n, 3, Model.YN) for n in expected}
        elapsed = time.perf_counter() - t0
        ok = got == expected and elapsed < 300
        return ok, f"q_3(4,5,6) = {got[4]},{got[5]},{got[6]} (expected 4,4,7) in {elapsed:.1f}s"
    return _timed("exact-yn-small", run)


# -- 2. pairing closed form -------------------------------------------------------------


def check_pairing_closed_form(fast: bool = False) -> CheckResult:
    def run():
        t0 = time.perf_counter()
        got = {n: exact_value(n, 3, Model.PAIRING) for n in range(3, 9)}
        elapsed = time.perf_counter() - t0
        bad = {n: v for n, v in got.items() if v != pairing_value(n)}
        dip = got[6] > got[7]
        ok = not bad and dip and elapsed < 600
        vals = ",".join(str(got[n]) for n in range(3, 9))
        return ok, f"q^p_3(3..8) = {vals}; mismatches {bad or 'none'}; q^p_3(6) > q^p_3(7): {dip}"
    return _timed("pairing-closed-form", run)


# -- 3. pair queries -----------------------------------------------------------------------


def check_pair_queries(fast: bool = False) -> CheckResult:
    def run():
        bad = []
        for model in Model:
            for n in range(2, 10):
                v = exact_value(n, 2, model)
                if v != pair_value(n):
                    bad.append((model.value, n, v))
        return not bad, f"solve(n,2,*) = n - nu(n) for n in [2,9], both models; mismatches {bad or 'none'}"
    return _timed("pair-queries", run)


# -- 4. existence thresholds -------------------------------------------------------------


def check_existence(fast: bool = False) -> CheckResult:
    def run():
        notes = []
        ok = True
        ranges = {(3, Model.YN): 6, (4, Model.YN): 6, (3, Model.PAIRING): 8, (4, Model.PAIRING): 8}
        for (k, model), n_max in ranges.items():
            thr = existence_threshold(k, model)
            table = existence_table(k, model, n_max)
            wrong = [n for n, solvable in table if solvable != (n >= thr)]
            ok = ok and not wrong
            notes.append(f"k={k} {model.value}: threshold {thr}, mismatches {wrong or 'none'}")
        n3 = exact_value(3, 3, Model.YN)
        notes.append(f"k=3 n=3 yn solver outcome: {'unsolvable' if n3 is None else n3}")
        return ok, "; ".join(notes)
    return _timed("existence-thresholds", run)


# -- 5. upper bounds of the strategies ---------------------------------------------------


def check_upper_bounds(fast: bool = False) -> CheckResult:
    def run():
        t0 = time.perf_counter()
        bad = []
        yn_max, p_max = (10, 8) if fast else (14, 10)
        for n in range(4, yn_max + 1):
            worst, correct = worst_case_count(run_majority3, n, 3, Model.YN)
            if worst > majority3_bound(n) or not correct:
                bad.append(("majority3", n, worst, correct))
        for n in range(3, p_max + 1):
            worst, correct = worst_case_count(run_pairing_bins, n, 3, Model.PAIRING)
            if worst > pairing_value(n) or not correct:
                bad.append(("pairing-bins", n, worst, correct))
        elapsed = time.perf_counter() - t0
        return (not bad and elapsed < 600,
                f"majority3 n<= {yn_max}, pairing-bins n<= {p_max} within bounds; violations {bad or 'none'}")
    return _timed("upper-bounds", run)


# -- 6. scripted adversaries ---------------------------------------------------------------


def yn_questioners(n: int, with_optimal: bool) -> dict[str, Callable]:
    qs = {"majority3": run_majority3, "majority3-gap": run_majority3_with_gap}
    if with_optimal:
        qs["optimal"] = optimal_questioner(get_solver(n, 3, Model.YN))
    return qs


def play_partition(questioner: Callable, n: int) -> tuple[int, bool]:
    guard = ConsistencyGuard(PartitionAdversary(n), n, Model.YN)
    run = questioner(guard, n, model=Model.YN)
    return run.query_count, certifies(guard.knowledge, run.verdict)


def play_greedy(questioner: Callable, n: int, k: int = 3, model: Model = Model.PAIRING) -> tuple[int, bool]:
    adv = GreedyPairingAdversary(n, k)
    run = questioner(ConsistencyGuard(adv, n, Model.PAIRING), n, model=model)
    return run.query_count, graph_certifies(adv.space.graph(adv.state), run.verdict)


def check_lower_bound_adversaries(fast: bool = False) -> CheckResult:
    def run():
        bad = []
        for n in ((6,) if fast else (6, 8, 10)):
            for name, q in yn_questioners(n, with_optimal=n <= 8).items():
                count, sound = play_partition(q, n)
                if count < n - 1 or not sound:
                    bad.append(("partition", name, n, count, sound))
        for n in range(3, 13):
            count, sound = play_greedy(run_pairing_bins, n)
            if count != pairing_value(n) or not sound:
                bad.append(("greedy", "pairing-bins", n, count, sound))
        return not bad, f"partition >= n-1 on even n, greedy = pairing value on n in [3,12]; violations {bad or 'none'}"
    return _timed("lower-bound-adversaries", run)


# -- 7. property suites ----------------------------------------------------------------------


def pairing_steps(n: int) -> list[tuple[Query, Answer]]:
    steps = []
    for balls in itertools.combinations(range(n), 3):
        q = Query(balls)
        steps.append((q, Answer(True)))
        steps.extend((q, Answer.no(p)) for p in q.pairs())
    return steps


def _node_check(g: PairingGraph, ks_parent: KnowledgeSet, q: Query, a: Answer):
    """Extend one node of a transcript corpus; returns (graph, knowledge, problems) or None if inconsistent."""
    g2 = g.with_step(q, a)
    sat = g2.is_satisfiable()
    try:
        ks = refine(ks_parent, q, a)
    except InconsistentAnswers:
        ks = None
    problems = []
    if sat != (ks is not None):
        problems.append("consistency disagreement")
        return None, None, problems
    if ks is None:
        return None, None, problems
    if structural_verdict(g2) != verdict(ks):
        problems.append("verdict mismatch")
    if not ks.masks <= ks_parent.masks:
        problems.append("refine not monotone")
    if not ks.is_swap_closed():
        problems.append("not swap-closed")
    return g2, ks, problems


def exhaustive_pairing_corpus(n: int, max_len: int) -> tuple[int, list]:
    """Check every set of distinct pairing steps of size <= max_len.

    Both verdict routes depend only on the set of steps (order and repeats do
    not matter), so sets cover all transcripts of that length.
    """
    steps = pairing_steps(n)
    count = 0
    problems: list = []

    def dfs(start: int, depth: int, g: PairingGraph, ks: KnowledgeSet):
        nonlocal count
        if depth == max_len:
            return
        for i in range(start, len(steps)):
            q, a = steps[i]
            g2, ks2, probs = _node_check(g, ks, q, a)
            if probs:
                problems.append((n, i, probs))
            if g2 is None:
                continue
            count += 1
            dfs(i + 1, depth + 1, g2, ks2)

    dfs(0, 0, PairingGraph(n), full_knowledge(n))
    return count, problems


def random_pairing_transcript(n: int, length: int, rng: random.Random) -> Transcript:
    c = Coloring.from_mask(n, rng.randrange(1 << n))
    t = Transcript(Model.PAIRING, 3, n)
    for _ in range(length):
        q = Query(tuple(rng.sample(range(n), 3)))
        a = honest_answer(c, q, Model.PAIRING)
        if not a.yes:
            a = Answer.no(rng.choice([p for p in q.pairs() if (p[0] in c.reds) != (p[1] in c.reds)]))
        t = t.append(q, a)
    return t


def random_pairing_corpus(count: int, n_max: int, seed: int = 0) -> tuple[int, list]:
    rng = random.Random(seed)
    problems = []
    for i in range(count):
        n = rng.randint(3, n_max)
        t = random_pairing_transcript(n, rng.randint(5, 12), rng)
        g, ks = PairingGraph(n), full_knowledge(n)
        for q, a in t.steps:
            g, ks, probs = _node_check(g, ks, q, a)
            if probs or g is None:
                problems.append((i, n, probs or ["honest transcript rejected"]))
                break
    return count, problems


def bipartite_corpus(n_max: int) -> Iterator[PairingGraph]:
    for n in range(1, n_max + 1):
        yield from bipartite_diff_graphs(n)


def check_properties(fast: bool = False) -> CheckResult:
    def run():
        notes, ok = [], True
        ex_n, rnd = (5, 1000) if fast else (6, 10_000)
        total, problems = 0, []
        for n in range(3, ex_n + 1):
            c, p = exhaustive_pairing_corpus(n, 4)
            total += c
            problems += p
        c, p = random_pairing_corpus(rnd, 8, seed=2024)
        problems += p
        ok = ok and not problems
        notes.append(f"(a,b) {total} exhaustive + {c} random transcripts, problems {len(problems)}")

        a1_max = 6 if fast else 7
        graphs = violations = matching_checked = matching_bad = 0
        for g in bipartite_corpus(a1_max):
            graphs += 1
            v = structural_verdict(g)
            if v.decided and v.ball is not None and not edge_lower_bound_check(g):
                violations += 1
            if g.n % 2 == 1:
                ball = majority_by_matching(g)
                if ball is not None:
                    matching_checked += 1
                    if v.ball is None or not graph_certifies(g, Verdict.majority(ball)):
                        matching_bad += 1
        ok = ok and violations == 0 and matching_bad == 0
        notes.append(f"(c) {graphs} bipartite graphs on n<={a1_max}, edge-bound violations {violations}")
        notes.append(f"(d) matching ball checked on {matching_checked} graphs, disagreements {matching_bad}")
        return ok, "; ".join(notes)
    return _timed("property-suites", run)


# -- 8. sandwich ------------------------------------------------------------------------------


def check_sandwich(fast: bool = False) -> CheckResult:
    def run():
        bad, rows = [], 0

        def measured(qs, n, k, model):
            worst = []
            for q in qs:
                w, correct = worst_case_count(q, n, k, model)
                worst.append(w if correct else -1)
            return worst

        for n in (range(4, 7) if fast else range(4, 9)):
            exact = exact_value(n, 3, Model.YN)
            uppers = measured([run_majority3, run_majority3_with_gap], n, 3, Model.YN)
            lower = 0
            if n % 2 == 0:
                lower, _ = play_partition(optimal_questioner(get_solver(n, 3, Model.YN)), n)
            lo_thm, hi_thm = yn_lower_bound(n), majority3_bound(n)
            rows += 1
            if not (lower <= exact <= min(uppers) and lo_thm <= exact <= hi_thm):
                bad.append(("yn", n, lower, exact, uppers, lo_thm, hi_thm))
        for n in range(3, 9):
            exact = exact_value(n, 3, Model.PAIRING)
            qs = [run_pairing_bins] + ([run_majority3, run_majority3_with_gap] if n >= 4 else [])
            uppers = measured(qs, n, 3, Model.PAIRING)
            lower, _ = play_greedy(optimal_questioner(get_solver(n, 3, Model.PAIRING)), n)
            rows += 1
            if not (lower <= exact <= min(uppers)):
                bad.append(("pairing", n, lower, exact, uppers))
        for model in Model:
            for n in range(2, 10):
                exact = exact_value(n, 2, model)
                uppers = measured([run_pair_bins], n, 2, model)
                lower, _ = play_greedy(optimal_questioner(get_solver(n, 2, model)), n, k=2, model=model)
                rows += 1
                if not (lower <= exact <= min(uppers)):
                    bad.append((f"k2-{model.value}", n, lower, exact, uppers))
        return not bad, (f"{rows} solved instances, forced <= exact <= every measured worst case, "
                         f"Y/N values inside the residue bands; violations {bad or 'none'}")
    return _timed("sandwich", run)


CHECKS: dict[str, Callable[[bool], CheckResult]] = {
    "exact-yn-small": check_exact_small_yn,
    "pairing-closed-form": check_pairing_closed_form,
    "pair-queries": check_pair_queries,
    "existence-thresholds": check_existence,
    "upper-bounds": check_upper_bounds,
    "lower-bound-adversaries": check_lower_bound_adversaries,
    "property-suites": check_properties,
    "sandwich": check_sandwich,
}


def run_all(fast: bool = False, only: list[str] | None = None) -> list[CheckResult]:
    return [fn(fast) for name, fn in CHECKS.items() if only is None or name in only]
