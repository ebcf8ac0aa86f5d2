"""What the questioner knows after a transcript.

Two representations:

* ``KnowledgeSet``: the explicit set of consistent colorings (bitmasks).
  Works for both models but costs ``2**n``.
* ``PairingGraph``: same-color and different-color constraints. In the
  pairing model this captures the knowledge exactly, because a no answer's
  "not all equal" content is already implied by its witness pair.

The structural verdict on a ``PairingGraph`` is computed from component
deltas; tests check it against the enumerative verdict.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    MAX_ENUM_N,
    NO_MAJORITY,
    UNKNOWN,
    Answer,
    Coloring,
    InconsistentAnswers,
    InfeasibleInstance,
    Model,
    Query,
    Transcript,
    Verdict,
    VerdictKind,
)

Edge = tuple[int, int]


def _edge(a: int, b: int) -> Edge:
    if a == b:
        raise ValueError(f"self-loop on ball {a}")
    return (a, b) if a < b else (b, a)


# -- enumerative knowledge ---------------------------------------------------


@dataclass(frozen=True)
class KnowledgeSet:
    n: int
    masks: frozenset[int]

    def colorings(self) -> Iterator[Coloring]:
        for m in sorted(self.masks):
            yield Coloring.from_mask(self.n, m)

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, c: Coloring) -> bool:
        return c.mask in self.masks

    def is_swap_closed(self) -> bool:
        full = (1 << self.n) - 1
        return all(m ^ full in self.masks for m in self.masks)


def full_knowledge(n: int) -> KnowledgeSet:
    if not 1 <= n <= MAX_ENUM_N:
        raise InfeasibleInstance(f"full knowledge needs 1 <= n <= {MAX_ENUM_N}, got {n}")
    return KnowledgeSet(n, frozenset(range(1 << n)))


def _mask_consistent(mask: int, qmask: int, a: Answer) -> bool:
    inside = mask & qmask
    mono = inside == 0 or inside == qmask
    if a.yes:
        return mono
    if mono:
        return False
    if a.witness is not None:
        u, v = a.witness
        return (mask >> u & 1) != (mask >> v & 1)
    return True


def refine(ks: KnowledgeSet, q: Query, a: Answer) -> KnowledgeSet:
    q.check(ks.n)
    qmask = q.mask
    kept = frozenset(m for m in ks.masks if _mask_consistent(m, qmask, a))
    if not kept:
        raise InconsistentAnswers(f"answer {a} to {q} leaves no consistent coloring")
    return KnowledgeSet(ks.n, kept)


def knowledge_of(t: Transcript) -> KnowledgeSet:
    ks = full_knowledge(t.n)
    for q, a in t.steps:
        ks = refine(ks, q, a)
    return ks


def _majority_side(mask: int, n: int) -> int | None:
    """Bitmask of the strict-majority class of ``mask``, or None when balanced."""
    r = bin(mask).count("1")
    if 2 * r == n:
        return None
    return mask if 2 * r > n else ((1 << n) - 1) ^ mask


def verdict(ks: KnowledgeSet) -> Verdict:
    if not ks.masks:
        raise InconsistentAnswers("empty knowledge set")
    common = (1 << ks.n) - 1
    balanced = unbalanced = False
    for m in ks.masks:
        side = _majority_side(m, ks.n)
        if side is None:
            balanced = True
        else:
            unbalanced = True
            common &= side
        if balanced and unbalanced:
            return UNKNOWN
    if not unbalanced:
        return NO_MAJORITY
    if common:
        return Verdict.majority((common & -common).bit_length() - 1)
    return UNKNOWN


def certifies(ks: KnowledgeSet, v: Verdict) -> bool:
    """True when ``v`` is correct for every coloring in ``ks``."""
    if v.kind is VerdictKind.UNKNOWN:
        return False
    for m in ks.masks:
        side = _majority_side(m, ks.n)
        if v.kind is VerdictKind.NO_MAJORITY:
            if side is not None:
                return False
        elif side is None or not side >> v.ball & 1:
            return False
    return True


# -- pairing graph ------------------------------------------------------------


class UnsatisfiableGraph(InconsistentAnswers):
    """Same/different constraints admit no 2-coloring."""


@dataclass(frozen=True)
class ComponentSummary:
    members: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]

    @property
    def delta(self) -> int:
        return abs(len(self.side_a) - len(self.side_b))

    def signed_delta(self, ball: int) -> int:
        """Size of ``ball``'s side minus the size of the opposite side."""
        own, other = (self.side_a, self.side_b) if ball in self.side_a else (self.side_b, self.side_a)
        if ball not in own:
            raise KeyError(ball)
        return len(own) - len(other)


@dataclass(frozen=True)
class PairingGraph:
    n: int
    same_edges: frozenset[Edge] = frozenset()
    diff_edges: frozenset[Edge] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "same_edges", frozenset(_edge(*e) for e in self.same_edges))
        object.__setattr__(self, "diff_edges", frozenset(_edge(*e) for e in self.diff_edges))
        for e in self.same_edges | self.diff_edges:
            if e[1] >= self.n:
                raise ValueError(f"edge {e} out of range for n={self.n}")

    def with_step(self, q: Query, a: Answer) -> PairingGraph:
        if a.yes:
            same = self.same_edges | {_edge(u, v) for u, v in q.pairs()}
            return PairingGraph(self.n, same, self.diff_edges)
        if a.witness is None:
            raise ValueError("pairing graphs need a witness on every no answer")
        if not set(a.witness) <= set(q.balls):
            raise ValueError(f"witness {a.witness} outside query {q}")
        return PairingGraph(self.n, self.same_edges, self.diff_edges | {a.witness})

    def is_satisfiable(self) -> bool:
        try:
            _two_color(self)
        except UnsatisfiableGraph:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "same": [list(e) for e in sorted(self.same_edges)],
            "diff": [list(e) for e in sorted(self.diff_edges)],
        }


def build_pairing_graph(t: Transcript) -> PairingGraph:
    if t.model is not Model.PAIRING and t.k != 2:
        raise ValueError("pairing graphs describe pairing-model transcripts")
    g = PairingGraph(t.n)
    for q, a in t.steps:
        if t.model is Model.YN and not a.yes:
            a = Answer.no(q.balls)  # k=2: a no answer on a pair is its own witness
        g = g.with_step(q, a)
    if not g.is_satisfiable():
        raise UnsatisfiableGraph("transcript constraints admit no coloring")
    return g


def _two_color(g: PairingGraph) -> tuple[list[int], list[int]]:
    """Return (component id, parity) per ball; parity 0 is the side of the lowest member."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v in g.same_edges:
        adj[u].append((v, 0))
        adj[v].append((u, 0))
    for u, v in g.diff_edges:
        adj[u].append((v, 1))
        adj[v].append((u, 1))
    comp = [-1] * g.n
    parity = [0] * g.n
    cid = 0
    for start in range(g.n):
        if comp[start] >= 0:
            continue
        comp[start] = cid
        todo = deque([start])
        while todo:
            u = todo.popleft()
            for v, w in adj[u]:
                p = parity[u] ^ w
                if comp[v] < 0:
                    comp[v], parity[v] = cid, p
                    todo.append(v)
                elif parity[v] != p:
                    raise UnsatisfiableGraph(f"odd constraint cycle through balls {u} and {v}")
        cid += 1
    return comp, parity


def component_summaries(g: PairingGraph) -> list[ComponentSummary]:
    comp, parity = _two_color(g)
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for b in range(g.n):
        a_side, b_side = groups.setdefault(comp[b], ([], []))
        (b_side if parity[b] else a_side).append(b)
    return [
        ComponentSummary(frozenset(a) | frozenset(b), frozenset(a), frozenset(b))
        for _, (a, b) in sorted(groups.items())
    ]


def _guaranteed(summaries: list[ComponentSummary]) -> Iterator[int]:
    total = sum(s.delta for s in summaries)
    for s in summaries:
        rest = total - s.delta
        for b in s.members:
            if s.signed_delta(b) > rest:
                yield b


def structural_verdict(g: PairingGraph) -> Verdict:
    summaries = component_summaries(g)
    if all(s.delta == 0 for s in summaries):
        return NO_MAJORITY
    good = list(_guaranteed(summaries))
    return Verdict.majority(min(good)) if good else UNKNOWN


def graph_certifies(g: PairingGraph, v: Verdict) -> bool:
    summaries = component_summaries(g)
    if v.kind is VerdictKind.NO_MAJORITY:
        return all(s.delta == 0 for s in summaries)
    if v.kind is VerdictKind.MAJORITY:
        return v.ball in set(_guaranteed(summaries))
    return False


# -- matching -------------------------------------------------------------------


def maximum_matching(g: PairingGraph) -> tuple[int, frozenset[int]]:
    """Maximum matching of the different-color edges by augmenting paths.

    Returns the matching size and the set of balls it leaves uncovered.
    """
    diff_only = PairingGraph(g.n, frozenset(), g.diff_edges)
    _, parity = _two_color(diff_only)
    adj: dict[int, list[int]] = {u: [] for u in range(g.n) if parity[u] == 0}
    for u, v in sorted(g.diff_edges):
        left, right = (u, v) if parity[u] == 0 else (v, u)
        adj[left].append(right)
    match_of_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_of_right or augment(match_of_right[v], seen):
                match_of_right[v] = u
                return True
        return False

    size = sum(augment(u, set()) for u in sorted(adj))
    covered = set(match_of_right) | set(match_of_right.values())
    return size, frozenset(range(g.n)) - covered


def majority_by_matching(g: PairingGraph) -> int | None:
    """For odd n and no same-edges: the ball left out by a matching of size (n-1)/2.

    Each matched edge is bichromatic under every consistent coloring, so the
    uncovered ball's class has (n+1)/2 members.
    """
    if g.n % 2 == 0:
        raise ValueError("matching argument needs an odd number of balls")
    if g.same_edges:
        raise ValueError("matching argument applies to different-color edges only")
    size, uncovered = maximum_matching(g)
    if size == (g.n - 1) // 2:
        (ball,) = uncovered
        return ball
    return None


def edge_lower_bound_check(g: PairingGraph) -> bool:
    """Every graph that pins down a majority ball has at least floor(n/2) edges."""
    return len(g.diff_edges) >= g.n // 2


def bipartite_diff_graphs(n: int) -> Iterator[PairingGraph]:
    """Every 2-colorable graph on n labelled vertices, as diff-edge-only PairingGraphs."""
    edges = list(itertools.combinations(range(n), 2))
    adj: list[set[int]] = [set() for _ in range(n)]

    def same_parity_path(u: int, v: int) -> bool:
        # is v reachable from u by a path of even length?
        dist = {u: 0}
        todo = deque([u])
        while todo:
            x = todo.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    todo.append(y)
        return v in dist and dist[v] % 2 == 0

    def extend(i: int, chosen: list[Edge]) -> Iterator[list[Edge]]:
        if i == len(edges):
            yield chosen
            return
        yield from extend(i + 1, chosen)
        u, v = edges[i]
        if not same_parity_path(u, v):
            chosen.append(edges[i])
            adj[u].add(v)
            adj[v].add(u)
            yield from extend(i + 1, chosen)
            adj[u].discard(v)
            adj[v].discard(u)
            chosen.pop()

    for es in extend(0, []):
        yield PairingGraph(n, frozenset(), frozenset(es))


def graph_from_edges(n: int, same: Iterable[Edge] = (), diff: Iterable[Edge] = ()) -> PairingGraph:
    return PairingGraph(n, frozenset(same), frozenset(diff))
