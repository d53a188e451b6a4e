"""Generic 3-uniform hypergraphs and exact (m, k)-configuration search.

This module knows nothing about groups beyond :func:`from_triple_system` and
:func:`spanned_triples`; it is the ground truth the finder is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from pathlib import Path

import numpy as np

from tripleconf.errors import BudgetExceeded, ParseError, ValidationError

DEFAULT_BUDGET = 10**8
MAX_M = 24


@dataclass(frozen=True)
class Hypergraph3:
    """Vertices 0..vertex_count-1; edges are sorted tuples of 1 to 3 distinct vertices."""

    vertex_count: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        clean = []
        for e in self.edges:
            t = tuple(sorted(set(int(v) for v in e)))
            if not 1 <= len(t) <= 3:
                raise ValidationError(f"bad edge {e!r}")
            if t[0] < 0 or t[-1] >= self.vertex_count:
                raise ValidationError(f"edge {e!r} out of range")
            if t in seen:
                raise ValidationError(f"duplicate edge {t!r}")
            seen.add(t)
            clean.append(t)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    def edges_within(self, subset) -> int:
        s = set(subset)
        return sum(1 for e in self.edges if s.issuperset(e))

    def induced(self, subset) -> tuple[Hypergraph3, list[int]]:
        """Induced sub-hypergraph relabelled to 0..len(subset)-1, plus the label map."""
        labels = sorted(set(subset))
        pos = {v: i for i, v in enumerate(labels)}
        edges = [tuple(pos[v] for v in e) for e in self.edges if all(v in pos for v in e)]
        return Hypergraph3(len(labels), tuple(edges)), labels


def from_triple_system(S) -> Hypergraph3:
    """Each triple (a, b, a+b) becomes the vertex set {a, b, a+b}; coinciding sets merge."""
    add = S.group.add_table
    sets = {tuple(sorted({a, b, int(add[a, b])})) for a, b in S.edge_list()}
    return Hypergraph3(S.n, tuple(sets))


def spanned_triples(S, subset) -> list[tuple[int, int, int]]:
    """Triples (a, b, a+b) of S with all three entries in ``subset``."""
    n = S.n
    inside = np.zeros(n, dtype=bool)
    idx = [int(v) for v in subset]
    if any(not 0 <= v < n for v in idx):
        raise ValidationError("subset element out of range")
    inside[idx] = True
    rows = np.flatnonzero(inside)
    add = S.group.add_table
    out = []
    for a in rows:
        for b in rows[S.adjacency[a, rows]]:
            p = int(add[a, b])
            if inside[p]:
                out.append((int(a), int(b), p))
    return out


class _Search:
    """Include-first DFS over vertices 0..n-1, bounded by edge potential.

    Subsets are visited in lexicographic order of their sorted tuples, so the
    first subset to reach the optimum is the lexicographically least witness.
    """

    def __init__(self, H: Hypergraph3, m: int, budget: int):
        self.n = H.vertex_count
        self.m = m
        self.budget = budget
        self.expansions = 0
        self.incident = [[] for _ in range(self.n)]
        for e in H.edges:
            for v in e:
                self.incident[v].append(e)

    def run(self, target=None):
        """Maximize edges inside an m-subset; with ``target`` stop at the first subset reaching it."""
        self.target = target
        self.best = -1
        self.witness = None
        self.chosen = []
        self.state = [0] * self.n  # 0 undecided, 1 chosen, -1 excluded
        self._dfs(0, 0)
        return self.best, self.witness

    def _bound(self, v, inside):
        slots = self.m - len(self.chosen)
        if slots == 0:
            return inside
        # vertices >= v are undecided. Every further edge needs a new vertex,
        # so the top `slots` live degrees bound the edges still reachable.
        state = self.state
        live = []
        for u in range(v, self.n):
            live.append(sum(1 for e in self.incident[u] if all(w >= v or state[w] == 1 for w in e)))
        live.sort(reverse=True)
        return inside + sum(live[:slots])

    def _done(self):
        return self.target is not None and self.best >= self.target

    def _dfs(self, v, inside):
        self.expansions += 1
        if self.expansions > self.budget:
            raise BudgetExceeded(
                f"search budget of {self.budget} expansions exhausted", self.best, self.witness
            )
        if len(self.chosen) == self.m:
            if inside > self.best:
                self.best = inside
                self.witness = tuple(self.chosen)
            return
        if self.n - v < self.m - len(self.chosen):
            return
        threshold = self.best if self.target is None else max(self.best, self.target - 1)
        if self._bound(v, inside) <= threshold:
            return
        # include v
        self.state[v] = 1
        self.chosen.append(v)
        gained = sum(1 for e in self.incident[v] if all(self.state[w] == 1 for w in e))
        self._dfs(v + 1, inside + gained)
        self.chosen.pop()
        self.state[v] = 0
        if self._done():
            return
        # exclude v
        self.state[v] = -1
        self._dfs(v + 1, inside)
        self.state[v] = 0


def _guard(H, m, budget):
    if m < 0 or m > H.vertex_count:
        raise ValidationError(f"m={m} outside [0, {H.vertex_count}]")
    if m > MAX_M:
        raise BudgetExceeded(f"m={m} exceeds the subset-search limit of {MAX_M}")


def max_edges_spanned(H: Hypergraph3, m: int, budget: int = DEFAULT_BUDGET):
    """Exact max number of edges inside some m-subset, with the lexicographically least witness."""
    _guard(H, m, budget)
    best, witness = _Search(H, m, budget).run()
    return best, witness


def contains_config(H: Hypergraph3, m: int, k: int, budget: int = DEFAULT_BUDGET):
    """Whether some m vertices span at least k edges; returns (found, witness)."""
    _guard(H, m, budget)
    if k <= 0:
        return True, tuple(range(m))
    best, witness = _Search(H, m, budget).run(target=k)
    if best >= k:
        return True, witness
    return False, None


def max_edges_naive(H: Hypergraph3, m: int):
    """Plain enumeration over all m-subsets; for cross-checking the pruned search."""
    from itertools import combinations

    best, witness = -1, None
    for sub in combinations(range(H.vertex_count), m):
        k = H.edges_within(sub)
        if k > best:
            best, witness = k, sub
    return best, witness


def subset_count(H: Hypergraph3, m: int) -> int:
    return comb(H.vertex_count, m)


def dumps(H: Hypergraph3) -> str:
    lines = [str(H.vertex_count)]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Hypergraph3:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise ParseError("first line must be the vertex count", lineno)
            n = nums[0]
            continue
        if not 1 <= len(nums) <= 3:
            raise ParseError(f"edge must list 1 to 3 vertices, got {line!r}", lineno)
        edges.append(tuple(nums))
    if n is None:
        raise ParseError("empty hypergraph file", 1)
    return Hypergraph3(n, tuple(edges))


def load(path) -> Hypergraph3:
    return loads(Path(path).read_text())
