"""Triple systems S = {(a, b, a+b)} and their bipartite view G_S.

A system is stored as its n x n boolean adjacency matrix: entry ``[a, b]`` is
set when the triple (a, b, a+b) belongs to S. The third coordinate is never
stored. Rows are the left copy A_1, columns the right copy A_2.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from tripleconf.errors import InvalidParameter, InvalidSpecification, ParseError, ValidationError
from tripleconf.group import GroupSpec, format_group, parse_group


class TripleSystem:
    def __init__(self, group: GroupSpec, adjacency):
        n = group.order
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.shape != (n, n):
            raise ValidationError(f"adjacency must be {n}x{n}, got {adj.shape}")
        adj.flags.writeable = False
        self.group = group
        self.adjacency = adj

    @classmethod
    def from_edges(cls, group: GroupSpec, edges) -> TripleSystem:
        n = group.order
        adj = np.zeros((n, n), dtype=bool)
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"edge ({a}, {b}) out of range for order {n}")
            adj[a, b] = True
        return cls(group, adj)

    @property
    def n(self) -> int:
        return self.group.order

    def __len__(self):
        return int(self._edge_count)

    @cached_property
    def _edge_count(self):
        return int(self.adjacency.sum())

    def __eq__(self, other):
        if not isinstance(other, TripleSystem):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.group, self.adjacency.tobytes()))

    def __repr__(self):
        return f"TripleSystem({format_group(self.group)}, |S|={len(self)})"

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a, b])

    def edge_array(self) -> np.ndarray:
        """Edges as an (|S|, 2) array in row-major (a, b) order."""
        return np.argwhere(self.adjacency)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in self.edge_array()]

    @cached_property
    def edges(self) -> frozenset:
        return frozenset(self.edge_list())

    def triples(self):
        add = self.group.add_table
        return [(a, b, int(add[a, b])) for a, b in self.edge_list()]

    @property
    def density(self) -> float:
        return len(self) / self.n**2

    @cached_property
    def product_index(self) -> dict[int, list[tuple[int, int]]]:
        """Map each product p to the sorted edges (a, b) with a + b = p."""
        index = {}
        for p, rows in self.product_buckets().items():
            index[p] = [(int(a), int(b)) for a, b in zip(rows[0], rows[1])]
        return index

    def product_buckets(self) -> dict[int, tuple[np.ndarray, np.ndarray]]:
        """Like :attr:`product_index` but as parallel (a, b) arrays per product."""
        e = self.edge_array()
        if len(e) == 0:
            return {}
        prods = self.group.add_table[e[:, 0], e[:, 1]]
        order = np.lexsort((e[:, 1], e[:, 0], prods))
        e, prods = e[order], prods[order]
        keys, starts = np.unique(prods, return_index=True)
        bounds = list(starts[1:]) + [len(prods)]
        return {
            int(p): (e[s:t, 0], e[s:t, 1]) for p, s, t in zip(keys, starts, bounds)
        }


def full_system(group: GroupSpec) -> TripleSystem:
    """The Cayley triple system: every (a, b, a+b)."""
    n = group.order
    return TripleSystem(group, np.ones((n, n), dtype=bool))


def edge_budget(n: int, density) -> int:
    """floor(c * n^2), taking c at its decimal value so 0.3 * 100 is exactly 30."""
    return math.floor(Fraction(str(density)) * n * n)


def random_system(group: GroupSpec, density: float, seed: int) -> TripleSystem:
    """Exactly floor(c n^2) edges drawn uniformly without replacement.

    The draw is ``random.Random(seed).sample(range(n*n), k)`` where cell
    ``a*n + b`` stands for the edge (a, b). This choice is part of the
    file-format contract: the same seed gives the same edges everywhere.
    """
    if not 0 <= density <= 1:
        raise InvalidParameter(f"density must lie in [0, 1], got {density}")
    n = group.order
    k = edge_budget(n, density)
    cells = random.Random(seed).sample(range(n * n), k)
    adj = np.zeros(n * n, dtype=bool)
    adj[np.asarray(cells, dtype=np.int64)] = True
    return TripleSystem(group, adj.reshape(n, n))


def _mask(n, elements):
    m = np.zeros(n, dtype=bool)
    if elements is None:
        m[:] = True
        return m
    idx = np.fromiter((int(x) for x in elements), dtype=np.int64)
    if len(idx) and (idx.min() < 0 or idx.max() >= n):
        raise ValidationError("element rank out of range")
    m[idx] = True
    return m


def restrict(S: TripleSystem, left=None, right=None, forbidden_products=()) -> TripleSystem:
    """Keep edges (a, b) with a in ``left``, b in ``right``, a+b not forbidden.

    ``None`` for ``left`` or ``right`` means the whole group.
    """
    n = S.n
    lm, rm = _mask(n, left), _mask(n, right)
    fm = _mask(n, forbidden_products)
    keep = S.adjacency & lm[:, None] & rm[None, :] & ~fm[S.group.add_table]
    return TripleSystem(S.group, keep)


# file format: header line with the group string, then "a b" per line; '#' starts a comment


def dumps(S: TripleSystem) -> str:
    lines = [format_group(S.group)]
    lines.extend(f"{a} {b}" for a, b in S.edge_list())
    return "\n".join(lines) + "\n"


def save(S: TripleSystem, path) -> None:
    Path(path).write_text(dumps(S))


def _strip(line):
    return line.split("#", 1)[0].strip()


def loads(text: str) -> TripleSystem:
    group = None
    adj = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if group is None:
            try:
                group = parse_group(line)
            except InvalidSpecification as exc:
                raise ParseError(str(exc), lineno) from None
            adj = np.zeros((group.order, group.order), dtype=bool)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'a b', got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer edge {line!r}", lineno) from None
        n = group.order
        if not (0 <= a < n and 0 <= b < n):
            raise ValidationError(f"line {lineno}: edge ({a}, {b}) out of range for order {n}")
        if adj[a, b]:
            raise ValidationError(f"line {lineno}: duplicate edge ({a}, {b})")
        adj[a, b] = True
    if group is None:
        raise ParseError("missing group header", 1)
    return TripleSystem(group, adj)


def load(path) -> TripleSystem:
    return loads(Path(path).read_text())
