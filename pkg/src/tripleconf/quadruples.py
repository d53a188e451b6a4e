"""S-good quadruples and their grouping by product vector.

A quadruple (a, b, c, d) is S-good when a != c, a + b = c + d and the four
edges (a, b), (a, d), (c, b), (c, d) all lie in S. Its product vector is
(c + b, a + b, a + d).

Enumeration works one product bucket at a time: two distinct edges
(a, b), (c, d) with the same product form a good quadruple exactly when the
cross edges (a, d) and (c, b) are present. Per bucket this is one boolean
matrix ``M[i, j] = adj[a_i, b_j]`` and the good pairs are ``M & M.T`` off the
diagonal, so the cost is sum_p deg(p)^2 vectorized membership tests.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from tripleconf.errors import NoQuadruples
from tripleconf.triples import TripleSystem


class GoodQuadruple(NamedTuple):
    a: int
    b: int
    c: int
    d: int


class ProductVector(NamedTuple):
    x1: int
    x2: int
    x3: int


def is_good_quadruple(S: TripleSystem, q) -> bool:
    a, b, c, d = (S.group.check_rank(int(v)) for v in q)
    if a == c:
        return False
    add = S.group.add_table
    if add[a, b] != add[c, d]:
        return False
    adj = S.adjacency
    return bool(adj[a, b] and adj[a, d] and adj[c, b] and adj[c, d])


def product_vector(group, q) -> ProductVector:
    a, b, c, d = q
    add = group.add_table
    return ProductVector(int(add[c, b]), int(add[a, b]), int(add[a, d]))


def disjoint(q, r) -> bool:
    """Distinct quadruples sharing nothing in {a, c} and nothing in {b, d}."""
    if tuple(q) == tuple(r):
        return False
    return not ({q[0], q[2]} & {r[0], r[2]}) and not ({q[1], q[3]} & {r[1], r[3]})


def _count_bucket(adj, add, n, p, A, B):
    # pair (i, j): a=A[i], b=B[i], c=A[j], d=B[j]
    M = adj[np.ix_(A, B)]
    good = M & M.T
    np.fill_diagonal(good, False)
    if not good.any():
        return None
    T = add[np.ix_(A, B)].astype(np.int64)
    x3 = T[good]
    x1 = T.T[good]
    keys, counts = np.unique(x1 * n + x3, return_counts=True)
    return p, keys, counts


class QuadrupleIndex:
    """The map x -> Q_S(x), held as sorted product vectors with their counts.

    Buckets are materialized on demand: within one bucket the first coordinate
    a determines the whole quadruple (b = x2 - a, c = x1 - b, d = x3 - a), so
    listing Q_S(x) is a single O(n) pass over a.
    """

    def __init__(self, system: TripleSystem, vectors: np.ndarray, counts: np.ndarray):
        self.system = system
        self.vectors = vectors
        self.counts = counts
        self.vectors.flags.writeable = False
        self.counts.flags.writeable = False
        n = system.n
        self._keys = (vectors[:, 0] * n + vectors[:, 1]) * n + vectors[:, 2]
        self._cache = {}

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __len__(self):
        """Number of nonempty buckets."""
        return len(self.counts)

    def __bool__(self):
        return len(self.counts) > 0

    def items(self):
        for v, q in zip(self.vectors, self.counts):
            yield ProductVector(*map(int, v)), int(q)

    def q(self, x) -> int:
        n = self.system.n
        key = (x[0] * n + x[1]) * n + x[2]
        i = np.searchsorted(self._keys, key)
        if i < len(self._keys) and self._keys[i] == key:
            return int(self.counts[i])
        return 0

    def bucket(self, x) -> list[GoodQuadruple]:
        """Q_S(x) sorted by (a, b, c, d)."""
        x = ProductVector(*map(int, x))
        if x not in self._cache:
            self._cache[x] = bucket_of(self.system, x)
        return self._cache[x]

    def __iter__(self):
        for x, _ in self.items():
            yield from self.bucket(x)

    def quadruples(self) -> list[GoodQuadruple]:
        return list(self)


def bucket_of(S: TripleSystem, x) -> list[GoodQuadruple]:
    """Q_S(x) computed directly from S, sorted by (a, b, c, d)."""
    x1, x2, x3 = map(int, x)
    g = S.group
    add, neg, adj = g.add_table, g.neg_table, S.adjacency
    a = np.arange(S.n)
    b = add[x2, neg[a]]
    c = add[x1, neg[b]]
    d = add[x3, neg[a]]
    ok = (a != c) & (add[c, d] == x2)
    ok &= adj[a, b] & adj[a, d] & adj[c, b] & adj[c, d]
    return [GoodQuadruple(int(p), int(q), int(r), int(s)) for p, q, r, s in zip(a[ok], b[ok], c[ok], d[ok])]


def enumerate_good_quadruples(S: TripleSystem, workers: int = 1) -> QuadrupleIndex:
    n = S.n
    adj, add = S.adjacency, S.group.add_table
    buckets = S.product_buckets()
    jobs = [(p, A, B) for p, (A, B) in buckets.items() if len(A) >= 2]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda job: _count_bucket(adj, add, n, *job), jobs))
    else:
        results = [_count_bucket(adj, add, n, *job) for job in jobs]
    parts = [r for r in results if r is not None]
    if not parts:
        return QuadrupleIndex(S, np.zeros((0, 3), dtype=np.int64), np.zeros(0, dtype=np.int64))
    x1 = np.concatenate([keys // n for _, keys, _ in parts])
    x3 = np.concatenate([keys % n for _, keys, _ in parts])
    x2 = np.concatenate([np.full(len(keys), p, dtype=np.int64) for p, keys, _ in parts])
    counts = np.concatenate([c for _, _, c in parts]).astype(np.int64)
    order = np.lexsort((x3, x2, x1))
    vectors = np.stack([x1, x2, x3], axis=1)[order]
    return QuadrupleIndex(S, vectors, counts[order])


def q_max(index: QuadrupleIndex) -> tuple[ProductVector, int]:
    """Vector with the largest q; ties go to the lexicographically smallest vector."""
    if not index:
        raise NoQuadruples("no good quadruples in this system")
    i = int(np.argmax(index.counts))  # vectors are sorted, so argmax takes the smallest on ties
    return ProductVector(*map(int, index.vectors[i])), int(index.counts[i])


def disjoint_subfamily(Q) -> list[GoodQuadruple]:
    """Greedy pairwise-disjoint subfamily, scanning in (a, b, c, d) order.

    Inside one bucket every quadruple conflicts with at most two others, so
    the result keeps at least ceil(|Q| / 3) of them.
    """
    used_left, used_right = set(), set()
    kept = []
    for q in sorted(set(map(tuple, Q))):
        a, b, c, d = q
        if a in used_left or c in used_left or b in used_right or d in used_right:
            continue
        kept.append(GoodQuadruple(*q))
        used_left.update((a, c))
        used_right.update((b, d))
    return kept
