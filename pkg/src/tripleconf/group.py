"""Finite abelian groups presented as products of cyclic groups.

Elements are residue vectors. Every element also has a canonical integer
rank (row-major mixed radix), and almost all of the package works on ranks
through the precomputed addition table.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from tripleconf.errors import InvalidIndex, InvalidOperand, InvalidSpecification

_FACTOR = re.compile(r"^z(\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    """Z_{m1} x Z_{m2} x ... x Z_{mk}. The empty product is the trivial group."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(m) for m in self.cyclic_orders)
        for m in orders:
            if m < 1:
                raise InvalidSpecification(f"cyclic order must be >= 1, got {m}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    def __len__(self):
        return self.order

    def __str__(self):
        return format_group(self)

    # residue-vector arithmetic

    def element(self, residues) -> GroupElement:
        return GroupElement(self, tuple(residues))

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.cyclic_orders))

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check(g)
        self._check(h)
        return GroupElement(
            self, tuple((x + y) % m for x, y, m in zip(g.residues, h.residues, self.cyclic_orders))
        )

    def neg(self, g: GroupElement) -> GroupElement:
        self._check(g)
        return GroupElement(self, tuple((-x) % m for x, m in zip(g.residues, self.cyclic_orders)))

    def _check(self, g):
        if not isinstance(g, GroupElement) or g.group != self:
            raise InvalidOperand(f"{g!r} is not an element of {self}")

    # canonical indexing

    def rank(self, g: GroupElement) -> int:
        self._check(g)
        r = 0
        for x, m in zip(g.residues, self.cyclic_orders):
            r = r * m + x
        return r

    def unrank(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise InvalidIndex(f"rank {i} out of range for group of order {self.order}")
        out = []
        for m in reversed(self.cyclic_orders):
            i, x = divmod(i, m)
            out.append(x)
        return GroupElement(self, tuple(reversed(out)))

    def elements(self):
        return [self.unrank(i) for i in range(self.order)]

    # rank-level tables, built once per group

    @cached_property
    def residue_table(self) -> np.ndarray:
        """Row i holds the residues of the element of rank i."""
        n, k = self.order, len(self.cyclic_orders)
        table = np.zeros((n, k), dtype=np.int64)
        idx = np.arange(n)
        for j in range(k - 1, -1, -1):
            m = self.cyclic_orders[j]
            table[:, j] = idx % m
            idx = idx // m
        table.flags.writeable = False
        return table

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the rank of unrank(i) + unrank(j)."""
        res = self.residue_table
        n = self.order
        out = np.zeros((n, n), dtype=np.int64)
        for j, m in enumerate(self.cyclic_orders):
            col = res[:, j]
            out = out * m + (col[:, None] + col[None, :]) % m
        dtype = np.int32 if n < 2**31 else np.int64
        out = out.astype(dtype)
        out.flags.writeable = False
        return out

    @cached_property
    def neg_table(self) -> np.ndarray:
        res = self.residue_table
        out = np.zeros(self.order, dtype=np.int64)
        for j, m in enumerate(self.cyclic_orders):
            out = out * m + (-res[:, j]) % m
        out.flags.writeable = False
        return out

    def add_ranks(self, i: int, j: int) -> int:
        return int(self.add_table[i, j])

    def sub_ranks(self, i: int, j: int) -> int:
        return int(self.add_table[i, self.neg_table[j]])

    def neg_rank(self, i: int) -> int:
        return int(self.neg_table[i])

    def check_rank(self, i: int) -> int:
        if not 0 <= i < self.order:
            raise InvalidIndex(f"rank {i} out of range for group of order {self.order}")
        return i


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec = field(repr=False)
    residues: tuple[int, ...]

    def __post_init__(self):
        orders = self.group.cyclic_orders
        if len(self.residues) != len(orders):
            raise InvalidOperand(f"expected {len(orders)} residues, got {len(self.residues)}")
        for x, m in zip(self.residues, orders):
            if not 0 <= x < m:
                raise InvalidOperand(f"residue {x} out of range for Z{m}")

    def __add__(self, other):
        return self.group.add(self, other)

    def __neg__(self):
        return self.group.neg(self)

    def __sub__(self, other):
        return self.group.add(self, self.group.neg(other))

    @property
    def rank(self) -> int:
        return self.group.rank(self)


def make_group(cyclic_orders) -> GroupSpec:
    return GroupSpec(tuple(cyclic_orders))


def parse_group(text: str) -> GroupSpec:
    """Parse ``"Z5"`` or ``"Z2xZ3xZ4"`` (case-insensitive); ``"trivial"`` is the empty product."""
    s = text.strip().lower().replace(" ", "")
    if s in ("trivial", "1"):
        return GroupSpec(())
    orders = []
    for part in s.split("x"):
        m = _FACTOR.match(part)
        if not m:
            raise InvalidSpecification(f"cannot parse group {text!r}")
        orders.append(int(m.group(1)))
    return GroupSpec(tuple(orders))


def format_group(group: GroupSpec) -> str:
    if not group.cyclic_orders:
        return "trivial"
    return "x".join(f"Z{m}" for m in group.cyclic_orders)
