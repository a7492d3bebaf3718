"""Partial preorders over hashable items, with exact transitive closure.

Shared by the preference checks (items are act names) and the event-order
checks (items are frozensets of states).  Judgments come in three flavours:
strict ("<"), equivalent ("~"), and weak ("<=").  The closure is computed
over the induced "at most" relation; strictness is then read back off the
closed relation, so a declared strict edge that the closure contradicts is
reported as a cycle rather than silently absorbed.
"""
from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable, Optional, Sequence

LESS = "less"
GREATER = "greater"
EQUIVALENT = "equivalent"
UNORDERED = "unordered"


class Preorder:
    """Reflexive relation built from judgments, optionally transitively closed."""

    def __init__(
        self,
        items: Sequence[Hashable],
        judgments: Iterable[tuple[Hashable, Hashable, str]],
        closed: bool = True,
    ):
        self.items = list(items)
        self.index = {item: i for i, item in enumerate(self.items)}
        if len(self.index) != len(self.items):
            raise ValueError("duplicate items")
        n = len(self.items)
        rows = [1 << i for i in range(n)]
        self.strict_edges: list[tuple[int, int]] = []
        self.base_edges: list[list[int]] = [[] for _ in range(n)]
        for left, right, rel in judgments:
            i = self.index[left]
            j = self.index[right]
            if rel == "<":
                self.strict_edges.append((i, j))
                pairs = [(i, j)]
            elif rel == "~":
                pairs = [(i, j), (j, i)]
            elif rel == "<=":
                pairs = [(i, j)]
            else:
                raise ValueError(f"unknown relation {rel!r}")
            for a, b in pairs:
                if not rows[a] >> b & 1:
                    rows[a] |= 1 << b
                    self.base_edges[a].append(b)
        self.closed = closed
        self.rows = [r for r in rows]
        if closed:
            # Warshall over bitset rows.
            for k in range(n):
                rk = self.rows[k]
                for i in range(n):
                    if self.rows[i] >> k & 1:
                        self.rows[i] |= rk

    def __contains__(self, item: Hashable) -> bool:
        return item in self.index

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return bool(self.rows[self.index[a]] >> self.index[b] & 1)

    def compare(self, a: Hashable, b: Hashable) -> str:
        """Trichotomy of the (possibly closed) relation, or UNORDERED."""
        i = self.index[a]
        j = self.index[b]
        ab = bool(self.rows[i] >> j & 1)
        ba = bool(self.rows[j] >> i & 1)
        if ab and ba:
            return EQUIVALENT
        if ab:
            return LESS
        if ba:
            return GREATER
        return UNORDERED

    def unordered_pairs(self) -> list[tuple[Hashable, Hashable]]:
        pairs = []
        n = len(self.items)
        for i in range(n):
            row = self.rows[i]
            for j in range(i + 1, n):
                if not (row >> j & 1) and not (self.rows[j] >> i & 1):
                    pairs.append((self.items[i], self.items[j]))
        return pairs

    def strict_violations(self) -> list[list[Hashable]]:
        """Cycles that contradict a declared strict judgment.

        A declared a<b is contradicted when the closure also yields b<=a;
        the witness is the cycle a -> b -> ... -> a through declared edges.
        """
        cycles = []
        seen = set()
        for i, j in self.strict_edges:
            if self.rows[j] >> i & 1:
                path = self._shortest_path(j, i)
                if path is None:
                    continue
                cycle = [self.items[i]] + [self.items[k] for k in path]
                key = frozenset(path) | {i}
                if key not in seen:
                    seen.add(key)
                    cycles.append(cycle)
        return cycles

    def _shortest_path(self, start: int, goal: int) -> Optional[list[int]]:
        if start == goal:
            return [start]
        prev: dict[int, int] = {start: -1}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in self.base_edges[node]:
                if nxt in prev:
                    continue
                prev[nxt] = node
                if nxt == goal:
                    path = [nxt]
                    while path[-1] != start:
                        path.append(prev[path[-1]])
                    return list(reversed(path))
                queue.append(nxt)
        return None
