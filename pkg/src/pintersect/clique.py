"""Exact maximum-clique search on bitset adjacency (greedy-colouring branch and bound).

Vertices are ``0..N-1``; ``adj[v]`` is an int whose bit ``u`` is set iff u~v.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence


class SearchTimeout(Exception):
    pass


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _colour_sort(p: int, adj: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy colouring of the vertices in ``p``; returns vertices and their colour numbers (non-decreasing)."""
    order: list[int] = []
    colours: list[int] = []
    colour = 0
    uncoloured = p
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            uncoloured ^= low
            order.append(v)
            colours.append(colour)
    return order, colours


class CliqueEngine:
    """Branch-and-bound search; main branching happens in descending-degree order."""

    def __init__(self, adj: Sequence[int], time_limit: float | None = None):
        self.adj = list(adj)
        self.size = len(adj)
        self.time_limit = time_limit
        self.nodes = 0
        self._deadline = None if time_limit is None else time.monotonic() + time_limit
        # internal relabelling: position 0 = highest degree, ties by lower index
        self.order = sorted(range(self.size), key=lambda v: (-self.adj[v].bit_count(), v))
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.iadj = [self._to_internal(self.adj[v]) for v in self.order]
        self._lock = threading.Lock()
        self.best = 0
        self.best_clique: list[int] = []

    # -- helpers -----------------------------------------------------------

    def _to_internal(self, mask: int) -> int:
        out = 0
        for v in _bits(mask):
            out |= 1 << self.pos[v]
        return out

    def _tick(self) -> None:
        self.nodes += 1
        if self._deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self._deadline:
            raise SearchTimeout

    def is_clique(self, vertices: Sequence[int]) -> bool:
        vs = list(vertices)
        return all(self.adj[a] >> b & 1 for i, a in enumerate(vs) for b in vs[i + 1:])

    def offer(self, clique: Sequence[int]) -> None:
        """Install a known clique as incumbent (e.g. a construction)."""
        if not self.is_clique(clique):
            raise ValueError("offered vertex set is not a clique")
        with self._lock:
            if len(clique) > self.best:
                self.best = len(clique)
                self.best_clique = sorted(clique)

    # -- maximum search ----------------------------------------------------

    def _expand(self, size: int, p: int, clique: list[int]) -> None:
        self._tick()
        adj = self.iadj
        order, colours = _colour_sort(p, adj)
        for idx in range(len(order) - 1, -1, -1):
            if size + colours[idx] <= self.best:
                return
            v = order[idx]
            clique.append(v)
            newp = p & adj[v]
            if newp:
                self._expand(size + 1, newp, clique)
            elif size + 1 > self.best:
                with self._lock:
                    if size + 1 > self.best:
                        self.best = size + 1
                        self.best_clique = sorted(self.order[u] for u in clique)
            clique.pop()
            p &= ~(1 << v)

    def _root_task(self, v: int, p: int) -> None:
        if p:
            order, colours = _colour_sort(p, self.iadj)
            if 1 + colours[-1] <= self.best:
                return
            self._expand(1, p, [v])
        elif self.best < 1:
            with self._lock:
                if self.best < 1:
                    self.best = 1
                    self.best_clique = [self.order[v]]

    def max_clique(self, threads: int = 1, orbits: Sequence[Sequence[int]] | None = None) -> tuple[int, list[int], bool]:
        """Return ``(size, clique, complete)``.

        ``orbits`` optionally partitions the vertices into classes of an
        automorphism group; the root level then branches on one representative
        per class only.  With a timeout the incumbent is returned and
        ``complete`` is False.
        """
        if self.size == 0:
            return 0, [], True
        if orbits is None:
            classes = [[v] for v in range(self.size)]
        else:
            classes = sorted(([self.pos[u] for u in orb] for orb in orbits), key=min)
            if sorted(x for c in classes for x in c) != list(range(self.size)):
                raise ValueError("orbits must partition the vertex set")
        tasks = []
        excluded = 0
        for cls in classes:
            rep = min(cls)
            # a clique whose earliest class is cls maps onto one through rep
            tasks.append((rep, self.iadj[rep] & ~excluded))
            for u in cls:
                excluded |= 1 << u
        try:
            if threads <= 1:
                for rep, p in tasks:
                    self._root_task(rep, p)
            else:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    for fut in [pool.submit(self._root_task, rep, p) for rep, p in tasks]:
                        fut.result()
        except SearchTimeout:
            return self.best, list(self.best_clique), False
        return self.best, list(self.best_clique), True

    # -- decision and enumeration ------------------------------------------
    # callers speak original labels; the recursion runs on internal labels,
    # where greedy colouring in degree order gives far tighter bounds

    def _has(self, p: int, need: int) -> bool:
        if need <= 0:
            return True
        if p.bit_count() < need:
            return False
        self._tick()
        order, colours = _colour_sort(p, self.iadj)
        for idx in range(len(order) - 1, -1, -1):
            if colours[idx] < need:
                return False
            v = order[idx]
            if need == 1 or self._has(p & self.iadj[v], need - 1):
                return True
            p &= ~(1 << v)
        return False

    def has_clique(self, size: int, within: int | None = None) -> bool:
        p = (1 << self.size) - 1 if within is None else self._to_internal(within)
        return self._has(p, size)

    def lexmin_clique(self, size: int) -> list[int]:
        """Lexicographically smallest clique of exactly ``size`` vertices (as a sorted list)."""
        chosen: list[int] = []
        p = (1 << self.size) - 1
        need = size
        while need > 0:
            for v in _bits(p):
                above = p & self.adj[v] & ~((1 << (v + 1)) - 1)
                if self.has_clique(need - 1, above):
                    chosen.append(v)
                    p = above
                    need -= 1
                    break
            else:
                raise ValueError(f"no clique of size {size}")
        return chosen

    def all_cliques(self, size: int) -> list[tuple[int, ...]]:
        """Every clique of exactly ``size`` vertices, sorted lexicographically."""
        found: list[tuple[int, ...]] = []
        adj = self.iadj

        def rec(depth: int, p: int, clique: list[int]) -> None:
            self._tick()
            order, colours = _colour_sort(p, adj)
            for idx in range(len(order) - 1, -1, -1):
                if depth + colours[idx] < size:
                    return
                v = order[idx]
                clique.append(v)
                if depth + 1 == size:
                    found.append(tuple(sorted(self.order[u] for u in clique)))
                else:
                    rec(depth + 1, p & adj[v], clique)
                clique.pop()
                p &= ~(1 << v)

        if size == 0:
            return [()]
        rec(0, (1 << self.size) - 1, [])
        return sorted(found)
