"""Round-based contraction algorithm for independent sets.

Works on the survival graph: super-vertices carry two alternative commit
sets (in_set if the super-vertex is ultimately selected, out_set if not),
so every decision about a merged vertex resolves a whole chain of earlier
2-vertex contractions at once.  Deleting a vertex commits its out_set to
the final independent set; selecting commits its in_set.  Each contraction
keeps |in_set| - |out_set| = 1, which is exactly why the final set grows
by one per contraction along the committed chain.

Rounds mirror the degree-evolution integrators: the top occupied degree
class is thinned with a small per-vertex probability, everything above it
goes outright, and the resulting 2-vertices are contracted to exhaustion.
The 4-regular variant instead probes 3-vertices: one whose neighbors are
all 3-vertices is deleted itself, otherwise its highest-degree neighbor
is deleted and the probe vertex gets contracted.
"""
from __future__ import annotations

import collections
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config_model import Multigraph

__all__ = [
    "DEGREE_CAP",
    "RoundSchedule",
    "SurvivalGraph",
    "IsRunResult",
    "contract",
    "delete",
    "run",
    "verify_independent",
]

DEGREE_CAP = 7  # merged vertices past this degree are deleted outright


@dataclass
class RoundSchedule:
    """Tunable knobs of the round discretization.

    thin_probability thins the top persistent degree class; classes above
    it (and transient dust below the persistence cutoff) are deleted
    outright.  bootstrap_probability seeds the process while no class
    above the base degree has formed yet.  A class is persistent when it
    holds at least persistence_fraction of the survival count.
    """

    thin_probability: float = 0.02
    bootstrap_probability: float = 0.002
    persistence_fraction: float = 0.002
    stop_fraction: float = 1e-3
    max_rounds: int = 1_000_000

    def __post_init__(self):
        for name in ("thin_probability", "bootstrap_probability",
                     "persistence_fraction"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0.0 < self.stop_fraction < 1.0:
            raise ValueError("stop_fraction must lie in (0, 1)")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be positive")


@dataclass
class IsRunResult:
    vertices: list
    n: int
    d: int
    seed: object
    rounds: int
    contractions: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def ratio(self) -> float:
        return len(self.vertices) / self.n


class SurvivalGraph:
    """Mutable half-edge graph with per-vertex commit bookkeeping.

    Commit sets are cons trees (None | original id | (left, right)) so a
    merge is O(1); they are flattened only when committed.
    """

    def __init__(self, g: Multigraph):
        self.n = g.n
        self.owner = np.array(g.owner, dtype=np.int64)
        self.pair = np.array(g.pair, dtype=np.int64)
        self.slot_alive = np.ones(self.owner.shape[0], dtype=bool)
        self.slots = [list(map(int, g.slots(v))) for v in range(g.n)]
        self.deg = g.degrees().astype(np.int64)
        self.alive = np.ones(g.n, dtype=bool)
        self.in_tree: list = list(range(g.n))
        self.out_tree: list = [None] * g.n
        self.in_size = np.ones(g.n, dtype=np.int64)
        self.out_size = np.zeros(g.n, dtype=np.int64)
        self.survival_count = g.n
        self.selected: list = []
        self.contractions = 0
        self.queue: collections.deque = collections.deque(
            v for v in range(g.n) if self.deg[v] <= 2)

    # -- commit bookkeeping ------------------------------------------------

    def _flatten(self, tree) -> list:
        out = []
        stack = [tree]
        while stack:
            node = stack.pop()
            if node is None:
                continue
            if isinstance(node, tuple):
                stack.extend(node)
            else:
                out.append(node)
        return out

    def _commit(self, tree) -> list:
        vertices = self._flatten(tree)
        self.selected.extend(vertices)
        return vertices

    # -- elementary mutations ----------------------------------------------

    def _drop_vertex(self, v: int) -> None:
        """Remove v and its live half-edges, decrementing live neighbors."""
        for h in self.slots[v]:
            if not self.slot_alive[h]:
                continue
            k = int(self.pair[h])
            self.slot_alive[h] = False
            self.slot_alive[k] = False
            u = int(self.owner[k])
            if u != v and self.alive[u]:
                self.deg[u] -= 1
                if self.deg[u] <= 2:
                    self.queue.append(u)
        self.alive[v] = False
        self.slots[v] = []
        self.survival_count -= 1

    def delete(self, v: int) -> list:
        """Rule v out of the set: commits out_set(v), removes v."""
        if not self.alive[v]:
            raise ValueError(f"vertex {v} is not in the survival graph")
        committed = self._commit(self.out_tree[v])
        self._drop_vertex(v)
        return committed

    def _select(self, v: int) -> list:
        """Put v in the set: commits in_set(v), removes v.

        Only valid once nothing live constrains v (degree 0, or its single
        neighbor is deleted by the caller right after).
        """
        committed = self._commit(self.in_tree[v])
        self._drop_vertex(v)
        return committed

    def _live_slots(self, v: int) -> list:
        kept = [h for h in self.slots[v] if self.slot_alive[h]]
        self.slots[v] = kept
        return kept

    def neighbors(self, v: int) -> list:
        return [int(self.owner[self.pair[h]]) for h in self._live_slots(v)]

    def contract(self, y: int) -> Optional[int]:
        """Contract at the 2-vertex y; returns the merged vertex id if any.

        Degenerate neighborhoods resolve y immediately instead of merging:
        a loop or twin neighbor makes y unconstrained-or-pendant, and
        adjacent neighbors make y simplicial — in every branch the maximum
        independent set drops by exactly one, same as a true merge.
        """
        if not self.alive[y] or self.deg[y] != 2:
            raise ValueError("contract needs a live degree-2 vertex")
        self.contractions += 1
        s1, s2 = self._live_slots(y)
        if int(self.pair[s1]) == s2:
            # y's remaining edge is a self-loop: it constrains nothing
            self._select(y)
            return None
        x = int(self.owner[self.pair[s1]])
        z = int(self.owner[self.pair[s2]])
        if x == z:
            # both edges lead to the same vertex: y is effectively pendant
            self._select(y)
            self.delete(x)
            return None
        if any(int(self.owner[self.pair[h]]) == z for h in self._live_slots(x)):
            # neighbors are adjacent: y is simplicial, selecting it is safe
            self._select(y)
            if self.alive[x]:
                self.delete(x)
            if self.alive[z]:
                self.delete(z)
            return None
        # true merge: x absorbs z, y dissolves into the commit trees
        for h in (s1, s2):
            k = int(self.pair[h])
            self.slot_alive[h] = False
            self.slot_alive[k] = False
        self.deg[x] -= 1
        self.deg[z] -= 1
        moved = self._live_slots(z)
        for h in moved:
            self.owner[h] = x
        self.slots[x].extend(moved)
        self.deg[x] += self.deg[z]
        self.in_tree[x] = ((self.in_tree[x], self.in_tree[z]),
                           self.out_tree[y])
        self.out_tree[x] = ((self.out_tree[x], self.out_tree[z]),
                            self.in_tree[y])
        self.in_size[x] += self.in_size[z] + self.out_size[y]
        self.out_size[x] += self.out_size[z] + self.in_size[y]
        for gone in (y, z):
            self.alive[gone] = False
            self.slots[gone] = []
        self.survival_count -= 2
        if self.deg[x] <= 2:
            self.queue.append(x)
        return x

    # -- cascade -----------------------------------------------------------

    def settle(self) -> None:
        """Resolve all 0/1/2-degree vertices until none remain."""
        while self.queue:
            v = self.queue.popleft()
            if not self.alive[v]:
                continue
            dv = int(self.deg[v])
            if dv > 2:
                continue
            if dv == 0:
                self._select(v)
            elif dv == 1:
                h = self._live_slots(v)[0]
                u = int(self.owner[self.pair[h]])
                self._select(v)
                if self.alive[u]:
                    self.delete(u)
            else:
                merged = self.contract(v)
                if merged is not None and self.alive[merged] \
                        and self.deg[merged] > DEGREE_CAP:
                    self.delete(merged)

    def live_edges(self) -> list:
        """Live edges as (owner, owner) pairs, loops included."""
        out = []
        for h in range(self.pair.shape[0]):
            k = int(self.pair[h])
            if h < k and self.slot_alive[h]:
                out.append((int(self.owner[h]), int(self.owner[k])))
        return out

    def survivors(self) -> list:
        return [int(v) for v in np.flatnonzero(self.alive)]


def contract(g: SurvivalGraph, y: int) -> SurvivalGraph:
    g.contract(y)
    return g


def delete(g: SurvivalGraph, v: int) -> list:
    return g.delete(v)


def _top_persistent(counts, survival: int, fraction: float,
                    floor: int) -> Optional[int]:
    """Highest degree class above `floor` that is more than dust."""
    need = max(1, int(round(fraction * survival)))
    for d in range(len(counts) - 1, floor, -1):
        if counts[d] >= need:
            return d
    return None


def run(graph: Multigraph, d: int, schedule: Optional[RoundSchedule] = None,
        seed=None) -> IsRunResult:
    """Run the full round process; returns the committed independent set."""
    if d not in (3, 4):
        raise ValueError("only 3- and 4-regular graphs are supported")
    if not np.all(graph.degrees() == d):
        raise ValueError(f"input graph is not {d}-regular")
    schedule = schedule or RoundSchedule()
    rng = np.random.default_rng(seed)
    g = SurvivalGraph(graph)
    stop_at = schedule.stop_fraction * graph.n
    base = 3  # both variants act on classes above/at 3
    rounds = 0
    g.settle()
    while g.survival_count > stop_at and rounds < schedule.max_rounds:
        before = g.survival_count
        counts = np.bincount(g.deg[g.alive], minlength=2 * DEGREE_CAP)
        if d == 3:
            top = _top_persistent(counts, before,
                                  schedule.persistence_fraction, base)
            if top is not None:
                _delete_class_and_above(g, rng, top,
                                        schedule.thin_probability)
            else:
                _delete_class_and_above(g, rng, base,
                                        schedule.bootstrap_probability)
        else:
            top = _top_persistent(counts, before,
                                  schedule.persistence_fraction, 5)
            if top is not None:
                _delete_class_and_above(g, rng, top,
                                        schedule.thin_probability)
            elif counts[3] == 0:
                _delete_class_and_above(g, rng, 4,
                                        schedule.bootstrap_probability)
            else:
                _probe_round(g, rng, schedule.thin_probability)
        g.settle()
        if g.survival_count == before:
            _force_progress(g, rng)
            g.settle()
        rounds += 1
    for v in np.flatnonzero(g.alive):
        g._commit(g.out_tree[int(v)])
    return IsRunResult(vertices=sorted(g.selected), n=graph.n, d=d,
                       seed=seed, rounds=rounds,
                       contractions=g.contractions)


def _delete_class_and_above(g: SurvivalGraph, rng, top: int,
                            probability: float) -> None:
    outright = np.flatnonzero(g.alive & (g.deg > top))
    members = np.flatnonzero(g.alive & (g.deg == top))
    marked = members[rng.random(members.shape[0]) < probability]
    for v in outright:
        g.delete(int(v))
    for v in marked:
        if g.alive[v]:
            g.delete(int(v))


def _probe_round(g: SurvivalGraph, rng, probability: float) -> None:
    """4-regular variant: probe marked 3-vertices one at a time."""
    dust = np.flatnonzero(g.alive & (g.deg > 5))
    for v in dust:
        g.delete(int(v))
    members = np.flatnonzero(g.alive & (g.deg == 3))
    marked = members[rng.random(members.shape[0]) < probability]
    for v in marked:
        v = int(v)
        if not g.alive[v] or g.deg[v] != 3:
            continue
        nbrs = g.neighbors(v)
        degs = [int(g.deg[u]) for u in nbrs]
        if max(degs) == 3:
            g.delete(v)
        else:
            best = max(degs)
            target = min(u for u, dg in zip(nbrs, degs) if dg == best)
            g.delete(target)  # v drops to degree 2 and will contract


def _force_progress(g: SurvivalGraph, rng) -> None:
    degs = g.deg[g.alive]
    if degs.shape[0] == 0:
        return
    top = int(degs.max())
    members = np.flatnonzero(g.alive & (g.deg == top))
    g.delete(int(rng.choice(members)))


def verify_independent(graph: Multigraph, vertices) -> bool:
    """True iff no non-loop edge has both endpoints in the set."""
    chosen = set(vertices)
    for u, v in graph.edges():
        if u != v and u in chosen and v in chosen:
            return False
    return True
