"""Exact maximum independent set and maximum cut on small graphs.

Ground truth for the finite-graph algorithms: exhaustive search with n
capped low enough that exactness is beyond doubt.  Inputs come from
Multigraph instances; the underlying simple graph drives independence,
while the cut objective keeps parallel-edge multiplicity (a parallel pair
crossing the cut counts twice).  Self-loops can never contribute to either
objective and are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config_model import Multigraph

__all__ = ["SmallGraph", "from_multigraph", "max_independent_set", "max_cut"]

MIS_LIMIT = 30
CUT_LIMIT = 26


@dataclass
class SmallGraph:
    """Simple-graph bitmask adjacency plus weighted edges for the cut."""

    n: int
    nbr: list   # nbr[v]: bitmask of neighbors, no self bit
    edges: list  # (u, v, multiplicity) with u < v

    def __post_init__(self):
        for v, mask in enumerate(self.nbr):
            if mask >> self.n:
                raise ValueError("neighbor bit out of range")
            if (mask >> v) & 1:
                raise ValueError("self-loop bit not allowed")
        for v in range(self.n):
            for u in _bits(self.nbr[v]):
                if not (self.nbr[u] >> v) & 1:
                    raise ValueError("adjacency must be symmetric")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def from_multigraph(g: Multigraph) -> SmallGraph:
    multiplicity: dict = {}
    for u, v in g.edges():
        if u != v:
            key = (u, v) if u < v else (v, u)
            multiplicity[key] = multiplicity.get(key, 0) + 1
    nbr = [0] * g.n
    for u, v in multiplicity:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    edges = [(u, v, w) for (u, v), w in sorted(multiplicity.items())]
    return SmallGraph(n=g.n, nbr=nbr, edges=edges)


def max_independent_set(g: SmallGraph):
    """Exact MIS: (size, sorted vertex list).

    Branches on a highest-remaining-degree vertex (in or out); once every
    remaining degree is <= 1 the instance is a matching plus isolated
    vertices and is solved greedily.  The only bound is the count of
    remaining vertices, which is already enough at n <= 30.
    """
    if g.n > MIS_LIMIT:
        raise ValueError(f"independent-set oracle handles n <= {MIS_LIMIT}")
    nbr = g.nbr
    best = [-1, 0]

    def solve(avail: int, size: int, chosen: int) -> None:
        if size + avail.bit_count() <= best[0]:
            return
        top, top_deg = -1, -1
        for v in _bits(avail):
            deg = (nbr[v] & avail).bit_count()
            if deg > top_deg:
                top, top_deg = v, deg
        if top_deg <= 1:
            left = avail
            while left:
                low = left & -left
                v = low.bit_length() - 1
                chosen |= low
                size += 1
                left &= ~(low | nbr[v])
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        bit = 1 << top
        solve(avail & ~(bit | nbr[top]), size + 1, chosen | bit)
        solve(avail & ~bit, size, chosen)

    solve((1 << g.n) - 1, 0, 0)
    return best[0], sorted(_bits(best[1]))


def max_cut(g: SmallGraph):
    """Exact max cut: (weight, side labels with vertex n-1 fixed to 0).

    Gray-code walk over one side of the bipartition: each step flips a
    single vertex, so the cut weight updates from that vertex's incident
    edges alone.
    """
    if g.n > CUT_LIMIT:
        raise ValueError(f"max-cut oracle handles n <= {CUT_LIMIT}")
    if g.n == 0:
        return 0, []
    adj = [[] for _ in range(g.n)]
    wdeg = [0] * g.n
    for u, v, w in g.edges:
        adj[u].append((v, w))
        adj[v].append((u, w))
        wdeg[u] += w
        wdeg[v] += w
    side = [0] * g.n
    current = 0
    best, best_side = 0, side.copy()
    for k in range(1, 1 << (g.n - 1)):
        v = (k & -k).bit_length() - 1
        cross = sum(w for u, w in adj[v] if side[u] != side[v])
        current += wdeg[v] - 2 * cross
        side[v] ^= 1
        if current > best:
            best, best_side = current, side.copy()
    return best, best_side
