"""Path neighborhood set (PNS) computation.

A PNS is built by a short secondary A* over the already-constructed
neighborhood-augmented graph, started from an ancestor of the vertex of
interest. The primary g-score acts as a heuristic that biases the
neighborhood toward hugging the path instead of forming a plain disk.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import InvalidQueryError

_INF = float("inf")


@dataclass(frozen=True)
class PnsParams:
    """Geometry of the secondary neighborhood search.

    r_n: neighborhood radius in path-cost units.
    omega: heuristic weight in [0, 1]; 0 gives a disk-shaped neighborhood,
        larger values hug the path more closely.
    r_b: number of came_from generations to roll back before searching.
    d_min: minimum hop depth the secondary search must reach before the
        radius cutoff applies (keeps neighborhoods non-degenerate in
        high-cost regions where few vertices fit inside r_n).
    """

    r_n: float
    omega: float = 0.6
    r_b: int = 4
    d_min: int = 3

    def __post_init__(self):
        if self.r_n < 0:
            raise InvalidQueryError("r_n must be >= 0")
        if not 0.0 <= self.omega <= 1.0:
            raise InvalidQueryError("omega must lie in [0, 1]")
        if self.r_b < 0 or self.d_min < 0:
            raise InvalidQueryError("r_b and d_min must be >= 0")

    @classmethod
    def defaults_2d(cls):
        return cls(r_n=10.0, omega=0.6, r_b=4)

    @classmethod
    def defaults_3d(cls):
        return cls(r_n=5.0, omega=0.6, r_b=3)

    @classmethod
    def defaults_for(cls, env):
        return cls.defaults_3d() if env.ndim == 3 else cls.defaults_2d()


def rollback(graph, v, r_b):
    """The r_b-th came_from ancestor of v, clamped at the start vertex."""
    vert = graph.vertex(v)
    for _ in range(r_b):
        if vert.came_from is None:
            break
        vert = graph.vertices[vert.came_from]
    return vert.id


def compute_pns(graph, v_p, params):
    """Path neighborhood set of the path leading to vertex v_p.

    Runs A* from rollback(v_p, r_b) over the undirected NAG adjacency with
    secondary key g~ + omega * g (g is the primary g-score). The search stops
    at the first popped vertex with g~ >= r_n whose hop depth is at least
    d_min. The result contains every vertex whose g~ was ever finitely set,
    so it includes a one-step frontier beyond the radius.
    """
    start = rollback(graph, v_p, params.r_b)
    r_n = params.r_n
    omega = params.omega
    d_min = params.d_min
    vertices = graph.vertices
    adjacency = graph.adjacency
    g_sec = {start: 0.0}
    depth = {start: 0}
    members = {start}
    closed = set()
    heap = [(omega * vertices[start].g, 0, start, 0.0)]
    seq = 1
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        _, _, u, g_at_push = pop(heap)
        gu = g_sec[u]
        if u in closed or g_at_push != gu:
            continue
        du = depth[u]
        if gu >= r_n and du >= d_min:
            break
        closed.add(u)
        du += 1
        for nb, cost in adjacency[u].items():
            ng = gu + cost
            if ng < g_sec.get(nb, _INF):
                g_sec[nb] = ng
                depth[nb] = du
                members.add(nb)
                push(heap, (ng + omega * vertices[nb].g, seq, nb, ng))
                seq += 1
    return frozenset(members)
