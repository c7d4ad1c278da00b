"""Cut-point detection for low-cost/low-curvature domains.

When two near-identical geodesics meet, their path neighborhood sets still
overlap and the search cannot branch. A cut point is such a meeting vertex:
the neighborhood intersection ratio is small, the g-scores agree, and path
points a fixed fraction upstream are moderately separated. A blocked region
around the cut point then acts as a synthetic obstacle, forcing the branches
apart.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import InternalConsistencyError, InvalidQueryError

_INF = float("inf")


@dataclass(frozen=True)
class CutPointParams:
    """Thresholds for cut-point detection.

    eps_i: maximum neighborhood intersection ratio at a candidate cut.
    eps_g: maximum g-score gap between the two parents.
    r_l: fraction of the path length to walk back for the path points.
    eps_lower/eps_upper: separation bounds between the path points
        (eps_lower rejects genuinely identical vertices; separations beyond
        eps_upper are handled by ordinary branching).
    r_mp: radius of the blocked region generated around a cut point.
    """

    eps_i: float = 0.6
    eps_g: float = 0.1
    r_l: float = 0.2
    eps_lower: float = 8.0
    eps_upper: float = 25.0
    r_mp: float = 3.0

    def __post_init__(self):
        if not 0.0 <= self.eps_i <= 1.0:
            raise InvalidQueryError("eps_i must lie in [0, 1]")
        if not 0.0 < self.r_l < 1.0:
            raise InvalidQueryError("r_l must lie in (0, 1)")
        if self.eps_g < 0 or self.r_mp < 0:
            raise InvalidQueryError("eps_g and r_mp must be >= 0")
        if not 0 <= self.eps_lower < self.eps_upper:
            raise InvalidQueryError("need 0 <= eps_lower < eps_upper")

    @classmethod
    def defaults_2d(cls):
        return cls(eps_i=0.6, eps_g=0.1, r_l=0.2,
                   eps_lower=8.0, eps_upper=25.0, r_mp=3.0)

    @classmethod
    def defaults_3d(cls):
        return cls(eps_i=0.4, eps_g=0.1, r_l=0.2,
                   eps_lower=5.0, eps_upper=10.0, r_mp=5.0)

    @classmethod
    def defaults_for(cls, env):
        return cls.defaults_3d() if env.ndim == 3 else cls.defaults_2d()


@dataclass(frozen=True)
class CutPointRegion:
    """Coordinates blocked around a detected cut point."""

    seed: int
    coords: frozenset


@dataclass(frozen=True)
class Candidate:
    """A successor vertex that has not (yet) been inserted into the graph."""

    q: tuple
    pns: frozenset
    parent: int
    g: float


def intersection_ratio(a, b):
    """|a & b| / min(|a|, |b|) for two nonempty id sets."""
    if not a or not b:
        raise InvalidQueryError("intersection ratio of an empty set")
    return len(a & b) / min(len(a), len(b))


def get_path_point(graph, w, r_l):
    """First came_from ancestor of w at accumulated cost >= r_l * g(w)."""
    vert = graph.vertex(w)
    return _path_point(graph, vert.id, 0.0, r_l * vert.g)


def _path_point(graph, start_id, acc, target):
    cur = graph.vertex(start_id)
    while acc < target:
        parent = cur.came_from
        if parent is None:
            break
        step = graph.adjacency[cur.id].get(parent)
        if step is None:
            raise InternalConsistencyError(
                f"missing came_from edge {cur.id} -> {parent}")
        acc += step
        cur = graph.vertices[parent]
    return cur.id


def cut_point_check(graph, w, candidate, params):
    """Decide whether the meet of w and an equivalent candidate is a cut point.

    Returns (is_cut, region). All rejection paths return (False, None).
    """
    wv = graph.vertex(w)
    if intersection_ratio(wv.pns, candidate.pns) > params.eps_i:
        return False, None
    if wv.came_from is None:
        return False, None
    parent_g = graph.vertex(candidate.parent).g
    if abs(graph.vertices[wv.came_from].g - parent_g) > params.eps_g:
        return False, None
    p_w = get_path_point(graph, w, params.r_l)
    first_step = candidate.g - parent_g
    p_v = _path_point(graph, candidate.parent, first_step,
                      params.r_l * candidate.g)
    d_sep = _bounded_astar(graph, p_w, p_v, params.eps_upper)
    if d_sep is None or not params.eps_lower < d_sep <= params.eps_upper:
        return False, None
    return True, _region_around(graph, w, params.r_mp)


def _bounded_astar(graph, source, target, radius):
    """A* distance source -> target over the NAG, or None beyond radius."""
    if source == target:
        return 0.0
    env = graph.env
    vertices = graph.vertices
    adjacency = graph.adjacency
    target_q = vertices[target].q
    dist = {source: 0.0}
    closed = set()
    heap = [(env.heuristic(vertices[source].q, target_q), 0, source, 0.0)]
    seq = 1
    while heap:
        f, _, u, g_at_push = heapq.heappop(heap)
        if u in closed or g_at_push != dist[u]:
            continue
        if f > radius:
            return None
        if u == target:
            return dist[u]
        closed.add(u)
        gu = dist[u]
        for nb, cost in adjacency[u].items():
            ng = gu + cost
            if ng < dist.get(nb, _INF):
                dist[nb] = ng
                heapq.heappush(
                    heap,
                    (ng + env.heuristic(vertices[nb].q, target_q), seq, nb, ng),
                )
                seq += 1
    return None


def _region_around(graph, seed, radius):
    """Coordinates of NAG vertices within Dijkstra radius of the seed."""
    adjacency = graph.adjacency
    dist = {seed: 0.0}
    closed = set()
    coords = set()
    heap = [(0.0, 0, seed)]
    seq = 1
    while heap:
        g, _, u = heapq.heappop(heap)
        if u in closed or g != dist[u]:
            continue
        if g > radius:
            break
        closed.add(u)
        coords.add(graph.vertices[u].q)
        for nb, cost in adjacency[u].items():
            ng = g + cost
            if ng < dist.get(nb, _INF):
                dist[nb] = ng
                heapq.heappush(heap, (ng, seq, nb))
                seq += 1
    return CutPointRegion(seed=seed, coords=frozenset(coords))
