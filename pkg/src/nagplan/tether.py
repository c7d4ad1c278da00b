"""Two-stage planning for a tethered vehicle.

Stage one (workspace exploration) grows a NAG from the tether base until the
g-score exceeds the cable length, so every retained vertex corresponds to a
tether configuration (its geodesic back to the base) that fits the cable.
Stage two (length-constrained search, LCS) runs a plain Dijkstra over that
explored NAG: the result is the shortest robot path whose tether stays
feasible the whole way.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import InvalidQueryError, UnreachableError
from .nag import NagGraph, NagVertex, RadiusStop, reconstruct_path, search_nag

_INF = float("inf")


@dataclass(frozen=True)
class TetherSpec:
    base: tuple
    length: float

    def __post_init__(self):
        if self.length < 0:
            raise InvalidQueryError("tether length must be >= 0")


@dataclass
class LcsResult:
    """A length-constrained path with its per-waypoint tether configurations."""

    robot_path: list
    length: float
    tether_configs: list  # one coordinate list (base -> waypoint) per waypoint
    valid: bool
    vertex_path: list
    goal_vertex: int


@dataclass
class MissionResult:
    legs: list
    error: str | None = None


def explore_workspace(env, tether, params=None, cut_params=None):
    """NAG of everything reachable from the base within the cable length.

    The returned graph contains only closed vertices (g <= length); a
    coordinate may carry several vertices, one per distinct tether class.
    The base vertex keeps id 0.
    """
    base = env.normalize(tether.base)
    if not env.is_free(base):
        raise InvalidQueryError(f"base {base} is out of bounds or an obstacle")
    result = search_nag(env, base, RadiusStop(tether.length), params,
                        cut_params=cut_params)
    return _closed_subgraph(result.graph)


def _closed_subgraph(graph):
    keep = [v.id for v in graph.vertices if not v.in_open]
    remap = {old: new for new, old in enumerate(keep)}
    out = NagGraph(graph.env)
    for old in keep:
        v = graph.vertices[old]
        came = remap[v.came_from] if v.came_from is not None else None
        nv = NagVertex(
            id=remap[old],
            q=v.q,
            pns=frozenset(remap[p] for p in v.pns if p in remap),
            g=v.g,
            came_from=came,
            in_open=False,
        )
        out.vertices.append(nv)
        out.adjacency.append({})
        out.coord_index.setdefault(v.q, []).append(nv.id)
    for old in keep:
        a = remap[old]
        for nb, cost in graph.adjacency[old].items():
            if nb in remap:
                out.adjacency[a][remap[nb]] = cost
    out.blocked = set(graph.blocked)
    out.regions = list(graph.regions)
    out.expansions = graph.expansions
    return out


def lcs(workspace, start_vertex, q_g):
    """Shortest tether-feasible path from a workspace vertex to a coordinate.

    Plain Dijkstra over the workspace NAG (undirected, so the robot may
    retreat toward its base); any vertex at q_g is an acceptable goal. The
    tether configuration at each waypoint is the waypoint's geodesic back to
    the base.
    """
    env = workspace.env
    start = workspace.vertex(start_vertex)
    goal_q = env.normalize(q_g)
    if not workspace.coord_index.get(goal_q):
        if not env.is_free(goal_q):
            raise InvalidQueryError(f"goal {goal_q} is an obstacle")
        raise UnreachableError(
            f"goal {goal_q} is not reachable under the tether constraint")

    adjacency = workspace.adjacency
    vertices = workspace.vertices
    dist = {start.id: 0.0}
    came = {start.id: None}
    closed = set()
    heap = [(0.0, 0, start.id)]
    seq = 1
    goal_id = None
    while heap:
        g, _, u = heapq.heappop(heap)
        if u in closed or g != dist[u]:
            continue
        closed.add(u)
        if vertices[u].q == goal_q:
            goal_id = u
            break
        for nb, cost in adjacency[u].items():
            ng = g + cost
            if ng < dist.get(nb, _INF):
                dist[nb] = ng
                came[nb] = u
                heapq.heappush(heap, (ng, seq, nb))
                seq += 1
    if goal_id is None:
        raise UnreachableError(
            f"goal {goal_q} is not reachable from the start tether class")

    vertex_path = []
    cur = goal_id
    while cur is not None:
        vertex_path.append(cur)
        cur = came[cur]
    vertex_path.reverse()
    robot_path = [vertices[i].q for i in vertex_path]
    tether_configs = [reconstruct_path(workspace, i)[0] for i in vertex_path]
    valid = all(q not in workspace.blocked for q in robot_path)
    return LcsResult(
        robot_path=robot_path,
        length=dist[goal_id],
        tether_configs=tether_configs,
        valid=valid,
        vertex_path=vertex_path,
        goal_vertex=goal_id,
    )


def plan_mission(workspace, start_vertex, goals):
    """Chain LCS legs through a goal sequence.

    The goal vertex reached on leg i (which fixes the tether class there)
    starts leg i+1. On an unreachable leg the completed prefix is returned
    together with the error message.
    """
    if not goals:
        raise InvalidQueryError("mission needs at least one goal")
    legs = []
    current = start_vertex
    for goal in goals:
        try:
            leg = lcs(workspace, current, goal)
        except UnreachableError as exc:
            return MissionResult(legs=legs, error=str(exc))
        legs.append(leg)
        current = leg.goal_vertex
    return MissionResult(legs=legs, error=None)
