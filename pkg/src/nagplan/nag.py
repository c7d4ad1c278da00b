"""Incremental construction and search of the neighborhood-augmented graph.

A NAG vertex pairs a lattice coordinate with a path neighborhood set (PNS):
two vertices at the same coordinate are the same vertex only if their PNS
intersect. Distinct branches of the search front therefore survive meeting
each other, and popping several vertices at the goal coordinate yields
multiple topo-geometrically distinct locally-optimal paths.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from . import cutpoint as _cutpoint
from .errors import InternalConsistencyError, InvalidQueryError
from .pns import PnsParams, compute_pns


@dataclass
class NagVertex:
    id: int
    q: tuple
    pns: frozenset
    g: float
    came_from: int | None
    in_open: bool = True


class NagGraph:
    """Vertex/edge store for one search. Immutable once the search returns.

    adjacency holds the undirected edge set (tree edges plus the cross edges
    added when a successor merges into an existing vertex), with edge costs
    taken from the underlying lattice. coord_index inverts vertex coordinates
    so equivalence checks only scan vertices at one coordinate.
    """

    def __init__(self, env):
        self.env = env
        self.vertices = []
        self.adjacency = []  # per-vertex {neighbor_id: edge_cost}
        self.coord_index = {}
        self.blocked = set()  # coords inside active cut-point regions
        self.regions = []
        self.start_id = 0
        self.expansions = 0

    def new_vertex(self, q, pns, g, came_from):
        vid = len(self.vertices)
        if pns is None:
            pns = frozenset((vid,))  # start vertex: self-reference
        v = NagVertex(vid, q, pns, g, came_from)
        self.vertices.append(v)
        self.adjacency.append({})
        self.coord_index.setdefault(q, []).append(vid)
        return v

    def add_edge(self, a, b, cost):
        self.adjacency[a][b] = cost
        self.adjacency[b][a] = cost

    def vertex(self, vid):
        if not isinstance(vid, int) or not 0 <= vid < len(self.vertices):
            raise InvalidQueryError(f"no vertex with id {vid!r}")
        return self.vertices[vid]

    def vertices_at(self, q):
        """Ids of all NAG vertices at a lattice coordinate."""
        return list(self.coord_index.get(self.env.normalize(q), ()))

    def closed_ids(self):
        return [v.id for v in self.vertices if not v.in_open]


@dataclass(frozen=True)
class GoalStop:
    """Stop once n_p distinct NAG vertices at q_g have been popped."""

    q_g: tuple
    n_p: int = 1

    def __post_init__(self):
        if self.n_p < 1:
            raise InvalidQueryError("n_p must be >= 1")


@dataclass(frozen=True)
class RadiusStop:
    """Stop at the first popped vertex with g exceeding l."""

    l: float

    def __post_init__(self):
        if self.l < 0:
            raise InvalidQueryError("radius must be >= 0")


@dataclass(frozen=True)
class BudgetStop:
    """Stop after max_expansions vertex expansions."""

    max_expansions: int

    def __post_init__(self):
        if self.max_expansions < 1:
            raise InvalidQueryError("budget must be >= 1")


@dataclass
class SearchResult:
    graph: NagGraph
    goal_ids: list
    stop_reason: str  # goal | radius | budget | exhausted


def equivalent(a, b):
    """Vertices are the same iff coordinates match and their PNS intersect."""
    return a.q == b.q and not a.pns.isdisjoint(b.pns)


def stop_at_goal(v, q_g, n_p, found):
    """Record v in found if it sits at q_g; true once n_p vertices are found."""
    if v.q == q_g and v.id not in found:
        found.add(v.id)
    return len(found) >= n_p


# Guard against nontermination when fewer than n_p path classes exist and no
# explicit budget was given.
DEFAULT_BUDGET_FACTOR = 50


def search_nag(env, q_s, stop, params=None, algo="dijkstra", cut_params=None):
    """Incrementally construct and search a NAG from q_s.

    stop is one criterion or a sequence of criteria combined any-of
    (GoalStop, RadiusStop, BudgetStop; at most one GoalStop). algo is
    "dijkstra" or "astar" (Euclidean heuristic toward the GoalStop goal).
    cut_params enables cut-point detection. Returns a SearchResult whose
    goal_ids list the distinct goal vertices in discovery order.
    """
    q_s = env.normalize(q_s)
    if not env.is_free(q_s):
        raise InvalidQueryError(f"start {q_s} is out of bounds or an obstacle")
    if params is None:
        params = PnsParams.defaults_for(env)

    criteria = list(stop) if isinstance(stop, (list, tuple)) else [stop]
    goal_stops = [c for c in criteria if isinstance(c, GoalStop)]
    if len(goal_stops) > 1:
        raise InvalidQueryError("at most one GoalStop is supported")
    goal_q = env.normalize(goal_stops[0].q_g) if goal_stops else None
    n_p = goal_stops[0].n_p if goal_stops else 0
    if goal_q is not None and not env.is_free(goal_q):
        raise InvalidQueryError(f"goal {goal_q} is out of bounds or an obstacle")
    radii = [c.l for c in criteria if isinstance(c, RadiusStop)]
    radius = min(radii) if radii else None
    budgets = [c.max_expansions for c in criteria if isinstance(c, BudgetStop)]
    budget = min(budgets) if budgets else DEFAULT_BUDGET_FACTOR * env.free_count()

    if algo == "astar":
        if goal_q is None:
            raise InvalidQueryError("astar requires a GoalStop")
        heur = env.heuristic
    elif algo == "dijkstra":
        heur = None
    else:
        raise InvalidQueryError(f"unknown search algorithm {algo!r}")

    graph = NagGraph(env)
    graph.new_vertex(q_s, None, 0.0, None)
    h0 = heur(q_s, goal_q) if heur else 0.0
    heap = [(h0, 0, 0, 0.0)]
    seq = 1
    found_ids = []
    found_set = set()
    stop_reason = "exhausted"

    vertices = graph.vertices
    coord_index = graph.coord_index
    blocked = graph.blocked
    neighbors = env.neighbors
    push = heapq.heappush
    pop = heapq.heappop

    while heap:
        _, _, vid, g_at_push = pop(heap)
        v = vertices[vid]
        if not v.in_open or g_at_push != v.g:
            continue
        if radius is not None and v.g > radius:
            # The triggering vertex stays open: closed vertices all have g <= l.
            stop_reason = "radius"
            break
        v.in_open = False
        graph.expansions += 1

        if goal_q is not None and v.q == goal_q and vid not in found_set:
            found_set.add(vid)
            found_ids.append(vid)
            if len(found_ids) >= n_p:
                stop_reason = "goal"
                break
        if graph.expansions >= budget:
            stop_reason = "budget"
            break
        if v.q in blocked:
            continue  # cut-point regions are not expanded through

        pns = compute_pns(graph, vid, params)
        gv = v.g
        for q2, cost in neighbors(v.q):
            if q2 in blocked:
                continue
            g2 = gv + cost
            w_id = None
            for wid in coord_index.get(q2, ()):
                if not pns.isdisjoint(vertices[wid].pns):
                    w_id = wid
                    break
            if w_id is None:
                nv = graph.new_vertex(q2, pns, g2, vid)
                graph.add_edge(vid, nv.id, cost)
                key = g2 + heur(q2, goal_q) if heur else g2
                push(heap, (key, seq, nv.id, g2))
                seq += 1
                continue
            w = vertices[w_id]
            graph.add_edge(vid, w_id, cost)
            if cut_params is not None:
                cand = _cutpoint.Candidate(q=q2, pns=pns, parent=vid, g=g2)
                is_cut, region = _cutpoint.cut_point_check(
                    graph, w_id, cand, cut_params)
                if is_cut:
                    graph.regions.append(region)
                    blocked |= region.coords
                    continue
            if g2 < w.g and w.in_open:
                w.g = g2
                w.came_from = vid
                w.pns = pns
                key = g2 + heur(q2, goal_q) if heur else g2
                push(heap, (key, seq, w_id, g2))
                seq += 1

    return SearchResult(graph, found_ids, stop_reason)


def reconstruct_path(graph, v):
    """Coordinates start -> v along came_from, with the summed edge length."""
    vert = graph.vertex(v)
    ids = []
    seen = set()
    cur = vert
    while True:
        if cur.id in seen:
            raise InternalConsistencyError("cycle in came_from chain")
        seen.add(cur.id)
        ids.append(cur.id)
        if cur.came_from is None:
            break
        cur = graph.vertex(cur.came_from)
    if cur.id != graph.start_id or cur.g != 0.0:
        raise InternalConsistencyError("came_from chain does not reach the start")
    ids.reverse()
    length = 0.0
    for a, b in zip(ids, ids[1:]):
        step = graph.adjacency[a].get(b)
        if step is None:
            raise InternalConsistencyError(f"missing edge {a} -> {b} on chain")
        length += step
    return [graph.vertices[i].q for i in ids], length
