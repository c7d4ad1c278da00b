"""Independent baselines used to verify the NAG planner.

None of these touch the NAG machinery: plain Dijkstra on the lattice, a 2D
homotopy-class baseline built from word-valued ray-crossing signatures, a
universal-cover unrolling for cylinder winding classes, and a small-instance
brute-force enumerator.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .env import CYLINDER2D, PLANAR2D, Environment
from .errors import (
    DegenerateCrossingError,
    InvalidQueryError,
    OracleTimeoutError,
    UnreachableError,
)

_INF = float("inf")


def plain_dijkstra(env, q_s, goal=None, radius=None):
    """Single-class Dijkstra over the lattice.

    Returns {coord: distance} for all closed cells. Stops early once goal is
    popped or once a popped distance exceeds radius.
    """
    q_s = env.normalize(q_s)
    if not env.is_free(q_s):
        raise InvalidQueryError(f"{q_s} is out of bounds or an obstacle")
    goal = env.normalize(goal) if goal is not None else None
    dist = {q_s: 0.0}
    done = {}
    heap = [(0.0, q_s)]
    while heap:
        g, q = heapq.heappop(heap)
        if q in done or g != dist[q]:
            continue
        if radius is not None and g > radius:
            break
        done[q] = g
        if q == goal:
            break
        for nq, cost in env.neighbors(q):
            ng = g + cost
            if ng < dist.get(nq, _INF):
                dist[nq] = ng
                heapq.heappush(heap, (ng, nq))
    return done


def plain_distance(env, q_s, q_g):
    dist = plain_dijkstra(env, q_s, goal=q_g)
    q_g = env.normalize(q_g)
    if q_g not in dist:
        raise UnreachableError(f"{q_g} unreachable from {q_s}")
    return dist[q_g]


@dataclass(frozen=True)
class Ray:
    """Upward vertical half-line anchored at a representative obstacle cell."""

    anchor: tuple
    letter: str


@dataclass(frozen=True)
class RaySet:
    rays: tuple

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(self.rays))
        columns = [ray.anchor[0] for ray in self.rays]
        if len(set(columns)) != len(columns):
            raise InvalidQueryError(
                "rays must sit in distinct columns so they cannot intersect")

    def by_column(self):
        return {ray.anchor[0]: ray for ray in self.rays}


def _crossing(q1, q2, by_column):
    """Signed ray letter crossed by the lattice step q1 -> q2, or None.

    A ray anchored at (ax, ay) is crossed by steps spanning columns ax and
    ax+1 above the anchor; left-to-right crossings are positive.
    """
    (x1, y1), (x2, y2) = q1, q2
    if x1 == x2:
        return None
    ray = by_column.get(min(x1, x2))
    if ray is None or (y1 + y2) / 2.0 <= ray.anchor[1]:
        return None
    return (ray.letter, 1 if x2 > x1 else -1)


def _append_reduced(word, letter):
    if word and word[-1][0] == letter[0] and word[-1][1] == -letter[1]:
        return word[:-1]
    return word + (letter,)


def h_signature(path, rays):
    """Freely reduced word of signed ray crossings along a 2D path."""
    by_column = rays.by_column()
    anchors = {ray.anchor for ray in rays.rays}
    word = ()
    for q in path:
        if tuple(q) in anchors:
            raise DegenerateCrossingError(f"path touches ray anchor {tuple(q)}")
    for q1, q2 in zip(path, path[1:]):
        letter = _crossing(tuple(q1), tuple(q2), by_column)
        if letter is not None:
            word = _append_reduced(word, letter)
    return word


def h_augmented_dijkstra(env, q_s, q_g, rays, k, budget=1_000_000):
    """Dijkstra over (coordinate, word) states: the homotopy-class oracle.

    Returns up to k (word, length) pairs for q_g in nondecreasing length
    order; fewer if the expansion budget runs out first.
    """
    if env.topology != PLANAR2D:
        raise InvalidQueryError("h-augmented search requires a planar 2D grid")
    q_s = env.normalize(q_s)
    q_g = env.normalize(q_g)
    by_column = rays.by_column()
    start = (q_s, ())
    dist = {start: 0.0}
    closed = set()
    heap = [(0.0, 0, start)]
    seq = 1
    found = []
    found_words = set()
    expansions = 0
    while heap and len(found) < k and expansions < budget:
        g, _, state = heapq.heappop(heap)
        if state in closed or g != dist[state]:
            continue
        closed.add(state)
        expansions += 1
        q, word = state
        if q == q_g and word not in found_words:
            found_words.add(word)
            found.append((word, g))
            if len(found) >= k:
                break
        for nq, cost in env.neighbors(q):
            letter = _crossing(q, nq, by_column)
            nword = _append_reduced(word, letter) if letter else word
            nstate = (nq, nword)
            ng = g + cost
            if ng < dist.get(nstate, _INF):
                dist[nstate] = ng
                heapq.heappush(heap, (ng, seq, nstate))
                seq += 1
    return found


def cylinder_unrolled_klengths(env, q_s, q_g, k):
    """k smallest distinct winding-class lengths via the universal cover.

    Unrolls the cylinder into 2k+1 planar copies and runs plain Dijkstra from
    the center copy of q_s to every copy of q_g. Exact in the lattice metric.
    """
    if env.topology != CYLINDER2D:
        raise InvalidQueryError("unrolling requires cylinder topology")
    q_s = env.normalize(q_s)
    q_g = env.normalize(q_g)
    width, height = env.dims
    copies = 2 * k + 1
    strip = Environment(
        (width * copies, height),
        PLANAR2D,
        np.tile(env.obstacles, (copies, 1)),
        np.tile(env.rho, (copies, 1)),
        env.cm,
    )
    source = (q_s[0] + k * width, q_s[1])
    dist = plain_dijkstra(strip, source)
    lengths = {
        dist[(q_g[0] + i * width, q_g[1])]
        for i in range(copies)
        if (q_g[0] + i * width, q_g[1]) in dist
    }
    return sorted(lengths)[:k]


def brute_force_k_geodesics(env, q_s, q_g, k, *, classify=None,
                            max_length=None, budget=2_000_000,
                            step_filter=None):
    """Per-class shortest lengths by exhaustive simple-path enumeration.

    classify maps a coordinate list to a hashable class label (default: a
    single class, i.e. the plain shortest length). max_length bounds the
    enumeration (default: 3x the shortest distance). step_filter(q1, q2) may
    restrict the moves considered, for fixtures where the geodesic shape is
    known a priori. Raises OracleTimeoutError past the visit budget.
    """
    q_s = env.normalize(q_s)
    q_g = env.normalize(q_g)
    if classify is None:
        classify = lambda path: 0
    if max_length is None:
        max_length = 3.0 * plain_distance(env, q_s, q_g)
    best = {}
    visits = [0]
    path = [q_s]
    visited = {q_s}

    def walk(q, cost):
        visits[0] += 1
        if visits[0] > budget:
            raise OracleTimeoutError(
                f"enumeration exceeded {budget} visits")
        if cost + env.heuristic(q, q_g) > max_length + 1e-9:
            return
        if q == q_g:
            label = classify(list(path))
            if cost < best.get(label, _INF):
                best[label] = cost
            return
        for nq, step in env.neighbors(q):
            if nq in visited:
                continue
            if step_filter is not None and not step_filter(q, nq):
                continue
            visited.add(nq)
            path.append(nq)
            walk(nq, cost + step)
            path.pop()
            visited.remove(nq)

    walk(q_s, 0.0)
    return sorted(best.values())[:k]
