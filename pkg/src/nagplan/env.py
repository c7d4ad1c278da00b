"""Discrete lattice configuration spaces with per-cell cost and obstacles.

Cells are indexed ``(x, y)`` in 2D and ``(x, y, z)`` in 3D. Connectivity is
8-connected in 2D and 26-connected in 3D. The ``cylinder2d`` topology
identifies the left and right edges of the grid (x wraps modulo width).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidQueryError, ParseError

PLANAR2D = "planar2d"
CYLINDER2D = "cylinder2d"
GRID3D = "grid3d"
TOPOLOGIES = (PLANAR2D, CYLINDER2D, GRID3D)

_OFFSETS_2D = tuple(
    (dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0)
)
_OFFSETS_3D = tuple(
    (dx, dy, dz)
    for dx in (-1, 0, 1)
    for dy in (-1, 0, 1)
    for dz in (-1, 0, 1)
    if (dx, dy, dz) != (0, 0, 0)
)
_STEP_LENGTH = {1: 1.0, 2: math.sqrt(2.0), 3: math.sqrt(3.0)}


@dataclass(frozen=True)
class Environment:
    """Immutable lattice environment.

    ``rho`` is the per-cell cost color in [0, 1] (clamped on construction) and
    ``cm`` is the dimensionless cost multiplier: a step between cells costs
    ``d * (1 + cm * (rho1 + rho2) / 2)`` where ``d`` is the Euclidean step
    length (1, sqrt(2) or sqrt(3)).
    """

    dims: tuple
    topology: str
    obstacles: np.ndarray
    rho: np.ndarray
    cm: float = 0.0
    _neighbor_cache: dict = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self):
        if self.topology not in TOPOLOGIES:
            raise InvalidQueryError(f"unknown topology {self.topology!r}")
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != self.ndim or any(d <= 0 for d in dims):
            raise InvalidQueryError(
                f"dims {self.dims!r} invalid for topology {self.topology}"
            )
        if self.cm < 0:
            raise InvalidQueryError("cost multiplier must be >= 0")
        obstacles = np.ascontiguousarray(self.obstacles, dtype=bool)
        rho = np.clip(np.asarray(self.rho, dtype=float), 0.0, 1.0)
        if obstacles.shape != dims or rho.shape != dims:
            raise InvalidQueryError("obstacles/rho shape does not match dims")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "obstacles", obstacles)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "cm", float(self.cm))

    @property
    def ndim(self):
        return 3 if self.topology == GRID3D else 2

    def normalize(self, q):
        """Coerce q to a canonical in-range tuple (x wraps on the cylinder)."""
        q = tuple(int(c) for c in q)
        if len(q) != self.ndim:
            raise InvalidQueryError(f"coordinate {q} has wrong dimension")
        if self.topology == CYLINDER2D:
            q = (q[0] % self.dims[0], q[1])
        return q

    def in_bounds(self, q):
        return all(0 <= c < d for c, d in zip(q, self.dims))

    def is_free(self, q):
        """True if q is in bounds and not an obstacle. q must be normalized."""
        return self.in_bounds(q) and not self.obstacles[q]

    def free_count(self):
        return int(self.obstacles.size - np.count_nonzero(self.obstacles))

    def neighbors(self, q):
        """All adjacent free coordinates of q with their edge costs."""
        q = self.normalize(q)
        if not self.is_free(q):
            raise InvalidQueryError(f"{q} is out of bounds or an obstacle")
        cached = self._neighbor_cache.get(q)
        if cached is None:
            cached = self._compute_neighbors(q)
            self._neighbor_cache[q] = cached
        return list(cached)

    def _compute_neighbors(self, q):
        offsets = _OFFSETS_3D if self.ndim == 3 else _OFFSETS_2D
        wrap = self.topology == CYLINDER2D
        width = self.dims[0]
        rho_q = float(self.rho[q])
        cm = self.cm
        out = []
        seen = set()
        for off in offsets:
            nq = tuple(a + b for a, b in zip(q, off))
            if wrap:
                nq = (nq[0] % width,) + nq[1:]
            if nq in seen or not self.in_bounds(nq) or self.obstacles[nq]:
                continue
            seen.add(nq)
            d = _STEP_LENGTH[sum(1 for c in off if c)]
            cost = d * (1.0 + cm * (rho_q + float(self.rho[nq])) / 2.0)
            out.append((nq, cost))
        return tuple(out)

    def edge_cost(self, q1, q2):
        """Cost of the lattice step q1 -> q2 (must be adjacent free cells)."""
        q1 = self.normalize(q1)
        q2 = self.normalize(q2)
        for q in (q1, q2):
            if not self.is_free(q):
                raise InvalidQueryError(f"{q} is out of bounds or an obstacle")
        deltas = [abs(a - b) for a, b in zip(q1, q2)]
        if self.topology == CYLINDER2D:
            deltas[0] = min(deltas[0], self.dims[0] - deltas[0])
        if any(d > 1 for d in deltas) or not any(deltas):
            raise InvalidQueryError(f"{q1} and {q2} are not adjacent")
        d = _STEP_LENGTH[sum(1 for c in deltas if c)]
        avg = (float(self.rho[q1]) + float(self.rho[q2])) / 2.0
        return d * (1.0 + self.cm * avg)

    def heuristic(self, q1, q2):
        """Euclidean lower bound on path cost (wrap-aware on the cylinder)."""
        q1 = self.normalize(q1)
        q2 = self.normalize(q2)
        deltas = [abs(a - b) for a, b in zip(q1, q2)]
        if self.topology == CYLINDER2D:
            deltas[0] = min(deltas[0], self.dims[0] - deltas[0])
        return math.sqrt(sum(d * d for d in deltas))


def make_environment(dims, topology=PLANAR2D, obstacles=None, rho=None, cm=0.0):
    """Convenience constructor; missing masks default to free/flat space."""
    dims = tuple(int(d) for d in dims)
    if obstacles is None:
        obstacles = np.zeros(dims, dtype=bool)
    if rho is None:
        rho = np.zeros(dims, dtype=float)
    return Environment(dims, topology, obstacles, rho, cm)


def load_environment(source, format, *, topology=None, cm=0.0, obstacle_threshold=1):
    """Load an environment from a byte stream or bytes.

    Formats: ``pgm-2d`` (ASCII P2; gray maps to rho = 1 - gray/maxval, cells
    with gray below ``obstacle_threshold`` become obstacles) and
    ``voxel-json-3d`` (dims/solid/rho arrays, flat row-major).
    """
    data = source.read() if hasattr(source, "read") else bytes(source)
    if format == "pgm-2d":
        return _load_pgm(data, topology or PLANAR2D, cm, obstacle_threshold)
    if format == "voxel-json-3d":
        if topology not in (None, GRID3D):
            raise ParseError(f"voxel input is always {GRID3D}, got {topology!r}")
        return _load_voxel(data, cm)
    raise ParseError(f"unknown environment format {format!r}")


def _pgm_tokens(data):
    i, n = 0, len(data)
    while i < n:
        c = data[i]
        if c in b" \t\r\n":
            i += 1
            continue
        if c == ord("#"):
            while i < n and data[i] not in b"\r\n":
                i += 1
            continue
        j = i
        while j < n and data[j] not in b" \t\r\n#":
            j += 1
        yield data[i:j], i
        i = j


def _load_pgm(data, topology, cm, obstacle_threshold):
    if topology not in (PLANAR2D, CYLINDER2D):
        raise ParseError(f"PGM input is 2D, got topology {topology!r}")
    tokens = _pgm_tokens(data)

    def next_token(what):
        try:
            return next(tokens)
        except StopIteration:
            raise ParseError(f"unexpected end of PGM while reading {what}",
                             offset=len(data)) from None

    def next_int(what, lo, hi=None):
        tok, off = next_token(what)
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"expected integer for {what}, got {tok!r}",
                             offset=off) from None
        if value < lo or (hi is not None and value > hi):
            raise ParseError(f"{what} {value} out of range", offset=off)
        return value

    magic, off = next_token("magic number")
    if magic != b"P2":
        raise ParseError(f"expected PGM magic 'P2', got {magic!r}", offset=off)
    width = next_int("width", 1)
    height = next_int("height", 1)
    maxval = next_int("maxval", 1)
    gray = np.empty((width, height), dtype=float)
    for y in range(height):
        for x in range(width):
            gray[x, y] = next_int(f"pixel ({x},{y})", 0, maxval)
    rho = 1.0 - gray / maxval
    obstacles = gray < obstacle_threshold
    return Environment((width, height), topology, obstacles, rho, cm)


def _load_voxel(data, cm):
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"voxel file is not UTF-8: {exc}", offset=exc.start) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", offset=exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("voxel JSON must be an object")
    dims = doc.get("dims")
    if (not isinstance(dims, list) or len(dims) != 3
            or any(not isinstance(d, int) or d <= 0 for d in dims)):
        raise ParseError(f"dims must be three positive integers, got {dims!r}")
    nx, ny, nz = dims
    count = nx * ny * nz
    solid = doc.get("solid")
    if not isinstance(solid, list) or len(solid) != count:
        raise ParseError(f"solid must be a flat list of {count} values")
    if any(v not in (0, 1) for v in solid):
        raise ParseError("solid values must be 0 or 1")
    rho = doc.get("rho", [0.0] * count)
    if not isinstance(rho, list) or len(rho) != count:
        raise ParseError(f"rho must be a flat list of {count} values")
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(rho_arr < 0.0) or np.any(rho_arr > 1.0):
        raise ParseError("rho values must lie in [0, 1]")
    obstacles = np.asarray(solid, dtype=bool).reshape((nx, ny, nz))
    return Environment((nx, ny, nz), GRID3D, obstacles,
                       rho_arr.reshape((nx, ny, nz)), cm)
