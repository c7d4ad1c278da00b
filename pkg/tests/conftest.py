"""Shared fixture builders for the test suite."""

import numpy as np
import pytest

from nagplan import make_environment


def flat_env(w, h, topology="planar2d", cm=0.0):
    """Obstacle-free uniform-cost 2D grid."""
    return make_environment((w, h), topology, cm=cm)


def block_env(w, h, rects, topology="planar2d", cm=0.0, rho=None):
    """2D grid with rectangular obstacles given as (x0, x1, y0, y1) slices."""
    obst = np.zeros((w, h), dtype=bool)
    for x0, x1, y0, y1 in rects:
        obst[x0:x1, y0:y1] = True
    return make_environment((w, h), topology, obstacles=obst, rho=rho, cm=cm)


def hill_env(w=40, h=31, sigma=2.0, cm=1.0):
    """2D grid with a centered Gaussian cost hill and no obstacles."""
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
    x = np.arange(w)[:, None]
    y = np.arange(h)[None, :]
    rho = np.exp(-(((x - cx) ** 2) + ((y - cy) ** 2)) / (2 * sigma**2))
    return make_environment((w, h), "planar2d", rho=rho, cm=cm)


def corridor_env(width, t):
    """Two 1-cell corridors joined by connector columns at both ends.

    The corridors sit at y=0 and y=t+1 with a solid wall of thickness t
    between them; the connector columns are x=0 and x=width-1.
    """
    h = t + 2
    obst = np.ones((width, h), dtype=bool)
    obst[:, 0] = False
    obst[:, h - 1] = False
    obst[0, :] = False
    obst[width - 1, :] = False
    return make_environment((width, h), "planar2d", obstacles=obst)


def two_obstacle_env(x0, xw, t, gap, margin):
    """Two fat stacked rectangles with corridors between and around them.

    Returns (env, start, goal, ray_anchors) with the start/goal on the
    middle corridor's row and one ray anchor inside each rectangle.
    """
    h = 2 * margin + 2 * t + gap
    w = 2 * x0 + xw
    obst = np.zeros((w, h), dtype=bool)
    obst[x0:x0 + xw, margin:margin + t] = True
    obst[x0:x0 + xw, margin + t + gap:margin + 2 * t + gap] = True
    env = make_environment((w, h), "planar2d", obstacles=obst)
    ymid = margin + t + gap // 2
    anchors = ((x0 + xw // 2, margin + t // 2),
               (x0 + xw // 2 + 2, margin + t + gap + t // 2))
    return env, (2, ymid), (w - 3, ymid), anchors


def prism_env(sigma, cm, w=20, hy=10, hz=20):
    """3D grid with a Gaussian cost ridge running along the y axis."""
    cx, cz = (w - 1) / 2.0, (hz - 1) / 2.0
    x = np.arange(w)[:, None, None]
    z = np.arange(hz)[None, None, :]
    rho = np.exp(-(((x - cx) ** 2) + ((z - cz) ** 2)) / (2 * sigma**2))
    rho = np.broadcast_to(rho, (w, hy, hz)).copy()
    return make_environment((w, hy, hz), "grid3d", rho=rho, cm=cm)


def two_room_env(w=24, hy=16, hz=3):
    """3D building with two rooms, two windows, and an interior door.

    The building occupies x in [4, 20], y in [4, 12] at every z layer; the
    interior wall at x=12 has a door at (12, 10); the bottom wall has
    windows at (7, 4) and (17, 4).
    """
    obst = np.zeros((w, hy, hz), dtype=bool)
    for z in range(hz):
        obst[4:21, 4, z] = True
        obst[4:21, 12, z] = True
        obst[4, 4:13, z] = True
        obst[20, 4:13, z] = True
        obst[12, 4:13, z] = True
        obst[7, 4, z] = False
        obst[17, 4, z] = False
        obst[12, 10, z] = False
    return make_environment((w, hy, hz), "grid3d", obstacles=obst)


def path_length(env, coords):
    """Re-sum a coordinate walk with the environment's own edge costs."""
    return sum(env.edge_cost(a, b) for a, b in zip(coords, coords[1:]))


def pgm_bytes(env, maxval=255):
    """Serialize a 2D environment back to ASCII PGM (P2) bytes."""
    w, h = env.dims
    rows = []
    for y in range(h):
        row = []
        for x in range(w):
            if env.obstacles[x, y]:
                row.append("0")
            else:
                row.append(str(int(round(maxval * (1.0 - env.rho[x, y])))))
        rows.append(" ".join(row))
    return (f"P2\n{w} {h}\n{maxval}\n" + "\n".join(rows) + "\n").encode()


@pytest.fixture
def tmp_out(tmp_path):
    out = tmp_path / "out"
    out.mkdir()
    return out
