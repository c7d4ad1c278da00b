"""Command-line front end.

Usage: ``nagplan <mode> --config <file.json> --out <dir>`` with mode one of
plan, explore, lcs, mission, oracle. Everything structured lives in the JSON
config; results go to ``<dir>/result.json`` (deterministic for a fixed
config) plus an optional ``render.svg`` and a ``meta.json`` holding the
elapsed wall time (kept out of result.json so reruns are byte-identical).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import oracles
from .cutpoint import CutPointParams
from .env import GRID3D, load_environment
from .errors import (
    ConfigError,
    InvalidQueryError,
    ParseError,
    UnreachableError,
)
from .nag import BudgetStop, GoalStop, reconstruct_path, search_nag
from .pns import PnsParams
from .render import render_svg
from .tether import TetherSpec, explore_workspace, lcs, plan_mission

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARTIAL = 3
EXIT_UNREACHABLE = 4

MODES = ("plan", "explore", "lcs", "mission", "oracle")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="nagplan",
        description="Multi-path planning on neighborhood-augmented graphs.",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    try:
        config = _load_config(Path(args.config))
        env = _build_env(config, Path(args.config).parent)
        handler = _HANDLERS[args.mode]
        result, exit_code, render_paths, regions = handler(config, env)
    except (ConfigError, ParseError, InvalidQueryError) as exc:
        print(f"nagplan: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnreachableError as exc:
        print(f"nagplan: unreachable: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE

    result["schema_version"] = SCHEMA_VERSION
    result["mode"] = args.mode
    result["config"] = config
    (out_dir / "result.json").write_text(
        json.dumps(result, indent=2, sort_keys=True) + "\n")
    (out_dir / "meta.json").write_text(json.dumps(
        {"elapsed_seconds": time.perf_counter() - started}) + "\n")
    if config.get("render"):
        if env.ndim == 2:
            (out_dir / "render.svg").write_bytes(
                render_svg(env, render_paths, regions))
        else:
            segments = [
                {"coords": [list(q) for q in coords], "length": length}
                for coords, length in render_paths
            ]
            (out_dir / "render.json").write_text(json.dumps(
                {"dims": list(env.dims), "polylines": segments},
                indent=2, sort_keys=True) + "\n")
    return exit_code


def _load_config(path):
    try:
        config = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    return config


def _require(config, key):
    if key not in config:
        raise ConfigError(f"config is missing required field {key!r}")
    return config[key]


def _coord(value, what):
    if (not isinstance(value, list) or len(value) not in (2, 3)
            or any(not isinstance(c, int) for c in value)):
        raise ConfigError(f"{what} must be a 2- or 3-element integer list")
    return tuple(value)


def _build_env(config, base_dir):
    env_cfg = _require(config, "env")
    if not isinstance(env_cfg, dict):
        raise ConfigError("env must be an object")
    fmt = _require(env_cfg, "format")
    path = Path(_require(env_cfg, "path"))
    if not path.is_absolute():
        path = base_dir / path
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read environment {path}: {exc}") from None
    return load_environment(
        data,
        fmt,
        topology=env_cfg.get("topology", GRID3D if fmt == "voxel-json-3d" else None),
        cm=env_cfg.get("cm", 0.0),
        obstacle_threshold=env_cfg.get("obstacle_threshold", 1),
    )


def _pns_params(config, env):
    cfg = config.get("pns")
    if cfg is None:
        return PnsParams.defaults_for(env)
    if not isinstance(cfg, dict):
        raise ConfigError("pns must be an object")
    defaults = PnsParams.defaults_for(env)
    return PnsParams(
        r_n=cfg.get("r_n", defaults.r_n),
        omega=cfg.get("omega", defaults.omega),
        r_b=cfg.get("r_b", defaults.r_b),
        d_min=cfg.get("d_min", defaults.d_min),
    )


def _cut_params(config, env):
    cfg = config.get("cut_points", "disabled")
    if cfg == "disabled" or cfg is None:
        return None
    if cfg == "default":
        return CutPointParams.defaults_for(env)
    if not isinstance(cfg, dict):
        raise ConfigError('cut_points must be "disabled", "default", or an object')
    defaults = CutPointParams.defaults_for(env)
    return CutPointParams(
        eps_i=cfg.get("eps_i", defaults.eps_i),
        eps_g=cfg.get("eps_g", defaults.eps_g),
        r_l=cfg.get("r_l", defaults.r_l),
        eps_lower=cfg.get("eps_lower", defaults.eps_lower),
        eps_upper=cfg.get("eps_upper", defaults.eps_upper),
        r_mp=cfg.get("r_mp", defaults.r_mp),
    )


def _region_payload(graph):
    return [
        {"seed_coord": list(graph.vertices[r.seed].q),
         "coords": sorted(list(c) for c in r.coords)}
        for r in graph.regions
    ]


def _run_plan(config, env):
    q_s = _coord(_require(config, "start"), "start")
    q_g = _coord(_require(config, "goal"), "goal")
    n_p = config.get("n_p", 1)
    stops = [GoalStop(q_g, n_p)]
    if "budget" in config:
        stops.append(BudgetStop(config["budget"]))
    result = search_nag(
        env, q_s, stops,
        params=_pns_params(config, env),
        algo=config.get("algo", "dijkstra"),
        cut_params=_cut_params(config, env),
    )
    graph = result.graph
    paths = []
    render_paths = []
    for vid in result.goal_ids:
        coords, length = reconstruct_path(graph, vid)
        valid = all(q not in graph.blocked for q in coords)
        paths.append({
            "coords": [list(q) for q in coords],
            "length": length,
            "valid": valid,
        })
        render_paths.append((coords, length))
    payload = {
        "paths": paths,
        "goal_vertex_count": len(result.goal_ids),
        "expansions": graph.expansions,
        "stop_reason": result.stop_reason,
        "cut_regions": _region_payload(graph),
    }
    if not paths:
        code = EXIT_UNREACHABLE
    elif len(paths) < n_p:
        code = EXIT_PARTIAL
    else:
        code = EXIT_OK
    regions = [r.coords for r in graph.regions]
    return payload, code, render_paths, regions


def _workspace(config, env):
    base = _coord(_require(config, "base"), "base")
    length = _require(config, "tether_length")
    spec = TetherSpec(base=base, length=float(length))
    return explore_workspace(
        env, spec,
        params=_pns_params(config, env),
        cut_params=_cut_params(config, env),
    )


def _run_explore(config, env):
    workspace = _workspace(config, env)
    per_coord = {}
    for v in workspace.vertices:
        per_coord[v.q] = per_coord.get(v.q, 0) + 1
    payload = {
        "vertex_count": len(workspace.vertices),
        "coord_count": len(per_coord),
        "multi_class_coords": sorted(
            list(q) for q, n in per_coord.items() if n > 1),
        "expansions": workspace.expansions,
        "vertices": [
            {"id": v.id, "coord": list(v.q), "g": v.g,
             "came_from": v.came_from}
            for v in workspace.vertices
        ],
        "edges": sorted(
            [a, b, workspace.adjacency[a][b]]
            for a in range(len(workspace.vertices))
            for b in workspace.adjacency[a]
            if a < b
        ),
    }
    return payload, EXIT_OK, [], [r.coords for r in workspace.regions]


def _start_vertex(workspace, config):
    start = _coord(_require(config, "start"), "start")
    rank = config.get("start_class_rank", 0)
    ids = workspace.vertices_at(start)
    if not ids:
        raise UnreachableError(
            f"start {start} has no vertex in the explored workspace")
    # Deterministic class selection: sort by (g, id), pick by rank.
    ids.sort(key=lambda i: (workspace.vertices[i].g, i))
    if not 0 <= rank < len(ids):
        raise ConfigError(
            f"start_class_rank {rank} out of range ({len(ids)} classes)")
    return ids[rank]


def _lcs_payload(result):
    return {
        "robot_path": [list(q) for q in result.robot_path],
        "length": result.length,
        "tether_configs": [
            [list(q) for q in cfg] for cfg in result.tether_configs],
        "valid": result.valid,
    }


def _run_lcs(config, env):
    workspace = _workspace(config, env)
    start_vertex = _start_vertex(workspace, config)
    q_g = _coord(_require(config, "goal"), "goal")
    result = lcs(workspace, start_vertex, q_g)
    payload = {"lcs": _lcs_payload(result),
               "workspace_vertex_count": len(workspace.vertices)}
    render_paths = [(result.robot_path, result.length)]
    return payload, EXIT_OK, render_paths, [r.coords for r in workspace.regions]


def _run_mission(config, env):
    workspace = _workspace(config, env)
    start_vertex = _start_vertex(workspace, config)
    goals = _require(config, "goals")
    if not isinstance(goals, list) or not goals:
        raise ConfigError("goals must be a nonempty list of coordinates")
    goals = [_coord(g, "goal") for g in goals]
    mission = plan_mission(workspace, start_vertex, goals)
    payload = {
        "legs": [_lcs_payload(leg) for leg in mission.legs],
        "completed_legs": len(mission.legs),
        "error": mission.error,
    }
    code = EXIT_OK if mission.error is None else EXIT_UNREACHABLE
    render_paths = [(leg.robot_path, leg.length) for leg in mission.legs]
    return payload, code, render_paths, [r.coords for r in workspace.regions]


def _run_oracle(config, env):
    oracle_cfg = _require(config, "oracle")
    if not isinstance(oracle_cfg, dict):
        raise ConfigError("oracle must be an object")
    kind = _require(oracle_cfg, "type")
    if kind == "plain_dijkstra":
        q_s = _coord(_require(config, "start"), "start")
        q_g = _coord(_require(config, "goal"), "goal")
        payload = {"lengths": [oracles.plain_distance(env, q_s, q_g)]}
    elif kind == "cylinder_unrolled":
        q_s = _coord(_require(config, "start"), "start")
        q_g = _coord(_require(config, "goal"), "goal")
        k = oracle_cfg.get("k", 1)
        payload = {"lengths": oracles.cylinder_unrolled_klengths(env, q_s, q_g, k)}
    elif kind == "h_augmented":
        q_s = _coord(_require(config, "start"), "start")
        q_g = _coord(_require(config, "goal"), "goal")
        rays = oracle_cfg.get("rays")
        if not isinstance(rays, list) or not rays:
            raise ConfigError("h_augmented oracle needs a rays list")
        ray_set = oracles.RaySet(tuple(
            oracles.Ray(anchor=_coord(r["anchor"], "ray anchor"),
                        letter=str(r["letter"]))
            for r in rays
        ))
        k = oracle_cfg.get("k", 1)
        classes = oracles.h_augmented_dijkstra(
            env, q_s, q_g, ray_set, k,
            budget=oracle_cfg.get("budget", 1_000_000))
        payload = {
            "classes": [
                {"word": ["".join((letter, "+" if sign > 0 else "-"))
                          for letter, sign in word],
                 "length": length}
                for word, length in classes
            ],
            "lengths": [length for _word, length in classes],
        }
    else:
        raise ConfigError(f"unknown oracle type {kind!r}")
    return payload, EXIT_OK, [], []


_HANDLERS = {
    "plan": _run_plan,
    "explore": _run_explore,
    "lcs": _run_lcs,
    "mission": _run_mission,
    "oracle": _run_oracle,
}


if __name__ == "__main__":
    sys.exit(main())
