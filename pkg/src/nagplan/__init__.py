"""Multi-path planning on neighborhood-augmented graphs.

Computes topo-geometrically distinct locally-optimal paths on 2D/3D lattice
environments (planar, cylindrical, or volumetric), detects cut points in
low-curvature domains, and plans length-constrained paths for tethered
vehicles.
"""

from .cutpoint import (
    Candidate,
    CutPointParams,
    CutPointRegion,
    cut_point_check,
    get_path_point,
    intersection_ratio,
)
from .env import (
    CYLINDER2D,
    GRID3D,
    PLANAR2D,
    Environment,
    load_environment,
    make_environment,
)
from .errors import (
    ConfigError,
    DegenerateCrossingError,
    InternalConsistencyError,
    InvalidQueryError,
    NagplanError,
    OracleTimeoutError,
    ParseError,
    RenderError,
    UnreachableError,
)
from .nag import (
    BudgetStop,
    GoalStop,
    NagGraph,
    NagVertex,
    RadiusStop,
    SearchResult,
    equivalent,
    reconstruct_path,
    search_nag,
    stop_at_goal,
)
from .pns import PnsParams, compute_pns, rollback
from .render import render_svg
from .tether import (
    LcsResult,
    MissionResult,
    TetherSpec,
    explore_workspace,
    lcs,
    plan_mission,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetStop",
    "Candidate",
    "ConfigError",
    "CutPointParams",
    "CutPointRegion",
    "CYLINDER2D",
    "DegenerateCrossingError",
    "Environment",
    "GoalStop",
    "GRID3D",
    "InternalConsistencyError",
    "InvalidQueryError",
    "LcsResult",
    "MissionResult",
    "NagGraph",
    "NagplanError",
    "NagVertex",
    "OracleTimeoutError",
    "ParseError",
    "PLANAR2D",
    "PnsParams",
    "RadiusStop",
    "RenderError",
    "SearchResult",
    "TetherSpec",
    "UnreachableError",
    "compute_pns",
    "cut_point_check",
    "equivalent",
    "explore_workspace",
    "get_path_point",
    "intersection_ratio",
    "lcs",
    "load_environment",
    "make_environment",
    "plan_mission",
    "reconstruct_path",
    "render_svg",
    "rollback",
    "search_nag",
    "stop_at_goal",
]
