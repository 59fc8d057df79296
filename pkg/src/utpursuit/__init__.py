"""Pure-pursuit path tracking under Gaussian pose uncertainty.

The package simulates a kinematic bicycle following a line, circle or
waypoint road with two controllers: conventional pure pursuit acting on the
measured pose, and an unscented variant that steers a set of sigma poses and
combines their commands with the transform weights.
"""

from .errors import (
    CoincidentPoints,
    ConfigInvalid,
    DegenerateCenter,
    DegenerateScaling,
    NoForwardIntersection,
    NoIntersection,
    NonPositiveSpeed,
    PathOutOfReach,
    PerpendicularLine,
    RoadGeometryFault,
    TooFewWaypoints,
    UtPursuitError,
    VerticalRoad,
)
from .geometry import (
    Circle,
    Pose,
    StraightLine,
    circle_to_vehicle,
    global_to_vehicle,
    line_to_vehicle,
    normalize_angle,
    vehicle_to_global,
)
from .pursuit import (
    CrossTrack,
    PursuitConfig,
    cross_track_circle,
    cross_track_line,
    lookahead_distance,
    steering_angle,
    turning_radius,
)
from .roads import RoadModel, clamp_to_road, lateral_deviation
from .sim import (
    BatchStats,
    Controller,
    RunSummary,
    Scenario,
    TrajectoryRecord,
    run,
    run_batch,
    step_pp,
    step_utpp,
)
from .uncertainty import (
    Covariance3,
    SigmaPointSet,
    UtParams,
    compose_covariance,
    derive_ut_params,
    generate_sigma_points,
    weighted_steering,
)
from .vehicle import NoiseModel, VehicleState, advance_pose, sample_measured_pose
from .waypoints import (
    KdTree,
    WaypointPath,
    build_index,
    load_waypoints,
    menger_curvature,
    reduce_to_local_road,
    select_lookahead_waypoint,
)

__version__ = "0.1.0"

__all__ = [
    "BatchStats",
    "Circle",
    "CoincidentPoints",
    "ConfigInvalid",
    "Controller",
    "Covariance3",
    "CrossTrack",
    "DegenerateCenter",
    "DegenerateScaling",
    "KdTree",
    "NoForwardIntersection",
    "NoIntersection",
    "NoiseModel",
    "NonPositiveSpeed",
    "PathOutOfReach",
    "PerpendicularLine",
    "Pose",
    "PursuitConfig",
    "RoadGeometryFault",
    "RoadModel",
    "RunSummary",
    "Scenario",
    "SigmaPointSet",
    "StraightLine",
    "TooFewWaypoints",
    "TrajectoryRecord",
    "UtParams",
    "UtPursuitError",
    "VehicleState",
    "VerticalRoad",
    "WaypointPath",
    "advance_pose",
    "build_index",
    "circle_to_vehicle",
    "clamp_to_road",
    "compose_covariance",
    "cross_track_circle",
    "cross_track_line",
    "derive_ut_params",
    "generate_sigma_points",
    "global_to_vehicle",
    "lateral_deviation",
    "line_to_vehicle",
    "load_waypoints",
    "lookahead_distance",
    "menger_curvature",
    "normalize_angle",
    "reduce_to_local_road",
    "run",
    "run_batch",
    "sample_measured_pose",
    "select_lookahead_waypoint",
    "steering_angle",
    "step_pp",
    "step_utpp",
    "turning_radius",
    "vehicle_to_global",
    "weighted_steering",
]
