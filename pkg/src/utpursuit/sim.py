"""Closed-loop tracking simulation for both controllers.

Each step runs the controller on the latest measured pose, advances the true
pose with the commanded steering, then samples the next measured pose.  A
recoverable geometry fault (road out of reach, perpendicular line, missed
circle) never aborts a run: the previous steering command is held and the
fault is tagged on that step's record.
"""

from __future__ import annotations

import logging
import math
import statistics
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import ConfigInvalid, RoadGeometryFault
from .geometry import Circle, Pose, StraightLine, circle_to_vehicle, line_to_vehicle
from .pursuit import (
    CrossTrack,
    PursuitConfig,
    cross_track_circle,
    cross_track_line,
    lookahead_distance,
    steering_angle,
)
from .roads import RoadModel, lateral_deviation
from .uncertainty import UtParams, derive_ut_params, generate_sigma_points, weighted_steering
from .vehicle import NoiseModel, VehicleState, advance_pose, sample_measured_pose
from .waypoints import DEFAULT_STRAIGHT_EPS, WaypointPath, reduce_to_local_road

logger = logging.getLogger(__name__)

# Config validation rejects global road lines steeper than this (89.9 deg);
# the slope-intercept form degrades near vertical.
MAX_ROAD_SLOPE = math.tan(math.radians(89.9))

# A run counts as converged once the true pose stays within this lateral
# band around the road for the full hold window.
CONVERGENCE_THRESHOLD = 0.05
CONVERGENCE_HOLD = 2.0


class Controller(Enum):
    PP = "pp"
    UTPP = "utpp"


def _default_ut() -> UtParams:
    return derive_ut_params(3, 0.001, 0.0)


@dataclass(frozen=True)
class Scenario:
    """Everything one simulation run depends on."""

    road: RoadModel
    start_pose: Pose
    speed: float
    wheelbase: float
    lookahead_gain: float
    dt: float = 0.1
    steps: int = 300
    controller: Controller = Controller.PP
    noise: NoiseModel | None = None
    ut: UtParams = field(default_factory=_default_ut)
    steering_limit: float = math.radians(35.0)
    paper_literal: bool = False
    straight_eps: float = DEFAULT_STRAIGHT_EPS

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not (math.isfinite(self.speed) and self.speed > 0.0):
            raise ConfigInvalid(f"speed must be positive, got {self.speed}")
        if not (math.isfinite(self.wheelbase) and self.wheelbase > 0.0):
            raise ConfigInvalid(f"wheelbase must be positive, got {self.wheelbase}")
        if not (math.isfinite(self.lookahead_gain) and self.lookahead_gain > 0.0):
            raise ConfigInvalid(f"lookahead_gain must be positive, got {self.lookahead_gain}")
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ConfigInvalid(f"dt must be positive, got {self.dt}")
        if self.steps < 1:
            raise ConfigInvalid(f"steps must be >= 1, got {self.steps}")
        if not (0.0 < self.steering_limit < math.pi / 2.0):
            raise ConfigInvalid(f"steering_limit must lie in (0, pi/2), got {self.steering_limit}")
        if not (math.isfinite(self.straight_eps) and self.straight_eps > 0.0):
            raise ConfigInvalid(f"straight_eps must be positive, got {self.straight_eps}")
        if isinstance(self.road, StraightLine) and abs(self.road.slope) >= MAX_ROAD_SLOPE:
            raise ConfigInvalid(
                f"road slope {self.road.slope} too steep; |slope| must stay below {MAX_ROAD_SLOPE:.1f}"
            )
        if self.controller is Controller.UTPP and self.noise is None:
            raise ConfigInvalid("utpp needs a noise model (its covariance may be all zero)")
        if self.paper_literal and self.noise is None:
            raise ConfigInvalid("paper_literal mode needs a noise model")
        if self.ut.dim != 3:
            raise ConfigInvalid(f"ut dim must be 3 for pose uncertainty, got {self.ut.dim}")

    def pursuit_config(self) -> PursuitConfig:
        return PursuitConfig(
            wheelbase=self.wheelbase,
            lookahead_gain=self.lookahead_gain,
            steering_limit=self.steering_limit,
        )


@dataclass(frozen=True, slots=True)
class TrajectoryRecord:
    """One step of a run: the poses the controller saw and what it commanded.

    y_e is None on faulted steps.  lateral_error is the true pose's
    deviation from the road (signed for lines and circles).
    """

    step: int
    time: float
    true_pose: Pose
    measured_pose: Pose
    y_e: float | None
    delta: float
    lateral_error: float
    fault: str | None


@dataclass(frozen=True, slots=True)
class RunSummary:
    convergence_time: float | None
    mean_abs_lateral_error: float
    max_abs_delta: float
    fault_count: int
    seed: int


@dataclass(frozen=True, slots=True)
class BatchStats:
    """Aggregates over one controller's batch; non-converged runs enter the
    median as +inf so it stays meaningful while any majority converges."""

    controller: str
    n_runs: int
    n_converged: int
    median_convergence_time: float
    mean_convergence_time: float | None
    mean_abs_lateral_error: float
    mean_fault_count: float


def _cross_track_for_pose(pose: Pose, scenario: Scenario, d_l: float) -> CrossTrack:
    road = scenario.road
    if isinstance(road, WaypointPath):
        road = reduce_to_local_road(road, road.spatial_index(), pose, d_l, scenario.straight_eps)
    if isinstance(road, StraightLine):
        return cross_track_line(line_to_vehicle(road, pose), d_l)
    return cross_track_circle(circle_to_vehicle(road, pose), d_l)


def step_pp(state: VehicleState, scenario: Scenario) -> tuple[float, CrossTrack]:
    """One conventional pure-pursuit decision from the measured pose."""
    cfg = scenario.pursuit_config()
    d_l = lookahead_distance(state.speed, cfg)
    cross = _cross_track_for_pose(state.measured_pose, scenario, d_l)
    return steering_angle(cross.y_e, d_l, cfg), cross


def step_utpp(state: VehicleState, scenario: Scenario) -> tuple[float, list[CrossTrack | None]]:
    """One unscented pure-pursuit decision from the measured pose.

    Seven sigma poses are steered independently and combined with the UT
    weights.  A fault on the mean pose faults the whole step; a fault on any
    other sigma pose falls back to the mean pose's steering angle.
    """
    if scenario.noise is None:
        raise ConfigInvalid("utpp needs a noise model")
    cfg = scenario.pursuit_config()
    d_l = lookahead_distance(state.speed, cfg)
    sigma = generate_sigma_points(state.measured_pose, scenario.noise.cov, scenario.ut)
    crosses: list[CrossTrack | None] = []
    cross0 = _cross_track_for_pose(sigma.points[0], scenario, d_l)
    delta0 = steering_angle(cross0.y_e, d_l, cfg)
    crosses.append(cross0)
    deltas = [delta0]
    for i, point in enumerate(sigma.points[1:], start=1):
        try:
            cross = _cross_track_for_pose(point, scenario, d_l)
        except RoadGeometryFault as exc:
            logger.debug("sigma point %d fell back to the mean steering: %s", i, exc)
            crosses.append(None)
            deltas.append(delta0)
        else:
            crosses.append(cross)
            deltas.append(steering_angle(cross.y_e, d_l, cfg))
    return weighted_steering(deltas, scenario.ut, cfg.steering_limit), crosses


def convergence_time(records: list[TrajectoryRecord], dt: float) -> float | None:
    """Earliest record time after which |lateral_error| < 0.05 m holds 2 s.

    The full hold window must fit inside the run; otherwise returns None.
    """
    window = math.ceil(CONVERGENCE_HOLD / dt - 1e-9)
    ok = [abs(r.lateral_error) < CONVERGENCE_THRESHOLD for r in records]
    for k in range(len(records) - window):
        if all(ok[k : k + window + 1]):
            return records[k].time
    return None


def _summarize(records: list[TrajectoryRecord], scenario: Scenario, seed: int) -> RunSummary:
    return RunSummary(
        convergence_time=convergence_time(records, scenario.dt),
        mean_abs_lateral_error=math.fsum(abs(r.lateral_error) for r in records) / len(records),
        max_abs_delta=max(abs(r.delta) for r in records),
        fault_count=sum(1 for r in records if r.fault is not None),
        seed=seed,
    )


def run(scenario: Scenario) -> tuple[list[TrajectoryRecord], RunSummary]:
    """Simulate one scenario; identical scenarios reproduce records exactly.

    Each record holds the poses the controller acted on at time step * dt
    together with the command it produced; the motion update happens after
    the record is taken.
    """
    scenario.validate()
    if isinstance(scenario.road, WaypointPath):
        logger.info(
            "waypoint road: selecting the look-ahead waypoint by probing %.3f m ahead of the rear axle",
            lookahead_distance(scenario.speed, scenario.pursuit_config()),
        )
    state = VehicleState(
        true_pose=scenario.start_pose,
        measured_pose=scenario.start_pose,
        speed=scenario.speed,
        wheelbase=scenario.wheelbase,
    )
    step = step_utpp if scenario.controller is Controller.UTPP else step_pp
    rng = scenario.noise.make_rng() if scenario.noise is not None else None
    records: list[TrajectoryRecord] = []
    prev_delta = 0.0
    for k in range(scenario.steps):
        fault: str | None = None
        y_e: float | None = None
        try:
            delta, crosses = step(state, scenario)
            y_e = (crosses[0] if isinstance(crosses, list) else crosses).y_e
        except RoadGeometryFault as exc:
            delta = prev_delta
            fault = type(exc).__name__
            logger.debug("step %d faulted (%s), holding delta=%.6f", k, fault, delta)
        records.append(
            TrajectoryRecord(
                step=k,
                time=k * scenario.dt,
                true_pose=state.true_pose,
                measured_pose=state.measured_pose,
                y_e=y_e,
                delta=delta,
                lateral_error=lateral_deviation((state.true_pose.x, state.true_pose.y), scenario.road),
                fault=fault,
            )
        )
        new_true = advance_pose(state.true_pose, delta, state.speed, scenario.dt, state.wheelbase)
        if scenario.noise is not None:
            drawn = sample_measured_pose(new_true, scenario.noise, scenario.road, rng)
            if scenario.paper_literal:
                new_true = drawn
            state.measured_pose = drawn
        else:
            state.measured_pose = new_true
        state.true_pose = new_true
        prev_delta = delta
    seed = scenario.noise.rng_seed if scenario.noise is not None else 0
    return records, _summarize(records, scenario, seed)


def run_batch(scenario: Scenario, n_runs: int, base_seed: int) -> tuple[list[RunSummary], BatchStats]:
    """Run n_runs independent copies of a scenario, seeded base_seed + i.

    Aggregates are computed from the summaries sorted by seed, so they do
    not depend on execution order.
    """
    if n_runs < 1:
        raise ConfigInvalid(f"n_runs must be >= 1, got {n_runs}")
    summaries: list[RunSummary] = []
    for i in range(n_runs):
        scen = scenario
        if scenario.noise is not None:
            scen = replace(scenario, noise=replace(scenario.noise, rng_seed=base_seed + i))
        _, summary = run(scen)
        summaries.append(summary)
    return summaries, aggregate(summaries, scenario.controller)


def aggregate(summaries: list[RunSummary], controller: Controller) -> BatchStats:
    ordered = sorted(summaries, key=lambda s: s.seed)
    times = [s.convergence_time if s.convergence_time is not None else math.inf for s in ordered]
    converged = [t for t in times if math.isfinite(t)]
    return BatchStats(
        controller=controller.value,
        n_runs=len(ordered),
        n_converged=len(converged),
        median_convergence_time=statistics.median(times),
        mean_convergence_time=(math.fsum(converged) / len(converged)) if converged else None,
        mean_abs_lateral_error=math.fsum(s.mean_abs_lateral_error for s in ordered) / len(ordered),
        mean_fault_count=math.fsum(s.fault_count for s in ordered) / len(ordered),
    )
