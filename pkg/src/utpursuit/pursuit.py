"""Pure-pursuit steering law and look-ahead cross-track computation.

All geometry here lives in the vehicle frame.  The look-ahead circle has
radius d_l = lookahead_gain * speed around the rear axle; the goal point is
its forward intersection with the local road, and the bicycle steering
angle follows delta = arctan(2 y_e L / d_l^2).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import (
    DegenerateCenter,
    NoForwardIntersection,
    NoIntersection,
    NonPositiveSpeed,
    PathOutOfReach,
)
from .geometry import Circle, StraightLine

logger = logging.getLogger(__name__)

# Below this slope magnitude the local road is treated as axis-parallel.
FLAT_SLOPE_EPS = 1e-12
# Allowance for arccos arguments that drift past +/-1 by float rounding.
COS_ARG_SLACK = 1e-12

DEFAULT_STEERING_LIMIT = math.radians(35.0)


@dataclass(frozen=True, slots=True)
class PursuitConfig:
    """Static controller parameters.

    wheelbase:       distance between axles, m (> 0)
    lookahead_gain:  seconds of travel ahead, d_l = gain * speed (> 0)
    steering_limit:  symmetric clamp on the commanded angle, rad, in (0, pi/2)
    """

    wheelbase: float
    lookahead_gain: float
    steering_limit: float = DEFAULT_STEERING_LIMIT

    def __post_init__(self) -> None:
        if not (math.isfinite(self.wheelbase) and self.wheelbase > 0.0):
            raise ValueError(f"wheelbase must be positive, got {self.wheelbase}")
        if not (math.isfinite(self.lookahead_gain) and self.lookahead_gain > 0.0):
            raise ValueError(f"lookahead_gain must be positive, got {self.lookahead_gain}")
        if not (0.0 < self.steering_limit < math.pi / 2.0):
            raise ValueError(f"steering_limit must lie in (0, pi/2), got {self.steering_limit}")


@dataclass(frozen=True, slots=True)
class CrossTrack:
    """Vehicle-frame goal point on the look-ahead circle: x_e >= 0 forward, y_e lateral."""

    y_e: float
    x_e: float


def lookahead_distance(speed: float, cfg: PursuitConfig) -> float:
    """d_l = lookahead_gain * speed; speed must be positive."""
    if not (math.isfinite(speed) and speed > 0.0):
        raise NonPositiveSpeed(f"speed must be positive, got {speed}")
    return cfg.lookahead_gain * speed


def cross_track_line(line: StraightLine, d_l: float) -> CrossTrack:
    """Intersect the look-ahead circle with a vehicle-frame line.

    For |slope| < 1e-12 the lateral error is the intercept itself.  Otherwise
    the forward root of the circle/line system is taken:
    y_e = (c2 + m sqrt((1 + m^2) d_l^2 - c2^2)) / (1 + m^2).

    Raises PathOutOfReach when the circle misses the line entirely and
    NoForwardIntersection when both intersections lie behind the rear axle.
    """
    m, c2 = line.slope, line.intercept
    if abs(m) < FLAT_SLOPE_EPS:
        forward_sq = d_l * d_l - c2 * c2
        if forward_sq < 0.0:
            raise PathOutOfReach(f"flat line at offset {c2} beyond look-ahead {d_l}")
        return CrossTrack(y_e=c2, x_e=math.sqrt(forward_sq))
    one_m2 = 1.0 + m * m
    disc = one_m2 * d_l * d_l - c2 * c2
    if disc < 0.0:
        raise PathOutOfReach(f"line (m={m}, c={c2}) beyond look-ahead {d_l}")
    root = math.sqrt(disc)
    y_e = (c2 + m * root) / one_m2
    x_e = (root - m * c2) / one_m2
    if x_e < 0.0:
        raise NoForwardIntersection(f"line (m={m}, c={c2}) crosses look-ahead only behind the axle")
    return CrossTrack(y_e=y_e, x_e=x_e)


def cross_track_circle(circle: Circle, d_l: float) -> CrossTrack:
    """Intersect the look-ahead circle with a vehicle-frame road circle.

    With rho the distance to the road center, the half-angle subtended by
    the intersection chord is alpha_1 = arccos((rho^2 + d_l^2 - R^2) /
    (2 d_l rho)) and the center bearing is alpha_2 = atan2(cy, cx).  Of the
    two candidate bearings alpha_2 +/- alpha_1 the one with the smaller
    magnitude is kept, sign intact, so right-hand roads steer right.  An
    exact magnitude tie picks the positive (left) candidate and logs it.

    Raises DegenerateCenter when the center sits on the rear axle,
    NoIntersection when the circles do not meet, and NoForwardIntersection
    when both meeting points lie behind the axle.
    """
    cx, cy = circle.cx, circle.cy
    rho = math.hypot(cx, cy)
    if rho < 1e-12:
        raise DegenerateCenter("road circle centered on the rear axle")
    cos_arg = (rho * rho + d_l * d_l - circle.radius * circle.radius) / (2.0 * d_l * rho)
    if abs(cos_arg) > 1.0 + COS_ARG_SLACK:
        raise NoIntersection(
            f"road circle (center ({cx}, {cy}), R={circle.radius}) misses look-ahead {d_l}"
        )
    alpha_1 = math.acos(max(-1.0, min(1.0, cos_arg)))
    alpha_2 = math.atan2(cy, cx)
    plus, minus = alpha_2 + alpha_1, alpha_2 - alpha_1
    if abs(plus) < abs(minus):
        alpha = plus
    elif abs(minus) < abs(plus):
        alpha = minus
    else:
        alpha = max(plus, minus)
        logger.debug("bearing tie at |alpha|=%.9f, keeping the positive candidate", abs(alpha))
    x_e = d_l * math.cos(alpha)
    if x_e < 0.0:
        raise NoForwardIntersection(
            f"road circle (center ({cx}, {cy}), R={circle.radius}) meets look-ahead only behind the axle"
        )
    return CrossTrack(y_e=d_l * math.sin(alpha), x_e=x_e)


def steering_angle(y_e: float, d_l: float, cfg: PursuitConfig) -> float:
    """delta = arctan(2 y_e wheelbase / d_l^2), clamped to the steering limit."""
    delta = math.atan(2.0 * y_e * cfg.wheelbase / (d_l * d_l))
    return max(-cfg.steering_limit, min(cfg.steering_limit, delta))


def turning_radius(y_e: float, d_l: float) -> float:
    """Instantaneous goal-arc radius d_l^2 / (2 y_e); inf on a straight course."""
    if y_e == 0.0:
        return math.inf
    return d_l * d_l / (2.0 * y_e)
