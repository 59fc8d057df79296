"""Waypoint paths and their per-step reduction to a local line or circle.

A waypoint road is handled by probing one look-ahead distance in front of
the rear axle, finding the nearest waypoint with a k-d tree, and fitting the
waypoint triple around it: three nearly collinear points become a straight
line, anything else becomes the circumcircle.  Menger curvature decides
which, and its sign (counter-clockwise positive) is kept for diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CoincidentPoints, TooFewWaypoints, VerticalRoad
from .geometry import Circle, Point2, Pose, StraightLine

# Anything closer than this is treated as the same physical point.
MIN_WAYPOINT_SPACING = 1e-9
# |curvature| below this means the local waypoint triple is a straight stretch.
DEFAULT_STRAIGHT_EPS = 1e-3
# A fitted line direction this close to vertical has no usable slope form.
VERTICAL_COS_EPS = 1e-12

LocalRoad = StraightLine | Circle


@dataclass(frozen=True, slots=True)
class _Node:
    index: int
    axis: int
    left: "_Node | None"
    right: "_Node | None"


class KdTree:
    """Exact 2-d nearest-neighbor index; ties resolve to the lowest index."""

    def __init__(self, points: list[Point2]):
        self.points = [(float(x), float(y)) for x, y in points]
        if len(self.points) < 3:
            raise TooFewWaypoints(f"need at least 3 waypoints, got {len(self.points)}")
        self._root = self._build(list(range(len(self.points))), 0)

    def _build(self, idxs: list[int], axis: int) -> _Node | None:
        if not idxs:
            return None
        idxs.sort(key=lambda i: (self.points[i][axis], i))
        mid = len(idxs) // 2
        return _Node(
            index=idxs[mid],
            axis=axis,
            left=self._build(idxs[:mid], 1 - axis),
            right=self._build(idxs[mid + 1 :], 1 - axis),
        )

    def nearest(self, query: Point2) -> int:
        qx, qy = query
        best_d2 = math.inf
        best_idx = -1

        def visit(node: _Node | None) -> None:
            nonlocal best_d2, best_idx
            if node is None:
                return
            px, py = self.points[node.index]
            d2 = (px - qx) ** 2 + (py - qy) ** 2
            if d2 < best_d2 or (d2 == best_d2 and node.index < best_idx):
                best_d2, best_idx = d2, node.index
            diff = (qx, qy)[node.axis] - (px, py)[node.axis]
            near, far = (node.left, node.right) if diff < 0.0 else (node.right, node.left)
            visit(near)
            # <= keeps equidistant candidates across the split reachable,
            # which the lowest-index tie-break depends on.
            if diff * diff <= best_d2:
                visit(far)

        visit(self._root)
        return best_idx

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class WaypointPath:
    """Ordered waypoints in the global frame, consecutive points distinct."""

    points: list[Point2]
    _index: KdTree | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.points) < 3:
            raise TooFewWaypoints(f"need at least 3 waypoints, got {len(self.points)}")
        for i in range(len(self.points) - 1):
            (x0, y0), (x1, y1) = self.points[i], self.points[i + 1]
            if not all(map(math.isfinite, (x0, y0, x1, y1))):
                raise ValueError(f"waypoint {i if math.isfinite(x0 + y0) else i + 1} is not finite")
            if math.hypot(x1 - x0, y1 - y0) <= MIN_WAYPOINT_SPACING:
                raise ValueError(f"waypoints {i} and {i + 1} are closer than {MIN_WAYPOINT_SPACING} m")

    def spatial_index(self) -> KdTree:
        if self._index is None:
            self._index = build_index(self)
        return self._index

    def __len__(self) -> int:
        return len(self.points)


def build_index(path: WaypointPath) -> KdTree:
    """Build the nearest-neighbor index over a path's waypoints."""
    return KdTree(path.points)


def select_lookahead_waypoint(index: KdTree, pose: Pose, d_l: float) -> int:
    """Pick the waypoint nearest to the probe point one look-ahead ahead.

    The probe sits at pose + d_l (cos yaw, sin yaw); the returned index is
    clamped into [1, len - 2] so it always has both neighbors.
    """
    probe = (pose.x + d_l * math.cos(pose.yaw), pose.y + d_l * math.sin(pose.yaw))
    i = index.nearest(probe)
    return min(max(i, 1), len(index) - 2)


def menger_curvature(a: Point2, b: Point2, c: Point2) -> float:
    """Signed Menger curvature of three points, counter-clockwise positive.

    kappa = 4 * signed_area(a, b, c) / (|ab| |bc| |ca|); collinear points
    give exactly 0.  Raises CoincidentPoints if any two points are closer
    than the minimum waypoint spacing.
    """
    ab = math.dist(a, b)
    bc = math.dist(b, c)
    ca = math.dist(c, a)
    if min(ab, bc, ca) <= MIN_WAYPOINT_SPACING:
        raise CoincidentPoints(f"curvature undefined for points {a}, {b}, {c}")
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return 2.0 * cross / (ab * bc * ca)


def circumcenter(a: Point2, b: Point2, c: Point2) -> Point2:
    """Center of the circle through three non-collinear points."""
    # Working relative to b keeps the squared terms small for far-away paths.
    ax, ay = a[0] - b[0], a[1] - b[1]
    cx, cy = c[0] - b[0], c[1] - b[1]
    d = 2.0 * (ax * cy - ay * cx)
    if d == 0.0:
        raise CoincidentPoints(f"no circumcircle through collinear points {a}, {b}, {c}")
    a2 = ax * ax + ay * ay
    c2 = cx * cx + cy * cy
    ux = (cy * a2 - ay * c2) / d
    uy = (ax * c2 - cx * a2) / d
    return (ux + b[0], uy + b[1])


def _fit_line(a: Point2, b: Point2, c: Point2) -> StraightLine:
    # Orthogonal least squares: the principal axis of the three points.
    # Unlike a y-on-x regression this commutes with rigid motions.
    pts = np.array([a, b, c], dtype=float)
    centroid = pts.mean(axis=0)
    dx, dy = (pts - centroid).T
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    sxy = float(dx @ dy)
    theta = 0.5 * math.atan2(2.0 * sxy, sxx - syy)
    if abs(math.cos(theta)) < VERTICAL_COS_EPS:
        raise VerticalRoad(f"local road through {a}, {b}, {c} is vertical")
    slope = math.tan(theta)
    return StraightLine(slope, float(centroid[1]) - slope * float(centroid[0]))


def reduce_to_local_road(
    path: WaypointPath,
    index: KdTree,
    pose: Pose,
    d_l: float,
    straight_eps: float = DEFAULT_STRAIGHT_EPS,
) -> LocalRoad:
    """Collapse the waypoints around the look-ahead into a line or circle.

    Both results stay in the global frame.  |Menger curvature| of the
    waypoint triple below straight_eps selects the least-squares line;
    otherwise the triple's circumcircle (radius 1 / |kappa|) is returned.
    """
    w = select_lookahead_waypoint(index, pose, d_l)
    a, b, c = path.points[w - 1], path.points[w], path.points[w + 1]
    kappa = menger_curvature(a, b, c)
    if abs(kappa) < straight_eps:
        return _fit_line(a, b, c)
    cx, cy = circumcenter(a, b, c)
    return Circle(cx, cy, 1.0 / abs(kappa))


def load_waypoints(path: str) -> WaypointPath:
    """Read a waypoint file: one "x,y" pair per line, '#' starts a comment.

    Values must be finite; fewer than three rows raises TooFewWaypoints and
    malformed rows raise ValueError naming the line.
    """
    points: list[Point2] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'x,y', got {raw.strip()!r}")
            try:
                x, y = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"{path}:{lineno}: non-finite waypoint {text!r}")
            points.append((x, y))
    if len(points) < 3:
        raise TooFewWaypoints(f"{path}: need at least 3 waypoints, got {len(points)}")
    return WaypointPath(points)
