import math

import numpy as np
import pytest

from utpursuit import (
    Circle,
    Covariance3,
    NoiseModel,
    Pose,
    StraightLine,
    WaypointPath,
    advance_pose,
    clamp_to_road,
    lateral_deviation,
    sample_measured_pose,
)


def fit_center(p0, p1, p2):
    lhs = np.array(
        [
            [2.0 * (p1[0] - p0[0]), 2.0 * (p1[1] - p0[1])],
            [2.0 * (p2[0] - p1[0]), 2.0 * (p2[1] - p1[1])],
        ]
    )
    rhs = np.array(
        [
            p1[0] ** 2 + p1[1] ** 2 - p0[0] ** 2 - p0[1] ** 2,
            p2[0] ** 2 + p2[1] ** 2 - p1[0] ** 2 - p1[1] ** 2,
        ]
    )
    return np.linalg.solve(lhs, rhs)


def test_advance_pose_straight_and_quarter_lock():
    p = advance_pose(Pose(0.0, 0.0, 0.0), 0.0, 1.0, 0.1, 1.0)
    assert (p.x, p.y, p.yaw) == (0.1, 0.0, 0.0)
    q = advance_pose(Pose(0.0, 0.0, 0.0), math.pi / 4, 1.0, 0.1, 1.0)
    assert q.x == pytest.approx(0.0995004, abs=1e-7)
    assert q.y == pytest.approx(0.0099833, abs=1e-7)
    assert q.yaw == pytest.approx(0.1, rel=1e-12)


def test_advance_pose_uses_pre_update_yaw():
    # From a 90-degree heading the straight step moves along +y only.
    p = advance_pose(Pose(1.0, 1.0, math.pi / 2), 0.0, 2.0, 0.5, 1.0)
    assert p.x == pytest.approx(1.0, abs=1e-12)
    assert p.y == pytest.approx(2.0, rel=1e-12)


def test_advance_pose_rejects_non_positive_dt():
    with pytest.raises(ValueError):
        advance_pose(Pose(0.0, 0.0, 0.0), 0.0, 1.0, 0.0, 1.0)


def test_constant_steering_traces_a_circle():
    # All positions stay equidistant from a fixed center; the radius is the
    # chord radius v dt / (2 sin(beta/2)), within O(beta^2) of v dt / beta.
    delta = math.atan(0.2)
    speed, dt, wheelbase = 1.0, 0.1, 1.0
    beta = (speed * dt / wheelbase) * math.tan(delta)
    poses = [Pose(0.0, 0.0, 0.3)]
    for _ in range(200):
        poses.append(advance_pose(poses[-1], delta, speed, dt, wheelbase))
    pts = [(p.x, p.y) for p in poses]
    center = fit_center(*pts[:3])
    radii = [math.hypot(x - center[0], y - center[1]) for x, y in pts]
    chord_radius = speed * dt / (2.0 * math.sin(beta / 2.0))
    for r in radii:
        assert r == pytest.approx(chord_radius, abs=1e-9)
    assert chord_radius == pytest.approx(speed * dt / beta, rel=1e-4)


def test_constant_steering_closes_the_loop():
    # beta chosen to divide the full turn exactly: 64 steps return to start.
    speed, dt, wheelbase = 1.0, 0.1, 1.0
    beta = 2.0 * math.pi / 64.0
    delta = math.atan(beta * wheelbase / (speed * dt))
    pose = Pose(1.0, -2.0, 0.25)
    start = pose
    for _ in range(64):
        pose = advance_pose(pose, delta, speed, dt, wheelbase)
    assert math.hypot(pose.x - start.x, pose.y - start.y) < 1e-3
    assert math.isclose(pose.yaw, start.yaw, abs_tol=1e-9)


def test_advance_pose_is_rigid_motion_equivariant():
    rng = np.random.default_rng(79)
    for _ in range(200):
        pose = Pose(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-3, 3))
        delta = rng.uniform(-1.2, 1.2)
        theta = rng.uniform(-math.pi, math.pi)
        tx, ty = rng.uniform(-10, 10, size=2)
        c, s = math.cos(theta), math.sin(theta)
        moved = Pose(c * pose.x - s * pose.y + tx, s * pose.x + c * pose.y + ty, pose.yaw + theta)
        a = advance_pose(pose, delta, 1.0, 0.1, 1.0)
        b = advance_pose(moved, delta, 1.0, 0.1, 1.0)
        assert b.x == pytest.approx(c * a.x - s * a.y + tx, abs=1e-9)
        assert b.y == pytest.approx(s * a.x + c * a.y + ty, abs=1e-9)
        assert math.isclose(math.sin(b.yaw - a.yaw - theta), 0.0, abs_tol=1e-12)


ROAD = StraightLine(0.0, 0.0)


def test_sampling_is_reproducible_and_seed_sensitive():
    noise = NoiseModel(cov=Covariance3(0.01, 0.01, 0.01), rng_seed=7)
    true = Pose(1.0, 0.1, 0.05)
    rng1 = noise.make_rng()
    seq1 = [sample_measured_pose(true, noise, ROAD, rng1) for _ in range(50)]
    rng2 = noise.make_rng()
    seq2 = [sample_measured_pose(true, noise, ROAD, rng2) for _ in range(50)]
    assert seq1 == seq2
    rng3 = NoiseModel(cov=noise.cov, rng_seed=8).make_rng()
    seq3 = [sample_measured_pose(true, noise, ROAD, rng3) for _ in range(50)]
    assert seq1 != seq3


def test_sampling_statistics_match_the_covariance():
    # Raw draw spread (clamp disabled via a huge bound): stddevs within 2%.
    sigma_y, sigma_yaw = 0.1, math.radians(10.0)
    noise = NoiseModel(
        cov=Covariance3(0.0, sigma_y**2, sigma_yaw**2), max_lateral_dev=1e9, rng_seed=12345
    )
    rng = noise.make_rng()
    true = Pose(0.0, 0.0, 0.0)
    xs, ys, yaws = [], [], []
    for _ in range(100_000):
        p = sample_measured_pose(true, noise, ROAD, rng)
        xs.append(p.x)
        ys.append(p.y)
        yaws.append(p.yaw)
    assert np.std(xs) == 0.0
    assert abs(np.std(ys) - sigma_y) <= 0.02 * sigma_y
    assert abs(np.std(yaws) - sigma_yaw) <= 0.02 * sigma_yaw


def test_lateral_clamp_saturates_exactly():
    noise = NoiseModel(cov=Covariance3(0.0, 100.0, 0.0), max_lateral_dev=0.3, rng_seed=1)
    rng = noise.make_rng()
    true = Pose(0.0, 0.0, 0.0)
    saturated = 0
    for _ in range(100):
        p = sample_measured_pose(true, noise, ROAD, rng)
        assert abs(p.y) <= 0.3
        if abs(p.y) == 0.3:
            saturated += 1
        assert p.x == 0.0
    assert saturated > 90  # sigma_y = 10 m, nearly every draw clamps


def test_clamp_to_road_circle_and_polyline():
    circle = Circle(0.0, 0.0, 5.0)
    x, y = clamp_to_road((8.0, 0.0), circle, 0.3)
    assert math.hypot(x, y) == pytest.approx(5.3, rel=1e-12)
    x, y = clamp_to_road((4.0, 0.0), circle, 0.3)
    assert math.hypot(x, y) == pytest.approx(4.7, rel=1e-12)
    assert clamp_to_road((5.1, 0.0), circle, 0.3) == (5.1, 0.0)

    path = WaypointPath([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])
    assert clamp_to_road((1.0, 2.0), path, 0.3) == (1.0, 0.3)
    assert clamp_to_road((1.0, 0.2), path, 0.3) == (1.0, 0.2)


def test_lateral_deviation_signs():
    assert lateral_deviation((0.0, 1.0), StraightLine(0.0, 0.0)) == 1.0
    assert lateral_deviation((0.0, -1.0), StraightLine(0.0, 0.0)) == -1.0
    circle = Circle(0.0, 0.0, 5.0)
    assert lateral_deviation((6.0, 0.0), circle) == pytest.approx(1.0, rel=1e-12)
    assert lateral_deviation((4.0, 0.0), circle) == pytest.approx(-1.0, rel=1e-12)
    path = WaypointPath([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])
    assert lateral_deviation((1.5, -0.4), path) == pytest.approx(0.4, rel=1e-12)
    # Beyond the last segment the distance is to the endpoint.
    assert lateral_deviation((3.0, 0.0), path) == pytest.approx(1.0, rel=1e-12)


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(cov=Covariance3(0.0, 0.0, 0.0), max_lateral_dev=0.0)
