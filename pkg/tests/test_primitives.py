import numpy as np
import pytest

from cgar import blades as bl
from cgar.errors import (
    DegenerateConfiguration,
    DegeneratePoint,
    DegeneratePrimitive,
    ImaginaryRadius,
)
from cgar.multivector import Multivector
from cgar.primitives import (
    Circle,
    DirectionVector,
    Line,
    Plane,
    Point,
    PointPair,
    Sphere,
    TangentVector,
    Vector,
    as_point,
    meet,
    point_distance_squared,
    project,
    reflect,
)


def test_point_embedding_and_roundtrip():
    rng = np.random.default_rng(0)
    for _ in range(200):
        x = rng.uniform(-5, 5, 3)
        p = Point(*x)
        np.testing.assert_allclose(p.to_euclidean(), x, atol=1e-12)
        assert p.weight() == 1.0
        # null constraint P . P = 0
        assert abs(p.scalar_product(p)) < 1e-12 * max(1.0, x @ x) ** 2


def test_point_distance_identity():
    rng = np.random.default_rng(1)
    for _ in range(200):
        x, y = rng.uniform(-5, 5, (2, 3))
        d2 = point_distance_squared(Point(*x), Point(*y))
        assert abs(d2 - np.sum((x - y) ** 2)) < 1e-10


def test_point_normalization():
    p = Point(1.0, 2.0, 3.0)
    scaled = Point.from_multivector(3.0 * p)
    assert scaled.weight() == 3.0
    np.testing.assert_allclose(scaled.normalized().to_euclidean(),
                               [1.0, 2.0, 3.0], atol=1e-14)
    direction = Multivector.from_terms({"e1": 1.0})  # no e0 part
    with pytest.raises(DegeneratePoint):
        Point.from_multivector(direction.expanded(bl.POINT_MASK)).to_euclidean()


def test_as_point_coercions():
    assert as_point([1, 2, 3]).isclose(Point(1, 2, 3), atol=0.0)
    assert as_point(Point(1, 0, 0)).isclose(Point(1, 0, 0), atol=0.0)
    with pytest.raises(DegeneratePrimitive):
        as_point(Multivector.from_terms({"e12": 1.0}))


def test_vector_and_direction_wrappers():
    v = Vector(1.0, -2.0, 0.5)
    np.testing.assert_allclose(v.to_array(), [1.0, -2.0, 0.5])
    assert v.mask == bl.EUCLIDEAN_VECTOR_MASK
    d = DirectionVector.from_direction([0, 0, 2])
    assert d.mask == bl.DIRECTION_MASK
    np.testing.assert_allclose(d.to_array(), [0, 0, 2])


def test_tangent_vector_is_grade_two_and_anchored():
    t = TangentVector(Point(1, 0, 0), [0, 1, 0])
    assert t.mask & ~bl.POINT_PAIR_MASK == 0
    assert t.max_grade() == 2
    with pytest.raises(DegenerateConfiguration):
        TangentVector(Point(0, 0, 0), [0, 0, 0])


def test_point_pair_split_recovers_points():
    rng = np.random.default_rng(2)
    for _ in range(100):
        a, b = rng.uniform(-3, 3, (2, 3))
        if np.linalg.norm(a - b) < 1e-3:
            continue
        pair = PointPair(Point(*a), Point(*b))
        p_plus, p_minus = pair.split()
        got = sorted([p_plus.to_euclidean().tolist(), p_minus.to_euclidean().tolist()])
        want = sorted([a.tolist(), b.tolist()])
        np.testing.assert_allclose(got, want, atol=1e-9)


def test_point_pair_degenerate_inputs():
    with pytest.raises(DegenerateConfiguration):
        PointPair(Point(1, 1, 1), Point(1, 1, 1))
    with pytest.raises(DegeneratePrimitive):
        PointPair.from_multivector(Multivector.from_terms({"e1": 1.0}))


def test_line_decode():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b = rng.uniform(-3, 3, (2, 3))
        if np.linalg.norm(a - b) < 1e-3:
            continue
        line = Line(Point(*a), Point(*b))
        closest, u = line.decode()
        d = (b - a) / np.linalg.norm(b - a)
        # direction parallel to the chord
        assert abs(abs(u @ d) - 1.0) < 1e-9
        # closest point lies on the line and is orthogonal to it
        assert np.linalg.norm(np.cross(closest - a, d)) < 1e-8
        assert abs(closest @ u) < 1e-8


def test_line_from_point_direction():
    line = Line.from_point_direction([1, 2, 3], [0, 0, 5])
    closest, u = line.decode()
    np.testing.assert_allclose(np.abs(u), [0, 0, 1], atol=1e-12)
    np.testing.assert_allclose(closest, [1, 2, 0], atol=1e-12)
    assert line.normalized().isclose(line.normalized().normalized(), atol=1e-14)
    with pytest.raises(DegenerateConfiguration):
        Line.from_point_direction([0, 0, 0], [0, 0, 0])
    with pytest.raises(DegenerateConfiguration):
        Line(Point(1, 0, 0), Point(1, 0, 0))


def test_circle_decode_roundtrip():
    rng = np.random.default_rng(4)
    for _ in range(100):
        center = rng.uniform(-2, 2, 3)
        normal = rng.standard_normal(3)
        normal /= np.linalg.norm(normal)
        radius = rng.uniform(0.2, 3.0)
        circ = Circle.from_center_normal_radius(center, normal, radius)
        c, r, n = circ.decode()
        np.testing.assert_allclose(c, center, atol=1e-9)
        assert abs(r - radius) < 1e-9
        assert abs(abs(n @ normal) - 1.0) < 1e-9


def test_circle_from_points_and_carrier():
    circ = Circle(Point(1, 0, 0), Point(0, 1, 0), Point(-1, 0, 0))
    c, r, n = circ.decode()
    np.testing.assert_allclose(c, [0, 0, 0], atol=1e-12)
    assert abs(r - 1.0) < 1e-12
    np.testing.assert_allclose(np.abs(n), [0, 0, 1], atol=1e-12)
    normal, d = circ.carrier_plane().decode()
    assert abs(d) < 1e-12
    np.testing.assert_allclose(np.abs(normal), [0, 0, 1], atol=1e-12)
    with pytest.raises(DegenerateConfiguration):
        Circle(Point(0, 0, 0), Point(1, 0, 0), Point(2, 0, 0))  # collinear
    with pytest.raises(ValueError):
        Circle.from_center_normal_radius([0, 0, 0], [0, 0, 1], -1.0)


def test_plane_dual_form_and_incidence():
    rng = np.random.default_rng(5)
    for _ in range(100):
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        d = rng.uniform(-2, 2)
        plane = Plane(n, d)
        got_n, got_d = plane.decode()
        sign = np.sign(got_n @ n)
        np.testing.assert_allclose(sign * got_n, n, atol=1e-12)
        assert abs(sign * got_d - d) < 1e-12
        # a point on the plane satisfies P . pi = 0
        seed = rng.standard_normal(3)
        x = d * n + np.cross(n, seed)
        assert abs((Point(*x) | plane).scalar_part()) < 1e-9


def test_plane_from_points_matches_dual_construction():
    p1, p2, p3 = Point(1, 0, 1), Point(0, 1, 1), Point(-1, -1, 1)
    primal = Plane.from_points(p1, p2, p3)
    assert not primal.is_dual
    n, d = primal.decode()
    np.testing.assert_allclose(np.abs(n), [0, 0, 1], atol=1e-12)
    assert abs(abs(d) - 1.0) < 1e-12
    dual = primal.dual_form()
    assert dual.is_dual
    n2, d2 = dual.decode()
    np.testing.assert_allclose(n2, n, atol=1e-12)
    assert abs(d2 - d) < 1e-12
    with pytest.raises(DegenerateConfiguration):
        Plane([0, 0, 0], 1.0)
    with pytest.raises(DegenerateConfiguration):
        Plane.from_points(Point(0, 0, 0), Point(1, 0, 0), Point(2, 0, 0))


def test_sphere_decode_roundtrip():
    rng = np.random.default_rng(6)
    for _ in range(100):
        center = rng.uniform(-3, 3, 3)
        radius = rng.uniform(0.1, 2.5)
        sph = Sphere(center, radius)
        c, r = sph.decode()
        np.testing.assert_allclose(c, center, atol=1e-10)
        assert abs(r - radius) < 1e-10
        # surface point incidence: P . S = 0
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        p = Point(*(center + radius * u))
        assert abs((p | sph).scalar_part()) < 1e-10


def test_sphere_from_points():
    sph = Sphere.from_points(Point(1, 0, 0), Point(-1, 0, 0),
                             Point(0, 1, 0), Point(0, 0, 1))
    c, r = sph.decode()
    np.testing.assert_allclose(c, [0, 0, 0], atol=1e-12)
    assert abs(r - 1.0) < 1e-12
    with pytest.raises(ValueError):
        Sphere([0, 0, 0], -1.0)
    with pytest.raises(DegenerateConfiguration):
        Sphere.from_points(Point(0, 0, 0), Point(1, 0, 0),
                           Point(2, 0, 0), Point(3, 0, 0))


def test_meet_sphere_plane_gives_expected_circle():
    sph = Sphere([0, 0, 0], 1.0)
    plane = Plane([0, 0, 1], 0.0)
    circ = Circle.from_multivector(meet(sph, plane).restricted(bl.CIRCLE_MASK))
    c, r, n = circ.decode()
    np.testing.assert_allclose(c, [0, 0, 0], atol=1e-9)
    assert abs(r - 1.0) < 1e-9
    np.testing.assert_allclose(np.abs(n), [0, 0, 1], atol=1e-9)


def test_meet_offset_sphere_plane():
    # cut z = 0.5 through the unit sphere: radius sqrt(3)/2
    sph = Sphere([0, 0, 0], 1.0)
    plane = Plane([0, 0, 1], 0.5)
    c, r, _ = Circle.from_multivector(
        meet(sph, plane).restricted(bl.CIRCLE_MASK)).decode()
    np.testing.assert_allclose(c, [0, 0, 0.5], atol=1e-9)
    assert abs(r - np.sqrt(0.75)) < 1e-9


def test_meet_plane_plane_gives_line():
    pa = Plane([0, 0, 1], 0.0)
    pb = Plane([1, 0, 0], 0.5)
    raw = meet(pa, pb)
    line = Line.from_multivector(raw.restricted(bl.LINE_MASK))
    closest, u = line.decode()
    np.testing.assert_allclose(np.abs(u), [0, 1, 0], atol=1e-9)
    np.testing.assert_allclose(closest, [0.5, 0, 0], atol=1e-9)


def test_meet_sphere_line_gives_point_pair():
    sph = Sphere([0, 0, 0], 2.0)
    line = Line.from_point_direction([0, 0, 0], [1, 0, 0])
    pair = PointPair.from_multivector(
        meet(sph, line).restricted(bl.POINT_PAIR_MASK))
    pts = sorted(p.to_euclidean().tolist() for p in pair.split())
    np.testing.assert_allclose(pts, [[-2, 0, 0], [2, 0, 0]], atol=1e-9)


def test_missed_sphere_gives_imaginary_pair():
    sph = Sphere([0, 0, 0], 1.0)
    line = Line.from_point_direction([0, 0, 5], [1, 0, 0])
    pair = PointPair.from_multivector(
        meet(sph, line).restricted(bl.POINT_PAIR_MASK))
    with pytest.raises(ImaginaryRadius):
        pair.split()


def test_project_point_onto_plane_and_line():
    plane = Plane([0, 0, 1], 0.0)
    p = Point(1.0, 2.0, 3.0)
    proj = project(p, plane)
    np.testing.assert_allclose(
        Point.from_multivector(proj).normalized().to_euclidean(),
        [1.0, 2.0, 0.0], atol=1e-9)
    line = Line.from_point_direction([0, 0, 0], [1, 0, 0])
    proj2 = project(p, line)
    np.testing.assert_allclose(
        Point.from_multivector(proj2).normalized().to_euclidean(),
        [1.0, 0.0, 0.0], atol=1e-9)


def test_reflect_point_in_plane():
    plane = Plane([0, 0, 1], 1.0)  # z = 1
    p = Point(0.5, -0.5, 3.0)
    refl = reflect(p, plane)
    np.testing.assert_allclose(
        Point.from_multivector(refl).normalized().to_euclidean(),
        [0.5, -0.5, -1.0], atol=1e-9)


def test_reflect_preserves_sphere_geometry():
    plane = Plane([1, 0, 0], 0.0)
    sph = Sphere([2.0, 1.0, 0.0], 0.75)
    refl = reflect(sph, plane)
    c, r = Sphere.from_multivector(refl).decode()
    np.testing.assert_allclose(c, [-2.0, 1.0, 0.0], atol=1e-9)
    assert abs(r - 0.75) < 1e-9
