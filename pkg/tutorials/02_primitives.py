"""Geometric primitives: points, spheres, planes, and their intersections.

Points live on the null cone, spheres and planes are grade-4 objects,
and `meet` intersects anything with anything. Run with:

    python3 tutorials/02_primitives.py
"""

import numpy as np

from cgar import Circle, Line, Plane, Point, PointPair, Sphere
from cgar import meet, point_distance_squared, project, reflect


def main():
    p = Point(1.0, 2.0, 3.0)
    q = Point(4.0, 6.0, 3.0)
    print("p =", p.to_euclidean())
    print("q =", q.to_euclidean())

    # Conformal points are null: the scalar product of p with itself
    # vanishes.
    print("p . p =", p.scalar_product(p))

    # The inner product of two points encodes their squared distance:
    # -2 p.q = |p - q|^2. The helper wraps that identity.
    d2 = point_distance_squared(p, q)
    print("squared distance p,q =", d2, " (expected 25)")
    print()

    # A sphere through four points, decoded back to center and radius.
    s = Sphere.from_points(
        Point(1, 0, 0), Point(-1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)
    )
    center, radius = s.decode()
    print("sphere center", center, "radius", radius)

    # A plane from a unit normal and signed offset.
    ground = Plane([0.0, 0.0, 1.0], 0.5)
    normal, offset = ground.decode()
    print("plane normal", normal, "offset", offset)
    print()

    # meet(sphere, plane) is a circle. Cutting the unit sphere at z = 0.5
    # leaves a circle of radius sqrt(0.75).
    unit = Sphere([0, 0, 0], 1.0)
    ring = Circle.from_multivector(meet(unit, ground))
    c_center, c_radius, c_normal = ring.decode()
    print("cut circle center", c_center, "radius", c_radius)
    assert abs(c_radius - np.sqrt(0.75)) < 1e-12

    # meet(plane, plane) is a line.
    wall = Plane([1.0, 0.0, 0.0], 0.0)
    seam = Line.from_multivector(meet(ground, wall))
    print("seam direction", seam.direction())
    print()

    # meet(sphere, line) is a point pair; split() recovers both points.
    axis = Line.from_point_direction([0, 0, 0], [1, 0, 0])
    pair = PointPair.from_multivector(meet(Sphere([0, 0, 0], 2.0), axis))
    hit_a, hit_b = pair.split()
    print("line pierces sphere at", hit_a.to_euclidean(), "and", hit_b.to_euclidean())
    print()

    # Projection drops a point onto a plane or line; reflection mirrors
    # any primitive through a plane.
    above = Point(0.3, -0.7, 2.0)
    foot = project(above, ground).normalized()
    print("projection of", above.to_euclidean(), "onto plane:", foot.to_euclidean())

    mirrored = reflect(above, ground).normalized()
    print("reflection through plane:", mirrored.to_euclidean())

    ball = Sphere([0.0, 0.0, 2.0], 0.25)
    i_center, i_radius = reflect(ball, ground).decode()
    print("reflected sphere center", i_center, "radius", i_radius)


if __name__ == "__main__":
    main()
