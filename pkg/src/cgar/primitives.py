"""Geometric primitives of the conformal model.

Each primitive is a Multivector subclass pinned to a fixed blade subspace,
so versor sandwiches evaluate only the blades the primitive can occupy.
Construction-from-parameters uses the dual (grade-1) form for spheres and
planes; construction from points wedges conformal points into the primal
form.  Decoders accept either form and return Euclidean parameters.

Conventions:

    point     P = x + |x|^2/2 einf + e0          (null, e0 coefficient 1)
    pair      P1 ^ P2
    line      P1 ^ P2 ^ einf
    circle    P1 ^ P2 ^ P3
    plane     n + d einf      (x . n = d)    or  P1 ^ P2 ^ P3 ^ einf
    sphere    C - r^2/2 einf                 or  P1 ^ P2 ^ P3 ^ P4

Degeneracy tests compare blade norms against 1e-10 scaled by the product
of input coefficient norms.
"""

from __future__ import annotations

import numpy as np

from . import blades as bl
from .errors import (
    DegenerateConfiguration,
    DegeneratePoint,
    DegeneratePrimitive,
    ImaginaryRadius,
)
from .multivector import Multivector, basis_vectors

_E0, _E1, _E2, _E3, _EINF = basis_vectors()

DEGENERACY_EPS = 1e-10


def _coeff_norm(mv: Multivector) -> float:
    return float(np.linalg.norm(mv.coeffs)) if len(mv.coeffs) else 0.0


def _input_scale(*mvs: Multivector) -> float:
    scale = 1.0
    for mv in mvs:
        scale *= max(1.0, _coeff_norm(mv))
    return scale


def as_point(value) -> "Point":
    """Coerce a Point, Multivector on point blades, or xyz triple."""
    if isinstance(value, Point):
        return value
    if isinstance(value, Multivector):
        return Point.from_multivector(value)
    return Point(*np.asarray(value, dtype=np.float64))


class Point(Multivector):
    """Conformal point x + |x|^2/2 einf + e0."""

    SUBSPACE = bl.POINT_MASK

    def __init__(self, x=0.0, y=0.0, z=0.0):
        sq = 0.5 * (x * x + y * y + z * z)
        # coefficient order: e0, e1, e2, e3, einf
        arr = np.array([1.0, x, y, z, sq], dtype=np.float64)
        self._finish_init(bl.POINT_MASK, arr)

    @classmethod
    def from_euclidean(cls, xyz) -> "Point":
        xyz = np.asarray(xyz, dtype=np.float64)
        return cls(float(xyz[0]), float(xyz[1]), float(xyz[2]))

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Point":
        if mv.mask & ~bl.POINT_MASK:
            raise DegeneratePrimitive("multivector has blades outside the point subspace")
        return cls._raw(bl.POINT_MASK, mv.expanded(bl.POINT_MASK).coeffs.copy())

    def weight(self) -> float:
        """e0 coefficient (conformal scale)."""
        return self.get(1)

    def normalized(self) -> "Point":
        w = self.weight()
        if abs(w) < 1e-12 * max(1.0, _coeff_norm(self)):
            raise DegeneratePoint("point has vanishing e0 coefficient")
        return Point._raw(bl.POINT_MASK,
                          self.expanded(bl.POINT_MASK).coeffs / w)

    def to_euclidean(self) -> np.ndarray:
        w = self.weight()
        if abs(w) < 1e-12 * max(1.0, _coeff_norm(self)):
            raise DegeneratePoint("point has vanishing e0 coefficient")
        return np.array([self.get(2), self.get(4), self.get(8)]) / w

    def is_null(self, tol: float = 1e-10) -> bool:
        return abs(self.scalar_product(self)) <= tol * max(1.0, _coeff_norm(self)) ** 2


def point_distance_squared(p1, p2) -> float:
    """Squared Euclidean distance: -2 (P1 . P2) for normalized points."""
    a = as_point(p1).normalized()
    b = as_point(p2).normalized()
    return -2.0 * (a | b).scalar_part()


class Vector(Multivector):
    """Euclidean vector on e1, e2, e3."""

    SUBSPACE = bl.EUCLIDEAN_VECTOR_MASK

    def __init__(self, x=0.0, y=0.0, z=0.0):
        self._finish_init(bl.EUCLIDEAN_VECTOR_MASK,
                          np.array([x, y, z], dtype=np.float64))

    @classmethod
    def from_array(cls, xyz) -> "Vector":
        xyz = np.asarray(xyz, dtype=np.float64)
        return cls(float(xyz[0]), float(xyz[1]), float(xyz[2]))

    def to_array(self) -> np.ndarray:
        return self.coeffs.copy()


class DirectionVector(Multivector):
    """Free direction v ^ einf; translation-invariant."""

    SUBSPACE = bl.DIRECTION_MASK

    def __init__(self, x=0.0, y=0.0, z=0.0):
        self._finish_init(bl.DIRECTION_MASK,
                          np.array([x, y, z], dtype=np.float64))

    @classmethod
    def from_direction(cls, v) -> "DirectionVector":
        v = np.asarray(v, dtype=np.float64)
        return cls(float(v[0]), float(v[1]), float(v[2]))

    def to_array(self) -> np.ndarray:
        return self.coeffs.copy()


class TangentVector(Multivector):
    """Grade-2 point-anchored direction: P ^ (P lc (v ^ einf))."""

    SUBSPACE = bl.POINT_PAIR_MASK

    def __init__(self, point, direction):
        p = as_point(point).normalized()
        v = np.asarray(direction, dtype=np.float64)
        if np.linalg.norm(v) < DEGENERACY_EPS:
            raise DegenerateConfiguration("tangent direction is zero")
        vmv = Vector(*v)
        mv = p ^ (p | (vmv ^ _EINF))
        self._finish_init(bl.POINT_PAIR_MASK,
                          mv.expanded(bl.POINT_PAIR_MASK).coeffs.copy())


class PointPair(Multivector):
    """Primal point pair P1 ^ P2 (grade 2)."""

    SUBSPACE = bl.POINT_PAIR_MASK

    def __init__(self, p1, p2):
        a = as_point(p1)
        b = as_point(p2)
        mv = a ^ b
        if _coeff_norm(mv) < DEGENERACY_EPS * _input_scale(a, b):
            raise DegenerateConfiguration("point pair needs two distinct points")
        self._finish_init(bl.POINT_PAIR_MASK,
                          mv.expanded(bl.POINT_PAIR_MASK).coeffs.copy())

    @classmethod
    def from_points(cls, p1, p2) -> "PointPair":
        return cls(p1, p2)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "PointPair":
        if mv.mask & ~bl.POINT_PAIR_MASK:
            raise DegeneratePrimitive("multivector is not grade 2")
        return cls._raw(bl.POINT_PAIR_MASK,
                        mv.expanded(bl.POINT_PAIR_MASK).coeffs.copy())

    def split(self) -> tuple[Point, Point]:
        """Decompose into the two points; '+' root first.

        Raises ImaginaryRadius when the pair's geometric square is
        negative (imaginary intersection) and DegeneratePrimitive when
        the axis direction vanishes (coincident points).
        """
        scale = max(1.0, _coeff_norm(self)) ** 2
        beta_sq = self.geometric_square_scalar()
        if beta_sq < -DEGENERACY_EPS * scale:
            raise ImaginaryRadius("point pair has imaginary radius")
        axis = -(_EINF | self)
        if _coeff_norm(axis) < DEGENERACY_EPS * max(1.0, _coeff_norm(self)):
            raise DegeneratePrimitive("point pair axis vanishes")
        axis_inv = axis.inverse()
        beta = float(np.sqrt(max(beta_sq, 0.0)))
        plus = ((self + beta) * axis_inv).grade_project(1)
        minus = ((self - beta) * axis_inv).grade_project(1)
        return (Point.from_multivector(plus).normalized(),
                Point.from_multivector(minus).normalized())


class Line(Multivector):
    """Primal line P1 ^ P2 ^ einf (grade 3, einf-containing blades)."""

    SUBSPACE = bl.LINE_MASK

    def __init__(self, p1, p2):
        a = as_point(p1)
        b = as_point(p2)
        mv = (a ^ b) ^ _EINF
        if _coeff_norm(mv) < DEGENERACY_EPS * _input_scale(a, b):
            raise DegenerateConfiguration("line needs two distinct points")
        self._finish_init(bl.LINE_MASK, mv.expanded(bl.LINE_MASK).coeffs.copy())

    @classmethod
    def from_points(cls, p1, p2) -> "Line":
        return cls(p1, p2)

    @classmethod
    def from_point_direction(cls, point, direction) -> "Line":
        p = as_point(point).normalized().to_euclidean()
        d = np.asarray(direction, dtype=np.float64)
        if np.linalg.norm(d) < DEGENERACY_EPS:
            raise DegenerateConfiguration("line direction is zero")
        return cls(Point(*p), Point(*(p + d)))

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Line":
        if mv.mask & ~bl.LINE_MASK:
            raise DegeneratePrimitive("multivector is not supported on line blades")
        return cls._raw(bl.LINE_MASK, mv.expanded(bl.LINE_MASK).coeffs.copy())

    def decode(self) -> tuple[np.ndarray, np.ndarray]:
        """(closest point to origin, unit direction)."""
        u = np.array([self.get(19), self.get(21), self.get(25)])
        norm_u = np.linalg.norm(u)
        if norm_u < DEGENERACY_EPS * max(1.0, _coeff_norm(self)):
            raise DegeneratePrimitive("line has vanishing direction")
        moment = np.array([self.get(28), -self.get(26), self.get(22)])
        closest = np.cross(u, moment) / (norm_u * norm_u)
        return closest, u / norm_u

    def direction(self) -> np.ndarray:
        return self.decode()[1]

    def normalized(self) -> "Line":
        """Unit direction-norm representative (orientation kept)."""
        u = np.array([self.get(19), self.get(21), self.get(25)])
        norm_u = np.linalg.norm(u)
        if norm_u < DEGENERACY_EPS * max(1.0, _coeff_norm(self)):
            raise DegeneratePrimitive("line has vanishing direction")
        return Line._raw(bl.LINE_MASK,
                         self.expanded(bl.LINE_MASK).coeffs / norm_u)


class Circle(Multivector):
    """Primal circle P1 ^ P2 ^ P3 (grade 3)."""

    SUBSPACE = bl.CIRCLE_MASK

    def __init__(self, p1, p2, p3):
        pts = [as_point(p) for p in (p1, p2, p3)]
        mv = (pts[0] ^ pts[1]) ^ pts[2]
        carrier = mv ^ _EINF
        scale = _input_scale(*pts)
        if _coeff_norm(mv) < DEGENERACY_EPS * scale or \
                _coeff_norm(carrier) < DEGENERACY_EPS * scale:
            raise DegenerateConfiguration(
                "circle needs three distinct non-collinear points")
        self._finish_init(bl.CIRCLE_MASK, mv.expanded(bl.CIRCLE_MASK).coeffs.copy())

    @classmethod
    def from_points(cls, p1, p2, p3) -> "Circle":
        return cls(p1, p2, p3)

    @classmethod
    def from_center_normal_radius(cls, center, normal, radius) -> "Circle":
        if radius <= 0:
            raise ValueError("circle radius must be positive")
        c = np.asarray(center, dtype=np.float64)
        n = np.asarray(normal, dtype=np.float64)
        n_len = np.linalg.norm(n)
        if n_len < DEGENERACY_EPS:
            raise DegenerateConfiguration("circle normal is zero")
        n = n / n_len
        seed = np.array([1.0, 0.0, 0.0])
        if abs(n @ seed) > 0.9:
            seed = np.array([0.0, 1.0, 0.0])
        a = np.cross(n, seed)
        a /= np.linalg.norm(a)
        b = np.cross(n, a)
        angles = (0.0, 2.0 * np.pi / 3.0, 4.0 * np.pi / 3.0)
        pts = [Point(*(c + radius * (np.cos(t) * a + np.sin(t) * b)))
               for t in angles]
        return cls(*pts)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Circle":
        if mv.mask & ~bl.CIRCLE_MASK:
            raise DegeneratePrimitive("multivector is not grade 3")
        return cls._raw(bl.CIRCLE_MASK, mv.expanded(bl.CIRCLE_MASK).coeffs.copy())

    def carrier_plane(self) -> "Plane":
        carrier = (self ^ _EINF).dual()
        if _coeff_norm(carrier) < DEGENERACY_EPS * max(1.0, _coeff_norm(self)):
            raise DegeneratePrimitive("circle degenerates to a line")
        return Plane.from_multivector(carrier.restricted(bl.PLANE_DUAL_MASK))

    def decode(self) -> tuple[np.ndarray, float, np.ndarray]:
        """(center, radius, unit carrier-plane normal).

        Raises DegeneratePrimitive for line-like blades and
        ImaginaryRadius when the squared radius is negative.
        """
        scale = max(1.0, _coeff_norm(self))
        carrier = self ^ _EINF
        carrier_sq = carrier.scalar_product(carrier)
        if _coeff_norm(carrier) < DEGENERACY_EPS * scale:
            raise DegeneratePrimitive("circle degenerates to a line")
        mid = (self * _EINF) * self
        center = Point.from_multivector(
            mid.restricted(bl.POINT_MASK)).to_euclidean()
        r_sq = self.scalar_product(self) / carrier_sq
        if r_sq < -DEGENERACY_EPS:
            raise ImaginaryRadius("circle has imaginary radius")
        plane = self.carrier_plane()
        normal, _ = plane.decode()
        return center, float(np.sqrt(max(r_sq, 0.0))), normal


class Plane(Multivector):
    """Plane, dual form n + d einf or primal form P1 ^ P2 ^ P3 ^ einf."""

    SUBSPACE = bl.PLANE_DUAL_MASK | bl.PLANE_PRIMAL_MASK

    def __init__(self, normal, d):
        n = np.asarray(normal, dtype=np.float64)
        if np.linalg.norm(n) < DEGENERACY_EPS:
            raise DegenerateConfiguration("plane normal is zero")
        # coefficient order: e1, e2, e3, einf
        arr = np.array([n[0], n[1], n[2], float(d)], dtype=np.float64)
        self._finish_init(bl.PLANE_DUAL_MASK, arr)

    @classmethod
    def from_points(cls, p1, p2, p3) -> "Plane":
        pts = [as_point(p) for p in (p1, p2, p3)]
        mv = ((pts[0] ^ pts[1]) ^ pts[2]) ^ _EINF
        if _coeff_norm(mv) < DEGENERACY_EPS * _input_scale(*pts):
            raise DegenerateConfiguration(
                "plane needs three distinct non-collinear points")
        return cls._raw(bl.PLANE_PRIMAL_MASK,
                        mv.expanded(bl.PLANE_PRIMAL_MASK).coeffs.copy())

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Plane":
        if not mv.mask & ~bl.PLANE_DUAL_MASK:
            return cls._raw(bl.PLANE_DUAL_MASK,
                            mv.expanded(bl.PLANE_DUAL_MASK).coeffs.copy())
        if not mv.mask & ~bl.PLANE_PRIMAL_MASK:
            return cls._raw(bl.PLANE_PRIMAL_MASK,
                            mv.expanded(bl.PLANE_PRIMAL_MASK).coeffs.copy())
        raise DegeneratePrimitive("multivector does not fit a plane form")

    @property
    def is_dual(self) -> bool:
        return not self.mask & ~bl.PLANE_DUAL_MASK

    def dual_form(self) -> "Plane":
        if self.is_dual:
            return self
        return Plane.from_multivector(self.dual().restricted(bl.PLANE_DUAL_MASK))

    def _sandwich_subspace(self) -> int:
        return bl.PLANE_DUAL_MASK if self.is_dual else bl.PLANE_PRIMAL_MASK

    def _wrap_like(self, mv: Multivector) -> "Plane":
        return Plane.from_multivector(mv.restricted(self._sandwich_subspace()))

    def decode(self) -> tuple[np.ndarray, float]:
        """(unit normal, signed distance d) with x . n = d on the plane."""
        dual = self.dual_form()
        n = np.array([dual.get(2), dual.get(4), dual.get(8)])
        norm_n = np.linalg.norm(n)
        if norm_n < DEGENERACY_EPS * max(1.0, _coeff_norm(dual)):
            raise DegeneratePrimitive("plane normal vanishes")
        return n / norm_n, float(dual.get(16) / norm_n)


class Sphere(Multivector):
    """Sphere, dual form C - r^2/2 einf or primal 4-point wedge."""

    SUBSPACE = bl.SPHERE_DUAL_MASK | bl.SPHERE_PRIMAL_MASK

    def __init__(self, center, radius):
        if radius < 0:
            raise ValueError("sphere radius must be nonnegative")
        c = as_point(center).normalized()
        mv = c - 0.5 * radius * radius * _EINF
        self._finish_init(bl.SPHERE_DUAL_MASK,
                          mv.expanded(bl.SPHERE_DUAL_MASK).coeffs.copy())

    @classmethod
    def from_points(cls, p1, p2, p3, p4) -> "Sphere":
        pts = [as_point(p) for p in (p1, p2, p3, p4)]
        mv = (((pts[0] ^ pts[1]) ^ pts[2]) ^ pts[3])
        if _coeff_norm(mv) < DEGENERACY_EPS * _input_scale(*pts):
            raise DegenerateConfiguration(
                "sphere needs four distinct non-coplanar points")
        return cls._raw(bl.SPHERE_PRIMAL_MASK,
                        mv.expanded(bl.SPHERE_PRIMAL_MASK).coeffs.copy())

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Sphere":
        if not mv.mask & ~bl.SPHERE_DUAL_MASK:
            return cls._raw(bl.SPHERE_DUAL_MASK,
                            mv.expanded(bl.SPHERE_DUAL_MASK).coeffs.copy())
        if not mv.mask & ~bl.SPHERE_PRIMAL_MASK:
            return cls._raw(bl.SPHERE_PRIMAL_MASK,
                            mv.expanded(bl.SPHERE_PRIMAL_MASK).coeffs.copy())
        raise DegeneratePrimitive("multivector does not fit a sphere form")

    @property
    def is_dual(self) -> bool:
        return not self.mask & ~bl.SPHERE_DUAL_MASK

    def dual_form(self) -> "Sphere":
        if self.is_dual:
            return self
        return Sphere.from_multivector(self.dual().restricted(bl.SPHERE_DUAL_MASK))

    def _sandwich_subspace(self) -> int:
        return bl.SPHERE_DUAL_MASK if self.is_dual else bl.SPHERE_PRIMAL_MASK

    def _wrap_like(self, mv: Multivector) -> "Sphere":
        return Sphere.from_multivector(mv.restricted(self._sandwich_subspace()))

    def decode(self) -> tuple[np.ndarray, float]:
        """(center, radius)."""
        dual = self.dual_form()
        w = dual.get(1)
        if abs(w) < 1e-12 * max(1.0, _coeff_norm(dual)):
            raise DegeneratePrimitive("sphere has vanishing e0 coefficient")
        center = np.array([dual.get(2), dual.get(4), dual.get(8)]) / w
        r_sq = float(center @ center - 2.0 * dual.get(16) / w)
        if r_sq < -DEGENERACY_EPS * max(1.0, center @ center):
            raise ImaginaryRadius("sphere has imaginary radius")
        return center, float(np.sqrt(max(r_sq, 0.0)))


def _primal_form(x: Multivector) -> Multivector:
    """Canonical primal representative for incidence operations."""
    if isinstance(x, (Plane, Sphere)) and x.is_dual:
        return x.undual()
    return x


def meet(a: Multivector, b: Multivector) -> Multivector:
    """Intersection: dual(dual(b) ^ dual(a)) on primal forms."""
    ap = _primal_form(a)
    bp = _primal_form(b)
    return (bp.dual() ^ ap.dual()).dual()


def project(a: Multivector, b: Multivector) -> Multivector:
    """Orthogonal projection of a onto b: (a . b) * inverse(b)."""
    bp = _primal_form(b)
    raw = (a | bp) * bp.inverse()
    sub = a._sandwich_subspace()
    if sub is not None:
        raw = raw.restricted(sub)
    return a._wrap_like(raw)


def reflect(a: Multivector, b: Multivector) -> Multivector:
    """Reflection of a in b (dual-form reflector): b * a * reverse(b)."""
    reflector = b.dual_form() if isinstance(b, (Plane, Sphere)) else b
    raw = (reflector * a) * reflector.reverse()
    sub = a._sandwich_subspace()
    if sub is not None:
        raw = raw.restricted(sub)
    return a._wrap_like(raw)
