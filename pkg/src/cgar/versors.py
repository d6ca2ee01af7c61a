"""Rotors, translators, motors and dilators.

A versor V acts on geometry through the sandwich V x reverse(V).  The
typed subclasses here pin each versor to its blade subspace, so the
sandwich is evaluated only on the blades the argument can occupy and the
result comes back with the argument's type.

Exponential coordinates follow the screw convention: a motor generator

    G = wx e23 + wy e31 + wz e12 + vx e1i + vy e2i + vz e3i

carries the classical spatial twist (w, v) of a rigid motion (point
velocity w x p + v), and Motor.exp(G) evaluates exp(-G/2) in closed
form.  Motor.log inverts it on the principal branch.
"""

from __future__ import annotations

import numpy as np

from . import blades as bl
from .errors import LogBranchSingularity, NotUnitVersor
from .multivector import Multivector, basis_vectors, sandwich

_E0, _E1, _E2, _E3, _EINF = basis_vectors()

_UNIT_TOL = 1e-8
_LOG_EPS = 1e-7       # distance from the exp branch point scalar = -1
_SMALL_ANGLE = 1e-6   # switch to series for log translation coefficients

# blade positions inside ROTATION_MASK (e12, e13, e23 ascending) and
# TRANSLATION_MASK (e1i, e2i, e3i ascending)
_ROT_IDX = (6, 10, 12)
_TRANS_IDX = (18, 20, 24)


def rotation_bivector(w) -> Multivector:
    """wx e23 + wy e31 + wz e12 from an angular 3-vector."""
    w = np.asarray(w, dtype=np.float64)
    return Multivector.from_terms({12: w[0], 10: -w[1], 6: w[2]})


def translation_bivector(v) -> Multivector:
    """v ^ einf from a linear 3-vector."""
    v = np.asarray(v, dtype=np.float64)
    return Multivector.from_terms({18: v[0], 20: v[1], 24: v[2]})


def _angular_coords(mv: Multivector) -> np.ndarray:
    return np.array([mv.get(12), -mv.get(10), mv.get(6)])


def _linear_coords(mv: Multivector) -> np.ndarray:
    return np.array([mv.get(18), mv.get(20), mv.get(24)])


class MotorGenerator(Multivector):
    """Bivector generator of a motor: rotation plus einf-translation blades."""

    SUBSPACE = bl.GENERATOR_MASK

    def __init__(self, w=(0.0, 0.0, 0.0), v=(0.0, 0.0, 0.0)):
        mv = rotation_bivector(w) + translation_bivector(v)
        self._finish_init(bl.GENERATOR_MASK,
                          mv.expanded(bl.GENERATOR_MASK).coeffs.copy())

    @classmethod
    def from_twist(cls, w, v) -> "MotorGenerator":
        return cls(w, v)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "MotorGenerator":
        if mv.mask & ~bl.GENERATOR_MASK:
            raise ValueError("multivector has blades outside the generator subspace")
        return cls._raw(bl.GENERATOR_MASK,
                        mv.expanded(bl.GENERATOR_MASK).coeffs.copy())

    def angular(self) -> np.ndarray:
        return _angular_coords(self)

    def linear(self) -> np.ndarray:
        return _linear_coords(self)

    def to_twist(self) -> np.ndarray:
        """Stacked (w, v) as a length-6 array."""
        return np.concatenate([self.angular(), self.linear()])


class Versor(Multivector):
    """Base for unit versors; provides apply() and typed composition."""

    def unit_error(self) -> float:
        res = self * self.reverse() - 1.0
        return float(np.linalg.norm(res.coeffs)) if len(res.coeffs) else 0.0

    def is_unit(self, tol: float = _UNIT_TOL) -> bool:
        return self.unit_error() <= tol

    def _check_unit(self):
        err = self.unit_error()
        if err > _UNIT_TOL:
            raise NotUnitVersor(
                f"{type(self).__name__} deviates from unit norm by {err:.3e}")

    def normalized(self):
        """Rescale so the scalar part of V reverse(V) is one."""
        return type(self)._raw(
            self._mask, self._coeffs / np.sqrt(abs(self.scalar_product(self))))

    def apply(self, x: Multivector) -> Multivector:
        """Sandwich V x reverse(V), restricted to x's blade subspace."""
        self._check_unit()
        restrict = x._sandwich_subspace()
        raw = sandwich(self, x,
                       bl.FULL_MASK if restrict is None else restrict)
        return x._wrap_like(raw)

    def inverse(self) -> Multivector:
        return super().inverse()

    def __mul__(self, other):
        out = Multivector._product(self, other, "geometric")
        if out is NotImplemented or not isinstance(other, Versor):
            return out
        cls = _compose_type(type(self), type(other))
        if cls is not None and not out.mask & ~cls.SUBSPACE:
            return cls._raw(cls.SUBSPACE, out.expanded(cls.SUBSPACE).coeffs.copy())
        return out


class Rotor(Versor):
    """Euclidean rotation about an axis through the origin."""

    SUBSPACE = bl.ROTOR_MASK

    def __init__(self, axis=None, angle: float = 0.0):
        if axis is None:
            mv = Multivector.scalar(1.0)
        else:
            axis = np.asarray(axis, dtype=np.float64)
            norm = np.linalg.norm(axis)
            if norm == 0.0:
                raise ValueError("rotation axis must be nonzero")
            mv = _rotor_exp_mv(axis / norm * angle)
        self._finish_init(bl.ROTOR_MASK, mv.expanded(bl.ROTOR_MASK).coeffs.copy())

    @classmethod
    def identity(cls) -> "Rotor":
        return cls()

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Rotor":
        return cls(axis, angle)

    @classmethod
    def exp(cls, generator) -> "Rotor":
        """exp(-b/2) for a rotation bivector b (or angular 3-vector)."""
        if isinstance(generator, Multivector):
            w = _angular_coords(generator)
        else:
            w = np.asarray(generator, dtype=np.float64)
        mv = _rotor_exp_mv(w)
        return cls._raw(bl.ROTOR_MASK, mv.expanded(bl.ROTOR_MASK).coeffs.copy())

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Rotor":
        if mv.mask & ~bl.ROTOR_MASK:
            raise ValueError("multivector has blades outside the rotor subspace")
        return cls._raw(bl.ROTOR_MASK, mv.expanded(bl.ROTOR_MASK).coeffs.copy())

    def log(self) -> Multivector:
        """Principal rotation bivector b with Rotor.exp(b) == self."""
        w = _rotor_log_coords(self)
        return rotation_bivector(w)

    def axis_angle(self) -> tuple[np.ndarray, float]:
        w = _rotor_log_coords(self)
        angle = float(np.linalg.norm(w))
        if angle < 1e-300:
            return np.array([0.0, 0.0, 1.0]), 0.0
        return w / angle, angle

    def to_rotation_matrix(self) -> np.ndarray:
        self._check_unit()
        cols = []
        for e in (_E1, _E2, _E3):
            img = sandwich(self, e, bl.EUCLIDEAN_VECTOR_MASK)
            cols.append([img.get(2), img.get(4), img.get(8)])
        return np.array(cols).T


class Translator(Versor):
    """Pure translation 1 - t ^ einf / 2."""

    SUBSPACE = bl.TRANSLATOR_MASK

    def __init__(self, t=(0.0, 0.0, 0.0)):
        t = np.asarray(t, dtype=np.float64)
        mv = 1.0 - 0.5 * translation_bivector(t)
        self._finish_init(bl.TRANSLATOR_MASK,
                          mv.expanded(bl.TRANSLATOR_MASK).coeffs.copy())

    @classmethod
    def identity(cls) -> "Translator":
        return cls()

    @classmethod
    def from_translation(cls, t) -> "Translator":
        return cls(t)

    @classmethod
    def exp(cls, generator) -> "Translator":
        """exp(-g/2) = 1 - g/2 for a translation bivector g (nilpotent)."""
        if isinstance(generator, Multivector):
            v = _linear_coords(generator)
        else:
            v = np.asarray(generator, dtype=np.float64)
        return cls(v)

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Translator":
        if mv.mask & ~bl.TRANSLATOR_MASK:
            raise ValueError("multivector has blades outside the translator subspace")
        return cls._raw(bl.TRANSLATOR_MASK,
                        mv.expanded(bl.TRANSLATOR_MASK).coeffs.copy())

    def log(self) -> Multivector:
        return translation_bivector(self.translation())

    def translation(self) -> np.ndarray:
        scale = self.get(0)
        return -2.0 * _linear_coords(self) / scale


class Motor(Versor):
    """Rigid motion: translator times rotor."""

    SUBSPACE = bl.MOTOR_MASK

    def __init__(self):
        arr = np.zeros(bl.MOTOR_MASK.bit_count(), dtype=np.float64)
        arr[0] = 1.0
        self._finish_init(bl.MOTOR_MASK, arr)

    @classmethod
    def identity(cls) -> "Motor":
        return cls()

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Motor":
        if mv.mask & ~bl.MOTOR_MASK:
            raise ValueError("multivector has blades outside the motor subspace")
        return cls._raw(bl.MOTOR_MASK, mv.expanded(bl.MOTOR_MASK).coeffs.copy())

    @classmethod
    def from_rotor_translation(cls, rotor: Rotor, t) -> "Motor":
        return Translator(t) * rotor

    @classmethod
    def exp(cls, generator) -> "Motor":
        """Closed-form exp(-G/2) for a motor generator G.

        Splits the linear part against the rotation axis; the parallel
        component commutes as a translator while the orthogonal
        component rotates inside the screw.
        """
        if isinstance(generator, Multivector):
            if generator.mask & ~bl.GENERATOR_MASK:
                raise ValueError("generator has blades outside the bivector subspace")
            w = _angular_coords(generator)
            v = _linear_coords(generator)
        else:
            wv = np.asarray(generator, dtype=np.float64)
            w, v = wv[:3], wv[3:]
        theta = float(np.linalg.norm(w))
        if theta > 0.0:
            w_hat = w / theta
            v_par = (v @ w_hat) * w_hat
        else:
            v_par = np.zeros(3)
        v_perp = v - v_par
        k = 0.5 * np.sinc(theta / (2.0 * np.pi))   # sin(theta/2) / theta
        core = (np.cos(0.5 * theta)
                - k * (rotation_bivector(w) + translation_bivector(v_perp)))
        mv = (1.0 - 0.5 * translation_bivector(v_par)) * core
        return cls._raw(bl.MOTOR_MASK, mv.expanded(bl.MOTOR_MASK).coeffs.copy())

    def log(self) -> MotorGenerator:
        """Principal generator G with Motor.exp(G) == self.

        Raises LogBranchSingularity near the branch point (rotation by
        2 pi, where the rotor scalar part reaches -1).
        """
        rotor = self.rotor()
        w = _rotor_log_coords(rotor)
        theta = float(np.linalg.norm(w))
        trans = self * rotor.reverse()
        p = -2.0 * _linear_coords(trans)
        if theta < _SMALL_ANGLE:
            a = 1.0 - theta * theta / 12.0 - theta ** 4 / 720.0
            g = 1.0 / 12.0 + theta * theta / 720.0
        else:
            half = 0.5 * theta
            a = half / np.tan(half)
            g = (1.0 - a) / (theta * theta)
        v = a * p + g * (p @ w) * w - 0.5 * np.cross(w, p)
        return MotorGenerator(w, v)

    def rotor(self) -> Rotor:
        """Euclidean rotor factor (exact: the einf blades drop out)."""
        return Rotor.from_multivector(self.restricted(bl.ROTOR_MASK))

    def translator(self) -> Translator:
        mv = (self * self.rotor().reverse()).restricted(bl.TRANSLATOR_MASK)
        return Translator.from_multivector(mv)

    def translation(self) -> np.ndarray:
        return self.translator().translation()

    def to_homogeneous(self) -> np.ndarray:
        """4x4 rigid-transform matrix."""
        out = np.eye(4)
        out[:3, :3] = self.rotor().to_rotation_matrix()
        out[:3, 3] = self.translation()
        return out


class Dilator(Versor):
    """Uniform scaling about the origin: exp(log(s)/2 * e0 ^ einf)."""

    SUBSPACE = bl.DILATOR_MASK

    def __init__(self, scale: float = 1.0):
        if scale <= 0.0:
            raise ValueError("dilation scale must be positive")
        beta = 0.5 * np.log(scale)
        arr = np.array([np.cosh(beta), np.sinh(beta)])
        self._finish_init(bl.DILATOR_MASK, arr)

    @classmethod
    def identity(cls) -> "Dilator":
        return cls()

    @classmethod
    def from_scale(cls, scale: float) -> "Dilator":
        return cls(scale)

    def scale(self) -> float:
        return float((self.get(0) + self.get(17)) ** 2)


def _compose_type(a: type, b: type) -> type | None:
    if a is b:
        return a
    rigid = (Rotor, Translator, Motor)
    if issubclass(a, rigid) and issubclass(b, rigid):
        return Motor
    return None


def _rotor_exp_mv(w: np.ndarray) -> Multivector:
    theta = float(np.linalg.norm(w))
    k = 0.5 * np.sinc(theta / (2.0 * np.pi))
    return np.cos(0.5 * theta) - k * rotation_bivector(w)


def _rotor_log_coords(rotor: Multivector) -> np.ndarray:
    """Angular 3-vector of the principal rotor log."""
    c = rotor.get(0)
    biv = np.array([rotor.get(12), -rotor.get(10), rotor.get(6)])
    s = float(np.linalg.norm(biv))
    scale = float(np.hypot(c, s))
    if c <= (-1.0 + _LOG_EPS) * scale:
        raise LogBranchSingularity(
            "rotor is at the exp branch point (rotation by 2 pi)")
    if s < 1e-9:
        # exp(-b/2) ~ 1 - b/2, so b ~ -2 * bivector part
        return -2.0 * biv
    theta = 2.0 * np.arctan2(s, c)
    return -(theta / s) * biv
