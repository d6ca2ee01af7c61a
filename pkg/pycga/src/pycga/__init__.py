"""Operator-first bindings over the cgar conformal geometric algebra core.

Everything here delegates to cgar; no numerics are reimplemented, so
every result is bit-for-bit what the core (and its `cga` command line)
produces.

Operator mapping on multivectors and primitives:

    a * b   geometric product
    a ^ b   outer product
    a | b   inner product
    a + b, a - b, ~a (reverse)

`^` and `|` bind looser than `+`/`-` in Python; parenthesize wedge and
dot expressions. A multivector holding only a scalar converts with
`float()`:

    >>> float(Point(1, 0, 0) | Point(0, 0, 0))
    -0.5

Robot helpers take either a loaded manipulator or anything
`Manipulator.load` accepts (a YAML path, a bundled model name such as
"panda" or "ur5", or a name on CGA_MODEL_PATH):

    >>> model = Manipulator.load("panda")
    >>> fk(model, [0, 0, 0, 0, 0, 0, 0])

No vectorized or batched calls in this version; loop in Python.
"""

from typing import Mapping

import numpy as np

import cgar
from cgar import (
    # primitives
    Circle,
    DirectionVector,
    Line,
    Plane,
    Point,
    PointPair,
    Sphere,
    TangentVector,
    Vector,
    meet,
    point_distance_squared,
    project,
    reflect,
    # versors
    Dilator,
    Motor,
    MotorGenerator,
    Rotor,
    Translator,
    # optimization
    MotorCost,
    PrimitiveTargetCost,
    SolverConfig,
    sandwich,
)

# Typed exceptions map 1:1 onto the core's (they are the core's).
from cgar import (
    CgarError,
    CycleDetected,
    DanglingReference,
    DegenerateConfiguration,
    DegeneratePoint,
    DegeneratePrimitive,
    DuplicateName,
    ImaginaryRadius,
    JointLimitViolation,
    LinearSolveFailure,
    LogBranchSingularity,
    MalformedURDF,
    NonSerialChain,
    NoSuchJoint,
    NotInvertible,
    NotUnitVersor,
    SchemaError,
    SingularInertia,
    UnknownBlade,
    UnsupportedJointType,
)
from cgar.cli import ik_payload as _ik_payload
from cgar.cli import load_model as _load_model
from cgar.cli import parse_target as _parse_target

__version__ = "0.1.0"


class Multivector(cgar.Multivector):
    """Core multivector, constructible from a {blade name: coefficient}
    mapping (blade indices work too)."""

    def __init__(self, terms=None, dtype=None):
        if terms is None:
            terms = {}
        if isinstance(terms, cgar.Multivector):
            super().__init__(terms.mask, terms.coeffs, dtype=dtype)
            return
        if not isinstance(terms, Mapping):
            raise TypeError(
                "expected a {blade name: coefficient} mapping, "
                f"got {type(terms).__name__}")
        base = cgar.Multivector.from_terms(terms)
        super().__init__(base.mask, base.coeffs, dtype=dtype)


class Manipulator(cgar.Manipulator):
    """Serial manipulator with a loader that understands model names."""

    @staticmethod
    def load(source, ee_joint: str | None = None) -> cgar.Manipulator:
        """Load a manipulator from a YAML path, a bundled model name,
        a name on CGA_MODEL_PATH, or an in-memory model document."""
        if isinstance(source, cgar.ModelDocument):
            return cgar.load_manipulator(source, ee_joint)
        return cgar.load_manipulator(_load_model(str(source)), ee_joint)


def _manipulator(model) -> cgar.Manipulator:
    if isinstance(model, cgar.Manipulator):
        return model
    return Manipulator.load(model)


def fk(model, q) -> Motor:
    """End-effector motor at configuration q."""
    return cgar.forward_kinematics(_manipulator(model), q)


def jacobian(model, q, kind: str = "geometric") -> np.ndarray:
    """Jacobian at q: "geometric" gives the 6 x n twist matrix (rows
    w1,w2,w3,v1,v2,v3), "analytic" the 8 x n motor-coefficient matrix."""
    manip = _manipulator(model)
    if kind == "geometric":
        cols = [g.to_twist() for g in cgar.geometric_jacobian(manip, q)]
        return np.column_stack(cols)
    if kind == "analytic":
        return cgar.analytic_jacobian_matrix(manip, q)
    raise ValueError(f"kind must be 'geometric' or 'analytic', got {kind!r}")


def rnea(model, q, qd, qdd, gravity=(0.0, 0.0, -9.81)) -> np.ndarray:
    """Inverse dynamics: joint torques for the commanded motion."""
    return cgar.inverse_dynamics(_manipulator(model), q, qd, qdd, gravity)


def aba(model, q, qd, tau, gravity=(0.0, 0.0, -9.81)) -> np.ndarray:
    """Forward dynamics: joint accelerations under the applied torques."""
    return cgar.forward_dynamics(_manipulator(model), q, qd, tau, gravity)


def ik(model, target, q0=None, seed: int = 0, restarts: int = 4,
       config: SolverConfig | None = None) -> dict:
    """Multi-start Gauss-Newton inverse kinematics.

    `target` is a Motor (full pose goal), a geometric primitive (the
    end-effector origin point is driven onto it), a prepared cost
    object, or a CLI-style string like "pose:0.4,0.1,0.5,0,3.14,0" or
    "plane:0,0,1,0.3". Returns the same payload dict the `cga ik --json`
    command emits.
    """
    manip = _manipulator(model)
    if isinstance(target, str):
        cost = _parse_target(manip, target)
    elif isinstance(target, Motor):
        cost = MotorCost(manip, target)
    elif isinstance(target, cgar.Multivector):
        cost = PrimitiveTargetCost(manip, Point(0.0, 0.0, 0.0), target)
    elif hasattr(target, "residual") and hasattr(target, "jacobian"):
        cost = target
    else:
        raise TypeError(
            "target must be a Motor, a primitive, a cost, or a spec string")
    if q0 is None:
        q0 = manip.home_configuration()
    if config is None:
        config = SolverConfig()
    return _ik_payload(manip, cost, np.asarray(q0, dtype=np.float64),
                       seed, restarts, config)


__all__ = [
    "__version__",
    "Multivector",
    # primitives
    "Point", "Vector", "DirectionVector", "TangentVector",
    "PointPair", "Line", "Circle", "Plane", "Sphere",
    "meet", "project", "reflect", "point_distance_squared", "sandwich",
    # versors
    "Rotor", "Translator", "Motor", "Dilator", "MotorGenerator",
    # robots
    "Manipulator", "fk", "jacobian", "rnea", "aba", "ik",
    "MotorCost", "PrimitiveTargetCost", "SolverConfig",
    # errors
    "CgarError", "CycleDetected", "DanglingReference",
    "DegenerateConfiguration", "DegeneratePoint", "DegeneratePrimitive",
    "DuplicateName", "ImaginaryRadius", "JointLimitViolation",
    "LinearSolveFailure", "LogBranchSingularity", "MalformedURDF",
    "NonSerialChain", "NoSuchJoint", "NotInvertible", "NotUnitVersor",
    "SchemaError", "SingularInertia", "UnknownBlade",
    "UnsupportedJointType",
]
