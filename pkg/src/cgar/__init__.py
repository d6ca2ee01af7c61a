"""Conformal geometric algebra toolkit for serial-manipulator robotics.

The algebra lives on the 32-blade conformal model of 3-space. On top of
it sit geometric primitives (points, lines, planes, spheres, circles,
point pairs), the versor group (rotors, translators, motors, dilators),
a rigid-body robot layer (FK, Jacobians, inverse/forward dynamics), an
inverse-kinematics solver, and YAML/URDF model loading.
"""

from .blades import BladeSet, blade_index, blade_name, grade
from .cayley import CayleyTable, generate_cayley_tables
from .errors import (
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
from .modelio import (
    ModelDocument,
    convert_urdf,
    document_from_yaml,
    emit_yaml,
    load_document,
    load_manipulator,
    load_system,
    save_document,
)
from .multivector import Multivector, sandwich
from .optim import (
    MotorCost,
    PrimitiveTargetCost,
    SolveReport,
    SolverConfig,
    gauss_newton_solve,
)
from .primitives import (
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
)
from .robot import (
    Joint,
    JointLimits,
    KinematicChain,
    Link,
    Manipulator,
    System,
    Wrench,
    analytic_jacobian,
    analytic_jacobian_matrix,
    forward_dynamics,
    forward_kinematics,
    frame_jacobian,
    geometric_jacobian,
    inverse_dynamics,
    joint_motors,
    mass_matrix,
)
from .versors import Dilator, Motor, MotorGenerator, Rotor, Translator, Versor

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # algebra
    "BladeSet", "blade_index", "blade_name", "grade",
    "CayleyTable", "generate_cayley_tables",
    "Multivector", "sandwich",
    # primitives
    "Point", "Vector", "DirectionVector", "TangentVector",
    "PointPair", "Line", "Circle", "Plane", "Sphere",
    "meet", "project", "reflect", "point_distance_squared",
    # versors
    "Versor", "Rotor", "Translator", "Motor", "Dilator", "MotorGenerator",
    # robot
    "Joint", "JointLimits", "Link", "KinematicChain", "System", "Manipulator",
    "Wrench", "forward_kinematics", "joint_motors",
    "geometric_jacobian", "analytic_jacobian", "analytic_jacobian_matrix",
    "frame_jacobian", "inverse_dynamics", "forward_dynamics", "mass_matrix",
    # optimization
    "MotorCost", "PrimitiveTargetCost", "SolverConfig", "SolveReport",
    "gauss_newton_solve",
    # model io
    "ModelDocument", "load_document", "document_from_yaml", "emit_yaml",
    "save_document", "load_system", "load_manipulator", "convert_urdf",
    # errors
    "CgarError", "NotInvertible", "NotUnitVersor", "LogBranchSingularity",
    "UnknownBlade", "DegeneratePoint", "DegenerateConfiguration",
    "DegeneratePrimitive", "ImaginaryRadius", "DuplicateName",
    "DanglingReference", "CycleDetected", "JointLimitViolation",
    "SingularInertia", "NoSuchJoint", "NonSerialChain", "LinearSolveFailure",
    "SchemaError", "UnsupportedJointType", "MalformedURDF",
]
