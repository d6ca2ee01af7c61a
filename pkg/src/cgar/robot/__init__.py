from .model import Joint, JointLimits, KinematicChain, Link, Manipulator, System
from .kinematics import (
    analytic_jacobian,
    analytic_jacobian_matrix,
    forward_kinematics,
    frame_jacobian,
    geometric_jacobian,
    joint_motors,
)
from .dynamics import (
    Wrench,
    adjoint_matrix,
    apply_inertia,
    forward_dynamics,
    inverse_dynamics,
    mass_matrix,
    spatial_inertia,
    twist_cross_force,
    twist_cross_motion,
)

__all__ = [
    "Joint", "JointLimits", "KinematicChain", "Link", "Manipulator", "System",
    "analytic_jacobian", "analytic_jacobian_matrix", "forward_kinematics",
    "frame_jacobian", "geometric_jacobian", "joint_motors",
    "Wrench", "adjoint_matrix", "apply_inertia", "forward_dynamics",
    "inverse_dynamics", "mass_matrix", "spatial_inertia",
    "twist_cross_force", "twist_cross_motion",
]
