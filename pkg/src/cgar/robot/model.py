"""Joint-link systems, kinematic chains and serial manipulators.

A System is built incrementally (add_link / add_joint / add_kinematic_chain)
and frozen by finalize(), which validates the tree structure. Manipulator
wraps a System plus one designated end-effector chain and exposes the
kinematics and dynamics entry points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import (
    CycleDetected,
    DanglingReference,
    DuplicateName,
    JointLimitViolation,
    NonSerialChain,
    NoSuchJoint,
)
from ..versors import Motor, MotorGenerator

JOINT_KINDS = ("fixed", "revolute", "prismatic")


@dataclass(frozen=True)
class JointLimits:
    lower: float = -np.inf
    upper: float = np.inf
    velocity: float | None = None
    effort: float | None = None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(
                f"joint limits out of order: {self.lower} > {self.upper}")


class Joint:
    """One connection in the tree; owns the parent->joint frame motor."""

    def __init__(self, name: str, kind: str, parent: str, child: str,
                 frame_motor: Motor | None = None, axis=None,
                 limits: JointLimits | None = None):
        if kind not in JOINT_KINDS:
            raise ValueError(f"joint {name!r}: unknown kind {kind!r}")
        self.name = name
        self.kind = kind
        self.parent = parent
        self.child = child
        self.frame_motor = frame_motor if frame_motor is not None else Motor()
        if kind == "fixed":
            self.axis = None
        else:
            if axis is None:
                raise ValueError(f"joint {name!r}: {kind} joint needs an axis")
            axis = np.asarray(axis, dtype=np.float64)
            norm = np.linalg.norm(axis)
            if norm < 1e-12:
                raise ValueError(f"joint {name!r}: axis must be nonzero")
            self.axis = axis / norm
        self.limits = limits

    @property
    def is_actuated(self) -> bool:
        return self.kind != "fixed"

    def twist(self) -> MotorGenerator | None:
        """Unit generator in the joint frame; None for fixed joints."""
        if self.kind == "revolute":
            return MotorGenerator(self.axis, np.zeros(3))
        if self.kind == "prismatic":
            return MotorGenerator(np.zeros(3), self.axis)
        return None

    def motor(self, q: float = 0.0) -> Motor:
        """frame_motor composed with the joint motion at position q."""
        if self.kind == "fixed":
            return self.frame_motor
        gen = self.twist()
        return self.frame_motor * Motor.exp(
            MotorGenerator._raw(gen.mask, gen.coeffs * q))

    def check_limit(self, q: float):
        lim = self.limits
        if lim is not None and not (lim.lower <= q <= lim.upper):
            raise JointLimitViolation(
                f"joint {self.name!r}: position {q} outside "
                f"[{lim.lower}, {lim.upper}]")


class Link:
    """Rigid body: mass, center of mass and rotational inertia about it."""

    def __init__(self, name: str, mass: float = 0.0,
                 center_of_mass=(0.0, 0.0, 0.0), inertia=None):
        if mass < 0:
            raise ValueError(f"link {name!r}: negative mass")
        self.name = name
        self.mass = float(mass)
        self.center_of_mass = np.asarray(center_of_mass, dtype=np.float64)
        if inertia is None:
            inertia = np.zeros((3, 3))
        inertia = np.asarray(inertia, dtype=np.float64)
        if inertia.shape != (3, 3):
            raise ValueError(f"link {name!r}: inertia must be 3x3")
        if np.max(np.abs(inertia - inertia.T)) > 1e-9:
            raise ValueError(f"link {name!r}: inertia must be symmetric")
        if np.min(np.linalg.eigvalsh(inertia)) < -1e-9:
            raise ValueError(f"link {name!r}: inertia must be positive semi-definite")
        self.inertia = 0.5 * (inertia + inertia.T)


class KinematicChain:
    """Ordered base-to-tip joint sequence of a serial mechanism."""

    def __init__(self, name: str, joints: list[Joint]):
        if not joints:
            raise ValueError(f"chain {name!r}: needs at least one joint")
        for prev, nxt in zip(joints, joints[1:]):
            if prev.child != nxt.parent:
                raise NonSerialChain(
                    f"chain {name!r}: joint {nxt.name!r} does not follow "
                    f"{prev.name!r} (parent {nxt.parent!r} != child {prev.child!r})")
        self.name = name
        self.joints = list(joints)
        self.actuated = [j for j in self.joints if j.is_actuated]
        self.dof = len(self.actuated)
        if self.dof < 1:
            raise ValueError(f"chain {name!r}: no actuated joints")


class System:
    """Tree of links and joints; immutable once finalized."""

    def __init__(self, name: str = "system"):
        self.name = name
        self.links: dict[str, Link] = {}
        self.joints: dict[str, Joint] = {}
        self.chains: dict[str, KinematicChain] = {}
        self.base_link: str | None = None
        self.world_motor = Motor()
        self._chain_specs: dict[str, list[str]] = {}
        self._finalized = False

    def _assert_open(self):
        if self._finalized:
            raise RuntimeError(f"system {self.name!r} is finalized")

    def add_link(self, link: Link) -> "System":
        self._assert_open()
        if link.name in self.links:
            raise DuplicateName(f"link {link.name!r} already exists")
        self.links[link.name] = link
        return self

    def add_joint(self, joint: Joint) -> "System":
        self._assert_open()
        if joint.name in self.joints:
            raise DuplicateName(f"joint {joint.name!r} already exists")
        self.joints[joint.name] = joint
        return self

    def add_kinematic_chain(self, name: str, joint_names: list[str]) -> "System":
        self._assert_open()
        if name in self._chain_specs:
            raise DuplicateName(f"chain {name!r} already exists")
        self._chain_specs[name] = list(joint_names)
        return self

    def finalize(self) -> "System":
        """Validate references and tree structure; freeze the system."""
        if self._finalized:
            return self
        parent_joint: dict[str, str] = {}
        for joint in self.joints.values():
            for end, role in ((joint.parent, "parent"), (joint.child, "child")):
                if end not in self.links:
                    raise DanglingReference(
                        f"joint {joint.name!r}: {role} link {end!r} is not defined")
            if joint.child in parent_joint:
                raise CycleDetected(
                    f"link {joint.child!r} has two parent joints: "
                    f"{parent_joint[joint.child]!r} and {joint.name!r}")
            parent_joint[joint.child] = joint.name

        roots = [name for name in self.links if name not in parent_joint]
        if not roots:
            raise CycleDetected(f"system {self.name!r}: no base link (cycle)")
        if len(roots) > 1:
            raise DanglingReference(
                f"system {self.name!r}: links {sorted(roots)} are all roots; "
                "the tree must be connected")
        self.base_link = roots[0]

        # walking up from any link must reach the base (guards reconvergence)
        for name in self.links:
            seen = set()
            cur = name
            while cur != self.base_link:
                if cur in seen:
                    raise CycleDetected(f"cycle through link {cur!r}")
                seen.add(cur)
                cur = self.joints[parent_joint[cur]].parent

        self._parent_joint = parent_joint
        for cname, joint_names in self._chain_specs.items():
            joints = []
            for jn in joint_names:
                if jn not in self.joints:
                    raise DanglingReference(
                        f"chain {cname!r}: joint {jn!r} is not defined")
                joints.append(self.joints[jn])
            self.chains[cname] = KinematicChain(cname, joints)

        self._finalized = True
        return self

    def chain_to_joint(self, joint_name: str) -> KinematicChain:
        """Base-to-tip chain ending at the named joint."""
        if not self._finalized:
            raise RuntimeError("finalize the system first")
        if joint_name not in self.joints:
            raise NoSuchJoint(f"joint {joint_name!r} is not defined")
        joints = []
        joint = self.joints[joint_name]
        while True:
            joints.append(joint)
            parent = joint.parent
            if parent == self.base_link:
                break
            up = self._parent_joint.get(parent)
            if up is None:
                raise NonSerialChain(
                    f"no path from base to joint {joint_name!r}")
            joint = self.joints[up]
        return KinematicChain(f"base_to_{joint_name}", list(reversed(joints)))


class Manipulator:
    """System with a designated end-effector chain; fixed dof n."""

    def __init__(self, system: System, ee_joint: str, name: str | None = None):
        system.finalize()
        self.system = system
        self.name = name if name is not None else system.name
        self.ee_joint = ee_joint
        self.chain = system.chain_to_joint(ee_joint)
        self.dof = self.chain.dof

    # thin delegation; the math lives in kinematics / dynamics
    def _check_q(self, q, label: str = "q"):
        q = np.asarray(q, dtype=np.float64)
        if q.shape != (self.dof,):
            raise ValueError(
                f"{label} must have length {self.dof}, got shape {q.shape}")
        return q

    def check_limits(self, q):
        q = self._check_q(q)
        for joint, qi in zip(self.chain.actuated, q):
            joint.check_limit(float(qi))

    def limit_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        lower, upper = [], []
        for joint in self.chain.actuated:
            lim = joint.limits
            lower.append(lim.lower if lim else -np.inf)
            upper.append(lim.upper if lim else np.inf)
        return np.array(lower), np.array(upper)

    def home_configuration(self) -> np.ndarray:
        """Midpoint of the limits per joint; zero where unlimited."""
        lower, upper = self.limit_arrays()
        with np.errstate(invalid="ignore"):
            mid = 0.5 * (lower + upper)
        return np.where(np.isfinite(mid), mid, 0.0)

    def random_configuration(self, rng) -> np.ndarray:
        lower, upper = self.limit_arrays()
        lower = np.where(np.isfinite(lower), lower, -np.pi)
        upper = np.where(np.isfinite(upper), upper, np.pi)
        return rng.uniform(lower, upper)

    def ee_motor(self, q) -> Motor:
        from . import kinematics
        return kinematics.forward_kinematics(self, q)

    def geometric_jacobian(self, q) -> list[MotorGenerator]:
        from . import kinematics
        return kinematics.geometric_jacobian(self, q)

    def analytic_jacobian(self, q):
        from . import kinematics
        return kinematics.analytic_jacobian(self, q)

    def frame_jacobian(self, q) -> list[MotorGenerator]:
        from . import kinematics
        return kinematics.frame_jacobian(self, q)

    def inverse_dynamics(self, q, qd, qdd, gravity=(0.0, 0.0, -9.81)):
        from . import dynamics
        return dynamics.inverse_dynamics(self, q, qd, qdd, gravity)

    def forward_dynamics(self, q, qd, tau, gravity=(0.0, 0.0, -9.81)):
        from . import dynamics
        return dynamics.forward_dynamics(self, q, qd, tau, gravity)

    def mass_matrix(self, q):
        from . import dynamics
        return dynamics.mass_matrix(self, q)
