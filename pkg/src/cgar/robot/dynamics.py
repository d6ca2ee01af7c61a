"""Inverse (RNEA) and forward (ABA) dynamics on a serial chain.

Twists and accelerations travel the recursions as generator bivectors,
transported between link frames by motor sandwiches and differentiated
with bivector commutators. Wrenches ride the same blade subspace with
swapped slots (linear force on the rotation blades, torque on the
translation blades); that storage makes the identical motor sandwich
and commutator implement the classical force transform and force cross
product, so no second set of transport code is needed.

Link inertia maps twist coordinates [w; v] to wrench coordinates [n; f]
through the usual 6x6 spatial-inertia matrix (coordinate ordering is
the MotorGenerator twist ordering).
"""

from __future__ import annotations

import numpy as np

from .. import blades as bl
from ..errors import SingularInertia
from ..multivector import Multivector, sandwich
from ..versors import Motor, MotorGenerator
from .kinematics import _chain_of, _split_q, joint_motors
from .model import Link, Manipulator

_BASIS_GENERATORS = [
    MotorGenerator([1, 0, 0], [0, 0, 0]),
    MotorGenerator([0, 1, 0], [0, 0, 0]),
    MotorGenerator([0, 0, 1], [0, 0, 0]),
    MotorGenerator([0, 0, 0], [1, 0, 0]),
    MotorGenerator([0, 0, 0], [0, 1, 0]),
    MotorGenerator([0, 0, 0], [0, 0, 1]),
]


def _skew(v: np.ndarray) -> np.ndarray:
    return np.array([[0.0, -v[2], v[1]],
                     [v[2], 0.0, -v[0]],
                     [-v[1], v[0], 0.0]])


def spatial_inertia(link: Link) -> np.ndarray:
    """6x6 inertia: [n; f] = I [w; v] about the link frame origin."""
    c = _skew(link.center_of_mass)
    out = np.zeros((6, 6))
    out[:3, :3] = link.inertia - link.mass * (c @ c)
    out[:3, 3:] = link.mass * c
    out[3:, :3] = -link.mass * c
    out[3:, 3:] = link.mass * np.eye(3)
    return out


class Wrench(Multivector):
    """Force/torque bivector with force on the rotation blades.

    The swapped placement is what lets motor sandwiches transport
    wrenches with the correct (inverse-transpose) adjoint.
    """

    SUBSPACE = bl.GENERATOR_MASK

    def __init__(self, torque=(0.0, 0.0, 0.0), force=(0.0, 0.0, 0.0)):
        mv = MotorGenerator(force, torque)
        self._finish_init(bl.GENERATOR_MASK, mv.coeffs.copy())

    @classmethod
    def from_multivector(cls, mv: Multivector) -> "Wrench":
        if mv.mask & ~bl.GENERATOR_MASK:
            raise ValueError("wrench must live on the generator blades")
        return cls._raw(bl.GENERATOR_MASK,
                        mv.expanded(bl.GENERATOR_MASK).coeffs.copy())

    def force(self) -> np.ndarray:
        return MotorGenerator.from_multivector(self).angular()

    def torque(self) -> np.ndarray:
        return MotorGenerator.from_multivector(self).linear()

    def to_array(self) -> np.ndarray:
        """Classical stacking [n; f]."""
        return np.concatenate([self.torque(), self.force()])


def _bracket(a: Multivector, b: Multivector) -> Multivector:
    """-[a, b] / 2 on the generator blades."""
    return (-0.5 * (a * b - b * a)).restricted(bl.GENERATOR_MASK)


def twist_cross_motion(a: Multivector, b: Multivector) -> MotorGenerator:
    """Velocity product crm(a) b of two twists."""
    return MotorGenerator.from_multivector(_bracket(a, b))


def twist_cross_force(a: Multivector, f: Multivector) -> Wrench:
    """Force product crf(a) f; same commutator thanks to wrench storage."""
    return Wrench.from_multivector(_bracket(a, f))


def _transport(motor: Motor, x: Multivector) -> Multivector:
    return sandwich(motor, x, bl.GENERATOR_MASK)


def apply_inertia(inertia6: np.ndarray, twist: Multivector) -> Wrench:
    t6 = MotorGenerator.from_multivector(twist).to_twist()
    nf = inertia6 @ t6
    return Wrench(torque=nf[:3], force=nf[3:])


def _pair(joint_twist: MotorGenerator, wrench: Wrench) -> float:
    """Power pairing: w . torque + v . force."""
    return float(joint_twist.angular() @ wrench.torque()
                 + joint_twist.linear() @ wrench.force())


def _chain_and_bodies(target):
    chain = _chain_of(target)
    if isinstance(target, Manipulator):
        bodies = [target.system.links[j.child] for j in chain.joints]
    else:
        raise TypeError("dynamics needs a Manipulator (links come from it)")
    return chain, bodies


def adjoint_matrix(motor: Motor) -> np.ndarray:
    """6x6 twist-coordinate action of the motor sandwich."""
    cols = [MotorGenerator.from_multivector(
                _transport(motor, g)).to_twist()
            for g in _BASIS_GENERATORS]
    return np.column_stack(cols)


def inverse_dynamics(target, q, qd, qdd, gravity=(0.0, 0.0, -9.81)) -> np.ndarray:
    """Joint torques for the prescribed motion (recursive Newton-Euler)."""
    chain, bodies = _chain_and_bodies(target)
    qd = np.asarray(qd, dtype=np.float64)
    qdd = np.asarray(qdd, dtype=np.float64)
    if qd.shape != (chain.dof,) or qdd.shape != (chain.dof,):
        raise ValueError(f"qd and qdd must have length {chain.dof}")
    motors = joint_motors(target, q)
    inertias = [spatial_inertia(b) for b in bodies]

    zero = Multivector.zero(bl.GENERATOR_MASK)
    v_prev: Multivector = zero
    # gravity enters as a fictitious base acceleration -g
    a_prev: Multivector = MotorGenerator(
        np.zeros(3), -np.asarray(gravity, dtype=np.float64))

    vels, accs, wrenches = [], [], []
    qi = 0
    dof_index = []
    for i, joint in enumerate(chain.joints):
        rev = motors[i].reverse()
        v = _transport(rev, v_prev)
        a = _transport(rev, a_prev)
        if joint.is_actuated:
            s = joint.twist()
            v = v + qd[qi] * s
            a = a + qdd[qi] * s + _bracket(v, qd[qi] * s)
            dof_index.append(qi)
            qi += 1
        else:
            dof_index.append(None)
        f = (apply_inertia(inertias[i], a)
             + _bracket(v, apply_inertia(inertias[i], v)))
        vels.append(v)
        accs.append(a)
        wrenches.append(f)
        v_prev, a_prev = v, a

    tau = np.zeros(chain.dof)
    for i in reversed(range(len(chain.joints))):
        joint = chain.joints[i]
        if dof_index[i] is not None:
            tau[dof_index[i]] = _pair(joint.twist(),
                                      Wrench.from_multivector(wrenches[i]))
        if i:
            wrenches[i - 1] = wrenches[i - 1] + _transport(motors[i], wrenches[i])
    return tau


def forward_dynamics(target, q, qd, tau, gravity=(0.0, 0.0, -9.81)) -> np.ndarray:
    """Joint accelerations from torques (articulated-body recursion).

    Frame transports use adjoint matrices built from motor sandwiches;
    the articulated inertias are plain 6x6 arrays.
    """
    chain, bodies = _chain_and_bodies(target)
    qd = np.asarray(qd, dtype=np.float64)
    tau = np.asarray(tau, dtype=np.float64)
    if qd.shape != (chain.dof,) or tau.shape != (chain.dof,):
        raise ValueError(f"qd and tau must have length {chain.dof}")
    motors = joint_motors(target, q)
    n_j = len(chain.joints)

    xs = [adjoint_matrix(m.reverse()) for m in motors]
    s6 = [j.twist().to_twist() if j.is_actuated else None for j in chain.joints]

    def crm6(t):
        out = np.zeros((6, 6))
        out[:3, :3] = _skew(t[:3])
        out[3:, 3:] = _skew(t[:3])
        out[3:, :3] = _skew(t[3:])
        return out

    v = [np.zeros(6) for _ in range(n_j)]
    c = [np.zeros(6) for _ in range(n_j)]
    ia = [spatial_inertia(b) for b in bodies]
    pa = [np.zeros(6) for _ in range(n_j)]
    qi = 0
    dof_index = []
    for i, joint in enumerate(chain.joints):
        v_parent = v[i - 1] if i else np.zeros(6)
        v[i] = xs[i] @ v_parent
        if joint.is_actuated:
            v[i] = v[i] + s6[i] * qd[qi]
            c[i] = crm6(v[i]) @ (s6[i] * qd[qi])
            dof_index.append(qi)
            qi += 1
        else:
            dof_index.append(None)
        pa[i] = -crm6(v[i]).T @ (ia[i] @ v[i])

    u_vec = [None] * n_j
    d_val = [None] * n_j
    u_bias = [None] * n_j
    for i in reversed(range(n_j)):
        if dof_index[i] is not None:
            u_vec[i] = ia[i] @ s6[i]
            d_val[i] = float(s6[i] @ u_vec[i])
            if abs(d_val[i]) < 1e-12:
                raise SingularInertia(
                    f"joint {chain.joints[i].name!r}: articulated inertia "
                    "pivot is singular (zero-mass subtree?)")
            u_bias[i] = tau[dof_index[i]] - float(s6[i] @ pa[i])
            ia_out = ia[i] - np.outer(u_vec[i], u_vec[i]) / d_val[i]
            pa_out = pa[i] + ia_out @ c[i] + u_vec[i] * (u_bias[i] / d_val[i])
        else:
            ia_out = ia[i]
            pa_out = pa[i] + ia_out @ c[i]
        if i:
            ia[i - 1] = ia[i - 1] + xs[i].T @ ia_out @ xs[i]
            pa[i - 1] = pa[i - 1] + xs[i].T @ pa_out

    qdd = np.zeros(chain.dof)
    a_prev = np.concatenate([np.zeros(3), -np.asarray(gravity, dtype=np.float64)])
    for i in range(n_j):
        a_here = xs[i] @ a_prev + c[i]
        if dof_index[i] is not None:
            qdd[dof_index[i]] = (u_bias[i] - float(u_vec[i] @ a_here)) / d_val[i]
            a_here = a_here + s6[i] * qdd[dof_index[i]]
        a_prev = a_here
    return qdd


def mass_matrix(target, q) -> np.ndarray:
    """Joint-space inertia assembled column by column via unit-qdd RNEA."""
    chain = _chain_of(target)
    n = chain.dof
    out = np.zeros((n, n))
    zero = np.zeros(n)
    for i in range(n):
        unit = np.zeros(n)
        unit[i] = 1.0
        out[:, i] = inverse_dynamics(target, q, zero, unit, gravity=(0, 0, 0))
    return out
