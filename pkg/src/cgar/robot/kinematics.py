"""Forward kinematics and Jacobians by motor composition.

All quantities are expressed in the system base frame unless noted.
Jacobian columns are returned per actuated joint, in chain order.
"""

from __future__ import annotations

import numpy as np

from .. import blades as bl
from ..multivector import Multivector, sandwich
from ..versors import Motor, MotorGenerator
from .model import KinematicChain, Manipulator


def _chain_of(target) -> KinematicChain:
    return target.chain if isinstance(target, Manipulator) else target


def _split_q(chain: KinematicChain, q) -> list[float]:
    """Per-joint position list (0.0 for fixed joints)."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (chain.dof,):
        raise ValueError(f"expected {chain.dof} joint positions, got {q.shape}")
    out = []
    qi = 0
    for joint in chain.joints:
        if joint.is_actuated:
            out.append(float(q[qi]))
            qi += 1
        else:
            out.append(0.0)
    return out

def joint_motors(target, q) -> list[Motor]:
    """Motor of every chain joint (fixed ones included) at configuration q."""
    chain = _chain_of(target)
    return [joint.motor(qj)
            for joint, qj in zip(chain.joints, _split_q(chain, q))]


def _prefix_motors(motors: list[Motor]) -> list[Motor]:
    """Running products M_1..M_k, one entry per joint."""
    out = []
    acc = Motor()
    for m in motors:
        acc = acc * m
        out.append(acc)
    return out


def forward_kinematics(target, q) -> Motor:
    """End-effector motor: ordered product of the chain joint motors."""
    acc = Motor()
    for m in joint_motors(target, q):
        acc = acc * m
    if isinstance(target, Manipulator):
        acc = target.system.world_motor * acc
    return acc


def geometric_jacobian(target, q) -> list[MotorGenerator]:
    """Base-frame twist of each actuated joint at configuration q.

    Column i is the joint generator transported by the motor product up
    to and including joint i (the joint's own motion commutes with its
    generator, so including it changes nothing).
    """
    chain = _chain_of(target)
    prefixes = _prefix_motors(joint_motors(target, q))
    world = target.system.world_motor if isinstance(target, Manipulator) else None
    cols = []
    for joint, prefix in zip(chain.joints, prefixes):
        if not joint.is_actuated:
            continue
        if world is not None:
            prefix = world * prefix
        cols.append(MotorGenerator.from_multivector(
            sandwich(prefix, joint.twist(), bl.GENERATOR_MASK)))
    return cols


def analytic_jacobian(target, q) -> list[Multivector]:
    """Coefficient-wise derivative dM_ee/dq_i, one motor-blade column per dof.

    Column i = M_(1..i) * (-B_i / 2) * M_(i+1..n): differentiating the
    exponential of joint i inside the product.
    """
    chain = _chain_of(target)
    motors = joint_motors(target, q)
    prefixes = _prefix_motors(motors)
    # suffix products M_(i+1..n)
    suffixes = [Motor()] * (len(motors) + 1)
    for i in range(len(motors) - 1, -1, -1):
        suffixes[i] = motors[i] * suffixes[i + 1]
    world = target.system.world_motor if isinstance(target, Manipulator) else None
    cols = []
    for i, joint in enumerate(chain.joints):
        if not joint.is_actuated:
            continue
        col = prefixes[i] * (-0.5 * joint.twist()) * suffixes[i + 1]
        if world is not None:
            col = world * col
        cols.append(col.expanded(bl.MOTOR_MASK))
    return cols


def analytic_jacobian_matrix(target, q) -> np.ndarray:
    """8 x n array of the motor-coefficient derivatives."""
    cols = analytic_jacobian(target, q)
    return np.column_stack([c.coeffs for c in cols]) if cols else np.zeros((8, 0))


def frame_jacobian(target, q) -> list[MotorGenerator]:
    """Geometric Jacobian transported into the end-effector frame."""
    ee = forward_kinematics(target, q)
    ee_rev = ee.reverse()
    return [MotorGenerator.from_multivector(
                sandwich(ee_rev, col, bl.GENERATOR_MASK))
            for col in geometric_jacobian(target, q)]
