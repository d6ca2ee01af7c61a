"""Forward kinematics and Jacobians on a serial arm.

Every joint contributes one motor; the end-effector pose is their
product. The Jacobian comes in two flavours: geometric (columns are
screw generators) and analytic (columns are derivatives of the motor
coefficients). Run with:

    python3 tutorials/04_forward_kinematics.py
"""

import numpy as np

from cgar import (
    Point,
    analytic_jacobian_matrix,
    forward_kinematics,
    geometric_jacobian,
    joint_motors,
    load_manipulator,
)
from cgar import blades as bl
from cgar.cli import load_model


def main():
    manip = load_manipulator(load_model("ur5"))
    print("model:", manip.system.name, " dof:", manip.dof)
    print("joints:", [j.name for j in manip.chain.joints])
    print()

    q = np.array([0.1, -0.4, 0.6, -0.2, 0.3, 0.0])
    ee = forward_kinematics(manip, q)
    print("end-effector motor:", ee)
    print("as homogeneous matrix:")
    print(np.array_str(ee.to_homogeneous(), precision=4, suppress_small=True))
    print()

    # The pose really is the product of per-joint motors.
    motors = joint_motors(manip, q)
    prod = motors[0]
    for m in motors[1:]:
        prod = prod * m
    print("product-of-motors error:", np.abs((prod - ee).dense()).max())
    print()

    # Geometric Jacobian: column i is the screw generated by joint i,
    # expressed at the current configuration. Pair it with joint rates to
    # get the end-effector twist.
    J = geometric_jacobian(manip, q)
    qd = np.array([0.2, 0.0, -0.1, 0.0, 0.4, 0.1])
    twist = J[0] * qd[0]
    for col, rate in zip(J[1:], qd[1:]):
        twist = twist + col * rate

    # Sanity check the twist against a finite difference of a tracked
    # point: v = -(twist x - x twist)/2 for a point x on the body.
    x = ee.apply(Point(0.0, 0.0, 0.0))
    v = ((twist * x) - (x * twist)) * -0.5
    v = v.restricted(bl.EUCLIDEAN_VECTOR_MASK)

    h = 1e-6
    xp = forward_kinematics(manip, q + h * qd).apply(Point(0, 0, 0))
    xm = forward_kinematics(manip, q - h * qd).apply(Point(0, 0, 0))
    fd = (xp.to_euclidean() - xm.to_euclidean()) / (2 * h)
    print("point velocity (algebra):", v.coeffs)
    print("point velocity (finite difference):", fd)
    print()

    # Analytic Jacobian: an 8 x dof matrix of motor-coefficient
    # derivatives, the object a Gauss-Newton solver wants.
    A = analytic_jacobian_matrix(manip, q)
    print("analytic jacobian shape:", A.shape)

    col3 = A[:, 3]
    ql, qr = q.copy(), q.copy()
    ql[3] -= h
    qr[3] += h
    fd_col = (
        forward_kinematics(manip, qr).expanded(bl.MOTOR_MASK).coeffs
        - forward_kinematics(manip, ql).expanded(bl.MOTOR_MASK).coeffs
    ) / (2 * h)
    print("column 3 vs finite difference:", np.abs(col3 - fd_col).max())


if __name__ == "__main__":
    main()
