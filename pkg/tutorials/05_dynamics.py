"""Inverse and forward dynamics on a serial arm.

inverse_dynamics answers "what torques produce this motion", its
recursive counterpart forward_dynamics answers "what motion do these
torques produce". The two are exact inverses of each other. Run with:

    python3 tutorials/05_dynamics.py
"""

import numpy as np

from cgar import forward_dynamics, inverse_dynamics, load_manipulator, mass_matrix
from cgar.cli import load_model


def main():
    manip = load_manipulator(load_model("panda"))
    rng = np.random.default_rng(3)
    n = manip.dof

    q = rng.uniform(-1.0, 1.0, n)
    qd = rng.uniform(-1.0, 1.0, n)
    qdd = rng.uniform(-1.0, 1.0, n)

    tau = inverse_dynamics(manip, q, qd, qdd)
    print("torques for the commanded motion:")
    print(np.array_str(tau, precision=4))

    # Feed those torques back through forward dynamics: the original
    # accelerations reappear.
    back = forward_dynamics(manip, q, qd, tau)
    print("acceleration recovery error:", np.abs(back - qdd).max())
    print()

    # Gravity compensation: torque at zero velocity and acceleration.
    hold = inverse_dynamics(manip, q, np.zeros(n), np.zeros(n))
    print("gravity-compensation torques:")
    print(np.array_str(hold, precision=4))
    print()

    # The mass matrix is symmetric positive definite. Its eigenvalues
    # give the arm's inertia range at this posture.
    M = mass_matrix(manip, q)
    print("mass matrix symmetry error:", np.abs(M - M.T).max())
    print("eigenvalue range:", np.linalg.eigvalsh(M).min(), "to",
          np.linalg.eigvalsh(M).max())
    print()

    # Torque is linear in the acceleration: tau = M(q) qdd + bias(q, qd).
    bias = inverse_dynamics(manip, q, qd, np.zeros(n))
    predicted = M @ qdd + bias
    print("tau vs M qdd + bias:", np.abs(predicted - tau).max())
    print()

    # A quick energy audit on a short simulated trajectory: with zero
    # applied torque (gravity off), kinetic energy is conserved.
    def kinetic(qv, qdv):
        return 0.5 * qdv @ mass_matrix(manip, qv) @ qdv

    qs, qds = q.copy(), qd.copy()
    dt = 1e-4
    e0 = kinetic(qs, qds)
    for _ in range(200):
        acc = forward_dynamics(manip, qs, qds, np.zeros(n), gravity=(0, 0, 0))
        qs = qs + dt * qds + 0.5 * dt * dt * acc
        qds = qds + dt * acc
    e1 = kinetic(qs, qds)
    print(f"kinetic energy drift over 20 ms: {abs(e1 - e0):.2e}"
          f" (from {e0:.6f} J)")


if __name__ == "__main__":
    main()
