"""Inverse kinematics with Gauss-Newton over motor and primitive targets.

Two kinds of goal are supported. A MotorCost pins the full pose. A
PrimitiveTargetCost asks a tool feature (a point or line on the
end-effector) to become incident with a scene feature (point, line,
plane, sphere, ...), leaving the remaining freedoms to the solver.

    python3 tutorials/06_inverse_kinematics.py
"""

import numpy as np

from cgar import (
    Line,
    MotorCost,
    Plane,
    Point,
    PrimitiveTargetCost,
    Sphere,
    SolverConfig,
    forward_kinematics,
    gauss_newton_solve,
    load_manipulator,
)
from cgar.cli import load_model


def main():
    manip = load_manipulator(load_model("panda"))
    rng = np.random.default_rng(42)

    # Full pose goal: pick a reachable motor by sampling a configuration,
    # then ask the solver to reach it from somewhere else.
    q_goal = manip.random_configuration(rng)
    target = forward_kinematics(manip, q_goal)
    cost = MotorCost(manip, target)

    q0 = manip.random_configuration(rng)
    report = gauss_newton_solve(cost, q0, SolverConfig(max_iterations=50, cost_tolerance=1e-18))
    print("pose goal:")
    print("  converged:", report.converged, " iterations:", report.iterations)
    print("  final cost:", report.final_cost)
    reached = forward_kinematics(manip, report.q)
    err = min(
        np.abs((reached - target).dense()).max(),
        np.abs((reached + target).dense()).max(),
    )
    print("  motor error (sign-normalized):", err)
    print()

    # Primitive goal: put the tool point on a plane. The problem is
    # underdetermined (any point of the plane will do), which is exactly
    # when primitive targets beat full pose targets.
    ground = Plane([0.0, 0.0, 1.0], 0.3)
    on_plane = PrimitiveTargetCost(manip, tool=Point(0, 0, 0), target=ground)
    report = gauss_newton_solve(on_plane, manip.home_configuration(),
                                SolverConfig(max_iterations=50, cost_tolerance=1e-18))
    x = forward_kinematics(manip, report.q).apply(Point(0, 0, 0))
    print("touch the plane z=0.3:")
    print("  converged:", report.converged)
    print("  tool point:", x.to_euclidean())
    print()

    # The same idea with a sphere: keep the tool point on a sphere of
    # radius 0.4 around a workpiece.
    shell = Sphere([0.3, 0.0, 0.4], 0.4)
    on_shell = PrimitiveTargetCost(manip, tool=Point(0, 0, 0), target=shell)
    report = gauss_newton_solve(on_shell, manip.home_configuration(),
                                SolverConfig(max_iterations=50, cost_tolerance=1e-18))
    x = forward_kinematics(manip, report.q).apply(Point(0, 0, 0))
    print("stay on the sphere:")
    print("  converged:", report.converged)
    print("  distance from center:",
          np.linalg.norm(x.to_euclidean() - np.array([0.3, 0.0, 0.4])))
    print()

    # Align the tool z axis with a scene line while ignoring position
    # along it: a line-to-line goal.
    tool_axis = Line.from_point_direction([0, 0, 0], [0, 0, 1])
    scene_line = Line.from_point_direction([0.4, 0.1, 0.5], [0, 0, 1])
    align = PrimitiveTargetCost(manip, tool=tool_axis, target=scene_line)
    report = gauss_newton_solve(align, manip.home_configuration(),
                                SolverConfig(max_iterations=80))
    moved = forward_kinematics(manip, report.q).apply(tool_axis)
    print("align with a vertical line:")
    print("  converged:", report.converged)
    print("  tool axis direction:", np.round(moved.normalized().direction(), 6))
    print()

    # Cost gradients are exact (closed form), which is what makes the
    # Gauss-Newton steps cheap. Check one against finite differences.
    qc = manip.random_configuration(rng)
    g = on_shell.gradient(qc)
    h = 1e-6
    fd = np.zeros_like(g)
    for i in range(manip.dof):
        qp, qm = qc.copy(), qc.copy()
        qp[i] += h
        qm[i] -= h
        fd[i] = (on_shell.value(qp) - on_shell.value(qm)) / (2 * h)
    print("gradient vs finite difference:", np.abs(g - fd).max())


if __name__ == "__main__":
    main()
