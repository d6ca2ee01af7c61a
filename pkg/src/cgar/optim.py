"""Inverse-kinematics cost functions and a damped Gauss-Newton solver.

Two cost families:

* MotorCost compares end-effector pose against a target motor through
  the motor logarithm (6-dim screw residual).
* PrimitiveTargetCost drives a tool primitive (point or line, attached
  to the end-effector) onto a target primitive. Incidence-type pairs
  use a wedge/contraction expression that vanishes exactly at contact;
  same-kind pairs use the difference of normalized coefficients.

All residuals are smooth in q, so the Gauss-Newton normal equations
with fixed damping converge quadratically near a solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import blades as bl
from .errors import (
    DegeneratePrimitive,
    LinearSolveFailure,
    NotUnitVersor,
)
from .multivector import Multivector, sandwich
from .primitives import Line, Plane, Point, Sphere
from .robot.kinematics import analytic_jacobian, forward_kinematics
from .versors import Motor

_DLOG_STEP = 1e-6


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 100
    damping: float = 1e-6
    step_tolerance: float = 1e-10
    cost_tolerance: float = 1e-12
    shrink: float = 0.5
    max_halvings: int = 20

    def __post_init__(self):
        if self.max_iterations < 1 or self.damping < 0:
            raise ValueError("bad solver configuration")


@dataclass
class SolveReport:
    q: np.ndarray
    converged: bool
    iterations: int
    final_cost: float
    cost_history: list[float] = field(default_factory=list)


class MotorCost:
    """Pose error 0.5 * |log(reverse(M_d) * M_ee(q))|^2.

    The relative motor is sign-normalized (motor and negated motor are
    the same rigid motion) so the log always takes the short branch.
    """

    def __init__(self, manipulator, target: Motor):
        if not target.is_unit():
            raise NotUnitVersor("target motor must be unit")
        self.manipulator = manipulator
        self.target = Motor.from_multivector(target.expanded(bl.MOTOR_MASK))
        self._target_rev = self.target.reverse()

    def _relative(self, q) -> Motor:
        rel = self._target_rev * forward_kinematics(self.manipulator, q)
        if rel.get(0) < 0.0:
            rel = Motor.from_multivector(
                Multivector._raw(rel.mask, -rel.coeffs))
        return rel

    def residual(self, q) -> np.ndarray:
        return self._relative(q).log().to_twist()

    def value(self, q) -> float:
        r = self.residual(q)
        return 0.5 * float(r @ r)

    def jacobian(self, q) -> np.ndarray:
        """6 x n chain rule: d(log coords)/d(motor coeffs) x dM/dq."""
        rel = self._relative(q)
        sign = 1.0
        raw = self._target_rev * forward_kinematics(self.manipulator, q)
        if raw.get(0) < 0.0:
            sign = -1.0
        dlog = _log_coefficient_jacobian(rel)
        cols = analytic_jacobian(self.manipulator, q)
        dmot = np.column_stack(
            [(self._target_rev * c).expanded(bl.MOTOR_MASK).coeffs
             for c in cols])
        return dlog @ (sign * dmot)

    def gradient(self, q) -> np.ndarray:
        return self.jacobian(q).T @ self.residual(q)


def _log_coefficient_jacobian(motor: Motor) -> np.ndarray:
    """6 x 8 central-difference differential of Motor.log coordinates."""
    base = motor.expanded(bl.MOTOR_MASK).coeffs
    out = np.zeros((6, 8))
    for j in range(8):
        plus = base.copy()
        plus[j] += _DLOG_STEP
        minus = base.copy()
        minus[j] -= _DLOG_STEP
        lp = Motor._raw(bl.MOTOR_MASK, plus).log().to_twist()
        lm = Motor._raw(bl.MOTOR_MASK, minus).log().to_twist()
        out[:, j] = (lp - lm) / (2.0 * _DLOG_STEP)
    return out


# -- primitive reaching ------------------------------------------------------

_POINT_TARGETS = ("point", "pointpair", "line", "circle", "plane", "sphere")
_LINE_TARGETS = ("point", "line")


def _kind_of(primitive: Multivector) -> str:
    return type(primitive).__name__.lower()


class PrimitiveTargetCost:
    """Drive apply(M_ee(q), tool) onto a fixed world-frame target.

    Supported pairs: point tool against point, point pair, line,
    circle, plane or sphere targets; line tool against point or line
    targets. The residual is linear in the transported tool, which
    keeps the Jacobian exact through the analytic motor derivative.
    """

    def __init__(self, manipulator, tool: Multivector, target: Multivector):
        self.manipulator = manipulator
        tool_kind = _kind_of(tool)
        target_kind = _kind_of(target)
        if tool_kind == "point":
            if target_kind not in _POINT_TARGETS:
                raise TypeError(
                    f"point tool cannot target a {target_kind}")
            tool = tool.normalized()
        elif tool_kind == "line":
            if target_kind not in _LINE_TARGETS:
                raise TypeError(f"line tool cannot target a {target_kind}")
            tool = tool.normalized()
        else:
            raise TypeError(f"tool must be a Point or Line, not {tool_kind}")
        if float(np.linalg.norm(target.coeffs)) < 1e-12:
            raise DegeneratePrimitive("target primitive is numerically zero")

        self.tool = tool
        self.tool_kind = tool_kind
        self.target_kind = target_kind
        self.target = self._prepare_target(target)

    def _prepare_target(self, target: Multivector) -> Multivector:
        kind = self.target_kind
        if kind == "point":
            return target.normalized()
        if kind == "line":
            return target.normalized()
        if kind in ("plane", "sphere"):
            # dual (grade-1) form so incidence is a single contraction
            dual = target.dual_form()
            return dual / float(np.linalg.norm(dual.coeffs))
        # point pair / circle: fixed positive rescale for conditioning
        return target / float(np.linalg.norm(target.coeffs))

    def _residual_of(self, tool_mv: Multivector) -> np.ndarray:
        kind = self.target_kind
        if self.tool_kind == "point":
            if kind == "point":
                # difference on the Euclidean blades only: for normalized
                # null points the einf coefficient is redundant, and
                # dropping it makes 0.5*|r|^2 = 0.5*|x - x_t|^2, which is
                # invariant under a common rigid motion of base and target
                diff = tool_mv - self.target
                return diff.restricted(
                    bl.EUCLIDEAN_VECTOR_MASK).expanded(
                    bl.EUCLIDEAN_VECTOR_MASK).coeffs
            if kind in ("plane", "sphere"):
                return np.atleast_1d((tool_mv | self.target).scalar_part())
            return (tool_mv ^ self.target).coeffs
        # line tool
        if kind == "point":
            return (self.target ^ tool_mv).coeffs
        return (tool_mv - self.target).expanded(bl.LINE_MASK).coeffs

    def _differential_of(self, dtool: Multivector) -> np.ndarray:
        """Residual differential for a tool perturbation.

        Same-kind residuals are affine in the tool (X - target), so the
        target term drops out here; the incidence residuals are linear
        and reuse the residual map unchanged.
        """
        kind = self.target_kind
        if self.tool_kind == "point" and kind == "point":
            return dtool.restricted(
                bl.EUCLIDEAN_VECTOR_MASK).expanded(
                bl.EUCLIDEAN_VECTOR_MASK).coeffs
        if self.tool_kind == "line" and kind == "line":
            return dtool.expanded(bl.LINE_MASK).coeffs
        return self._residual_of(dtool)

    def _transported_tool(self, motor: Motor) -> Multivector:
        return sandwich(motor, self.tool, self.tool.mask)

    def residual(self, q) -> np.ndarray:
        motor = forward_kinematics(self.manipulator, q)
        return np.asarray(self._residual_of(self._transported_tool(motor)),
                          dtype=np.float64)

    def value(self, q) -> float:
        r = self.residual(q)
        return 0.5 * float(r @ r)

    def jacobian(self, q) -> np.ndarray:
        motor = forward_kinematics(self.manipulator, q)
        rev = motor.reverse()
        cols = []
        for dcol in analytic_jacobian(self.manipulator, q):
            dtool = (dcol * self.tool * rev
                     + motor * self.tool * dcol.reverse())
            cols.append(self._differential_of(dtool.restricted(self.tool.mask)))
        return np.column_stack(cols)

    def gradient(self, q) -> np.ndarray:
        return self.jacobian(q).T @ self.residual(q)


def gauss_newton_solve(cost, q0, config: SolverConfig | None = None) -> SolveReport:
    """Damped Gauss-Newton with backtracking; returns the basin of q0."""
    cfg = config if config is not None else SolverConfig()
    q = np.asarray(q0, dtype=np.float64).copy()
    value = cost.value(q)
    history = [value]
    converged = False
    iterations = 0

    for _ in range(cfg.max_iterations):
        if value <= cfg.cost_tolerance:
            converged = True
            break
        r = cost.residual(q)
        jac = cost.jacobian(q)
        normal = jac.T @ jac + cfg.damping * np.eye(len(q))
        rhs = jac.T @ r
        try:
            step = -np.linalg.solve(normal, rhs)
        except np.linalg.LinAlgError as exc:
            raise LinearSolveFailure(
                "normal equations singular despite damping") from exc
        if not np.all(np.isfinite(step)):
            raise LinearSolveFailure("non-finite Gauss-Newton step")

        scale = 1.0
        accepted = False
        for _ in range(cfg.max_halvings + 1):
            q_try = q + scale * step
            value_try = cost.value(q_try)
            if value_try < value:
                accepted = True
                break
            scale *= cfg.shrink
        if not accepted:
            break
        q = q_try
        value = value_try
        history.append(value)
        iterations += 1
        if float(np.linalg.norm(scale * step)) <= cfg.step_tolerance:
            converged = True
            break
    else:
        converged = value <= cfg.cost_tolerance

    if value <= cfg.cost_tolerance:
        converged = True
    return SolveReport(q=q, converged=converged, iterations=iterations,
                       final_cost=value, cost_history=history)
