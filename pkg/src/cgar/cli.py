"""The ``cga`` command line tool.

Subcommands: ``fk``, ``jacobian``, ``rnea``, ``aba``, ``ik``, ``bench``,
``convert-urdf``. Models are referenced by file path or by bare name;
bare names are searched in the directories listed in the
``CGA_MODEL_PATH`` environment variable (``os.pathsep`` separated) and
then among the bundled models (``panda``, ``ur5``).

Exit codes: 0 on success, 1 on loader/operation errors, 2 when ``ik``
does not converge (the report is still printed).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import blades as bl
from .errors import CgarError, SchemaError
from .modelio import (
    ModelDocument,
    convert_urdf,
    document_from_yaml,
    emit_yaml,
    load_manipulator,
    origin_motor,
)
from .optim import (
    MotorCost,
    PrimitiveTargetCost,
    SolverConfig,
    gauss_newton_solve,
)
from .primitives import Circle, Line, Plane, Point, PointPair
from .primitives import Sphere
from .versors import Motor, Rotor, Translator

__all__ = [
    "main",
    "console_main",
    "resolve_model",
    "load_model",
    "parse_target",
    "fk_payload",
    "jacobian_payload",
    "rnea_payload",
    "aba_payload",
    "ik_payload",
    "run_benchmark",
]

_BUNDLED = "cgar"
_IK_RESIDUAL_TOL = 1e-6


# -- model resolution ---------------------------------------------------------

def resolve_model(spec: str):
    """Map a --model value to readable YAML text."""
    path = Path(spec)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    names = [spec] if spec.endswith(".yaml") else [spec + ".yaml", spec]
    for directory in filter(None, os.environ.get("CGA_MODEL_PATH", "").split(os.pathsep)):
        for name in names:
            candidate = Path(directory) / name
            if candidate.is_file():
                return candidate.read_text(encoding="utf-8")
    bundled = resources.files(_BUNDLED) / "models"
    for name in names:
        candidate = bundled / name
        if candidate.is_file():
            return candidate.read_text(encoding="utf-8")
    raise SchemaError(
        f"model {spec!r} not found (searched the path, CGA_MODEL_PATH, "
        f"and bundled models)")


def load_model(spec: str) -> ModelDocument:
    return document_from_yaml(resolve_model(spec))


def _parse_vector(text: str, n: int | None = None, label: str = "vector") -> np.ndarray:
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        values = np.array([float(p) for p in parts], dtype=np.float64)
    except ValueError:
        raise ValueError(f"{label}: expected numbers, got {text!r}") from None
    if n is not None and len(values) != n:
        raise ValueError(f"{label}: expected {n} values, got {len(values)}")
    return values


def _q_or_zeros(arg, manip, label: str) -> np.ndarray:
    if arg is None:
        return np.zeros(manip.dof)
    q = _parse_vector(arg, None, label)
    if len(q) != manip.dof:
        raise ValueError(
            f"{label}: model {manip.name!r} has {manip.dof} degrees of freedom, "
            f"got {len(q)} values")
    return q


# -- payload builders (shared with the bindings package) ----------------------

def _motor_entry(motor: Motor) -> dict:
    mv = motor.expanded(bl.MOTOR_MASK)
    return {
        "blades": [bl.blade_name(i) for i in mv.blades.indices()],
        "coefficients": [float(c) for c in mv.coeffs],
    }


def fk_payload(manip, q) -> dict:
    motor = manip.ee_motor(q)
    return {
        "model": manip.name,
        "q": [float(v) for v in q],
        "motor": _motor_entry(motor),
        "homogeneous": motor.to_homogeneous().tolist(),
    }


def jacobian_payload(manip, q) -> dict:
    geo = np.column_stack([c.to_twist() for c in manip.geometric_jacobian(q)])
    ana = np.column_stack(
        [c.expanded(bl.MOTOR_MASK).coeffs for c in manip.analytic_jacobian(q)])
    return {
        "model": manip.name,
        "q": [float(v) for v in q],
        "geometric": geo.tolist(),
        "analytic": ana.tolist(),
    }


def rnea_payload(manip, q, qd, qdd, gravity) -> dict:
    tau = manip.inverse_dynamics(q, qd, qdd, gravity=gravity)
    return {
        "model": manip.name,
        "q": [float(v) for v in q],
        "qd": [float(v) for v in qd],
        "qdd": [float(v) for v in qdd],
        "gravity": [float(v) for v in gravity],
        "tau": [float(v) for v in tau],
    }


def aba_payload(manip, q, qd, tau, gravity) -> dict:
    qdd = manip.forward_dynamics(q, qd, tau, gravity=gravity)
    return {
        "model": manip.name,
        "q": [float(v) for v in q],
        "qd": [float(v) for v in qd],
        "tau": [float(v) for v in tau],
        "gravity": [float(v) for v in gravity],
        "qdd": [float(v) for v in qdd],
    }


def parse_target(manip, text: str):
    """Build an IK cost from a target spec string.

    Grammar: ``kind:v1,v2,...`` with kinds pose (x,y,z,roll,pitch,yaw),
    point (x,y,z), line (point, direction), plane (normal, distance),
    sphere (center, radius), circle (center, normal, radius), and
    pair (two points). The tool is the end-effector origin point.
    """
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"target {text!r}: expected kind:v1,v2,...")
    tool = Point(0.0, 0.0, 0.0)
    if kind == "pose":
        v = _parse_vector(rest, 6, "pose target")
        return MotorCost(manip, origin_motor(v[:3], v[3:]))
    if kind == "point":
        v = _parse_vector(rest, 3, "point target")
        return PrimitiveTargetCost(manip, tool, Point(*v))
    if kind == "line":
        v = _parse_vector(rest, 6, "line target")
        return PrimitiveTargetCost(
            manip, tool, Line.from_point_direction(Point(*v[:3]), v[3:]))
    if kind == "plane":
        v = _parse_vector(rest, 4, "plane target")
        return PrimitiveTargetCost(manip, tool, Plane(v[:3], v[3]))
    if kind == "sphere":
        v = _parse_vector(rest, 4, "sphere target")
        return PrimitiveTargetCost(manip, tool, Sphere(v[:3], v[3]))
    if kind == "circle":
        v = _parse_vector(rest, 7, "circle target")
        return PrimitiveTargetCost(
            manip, tool, Circle.from_center_normal_radius(v[:3], v[3:6], v[6]))
    if kind == "pair":
        v = _parse_vector(rest, 6, "pair target")
        return PrimitiveTargetCost(
            manip, tool, PointPair(Point(*v[:3]), Point(*v[3:])))
    raise ValueError(f"target {text!r}: unknown kind {kind!r}")


def ik_payload(manip, cost, q0, seed: int, restarts: int,
               config: SolverConfig) -> dict:
    """Multi-start Gauss-Newton solve; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    lower, upper = manip.limit_arrays()
    # unlimited joints sample from one revolution; clamp before uniform()
    # because numpy rejects infinite ranges outright
    span_ok = np.isfinite(lower) & np.isfinite(upper)
    lower = np.where(span_ok, lower, -np.pi)
    upper = np.where(span_ok, upper, np.pi)
    best = None
    total_iterations = 0
    for attempt in range(max(1, restarts)):
        if attempt == 0:
            start = np.asarray(q0, dtype=np.float64)
        else:
            start = rng.uniform(lower, upper)
        report = gauss_newton_solve(cost, start, config)
        total_iterations += report.iterations
        residual = float(np.linalg.norm(cost.residual(report.q)))
        if best is None or residual < best["residual_norm"]:
            best = {
                "q": [float(v) for v in report.q],
                "converged": bool(report.converged),
                "iterations": report.iterations,
                "final_cost": report.final_cost,
                "residual_norm": residual,
            }
        if residual < _IK_RESIDUAL_TOL:
            break
    best["model"] = manip.name
    best["q0"] = [float(v) for v in q0]
    best["total_iterations"] = total_iterations
    best["success"] = bool(best["converged"]
                           and best["residual_norm"] < _IK_RESIDUAL_TOL)
    return best


# -- benchmark -----------------------------------------------------------------

def _time_call(fn, repetitions: int):
    fn()  # warm caches and kernel memoization
    samples = np.empty(repetitions, dtype=np.float64)
    for i in range(repetitions):
        t0 = time.perf_counter_ns()
        fn()
        samples[i] = time.perf_counter_ns() - t0
    return (repetitions, float(samples.mean()), float(samples.std()),
            float(samples.min()))


def _algebra_cases(rng):
    p1 = Point(*rng.standard_normal(3))
    p2 = Point(*rng.standard_normal(3))
    line = Line(Point(*rng.standard_normal(3)), Point(*rng.standard_normal(3)))
    motor_a = (Translator(rng.standard_normal(3))
               * Rotor(rng.standard_normal(3), rng.uniform(-np.pi, np.pi)))
    motor_b = (Translator(rng.standard_normal(3))
               * Rotor(rng.standard_normal(3), rng.uniform(-np.pi, np.pi)))
    return [
        ("geometric", lambda: motor_a * motor_b),
        ("inner", lambda: p1 | p2),
        ("outer", lambda: p1 ^ p2),
        ("reverse", lambda: motor_a.reverse()),
        ("dual", lambda: line.dual()),
        ("inverse", lambda: motor_a.inverse()),
    ]


def _robot_cases(rng):
    manip = load_manipulator(load_model("panda"))
    q = manip.random_configuration(rng)
    qd = rng.standard_normal(manip.dof)
    qdd = rng.standard_normal(manip.dof)
    tau = manip.inverse_dynamics(q, qd, qdd)
    return [
        ("forward_kinematics", lambda: manip.ee_motor(q)),
        ("geometric_jacobian", lambda: manip.geometric_jacobian(q)),
        ("inverse_dynamics", lambda: manip.inverse_dynamics(q, qd, qdd)),
        ("forward_dynamics", lambda: manip.forward_dynamics(q, qd, tau)),
    ]


def run_benchmark(suite: str, repetitions: int, seed: int) -> str:
    """Time one suite and return the CSV text (seed in a comment line)."""
    rng = np.random.default_rng(seed)
    cases = _algebra_cases(rng) if suite == "algebra" else _robot_cases(rng)
    lines = [f"# seed={seed}", "suite,operation,n_samples,mean_ns,stddev_ns,min_ns"]
    for op_name, fn in cases:
        n, mean, std, best = _time_call(fn, repetitions)
        lines.append(f"{suite},{op_name},{n},{mean:.1f},{std:.1f},{best:.1f}")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------

def _emit(args, payload: dict, text: str):
    out = json.dumps(payload, indent=2) if args.json else text
    if getattr(args, "out", None):
        Path(args.out).write_text(out + ("" if out.endswith("\n") else "\n"),
                                  encoding="utf-8")
    else:
        print(out)


def _matrix_text(rows, precision=12) -> str:
    return np.array2string(np.asarray(rows), precision=precision,
                           suppress_small=True, max_line_width=120)


def _fk_text(payload: dict) -> str:
    motor = payload["motor"]
    pairs = ", ".join(f"{b}={c:.12g}"
                      for b, c in zip(motor["blades"], motor["coefficients"]))
    return (f"model: {payload['model']}\n"
            f"q: {payload['q']}\n"
            f"motor: {pairs}\n"
            f"homogeneous:\n{_matrix_text(payload['homogeneous'])}")


def _manip(args):
    return load_manipulator(load_model(args.model), args.ee_joint)


def cmd_fk(args) -> int:
    manip = _manip(args)
    q = _q_or_zeros(args.q, manip, "--q")
    payload = fk_payload(manip, q)
    _emit(args, payload, _fk_text(payload))
    return 0


def cmd_jacobian(args) -> int:
    manip = _manip(args)
    q = _q_or_zeros(args.q, manip, "--q")
    payload = jacobian_payload(manip, q)
    text = (f"model: {payload['model']}\n"
            f"q: {payload['q']}\n"
            f"geometric (rows w1,w2,w3,v1,v2,v3):\n"
            f"{_matrix_text(payload['geometric'])}\n"
            f"analytic (rows are motor coefficients):\n"
            f"{_matrix_text(payload['analytic'])}")
    _emit(args, payload, text)
    return 0


def cmd_rnea(args) -> int:
    manip = _manip(args)
    q = _q_or_zeros(args.q, manip, "--q")
    qd = _q_or_zeros(args.qd, manip, "--qd")
    qdd = _q_or_zeros(args.qdd, manip, "--qdd")
    gravity = _parse_vector(args.gravity, 3, "--gravity")
    payload = rnea_payload(manip, q, qd, qdd, gravity)
    text = (f"model: {payload['model']}\nq: {payload['q']}\n"
            f"qd: {payload['qd']}\nqdd: {payload['qdd']}\n"
            f"gravity: {payload['gravity']}\ntau: {payload['tau']}")
    _emit(args, payload, text)
    return 0


def cmd_aba(args) -> int:
    manip = _manip(args)
    q = _q_or_zeros(args.q, manip, "--q")
    qd = _q_or_zeros(args.qd, manip, "--qd")
    tau = _q_or_zeros(args.tau, manip, "--tau")
    gravity = _parse_vector(args.gravity, 3, "--gravity")
    payload = aba_payload(manip, q, qd, tau, gravity)
    text = (f"model: {payload['model']}\nq: {payload['q']}\n"
            f"qd: {payload['qd']}\ntau: {payload['tau']}\n"
            f"gravity: {payload['gravity']}\nqdd: {payload['qdd']}")
    _emit(args, payload, text)
    return 0


def cmd_ik(args) -> int:
    manip = _manip(args)
    cost = parse_target(manip, args.target)
    if args.q0 is not None:
        q0 = _q_or_zeros(args.q0, manip, "--q0")
    else:
        q0 = manip.home_configuration()
    config = SolverConfig(max_iterations=args.max_iterations,
                          damping=args.damping,
                          cost_tolerance=args.cost_tolerance)
    payload = ik_payload(manip, cost, q0, args.seed, args.restarts, config)
    text = (f"model: {payload['model']}\ntarget: {args.target}\n"
            f"q: {payload['q']}\n"
            f"converged: {payload['converged']} "
            f"(iterations {payload['iterations']}, "
            f"total {payload['total_iterations']})\n"
            f"final_cost: {payload['final_cost']:.6e}\n"
            f"residual_norm: {payload['residual_norm']:.6e}\n"
            f"success: {payload['success']}")
    payload["target"] = args.target
    _emit(args, payload, text)
    return 0 if payload["success"] else 2


def cmd_bench(args) -> int:
    csv_text = run_benchmark(args.suite, args.repetitions, args.seed)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_convert_urdf(args) -> int:
    doc = convert_urdf(Path(args.input).read_text(encoding="utf-8"))
    text = emit_yaml(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# -- argument plumbing ---------------------------------------------------------

def _add_model_arg(p):
    p.add_argument("--model", required=True,
                   help="model YAML path or bundled model name")
    p.add_argument("--ee-joint",
                   help="end-effector joint (default: the model's declaration)")


def _add_common_output(p):
    p.add_argument("--json", action="store_true",
                   help="emit machine-readable JSON instead of text")
    p.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cga",
        description="Conformal-geometric-algebra robot kinematics and dynamics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fk", help="forward kinematics of the end effector")
    _add_model_arg(p)
    p.add_argument("--q", help="joint positions, comma separated (default zeros)")
    _add_common_output(p)
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("jacobian", help="geometric and analytic Jacobians")
    _add_model_arg(p)
    p.add_argument("--q", help="joint positions, comma separated (default zeros)")
    _add_common_output(p)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("rnea", help="inverse dynamics (recursive Newton-Euler)")
    _add_model_arg(p)
    p.add_argument("--q", help="joint positions (default zeros)")
    p.add_argument("--qd", help="joint velocities (default zeros)")
    p.add_argument("--qdd", help="joint accelerations (default zeros)")
    p.add_argument("--gravity", default="0,0,-9.81",
                   help="gravity vector (default 0,0,-9.81)")
    _add_common_output(p)
    p.set_defaults(func=cmd_rnea)

    p = sub.add_parser("aba", help="forward dynamics (articulated body)")
    _add_model_arg(p)
    p.add_argument("--q", help="joint positions (default zeros)")
    p.add_argument("--qd", help="joint velocities (default zeros)")
    p.add_argument("--tau", help="joint torques (default zeros)")
    p.add_argument("--gravity", default="0,0,-9.81",
                   help="gravity vector (default 0,0,-9.81)")
    _add_common_output(p)
    p.set_defaults(func=cmd_aba)

    p = sub.add_parser(
        "ik", help="inverse kinematics to a pose or primitive target")
    _add_model_arg(p)
    p.add_argument("--target", required=True,
                   help="pose:x,y,z,r,p,y | point:x,y,z | line:p,d | "
                        "plane:n,d | sphere:c,r | circle:c,n,r | pair:p1,p2")
    p.add_argument("--q0", help="initial joint positions (default mid-limits)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for restart sampling (default 0)")
    p.add_argument("--restarts", type=int, default=4,
                   help="number of solve attempts (default 4)")
    p.add_argument("--max-iterations", type=int, default=100)
    p.add_argument("--damping", type=float, default=1e-6)
    p.add_argument("--cost-tolerance", type=float, default=1e-12)
    _add_common_output(p)
    p.set_defaults(func=cmd_ik)

    p = sub.add_parser("bench", help="micro-benchmarks, CSV output")
    p.add_argument("--suite", choices=("algebra", "robot"), default="robot")
    p.add_argument("--repetitions", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("convert-urdf", help="convert a URDF file to model YAML")
    p.add_argument("input", help="URDF file path")
    p.add_argument("--out", help="YAML output path (default stdout)")
    p.set_defaults(func=cmd_convert_urdf)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CgarError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
