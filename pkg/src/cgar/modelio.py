"""Robot description files: YAML schema, loader, and URDF conversion.

The YAML schema is versioned (``format: 1``) and deliberately small:

.. code-block:: yaml

    format: 1
    name: arm
    links:
      - {name: base, mass: 0.0, com: [0.0, 0.0, 0.0],
         inertia: [0.0, 0.0, 0.0, 0.0, 0.0, 0.0]}
    joints:
      - name: shoulder
        kind: revolute
        parent: base
        child: upper_arm
        origin: {xyz: [0.0, 0.0, 0.1], rpy: [0.0, 0.0, 0.0]}
        axis: [0.0, 0.0, 1.0]
        limits: {lower: -3.1, upper: 3.1, velocity: 2.0, effort: 50.0}
    chains:
      - {name: arm, joints: [shoulder]}
    end_effector_joint: shoulder

Inertia is the symmetric 3x3 about the COM in link axes, flattened as
(xx, yy, zz, xy, xz, yz). Origins use URDF's extrinsic X-Y-Z rpy
convention, radians and meters. ``convert_urdf`` maps the URDF subset
with fixed/revolute/prismatic/continuous joints onto this schema.
"""

from __future__ import annotations

import warnings
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .errors import MalformedURDF, NoSuchJoint, SchemaError, UnsupportedJointType
from .robot.model import Joint, JointLimits, Link, Manipulator, System
from .versors import Motor, Rotor, Translator

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION",
    "LimitsDocument",
    "LinkDocument",
    "JointDocument",
    "ChainDocument",
    "ModelDocument",
    "origin_motor",
    "parse_document",
    "document_from_yaml",
    "load_document",
    "emit_yaml",
    "save_document",
    "load_system",
    "load_manipulator",
    "convert_urdf",
]


@dataclass(frozen=True)
class LimitsDocument:
    lower: float | None = None
    upper: float | None = None
    velocity: float | None = None
    effort: float | None = None


@dataclass(frozen=True)
class LinkDocument:
    name: str
    mass: float = 0.0
    com: tuple = (0.0, 0.0, 0.0)
    inertia: tuple = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0)  # xx, yy, zz, xy, xz, yz


@dataclass(frozen=True)
class JointDocument:
    name: str
    kind: str
    parent: str
    child: str
    xyz: tuple = (0.0, 0.0, 0.0)
    rpy: tuple = (0.0, 0.0, 0.0)
    axis: tuple | None = None
    limits: LimitsDocument | None = None


@dataclass(frozen=True)
class ChainDocument:
    name: str
    joints: tuple


@dataclass
class ModelDocument:
    """Parsed model file; plain data, no geometry yet.

    Entry sequences are normalized to tuples so two documents with the
    same content always compare equal.
    """

    name: str
    links: tuple = ()
    joints: tuple = ()
    chains: tuple = ()
    end_effector_joint: str | None = None

    def __post_init__(self):
        self.links = tuple(self.links)
        self.joints = tuple(self.joints)
        self.chains = tuple(self.chains)


def origin_motor(xyz, rpy) -> Motor:
    """Frame motor for an origin block: translate, then extrinsic X-Y-Z."""
    roll, pitch, yaw = (float(v) for v in rpy)
    rot = Rotor([0, 0, 1], yaw) * Rotor([0, 1, 0], pitch) * Rotor([1, 0, 0], roll)
    return Translator(xyz) * rot


# -- schema parsing ----------------------------------------------------------

def _fail(entity: str, problem: str):
    raise SchemaError(f"{entity}: {problem}")


def _require_map(value, entity: str) -> dict:
    if not isinstance(value, dict):
        _fail(entity, f"expected a mapping, got {type(value).__name__}")
    return value


def _get_str(mapping: dict, key: str, entity: str) -> str:
    if key not in mapping:
        _fail(entity, f"missing required field {key!r}")
    value = mapping[key]
    if not isinstance(value, str) or not value:
        _fail(entity, f"field {key!r} must be a non-empty string")
    return value


def _number(value, entity: str, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(entity, f"{what} must be a number, got {value!r}")
    return float(value)


def _numbers(value, n: int, entity: str, what: str) -> tuple:
    if not isinstance(value, (list, tuple)) or len(value) != n:
        _fail(entity, f"{what} must be a list of {n} numbers")
    return tuple(_number(v, entity, what) for v in value)


def _parse_limits(raw, entity: str) -> LimitsDocument:
    raw = _require_map(raw, entity)
    known = {"lower", "upper", "velocity", "effort"}
    for key in raw:
        if key not in known:
            _fail(entity, f"unknown limits field {key!r}")
    vals = {k: (_number(raw[k], entity, f"limits.{k}") if k in raw else None)
            for k in known}
    return LimitsDocument(**vals)


def _parse_link(raw, index: int) -> LinkDocument:
    entity = f"links[{index}]"
    raw = _require_map(raw, entity)
    name = _get_str(raw, "name", entity)
    entity = f"link {name!r}"
    mass = _number(raw.get("mass", 0.0), entity, "mass")
    com = _numbers(raw.get("com", (0.0,) * 3), 3, entity, "com")
    inertia = _numbers(raw.get("inertia", (0.0,) * 6), 6, entity, "inertia")
    return LinkDocument(name=name, mass=mass, com=com, inertia=inertia)


def _parse_joint(raw, index: int) -> JointDocument:
    entity = f"joints[{index}]"
    raw = _require_map(raw, entity)
    name = _get_str(raw, "name", entity)
    entity = f"joint {name!r}"
    kind = _get_str(raw, "kind", entity)
    if kind not in ("fixed", "revolute", "prismatic"):
        _fail(entity, f"kind must be fixed/revolute/prismatic, got {kind!r}")
    parent = _get_str(raw, "parent", entity)
    child = _get_str(raw, "child", entity)

    xyz, rpy = (0.0,) * 3, (0.0,) * 3
    if "origin" in raw:
        origin = _require_map(raw["origin"], f"{entity} origin")
        xyz = _numbers(origin.get("xyz", xyz), 3, entity, "origin.xyz")
        rpy = _numbers(origin.get("rpy", rpy), 3, entity, "origin.rpy")

    axis = None
    if kind != "fixed":
        if "axis" not in raw:
            _fail(entity, f"{kind} joint needs an axis")
        axis = _numbers(raw["axis"], 3, entity, "axis")
    elif "axis" in raw:
        _fail(entity, "fixed joint must not declare an axis")

    limits = None
    if raw.get("limits") is not None:
        limits = _parse_limits(raw["limits"], f"{entity} limits")
        if (limits.lower is not None and limits.upper is not None
                and limits.lower > limits.upper):
            _fail(entity, f"limits out of order: {limits.lower} > {limits.upper}")
    return JointDocument(name=name, kind=kind, parent=parent, child=child,
                         xyz=xyz, rpy=rpy, axis=axis, limits=limits)


def _parse_chain(raw, index: int) -> ChainDocument:
    entity = f"chains[{index}]"
    raw = _require_map(raw, entity)
    name = _get_str(raw, "name", entity)
    entity = f"chain {name!r}"
    joints = raw.get("joints")
    if not isinstance(joints, (list, tuple)) or not joints:
        _fail(entity, "joints must be a non-empty list of joint names")
    for j in joints:
        if not isinstance(j, str):
            _fail(entity, f"joint reference must be a string, got {j!r}")
    return ChainDocument(name=name, joints=tuple(joints))


def parse_document(data) -> ModelDocument:
    """Validate a decoded YAML mapping and build a ModelDocument."""
    data = _require_map(data, "document")
    if data.get("format") != FORMAT_VERSION:
        _fail("document", f"format must be {FORMAT_VERSION}, "
                          f"got {data.get('format')!r}")
    name = _get_str(data, "name", "document")
    links_raw = data.get("links")
    if not isinstance(links_raw, list) or not links_raw:
        _fail("document", "links must be a non-empty list")
    joints_raw = data.get("joints", [])
    if not isinstance(joints_raw, list):
        _fail("document", "joints must be a list")
    chains_raw = data.get("chains", [])
    if not isinstance(chains_raw, list):
        _fail("document", "chains must be a list")

    ee = data.get("end_effector_joint")
    if ee is not None and not isinstance(ee, str):
        _fail("document", "end_effector_joint must be a joint name")
    return ModelDocument(
        name=name,
        links=tuple(_parse_link(raw, i) for i, raw in enumerate(links_raw)),
        joints=tuple(_parse_joint(raw, i) for i, raw in enumerate(joints_raw)),
        chains=tuple(_parse_chain(raw, i) for i, raw in enumerate(chains_raw)),
        end_effector_joint=ee)


def document_from_yaml(text: str) -> ModelDocument:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"document: invalid YAML ({exc})") from exc
    return parse_document(data)


def load_document(path) -> ModelDocument:
    return document_from_yaml(Path(path).read_text(encoding="utf-8"))


# -- emission ----------------------------------------------------------------

def _limits_data(limits: LimitsDocument) -> dict:
    out = {}
    for key in ("lower", "upper", "velocity", "effort"):
        value = getattr(limits, key)
        if value is not None:
            out[key] = value
    return out


def emit_yaml(doc: ModelDocument) -> str:
    """Serialize a document; load(emit(doc)) reproduces doc field-exactly."""
    links = [{"name": l.name, "mass": l.mass, "com": list(l.com),
              "inertia": list(l.inertia)} for l in doc.links]
    joints = []
    for j in doc.joints:
        entry = {"name": j.name, "kind": j.kind,
                 "parent": j.parent, "child": j.child,
                 "origin": {"xyz": list(j.xyz), "rpy": list(j.rpy)}}
        if j.axis is not None:
            entry["axis"] = list(j.axis)
        if j.limits is not None:
            entry["limits"] = _limits_data(j.limits)
        joints.append(entry)
    data = {"format": FORMAT_VERSION, "name": doc.name,
            "links": links, "joints": joints}
    if doc.chains:
        data["chains"] = [{"name": c.name, "joints": list(c.joints)}
                          for c in doc.chains]
    if doc.end_effector_joint is not None:
        data["end_effector_joint"] = doc.end_effector_joint
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=None)


def save_document(doc: ModelDocument, path):
    Path(path).write_text(emit_yaml(doc), encoding="utf-8")


# -- building runtime objects ------------------------------------------------

def _inertia_matrix(flat):
    xx, yy, zz, xy, xz, yz = flat
    return [[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]]


def _as_document(source) -> ModelDocument:
    if isinstance(source, ModelDocument):
        return source
    return load_document(source)


def load_system(source) -> System:
    """Build and finalize a System from a ModelDocument or a YAML path."""
    doc = _as_document(source)
    system = System(doc.name)
    for link in doc.links:
        try:
            system.add_link(Link(link.name, mass=link.mass,
                                 center_of_mass=link.com,
                                 inertia=_inertia_matrix(link.inertia)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    for j in doc.joints:
        limits = None
        if j.limits is not None:
            limits = JointLimits(
                lower=j.limits.lower if j.limits.lower is not None else -float("inf"),
                upper=j.limits.upper if j.limits.upper is not None else float("inf"),
                velocity=j.limits.velocity, effort=j.limits.effort)
        try:
            system.add_joint(Joint(j.name, j.kind, j.parent, j.child,
                                   frame_motor=origin_motor(j.xyz, j.rpy),
                                   axis=j.axis, limits=limits))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    for chain in doc.chains:
        system.add_kinematic_chain(chain.name, list(chain.joints))
    return system.finalize()


def load_manipulator(source, ee_joint: str | None = None) -> Manipulator:
    """Load a document and wrap it as a Manipulator.

    The end-effector joint defaults to the document's
    ``end_effector_joint`` field when the argument is omitted.
    """
    doc = _as_document(source)
    system = load_system(doc)
    name = ee_joint if ee_joint is not None else doc.end_effector_joint
    if name is None:
        raise NoSuchJoint(
            f"model {doc.name!r} declares no end_effector_joint and none was given")
    return Manipulator(system, name, name=doc.name)


# -- URDF conversion ----------------------------------------------------------

_URDF_KINDS = {"fixed": "fixed", "revolute": "revolute",
               "prismatic": "prismatic", "continuous": "revolute"}
_IGNORED_LINK_TAGS = ("visual", "collision")


def _attr_floats(element, attr: str, default, n: int, entity: str) -> tuple:
    raw = element.get(attr) if element is not None else None
    if raw is None:
        return tuple(float(v) for v in default)
    parts = raw.split()
    if len(parts) != n:
        raise MalformedURDF(f"{entity}: attribute {attr!r} needs {n} numbers")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise MalformedURDF(f"{entity}: attribute {attr!r} is not numeric") from exc


def _attr_float(element, attr: str, entity: str, default=None):
    raw = element.get(attr)
    if raw is None:
        if default is None:
            raise MalformedURDF(f"{entity}: missing attribute {attr!r}")
        return float(default)
    try:
        return float(raw)
    except ValueError as exc:
        raise MalformedURDF(f"{entity}: attribute {attr!r} is not numeric") from exc


def _rpy_rotation(rpy):
    """3x3 extrinsic X-Y-Z rotation matrix (no numpy types leak out)."""
    import math

    r, p, y = rpy
    cr, sr = math.cos(r), math.sin(r)
    cp, sp = math.cos(p), math.sin(p)
    cy, sy = math.cos(y), math.sin(y)
    rx = [[1, 0, 0], [0, cr, -sr], [0, sr, cr]]
    ry = [[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]]
    rz = [[cy, -sy, 0], [sy, cy, 0], [0, 0, 1]]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)]
                for i in range(3)]

    return matmul(rz, matmul(ry, rx))


def _rotate_inertia(flat, rpy):
    """Re-express an inertia tensor given in a rotated inertial frame."""
    if all(abs(v) < 1e-15 for v in rpy):
        return flat
    rot = _rpy_rotation(rpy)
    mat = _inertia_matrix(flat)
    tmp = [[sum(rot[i][k] * mat[k][j] for k in range(3)) for j in range(3)]
           for i in range(3)]
    out = [[sum(tmp[i][k] * rot[j][k] for k in range(3)) for j in range(3)]
           for i in range(3)]
    return (out[0][0], out[1][1], out[2][2], out[0][1], out[0][2], out[1][2])


def _convert_link(element) -> LinkDocument:
    name = element.get("name")
    if not name:
        raise MalformedURDF("link element without a name attribute")
    entity = f"link {name!r}"
    ignored = sorted({child.tag for child in element
                      if child.tag in _IGNORED_LINK_TAGS})
    if ignored:
        warnings.warn(f"{entity}: ignoring {', '.join(ignored)} elements",
                      stacklevel=3)
    inertial = element.find("inertial")
    if inertial is None:
        return LinkDocument(name=name)
    mass_el = inertial.find("mass")
    mass = _attr_float(mass_el, "value", f"{entity} mass") if mass_el is not None else 0.0
    origin = inertial.find("origin")
    com = _attr_floats(origin, "xyz", (0.0,) * 3, 3, entity)
    rpy = _attr_floats(origin, "rpy", (0.0,) * 3, 3, entity)
    inertia_el = inertial.find("inertia")
    if inertia_el is None:
        flat = (0.0,) * 6
    else:
        flat = tuple(_attr_float(inertia_el, key, f"{entity} inertia", default=0.0)
                     for key in ("ixx", "iyy", "izz", "ixy", "ixz", "iyz"))
    return LinkDocument(name=name, mass=mass, com=com,
                        inertia=_rotate_inertia(flat, rpy))


def _convert_joint(element) -> JointDocument:
    name = element.get("name")
    if not name:
        raise MalformedURDF("joint element without a name attribute")
    entity = f"joint {name!r}"
    urdf_type = element.get("type")
    if urdf_type not in _URDF_KINDS:
        raise UnsupportedJointType(f"{entity}: type {urdf_type!r} is not supported")
    kind = _URDF_KINDS[urdf_type]

    parent_el = element.find("parent")
    child_el = element.find("child")
    if parent_el is None or parent_el.get("link") is None:
        raise MalformedURDF(f"{entity}: missing <parent link=...>")
    if child_el is None or child_el.get("link") is None:
        raise MalformedURDF(f"{entity}: missing <child link=...>")

    origin = element.find("origin")
    xyz = _attr_floats(origin, "xyz", (0.0,) * 3, 3, entity)
    rpy = _attr_floats(origin, "rpy", (0.0,) * 3, 3, entity)

    axis = None
    if kind != "fixed":
        axis = _attr_floats(element.find("axis"), "xyz", (1.0, 0.0, 0.0), 3, entity)

    limits = None
    limit_el = element.find("limit")
    if limit_el is not None and urdf_type != "continuous" and kind != "fixed":
        velocity = limit_el.get("velocity")
        effort = limit_el.get("effort")
        limits = LimitsDocument(
            lower=_attr_float(limit_el, "lower", entity, default=0.0),
            upper=_attr_float(limit_el, "upper", entity, default=0.0),
            velocity=float(velocity) if velocity is not None else None,
            effort=float(effort) if effort is not None else None)
    return JointDocument(name=name, kind=kind,
                         parent=parent_el.get("link"), child=child_el.get("link"),
                         xyz=xyz, rpy=rpy, axis=axis, limits=limits)


def convert_urdf(urdf_text: str) -> ModelDocument:
    """Map a URDF robot description onto the YAML document schema."""
    try:
        root = ET.fromstring(urdf_text)
    except ET.ParseError as exc:
        raise MalformedURDF(f"not parseable XML: {exc}") from exc
    if root.tag != "robot":
        raise MalformedURDF(f"root element must be <robot>, got <{root.tag}>")
    name = root.get("name")
    if not name:
        raise MalformedURDF("<robot> element without a name attribute")

    links = tuple(_convert_link(el) for el in root.findall("link"))
    joints = tuple(_convert_joint(el) for el in root.findall("joint"))
    if not links:
        raise MalformedURDF(f"robot {name!r} declares no links")
    # single-chain robots get a usable default end effector: the unique
    # joint whose child link carries no further joints
    parents = {j.parent for j in joints}
    leaves = [j.name for j in joints if j.child not in parents]
    ee = leaves[0] if len(leaves) == 1 else None
    return ModelDocument(name=name, links=links, joints=joints,
                         end_effector_joint=ee)
