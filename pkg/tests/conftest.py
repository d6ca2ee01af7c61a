"""Shared fixtures and builders for the test suite."""

import numpy as np
import pytest

from cgar import blades as bl
from cgar.modelio import origin_motor
from cgar.multivector import Multivector
from cgar.robot import Joint, Link, Manipulator, System

import oracles


def build_manipulator(joint_specs, link_specs, name="arm", ee=None):
    """Serial chain from oracle-style spec dicts (kind, xyz, rpy, axis)."""
    system = System(name)
    system.add_link(Link("base"))
    prev = "base"
    for i, (js, ls) in enumerate(zip(joint_specs, link_specs)):
        link_name = f"link{i}"
        system.add_link(Link(link_name, mass=ls["mass"],
                             center_of_mass=ls["com"], inertia=ls["inertia"]))
        system.add_joint(Joint(
            f"j{i}", js["kind"], prev, link_name,
            frame_motor=origin_motor(js["xyz"], js["rpy"]),
            axis=None if js["kind"] == "fixed" else js["axis"]))
        prev = link_name
    tip = ee if ee is not None else f"j{len(joint_specs) - 1}"
    return Manipulator(system.finalize(), tip)


def default_links(n):
    return [{"mass": 1.0, "com": [0.1, 0.0, 0.0], "inertia": np.eye(3) * 0.01}
            for _ in range(n)]


def planar_2r_specs(l1=1.0, l2=1.0):
    joints = [
        {"kind": "revolute", "xyz": [0, 0, 0], "rpy": [0, 0, 0], "axis": [0, 0, 1]},
        {"kind": "revolute", "xyz": [l1, 0, 0], "rpy": [0, 0, 0], "axis": [0, 0, 1]},
        {"kind": "fixed", "xyz": [l2, 0, 0], "rpy": [0, 0, 0]},
    ]
    return joints, default_links(3)


@pytest.fixture(scope="session")
def planar_2r():
    joints, links = planar_2r_specs()
    return build_manipulator(joints, links, name="planar2r")


@pytest.fixture(scope="session")
def seven_dof():
    """Random-geometry 7-revolute arm plus its oracle spec dicts."""
    rng = np.random.default_rng(2024)
    joint_specs = oracles.random_joint_specs(rng, 7)
    for spec in joint_specs:
        spec["kind"] = "revolute"
    link_specs = oracles.random_link_specs(rng, 7)
    manip = build_manipulator(joint_specs, link_specs, name="seven")
    return manip, joint_specs, link_specs


def random_multivector(rng, mask=bl.FULL_MASK):
    coeffs = rng.standard_normal(bin(mask).count("1"))
    return Multivector(mask, coeffs)


def dense(mv) -> np.ndarray:
    return mv.dense()
