"""Robot models on disk: the YAML format and URDF conversion.

Models are plain YAML documents listing links, joints, and optional
named chains. URDF files convert to the same document type, so the rest
of the library never needs to know where a model came from.

    python3 tutorials/07_model_files.py
"""

import tempfile
from pathlib import Path

import numpy as np

from cgar import (
    convert_urdf,
    document_from_yaml,
    emit_yaml,
    forward_kinematics,
    load_manipulator,
    save_document,
)

YAML_TEXT = """
format: 1
name: lift
links:
  - {name: base, mass: 2.0, com: [0, 0, 0.05],
     inertia: [0.01, 0.01, 0.01, 0, 0, 0]}
  - {name: arm, mass: 1.0, com: [0.2, 0, 0],
     inertia: [0.001, 0.02, 0.02, 0, 0, 0]}
  - {name: tool, mass: 0.2, com: [0, 0, 0],
     inertia: [0.0001, 0.0001, 0.0001, 0, 0, 0]}
joints:
  - name: shoulder
    kind: revolute
    parent: base
    child: arm
    origin: {xyz: [0, 0, 0.1], rpy: [0, 0, 0]}
    axis: [0, 1, 0]
    limits: {lower: -1.57, upper: 1.57}
  - name: slide
    kind: prismatic
    parent: arm
    child: tool
    origin: {xyz: [0.4, 0, 0], rpy: [0, 0, 0]}
    axis: [1, 0, 0]
    limits: {lower: 0.0, upper: 0.3}
end_effector_joint: slide
"""

URDF_TEXT = """<robot name="lift">
  <link name="base">
    <inertial>
      <mass value="2.0"/>
      <origin xyz="0 0 0.05" rpy="0 0 0"/>
      <inertia ixx="0.01" iyy="0.01" izz="0.01" ixy="0" ixz="0" iyz="0"/>
    </inertial>
  </link>
  <link name="arm">
    <inertial>
      <mass value="1.0"/>
      <origin xyz="0.2 0 0" rpy="0 0 0"/>
      <inertia ixx="0.001" iyy="0.02" izz="0.02" ixy="0" ixz="0" iyz="0"/>
    </inertial>
  </link>
  <link name="tool">
    <inertial>
      <mass value="0.2"/>
      <origin xyz="0 0 0" rpy="0 0 0"/>
      <inertia ixx="0.0001" iyy="0.0001" izz="0.0001" ixy="0" ixz="0" iyz="0"/>
    </inertial>
  </link>
  <joint name="shoulder" type="revolute">
    <parent link="base"/>
    <child link="arm"/>
    <origin xyz="0 0 0.1" rpy="0 0 0"/>
    <axis xyz="0 1 0"/>
    <limit lower="-1.57" upper="1.57" effort="50" velocity="2"/>
  </joint>
  <joint name="slide" type="prismatic">
    <parent link="arm"/>
    <child link="tool"/>
    <origin xyz="0.4 0 0" rpy="0 0 0"/>
    <axis xyz="1 0 0"/>
    <limit lower="0.0" upper="0.3" effort="50" velocity="1"/>
  </joint>
</robot>
"""


def main():
    # Parse YAML into a document, build the kinematics, run FK.
    doc = document_from_yaml(YAML_TEXT)
    manip = load_manipulator(doc)
    print("model:", doc.name, " dof:", manip.dof)

    q = np.array([0.5, 0.2])
    pose = forward_kinematics(manip, q)
    print("tool position:", pose.translation())
    print()

    # Documents roundtrip through YAML with every field intact.
    again = document_from_yaml(emit_yaml(doc))
    print("yaml roundtrip equal:", again == doc)

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "lift.yaml"
        save_document(doc, path)
        print("saved to", path.name, f"({path.stat().st_size} bytes)")
    print()

    # The same robot written as URDF converts to an equal document up to
    # bookkeeping (the converter infers the end-effector from the single
    # leaf link).
    converted = convert_urdf(URDF_TEXT)
    print("converted name:", converted.name)
    print("converted joints:", [j.name for j in converted.joints])
    print("end effector:", converted.end_effector_joint)

    manip2 = load_manipulator(converted)
    pose2 = forward_kinematics(manip2, q)
    print("FK agreement:", np.abs((pose - pose2).dense()).max())
    print()

    # Joint limits come along for the ride and are enforced on request.
    lower, upper = manip.limit_arrays()
    print("limits:", np.column_stack([lower, upper]).tolist())
    print("home configuration:", manip.home_configuration())


if __name__ == "__main__":
    main()
