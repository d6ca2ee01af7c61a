"""Exception types used across the library.

Everything derives from :class:`CgarError` so callers can catch library
failures with a single except clause while still matching specific kinds.
"""


class CgarError(Exception):
    """Base class for all cgar errors."""


# --- algebra ---------------------------------------------------------------

class NotInvertible(CgarError):
    """a * reverse(a) is not a nonzero scalar, so the versor inverse fails."""


class NotUnitVersor(CgarError):
    """Sandwich application requires |V * reverse(V) - 1| below tolerance."""


class LogBranchSingularity(CgarError):
    """Rotor/motor logarithm requested at (or too close to) the branch cut."""


class UnknownBlade(CgarError):
    """A blade name or index does not exist in the 32-blade basis."""


# --- primitives ------------------------------------------------------------

class DegeneratePoint(CgarError):
    """Conformal point has a vanishing origin coefficient."""


class DegenerateConfiguration(CgarError):
    """Constructor inputs are coincident/collinear/coplanar beyond tolerance."""


class DegeneratePrimitive(CgarError):
    """A decoder received a blade outside the primitive's valid locus."""


class ImaginaryRadius(CgarError):
    """Round primitive has negative squared radius (imaginary intersection)."""


# --- robot model -----------------------------------------------------------

class DuplicateName(CgarError):
    """A link, joint, or chain name was registered twice."""


class DanglingReference(CgarError):
    """A joint or chain references a link/joint that does not exist."""


class CycleDetected(CgarError):
    """Link/joint graph is not a tree rooted at a single base link."""


class JointLimitViolation(CgarError):
    """A joint position is outside its declared limits (when enforced)."""


class SingularInertia(CgarError):
    """Articulated-body update hit a non-invertible joint-space inertia."""


class NoSuchJoint(CgarError):
    """Requested end-effector joint is not part of the system."""


class NonSerialChain(CgarError):
    """End-effector chain is not a simple actuated path from the base."""


# --- optimization ----------------------------------------------------------

class LinearSolveFailure(CgarError):
    """Normal-equations matrix was singular beyond the damping term."""


# --- model io --------------------------------------------------------------

class SchemaError(CgarError):
    """Model document violates the YAML schema; message names the entity."""


class UnsupportedJointType(CgarError):
    """URDF joint type has no equivalent in the model schema."""


class MalformedURDF(CgarError):
    """URDF input is not parseable XML or lacks required structure."""
