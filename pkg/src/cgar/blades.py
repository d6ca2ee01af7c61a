"""Blade indexing for the conformal geometric algebra of 3D space.

The algebra has 5 basis vectors ordered (e0, e1, e2, e3, einf) on bits
0..4 of a factor bitmask; a basis blade's index *is* that mask, so

    index 0          -> scalar
    index 1, 2, 4, 8 -> e0, e1, e2, e3
    index 16         -> einf
    index 31         -> pseudoscalar e0^e1^e2^e3^einf

grade(index) == popcount(index), and blade factors are always kept in
ascending bit order.  e0 and einf are the null vectors (e0 . einf = -1).

A set of blades is a 32-bit mask whose bit b means "blade index b is
present"; :class:`BladeSet` is a thin frozen wrapper around such masks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownBlade

N_VECTORS = 5
N_BLADES = 32
FULL_MASK = (1 << N_BLADES) - 1

_FACTOR_CHARS = ("0", "1", "2", "3", "i")


def grade(index: int) -> int:
    """Number of vector factors of blade `index`."""
    if not 0 <= index < N_BLADES:
        raise UnknownBlade(f"blade index {index} out of range 0..31")
    return index.bit_count()


def blade_name(index: int) -> str:
    """Canonical name, e.g. 'scalar', 'e1', 'e12', 'e0123i'."""
    if not 0 <= index < N_BLADES:
        raise UnknownBlade(f"blade index {index} out of range 0..31")
    if index == 0:
        return "scalar"
    return "e" + "".join(c for b, c in enumerate(_FACTOR_CHARS) if index >> b & 1)


BLADE_NAMES = tuple(blade_name(i) for i in range(N_BLADES))
GRADES = tuple(i.bit_count() for i in range(N_BLADES))

_NAME_TO_INDEX = {name: i for i, name in enumerate(BLADE_NAMES)}
_NAME_TO_INDEX["1"] = 0


def blade_index(name: str) -> int:
    """Inverse of blade_name; raises UnknownBlade for anything else."""
    try:
        return _NAME_TO_INDEX[name]
    except KeyError:
        raise UnknownBlade(f"unknown blade name {name!r}") from None


def grade_mask(k: int) -> int:
    """Blade-set mask of every grade-k blade."""
    if not 0 <= k <= N_VECTORS:
        raise UnknownBlade(f"grade {k} out of range 0..5")
    m = 0
    for i in range(N_BLADES):
        if GRADES[i] == k:
            m |= 1 << i
    return m


GRADE_MASKS = tuple(grade_mask(k) for k in range(N_VECTORS + 1))


def mask_indices(mask: int) -> tuple[int, ...]:
    """Ascending blade indices present in a blade-set mask."""
    return tuple(i for i in range(N_BLADES) if mask >> i & 1)


@dataclass(frozen=True)
class BladeSet:
    """Immutable set of basis blades, stored as a 32-bit mask."""

    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.mask <= FULL_MASK:
            raise UnknownBlade(f"blade-set mask {self.mask:#x} out of range")

    @classmethod
    def from_indices(cls, indices) -> "BladeSet":
        m = 0
        for i in indices:
            if not 0 <= i < N_BLADES:
                raise UnknownBlade(f"blade index {i} out of range 0..31")
            m |= 1 << i
        return cls(m)

    def indices(self) -> tuple[int, ...]:
        return mask_indices(self.mask)

    def grades(self) -> tuple[int, ...]:
        return tuple(sorted({GRADES[i] for i in self.indices()}))

    def union(self, other: "BladeSet") -> "BladeSet":
        return BladeSet(self.mask | other.mask)

    def intersection(self, other: "BladeSet") -> "BladeSet":
        return BladeSet(self.mask & other.mask)

    def issubset(self, other: "BladeSet") -> bool:
        return self.mask & ~other.mask == 0

    __or__ = union
    __and__ = intersection

    def __contains__(self, index: int) -> bool:
        return 0 <= index < N_BLADES and bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return iter(self.indices())

    def __repr__(self):
        names = ",".join(BLADE_NAMES[i] for i in self.indices())
        return f"BladeSet({{{names}}})"


# Frequently used subspace masks (blade-set masks, not factor masks).

SCALAR_MASK = 1 << 0
EUCLIDEAN_VECTOR_MASK = (1 << 2) | (1 << 4) | (1 << 8)          # e1, e2, e3
POINT_MASK = (1 << 1) | EUCLIDEAN_VECTOR_MASK | (1 << 16)       # + e0, einf
ROTATION_MASK = (1 << 6) | (1 << 10) | (1 << 12)                # e12, e13, e23
TRANSLATION_MASK = (1 << 18) | (1 << 20) | (1 << 24)            # e1i, e2i, e3i
GENERATOR_MASK = ROTATION_MASK | TRANSLATION_MASK
ROTOR_MASK = SCALAR_MASK | ROTATION_MASK
TRANSLATOR_MASK = SCALAR_MASK | TRANSLATION_MASK
MOTOR_MASK = ROTOR_MASK | TRANSLATION_MASK | (1 << 30)          # + e123i
DILATOR_MASK = SCALAR_MASK | (1 << 17)                          # + e0i
POINT_PAIR_MASK = GRADE_MASKS[2]
CIRCLE_MASK = GRADE_MASKS[3]
LINE_MASK = (1 << 19) | (1 << 21) | (1 << 25) | (1 << 22) | (1 << 26) | (1 << 28)
PLANE_DUAL_MASK = EUCLIDEAN_VECTOR_MASK | (1 << 16)
PLANE_PRIMAL_MASK = (1 << 23) | (1 << 27) | (1 << 29) | (1 << 30)
SPHERE_DUAL_MASK = POINT_MASK
SPHERE_PRIMAL_MASK = GRADE_MASKS[4]
DIRECTION_MASK = TRANSLATION_MASK
PSEUDOSCALAR_INDEX = 31
