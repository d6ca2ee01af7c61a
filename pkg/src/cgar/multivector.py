"""Sparse multivectors over the 32-blade conformal basis.

A multivector stores the blade-set mask of its support plus one
coefficient per present blade (ascending blade index).  Instances are
immutable: the coefficient array is frozen after construction and every
operation returns a new object.  Coefficients are float64 by default;
float32 is accepted and propagates through products via numpy promotion.

Operators follow the usual geometric-algebra conventions:

    a * b    geometric product        ~a      reverse
    a ^ b    outer product            a | b   inner product (fat dot)
    a + b, a - b, -a, a * scalar, a / scalar

Note that Python gives ``^`` and ``|`` lower precedence than ``+``/``-``,
so wedge/dot expressions usually need parentheses.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

import numpy as np

from . import blades as bl
from . import cayley
from .blades import BladeSet
from .errors import NotInvertible, UnknownBlade

Scalar = Union[int, float, np.floating]

_INV_EPS = 1e-12        # minimum |scalar| of a * ~a for inversion
_INV_RESIDUAL = 1e-10   # non-scalar residual tolerance in a * ~a


def _as_mask(blade_set) -> int:
    if isinstance(blade_set, BladeSet):
        return blade_set.mask
    mask = int(blade_set)
    if not 0 <= mask <= bl.FULL_MASK:
        raise UnknownBlade(f"blade-set mask {mask:#x} out of range")
    return mask


class Multivector:
    """Immutable sparse multivector. See module docstring for operators."""

    __slots__ = ("_mask", "_coeffs")

    #: Fixed blade subspace for typed subclasses (None = unconstrained).
    SUBSPACE: int | None = None

    def __init__(self, blade_set=0, coeffs=(), dtype=None):
        mask = _as_mask(blade_set)
        arr = np.asarray(coeffs, dtype=dtype if dtype is not None else np.float64)
        if arr.ndim != 1 or arr.shape[0] != mask.bit_count():
            raise ValueError(
                f"expected {mask.bit_count()} coefficients for mask "
                f"{mask:#010x}, got shape {arr.shape}"
            )
        self._finish_init(mask, arr.copy())

    def _finish_init(self, mask: int, arr: np.ndarray):
        sub = type(self).SUBSPACE
        if sub is not None and mask & ~sub:
            raise ValueError(
                f"{type(self).__name__} cannot hold blades outside its subspace"
            )
        arr.flags.writeable = False
        self._mask = mask
        self._coeffs = arr

    @classmethod
    def _raw(cls, mask: int, arr: np.ndarray) -> "Multivector":
        """Internal constructor: takes ownership of `arr` (1-D, matching)."""
        self = object.__new__(cls)
        self._finish_init(mask, arr)
        return self

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls, blade_set=0, dtype=np.float64) -> "Multivector":
        mask = _as_mask(blade_set)
        return cls._raw(mask, np.zeros(mask.bit_count(), dtype=dtype))

    @classmethod
    def scalar(cls, value: Scalar, dtype=np.float64) -> "Multivector":
        return cls._raw(bl.SCALAR_MASK, np.array([value], dtype=dtype))

    @classmethod
    def basis_blade(cls, index: int, coeff: Scalar = 1.0,
                    dtype=np.float64) -> "Multivector":
        if not 0 <= index < bl.N_BLADES:
            raise UnknownBlade(f"blade index {index} out of range 0..31")
        return cls._raw(1 << index, np.array([coeff], dtype=dtype))

    @classmethod
    def from_terms(cls, terms: Mapping, dtype=np.float64) -> "Multivector":
        """Build from {blade index or name: coefficient}."""
        resolved: dict[int, float] = {}
        for key, value in terms.items():
            idx = bl.blade_index(key) if isinstance(key, str) else int(key)
            if not 0 <= idx < bl.N_BLADES:
                raise UnknownBlade(f"blade index {idx} out of range 0..31")
            resolved[idx] = resolved.get(idx, 0.0) + float(value)
        mask = 0
        for idx in resolved:
            mask |= 1 << idx
        arr = np.array([resolved[i] for i in bl.mask_indices(mask)], dtype=dtype)
        return cls._raw(mask, arr)

    @classmethod
    def from_dense(cls, dense, keep_mask: int | None = None) -> "Multivector":
        dense = np.asarray(dense, dtype=np.float64)
        if dense.shape != (bl.N_BLADES,):
            raise ValueError("dense array must have shape (32,)")
        mask = keep_mask
        if mask is None:
            mask = 0
            for i in range(bl.N_BLADES):
                if dense[i] != 0.0:
                    mask |= 1 << i
        idx = np.fromiter(bl.mask_indices(mask), dtype=np.intp,
                          count=mask.bit_count())
        return cls._raw(mask, dense[idx].copy())

    # --- basic access ---------------------------------------------------

    @property
    def blades(self) -> BladeSet:
        return BladeSet(self._mask)

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array, ascending blade index."""
        return self._coeffs

    @property
    def dtype(self):
        return self._coeffs.dtype

    def vector(self) -> np.ndarray:
        """Contiguous parameter vector (alias of coeffs)."""
        return self._coeffs

    def get(self, index) -> float:
        """Coefficient of one blade (by index or name); 0.0 if absent."""
        idx = bl.blade_index(index) if isinstance(index, str) else int(index)
        if not 0 <= idx < bl.N_BLADES:
            raise UnknownBlade(f"blade index {idx} out of range 0..31")
        if not self._mask >> idx & 1:
            return 0.0
        pos = (self._mask & ((1 << idx) - 1)).bit_count()
        return float(self._coeffs[pos])

    def dense(self) -> np.ndarray:
        out = np.zeros(bl.N_BLADES, dtype=self._coeffs.dtype)
        for pos, idx in enumerate(bl.mask_indices(self._mask)):
            out[idx] = self._coeffs[pos]
        return out

    def expanded(self, blade_set) -> "Multivector":
        """Same value on a larger blade set (zero padding)."""
        mask = _as_mask(blade_set)
        if self._mask & ~mask:
            raise ValueError("target blade set does not contain current blades")
        if mask == self._mask:
            return self
        out = np.zeros(mask.bit_count(), dtype=self._coeffs.dtype)
        targets = bl.mask_indices(mask)
        pos_of = {idx: p for p, idx in enumerate(targets)}
        for p, idx in enumerate(bl.mask_indices(self._mask)):
            out[pos_of[idx]] = self._coeffs[p]
        return Multivector._raw(mask, out)

    def restricted(self, blade_set) -> "Multivector":
        """Keep only the blades inside blade_set; drop the rest."""
        mask = _as_mask(blade_set)
        keep = self._mask & mask
        if keep == self._mask:
            return Multivector._raw(self._mask, self._coeffs.copy())
        positions = [p for p, idx in enumerate(bl.mask_indices(self._mask))
                     if (1 << idx) & mask]
        return Multivector._raw(keep, self._coeffs[positions].copy())

    def pruned(self, tol: float = 0.0) -> "Multivector":
        """Drop blades whose |coefficient| <= tol from the support."""
        keep = np.abs(self._coeffs) > tol
        mask = 0
        for p, idx in enumerate(bl.mask_indices(self._mask)):
            if keep[p]:
                mask |= 1 << idx
        return Multivector._raw(mask, self._coeffs[keep].copy())

    def scalar_part(self) -> float:
        return self.get(0)

    def __float__(self) -> float:
        """Scalar part, but only when no other blade carries a value."""
        start = 1 if self._mask & 1 else 0
        rest = self._coeffs[start:]
        if rest.size and np.any(rest != 0.0):
            raise TypeError(
                "multivector has non-scalar components; use scalar_part()")
        return float(self._coeffs[0]) if self._mask & 1 else 0.0

    def max_grade(self) -> int:
        indices = bl.mask_indices(self._mask)
        return max((bl.GRADES[i] for i in indices), default=0)

    # --- linear operations ----------------------------------------------

    def _add_sub(self, other, sub: bool):
        if isinstance(other, (int, float, np.floating)):
            other = Multivector.scalar(other, dtype=self.dtype)
        if not isinstance(other, Multivector):
            return NotImplemented
        mask = self._mask | other._mask
        dtype = np.result_type(self.dtype, other.dtype)
        out = np.zeros(mask.bit_count(), dtype=dtype)
        pos_of = {idx: p for p, idx in enumerate(bl.mask_indices(mask))}
        for p, idx in enumerate(bl.mask_indices(self._mask)):
            out[pos_of[idx]] += self._coeffs[p]
        sign = -1.0 if sub else 1.0
        for p, idx in enumerate(bl.mask_indices(other._mask)):
            out[pos_of[idx]] += sign * other._coeffs[p]
        return Multivector._raw(mask, out)

    def __add__(self, other):
        return self._add_sub(other, sub=False)

    def __radd__(self, other):
        return self._add_sub(other, sub=False)

    def __sub__(self, other):
        return self._add_sub(other, sub=True)

    def __rsub__(self, other):
        return (-self)._add_sub(other, sub=False)

    def __neg__(self):
        return Multivector._raw(self._mask, -self._coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Multivector._raw(self._mask, self._coeffs / other)
        return NotImplemented

    # --- products ---------------------------------------------------------

    def _product(self, other, kind: str):
        if isinstance(other, (int, float, np.floating)):
            if kind == "geometric":
                return Multivector._raw(self._mask, self._coeffs * other)
            other = Multivector.scalar(other, dtype=self.dtype)
        if not isinstance(other, Multivector):
            return NotImplemented
        kern = cayley.product_kernel(self._mask, other._mask, kind)
        out = cayley.evaluate_kernel(kern, self._coeffs, other._coeffs)
        return Multivector._raw(kern.out_mask, out)

    def __mul__(self, other):
        return self._product(other, "geometric")

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return Multivector._raw(self._mask, self._coeffs * other)
        return NotImplemented

    def __xor__(self, other):
        return self._product(other, "outer")

    def __or__(self, other):
        return self._product(other, "inner")

    def geometric_product(self, other) -> "Multivector":
        return self._product(other, "geometric")

    def outer_product(self, other) -> "Multivector":
        return self._product(other, "outer")

    def inner_product(self, other) -> "Multivector":
        return self._product(other, "inner")

    # --- unary operations ---------------------------------------------

    def reverse(self):
        """Reverse anti-automorphism: sign (-1)^(k(k-1)/2) per grade k."""
        signs = np.fromiter(
            (cayley.REVERSE_SIGNS[i] for i in bl.mask_indices(self._mask)),
            dtype=self._coeffs.dtype, count=self._mask.bit_count(),
        )
        return type(self)._raw(self._mask, self._coeffs * signs)

    def __invert__(self):
        return self.reverse()

    def grade_project(self, k: int) -> "Multivector":
        if not 0 <= k <= bl.N_VECTORS:
            raise ValueError(f"grade {k} out of range 0..5")
        keep = self._mask & bl.GRADE_MASKS[k]
        pos = [p for p, idx in enumerate(bl.mask_indices(self._mask))
               if keep >> idx & 1]
        return Multivector._raw(keep, self._coeffs[pos].copy())

    def dual(self) -> "Multivector":
        """X * inverse(pseudoscalar); dual(dual(X)) == -X."""
        return Multivector._raw(self._mask, self._coeffs)._product(
            _PSEUDOSCALAR_INV, "geometric")

    def undual(self) -> "Multivector":
        """Inverse of dual: X * pseudoscalar."""
        return Multivector._raw(self._mask, self._coeffs)._product(
            _PSEUDOSCALAR, "geometric")

    def scalar_product(self, other) -> float:
        """Scalar part of a * reverse(b), evaluated on the scalar blade only."""
        if not isinstance(other, Multivector):
            raise TypeError("scalar_product expects a Multivector")
        kern = cayley.product_kernel(self._mask, other._mask, "geometric",
                                     restrict_mask=bl.SCALAR_MASK)
        rev = other.reverse()
        out = cayley.evaluate_kernel(kern, self._coeffs, rev._coeffs)
        return float(out[0]) if kern.n_out else 0.0

    def norm(self) -> float:
        """sqrt(|<a reverse(a)>_0|)."""
        return float(np.sqrt(abs(self.scalar_product(self))))

    def geometric_square_scalar(self) -> float:
        """Scalar part of a * a (no reverse); used by round-primitive tests."""
        kern = cayley.product_kernel(self._mask, self._mask, "geometric",
                                     restrict_mask=bl.SCALAR_MASK)
        out = cayley.evaluate_kernel(kern, self._coeffs, self._coeffs)
        return float(out[0]) if kern.n_out else 0.0

    def inverse(self) -> "Multivector":
        """reverse(a) / <a reverse(a)>_0 for versor-like a.

        Raises NotInvertible when a * reverse(a) has a non-scalar residual
        or a vanishing scalar part.
        """
        rev = self.reverse()
        prod = self._product(rev, "geometric")
        s = prod.scalar_part()
        rest = prod - Multivector.scalar(s)
        residual = float(np.max(np.abs(rest.coeffs))) if len(rest.coeffs) else 0.0
        if residual > _INV_RESIDUAL * max(1.0, abs(s)):
            raise NotInvertible("a * reverse(a) is not scalar within tolerance")
        if abs(s) < _INV_EPS:
            raise NotInvertible("a * reverse(a) has vanishing scalar part")
        return Multivector._raw(rev._mask, rev._coeffs / s)

    # --- comparison/debug helpers ----------------------------------------

    def isclose(self, other: "Multivector", atol: float = 1e-10) -> bool:
        diff = self - other
        return bool(np.all(np.abs(diff.coeffs) <= atol)) if len(diff.coeffs) else True

    def __repr__(self):
        terms = []
        for pos, idx in enumerate(bl.mask_indices(self._mask)):
            c = self._coeffs[pos]
            if c == 0.0:
                continue
            name = bl.BLADE_NAMES[idx]
            terms.append(f"{c:g}" if idx == 0 else f"{c:g}*{name}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"<{type(self).__name__} {body}>"

    # Subclass hooks used by versor application ------------------------

    def _sandwich_subspace(self) -> int | None:
        """Blade mask a sandwich should be evaluated on (None = unrestricted)."""
        return type(self).SUBSPACE

    def _wrap_like(self, mv: "Multivector") -> "Multivector":
        """Re-type a raw sandwich result as self's kind."""
        sub = type(self).SUBSPACE
        if sub is None or mv.mask & ~sub:
            return mv
        return type(self)._raw(sub, mv.expanded(sub).coeffs.copy())


_PSEUDOSCALAR = Multivector.basis_blade(bl.PSEUDOSCALAR_INDEX, 1.0)
_PSEUDOSCALAR_INV = Multivector.basis_blade(bl.PSEUDOSCALAR_INDEX, -1.0)


def geometric_product(a: Multivector, b) -> Multivector:
    return a.geometric_product(b)


def outer_product(a: Multivector, b) -> Multivector:
    return a.outer_product(b)


def inner_product(a: Multivector, b) -> Multivector:
    return a.inner_product(b)


def reverse(a: Multivector) -> Multivector:
    return a.reverse()


def dual(a: Multivector) -> Multivector:
    return a.dual()


def grade_project(a: Multivector, k: int) -> Multivector:
    return a.grade_project(k)


def norm(a: Multivector) -> float:
    return a.norm()


def scalar_product(a: Multivector, b: Multivector) -> float:
    return a.scalar_product(b)


def inverse(a: Multivector) -> Multivector:
    return a.inverse()


def basis_vectors() -> tuple[Multivector, ...]:
    """(e0, e1, e2, e3, einf) as unit multivectors."""
    return tuple(Multivector.basis_blade(1 << b) for b in range(bl.N_VECTORS))


def sandwich(v: Multivector, x: Multivector,
             restrict_mask: int = bl.FULL_MASK) -> Multivector:
    """v * x * reverse(v), evaluated only on `restrict_mask` blades."""
    k1 = cayley.product_kernel(v.mask, x.mask, "geometric")
    mid = cayley.evaluate_kernel(k1, v.coeffs, x.coeffs)
    rev = v.reverse()
    k2 = cayley.product_kernel(k1.out_mask, rev.mask, "geometric",
                               restrict_mask=restrict_mask)
    out = cayley.evaluate_kernel(k2, mid, rev.coeffs)
    return Multivector._raw(k2.out_mask, out)
