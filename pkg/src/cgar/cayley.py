"""Cayley tables for the 32-blade conformal algebra, plus product kernels.

Products are generated once, at import, in the diagonal orthogonal basis
(e1, e2, e3, eplus, eminus) with signature (+,+,+,+,-) where blade
multiplication has simple bitmask sign rules, then converted to the null
basis (e0, e1, e2, e3, einf) through exact change-of-basis matrices:

    einf = eminus + eplus        eplus  = -e0 + einf/2
    e0   = (eminus - eplus)/2    eminus =  e0 + einf/2

All change-of-basis coefficients are dyadic rationals, so the conversion
is exact in double precision; the resulting structure constants are
asserted to be integers in {-1, 0, +1}.

Grade projections of the geometric table give the outer table (grade sum)
and the inner table (absolute grade difference, empty when either operand
is the scalar blade - the "fat dot" convention).

A product *kernel* is the flattened term list for one (blade set, blade
set) operand pair, optionally restricted to an output subspace.  Kernels
are built once per operand-type pair and memoized, which is what makes
result sparsity a static property rather than a per-call computation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blades import FULL_MASK, GRADES, N_BLADES, mask_indices

_ORTH_SIGNATURE = (1, 1, 1, 1, -1)  # e1, e2, e3, eplus, eminus on bits 0..4

# Factor-level change of basis, as {orthogonal bit: coefficient} per null
# vector and vice versa.  Null bit order: e0, e1, e2, e3, einf.
_NULL_TO_ORTH = (
    {3: -0.5, 4: 0.5},   # e0
    {0: 1.0},            # e1
    {1: 1.0},            # e2
    {2: 1.0},            # e3
    {3: 1.0, 4: 1.0},    # einf
)
_ORTH_TO_NULL = (
    {1: 1.0},            # e1
    {2: 1.0},            # e2
    {3: 1.0},            # e3
    {0: -1.0, 4: 0.5},   # eplus
    {0: 1.0, 4: 0.5},    # eminus
)


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the factor concatenation of blades a and b."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def _orth_blade_product(a: int, b: int) -> tuple[int, int]:
    """Geometric product of two orthogonal-basis blades: (sign, out)."""
    sign = _reorder_sign(a, b)
    common = a & b
    for bit in range(5):
        if common >> bit & 1 and _ORTH_SIGNATURE[bit] < 0:
            sign = -sign
    return sign, a ^ b


def _wedge_vector(acc: dict[int, float], vec: dict[int, float]) -> dict[int, float]:
    """Outer-multiply an expanded blade sum by one vector (both exact)."""
    out: dict[int, float] = {}
    for m, c in acc.items():
        for bit, cv in vec.items():
            if m >> bit & 1:
                continue
            sign = -1.0 if ((m >> (bit + 1)).bit_count() & 1) else 1.0
            key = m | (1 << bit)
            out[key] = out.get(key, 0.0) + sign * c * cv
    return {k: v for k, v in out.items() if v != 0.0}


def _basis_matrix(vector_table) -> np.ndarray:
    """32x32 matrix: column j = expansion of source blade j in target blades."""
    mat = np.zeros((N_BLADES, N_BLADES))
    for src in range(N_BLADES):
        acc = {0: 1.0}
        for bit in range(5):
            if src >> bit & 1:
                acc = _wedge_vector(acc, vector_table[bit])
        for tgt, coeff in acc.items():
            mat[tgt, src] = coeff
    return mat


def _build_tensors() -> dict[str, np.ndarray]:
    phi = _basis_matrix(_NULL_TO_ORTH)   # null coords -> orth coords
    psi = _basis_matrix(_ORTH_TO_NULL)   # orth coords -> null coords

    sparse = np.zeros((N_BLADES, N_BLADES, N_BLADES))
    for i in range(N_BLADES):
        for j in range(N_BLADES):
            sign, out = _orth_blade_product(i, j)
            sparse[i, j, out] = sign

    geo = np.einsum("ia,jb,ijk,ck->abc", phi, phi, sparse, psi, optimize=True)
    rounded = np.rint(geo)
    if not np.allclose(geo, rounded, atol=1e-9):
        raise AssertionError("null-basis structure constants are not integral")
    geo = rounded.astype(np.int8)
    if np.abs(geo).max() > 1:
        raise AssertionError("null-basis structure constants exceed +-1")

    g = np.asarray(GRADES)
    gsum = g[:, None, None] + g[None, :, None]
    gdiff = np.abs(g[:, None, None] - g[None, :, None])
    gout = g[None, None, :]
    outer = np.where(gout == gsum, geo, 0).astype(np.int8)
    nonscalar = (g[:, None, None] > 0) & (g[None, :, None] > 0)
    inner = np.where((gout == gdiff) & nonscalar, geo, 0).astype(np.int8)
    return {"geometric": geo, "outer": outer, "inner": inner}


_TENSORS = _build_tensors()

REVERSE_SIGNS = np.array(
    [1 if GRADES[i] % 4 in (0, 1) else -1 for i in range(N_BLADES)], dtype=np.int8
)


class CayleyTable:
    """Read-only term table: entry(a, b) -> ((result blade, sign), ...)."""

    __slots__ = ("name", "_entries")

    def __init__(self, name: str, tensor: np.ndarray):
        self.name = name
        entries = []
        for a in range(N_BLADES):
            for b in range(N_BLADES):
                row = tensor[a, b]
                entries.append(
                    tuple((int(c), int(row[c])) for c in np.nonzero(row)[0])
                )
        self._entries = tuple(entries)

    def entry(self, a: int, b: int) -> tuple[tuple[int, int], ...]:
        if not (0 <= a < N_BLADES and 0 <= b < N_BLADES):
            raise IndexError("blade index out of range 0..31")
        return self._entries[a * N_BLADES + b]

    def __len__(self) -> int:
        return len(self._entries)


_TABLES: dict[str, CayleyTable] = {
    name: CayleyTable(name, tensor) for name, tensor in _TENSORS.items()
}


def generate_cayley_tables() -> tuple[CayleyTable, CayleyTable, CayleyTable]:
    """Return the (geometric, outer, inner) tables. Deterministic."""
    return _TABLES["geometric"], _TABLES["outer"], _TABLES["inner"]


def structure_tensor(kind: str) -> np.ndarray:
    """Copy of the 32x32x32 structure tensor for one product kind."""
    return _TENSORS[kind].copy()


@dataclass(frozen=True)
class Kernel:
    """Flattened term list evaluating one product for fixed operand masks."""

    out_mask: int
    n_out: int
    ia: np.ndarray      # positions into left coefficient array
    ib: np.ndarray      # positions into right coefficient array
    signs: np.ndarray   # float64 in {-1, +1}
    iout: np.ndarray    # positions into the result coefficient array


_KERNELS: dict[tuple[int, int, str, int], Kernel] = {}
_EMPTY = np.empty(0, dtype=np.intp)
_EMPTY_F = np.empty(0)


def product_kernel(mask_a: int, mask_b: int, kind: str,
                   restrict_mask: int = FULL_MASK) -> Kernel:
    """Memoized kernel for (mask_a, mask_b) under one product kind.

    `restrict_mask` drops output blades outside a target subspace before
    the term list is built, so restricted sandwiches never materialize
    off-subspace values.
    """
    key = (mask_a, mask_b, kind, restrict_mask)
    kern = _KERNELS.get(key)
    if kern is not None:
        return kern

    table = _TABLES[kind]
    terms: list[tuple[int, int, int, int]] = []  # (pa, pb, blade, sign)
    out_blades: set[int] = set()
    for pa, a in enumerate(mask_indices(mask_a)):
        for pb, b in enumerate(mask_indices(mask_b)):
            for c, sign in table.entry(a, b):
                if restrict_mask >> c & 1:
                    terms.append((pa, pb, c, sign))
                    out_blades.add(c)

    out_mask = 0
    for c in out_blades:
        out_mask |= 1 << c
    out_pos = {c: p for p, c in enumerate(mask_indices(out_mask))}
    if terms:
        ia = np.array([t[0] for t in terms], dtype=np.intp)
        ib = np.array([t[1] for t in terms], dtype=np.intp)
        signs = np.array([t[3] for t in terms], dtype=np.float64)
        iout = np.array([out_pos[t[2]] for t in terms], dtype=np.intp)
    else:
        ia, ib, iout, signs = _EMPTY, _EMPTY, _EMPTY, _EMPTY_F
    kern = Kernel(out_mask, len(out_pos), ia, ib, signs, iout)
    _KERNELS[key] = kern
    return kern


def predict_blades(mask_a: int, mask_b: int, kind: str,
                   restrict_mask: int = FULL_MASK) -> int:
    """Statically predicted result blade-set mask for a product."""
    return product_kernel(mask_a, mask_b, kind, restrict_mask).out_mask


def evaluate_kernel(kern: Kernel, coeffs_a: np.ndarray,
                    coeffs_b: np.ndarray) -> np.ndarray:
    dtype = np.result_type(coeffs_a.dtype, coeffs_b.dtype)
    if kern.n_out == 0:
        return np.zeros(0, dtype=dtype)
    prod = kern.signs * coeffs_a[kern.ia] * coeffs_b[kern.ib]
    out = np.bincount(kern.iout, weights=prod, minlength=kern.n_out)
    return out.astype(dtype, copy=False)
