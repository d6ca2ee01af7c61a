import numpy as np
import pytest

import oracles
from cgar import blades as bl
from cgar.errors import NotInvertible, UnknownBlade
from cgar.multivector import Multivector, basis_vectors, sandwich
from conftest import dense, random_multivector


def test_construction_and_access():
    mv = Multivector.from_terms({"scalar": 2.0, "e1": 3.0, "e12": -1.0})
    assert mv.get("scalar") == 2.0
    assert mv.get("e1") == 3.0
    assert mv.get(bl.blade_index("e12")) == -1.0
    assert mv.get("e23") == 0.0  # absent blade reads as zero
    assert mv.scalar_part() == 2.0
    assert mv.max_grade() == 2


def test_from_terms_unknown_name():
    with pytest.raises(UnknownBlade):
        Multivector.from_terms({"e9": 1.0})


def test_dense_roundtrip():
    rng = np.random.default_rng(0)
    mv = random_multivector(rng)
    back = Multivector.from_dense(mv.dense())
    assert back.isclose(mv, atol=0.0)


def test_expanded_embeds_and_restricted_truncates():
    mv = Multivector.from_terms({"e1": 1.0, "e2": 2.0})
    wide = mv.expanded(bl.POINT_MASK)
    assert wide.mask == bl.POINT_MASK
    assert wide.get("e1") == 1.0 and wide.get("e0") == 0.0
    with pytest.raises(ValueError):
        mv.expanded(bl.SCALAR_MASK)  # not a superset
    cut = wide.restricted(bl.SCALAR_MASK | (1 << bl.blade_index("e1")))
    assert cut.get("e1") == 1.0
    assert cut.mask & ~(bl.SCALAR_MASK | (1 << bl.blade_index("e1"))) == 0


def test_arithmetic_matches_dense():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = random_multivector(rng, int(rng.integers(1, bl.FULL_MASK)))
        b = random_multivector(rng, int(rng.integers(1, bl.FULL_MASK)))
        np.testing.assert_allclose(dense(a + b), dense(a) + dense(b), atol=1e-14)
        np.testing.assert_allclose(dense(a - b), dense(a) - dense(b), atol=1e-14)
        np.testing.assert_allclose(dense(-a), -dense(a), atol=0.0)
        np.testing.assert_allclose(dense(2.5 * a), 2.5 * dense(a), atol=0.0)
        np.testing.assert_allclose(dense(a / 2.0), dense(a) / 2.0, atol=0.0)
        np.testing.assert_allclose(dense(a + 1.5), dense(a) + 1.5 * np.eye(32)[0],
                                   atol=0.0)


def test_geometric_product_matches_oracle():
    rng = np.random.default_rng(2)
    for _ in range(100):
        a = random_multivector(rng, int(rng.integers(1, bl.FULL_MASK)))
        b = random_multivector(rng, int(rng.integers(1, bl.FULL_MASK)))
        got = dense(a * b)
        want = oracles.dense_geometric(dense(a), dense(b))
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_outer_and_inner_products_are_grade_parts_of_geometric():
    rng = np.random.default_rng(3)
    e = [Multivector.basis_blade(i) for i in range(32)]
    for a in range(32):
        for b in range(32):
            geo = e[a] * e[b]
            wedge = e[a] ^ e[b]
            dot = e[a] | e[b]
            np.testing.assert_allclose(
                dense(wedge), dense(geo.grade_project(bl.grade(a) + bl.grade(b)))
                if bl.grade(a) + bl.grade(b) <= 5 else np.zeros(32), atol=0.0)
            if a != 0 and b != 0:
                np.testing.assert_allclose(
                    dense(dot),
                    dense(geo.grade_project(abs(bl.grade(a) - bl.grade(b)))),
                    atol=0.0)
            else:
                assert np.all(dense(dot) == 0.0)


def test_product_bilinearity():
    rng = np.random.default_rng(4)
    for _ in range(50):
        a = random_multivector(rng)
        b = random_multivector(rng)
        c = random_multivector(rng)
        s = float(rng.standard_normal())
        for op in (lambda x, y: x * y, lambda x, y: x ^ y, lambda x, y: x | y):
            left = op(a + s * b, c)
            right = op(a, c) + s * op(b, c)
            scale = max(np.abs(dense(left)).max(), 1.0)
            assert np.abs(dense(left) - dense(right)).max() / scale < 1e-12


def test_geometric_associativity():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a = random_multivector(rng)
        b = random_multivector(rng)
        c = random_multivector(rng)
        left = (a * b) * c
        right = a * (b * c)
        scale = max(np.abs(dense(left)).max(), 1.0)
        assert np.abs(dense(left) - dense(right)).max() / scale < 1e-12


def test_reverse_is_anti_automorphism():
    rng = np.random.default_rng(6)
    for _ in range(50):
        a = random_multivector(rng)
        b = random_multivector(rng)
        lhs = ~(a * b)
        rhs = ~b * ~a
        scale = max(np.abs(dense(lhs)).max(), 1.0)
        assert np.abs(dense(lhs) - dense(rhs)).max() / scale < 1e-12
        assert (~(~a)).isclose(a, atol=0.0)


def test_dual_and_undual():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = random_multivector(rng)
        assert a.dual().undual().isclose(a, atol=1e-12)
        # double dual: X** = X * (I * I) reversed twice; in this algebra I^2 = -1
        dd = a.dual().dual()
        np.testing.assert_allclose(dense(dd), -dense(a), atol=1e-12)


def test_dual_of_scalar_is_pseudoscalar_multiple():
    one = Multivector.scalar(1.0)
    d = one.dual()
    assert abs(abs(d.get("e0123i")) - 1.0) < 1e-15
    assert np.abs(dense(d)).sum() == abs(d.get("e0123i"))


def test_grade_project():
    rng = np.random.default_rng(8)
    a = random_multivector(rng)
    total = sum((a.grade_project(k) for k in range(6)), Multivector.zero())
    assert total.isclose(a, atol=0.0)
    for k in range(6):
        part = a.grade_project(k)
        assert part.mask & ~bl.GRADE_MASKS[k] == 0


def test_float_conversion():
    assert float(Multivector.scalar(2.5)) == 2.5
    assert float(Multivector.zero(bl.GRADE_MASKS[1])) == 0.0
    # nonzero non-scalar content refuses to collapse
    with pytest.raises(TypeError):
        float(Multivector.from_terms({"1": 1.0, "e1": 0.5}))
    # a zero coefficient on a non-scalar blade is still just a scalar
    assert float(Multivector.from_terms({"1": 3.0, "e12": 0.0})) == 3.0


def test_scalar_product_symmetry():
    rng = np.random.default_rng(9)
    a = random_multivector(rng)
    b = random_multivector(rng)
    assert abs(a.scalar_product(b) - b.scalar_product(a)) < 1e-12
    assert abs(a.scalar_product(b) - (a * ~b).scalar_part()) < 1e-12


def test_inverse_of_versor_like_elements():
    rng = np.random.default_rng(10)
    # vectors with nonzero square invert cleanly
    for _ in range(20):
        v = random_multivector(rng, bl.GRADE_MASKS[1])
        if abs(v.geometric_square_scalar()) < 1e-3:
            continue
        inv = v.inverse()
        ident = v * inv
        assert abs(ident.scalar_part() - 1.0) < 1e-10
        off = dense(ident).copy()
        off[0] = 0.0
        assert np.abs(off).max() < 1e-10


def test_inverse_rejects_null_elements():
    null_point = Multivector.from_terms({"e0": 1.0})  # e0 squares to zero
    with pytest.raises(NotInvertible):
        null_point.inverse()


def test_basis_vectors_signature():
    e0, e1, e2, e3, ei = basis_vectors()
    for v in (e1, e2, e3):
        assert abs((v * v).scalar_part() - 1.0) < 1e-15
    assert (e0 * e0).isclose(Multivector.zero(), atol=1e-15)
    assert (ei * ei).isclose(Multivector.zero(), atol=1e-15)
    assert abs((e0 | ei).scalar_part() + 1.0) < 1e-15


def test_sandwich_restriction_matches_dense_sandwich():
    rng = np.random.default_rng(11)
    from cgar.versors import Rotor, Translator

    mot = Translator(rng.standard_normal(3)) * Rotor(
        rng.standard_normal(3), rng.uniform(-2, 2))
    x = random_multivector(rng, bl.POINT_MASK)
    full = mot * x * ~mot
    cut = sandwich(mot, x, restrict_mask=bl.POINT_MASK)
    np.testing.assert_allclose(
        dense(cut), dense(full.restricted(bl.POINT_MASK)), atol=1e-12)
    # and the dropped blades were numerically negligible anyway
    leak = dense(full).copy()
    leak[list(bl.mask_indices(bl.POINT_MASK))] = 0.0
    assert np.abs(leak).max() < 1e-10


def test_repr_mentions_leading_blades():
    mv = Multivector.from_terms({"e1": 1.25})
    assert "e1" in repr(mv)
