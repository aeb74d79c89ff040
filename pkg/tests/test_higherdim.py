from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from starloop import determinant as det
from starloop import higherdim as hd
from starloop.disk import StarElement
from starloop.errors import DimensionMismatch, InvalidSpin

from conftest import random_matrix

PAULI = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]


@given(twice=st.integers(0, 20))
def test_fuzzy_sphere_relations(twice):
    F = hd.su2_irrep(Fraction(twice, 2))
    assert F.d == twice + 1
    assert F.commutation_residual() < 1e-13
    assert F.casimir_residual() < 1e-12
    for a in (F.x, F.y, F.z):
        assert np.abs(a + a.conj().T).max() == 0 and abs(np.trace(a)) < 1e-13


def test_spin_half_is_pauli():
    F = hd.su2_irrep(0.5)
    for a, s in zip((F.x, F.y, F.z), PAULI):
        assert np.allclose(a, -0.5j * s)


def test_invalid_spin():
    with pytest.raises(InvalidSpin):
        hd.su2_irrep(0.3)
    with pytest.raises(InvalidSpin):
        hd.su2_irrep(-1)


def test_combined_trace_is_full_trace(rng):
    tr = hd.TraceFunctional(3)
    a = random_matrix(rng, 6)
    assert tr.combined(a, 2) == pytest.approx(np.trace(a))
    assert tr.traciality_residual(rng) < 1e-12
    with pytest.raises(DimensionMismatch):
        tr.combined(a, 3)


def test_weighted_trace_is_not_tracial(rng):
    w = np.diag([1.0, 2.0, 3.0])
    tr = hd.TraceFunctional(3, lambda a: np.trace(w @ a, axis1=-2, axis2=-1), "weighted")
    assert tr.traciality_residual(rng) > 1e-3


def test_tensor_trace_of_identity(quad):
    F = hd.su2_irrep(1)
    t = hd.tensor_trace(StarElement.identity(2 * F.d, 2), F.trace(), quad, n=2)
    # (1/2 pi) int_D tr(1_6) = 3 at nu**-1
    assert t.laurent[-1] == pytest.approx(3.0, rel=1e-14)
    assert t.plain[0] == pytest.approx(3.0, rel=1e-14)


def test_loop_cocycle_normalizations():
    F = hd.su2_irrep(1)
    f = hd.MatrixLoop({2: F.x, -1: F.y})
    g = hd.MatrixLoop({-2: F.x, 1: F.z + F.y})
    c = hd.loop_cocycle_S(f, g, F.trace())
    ref = -2 * np.trace(F.x @ F.x) + 1 * np.trace(F.y @ (F.z + F.y))
    assert c.paper8 == pytest.approx(ref)
    assert c.paper13 == pytest.approx(1j * ref)
    assert c.value == c.paper8
    with pytest.raises(ValueError):
        hd.loop_cocycle_S(f, g, F.trace(), normalization="other")


def test_fuzzy_cocycle_matches_disk_cocycle(quad):
    F = hd.su2_irrep(1)
    f = hd.MatrixLoop({2: F.x, -1: F.y})
    g = hd.MatrixLoop({-2: F.x, 1: F.z + F.y})
    c = hd.loop_cocycle_S(f, g, F.trace())
    v = det.lie_cocycle(det.LoopAlgebraElement(f.modes), det.LoopAlgebraElement(g.modes), quad)
    assert abs(v.c_star - c.paper8) < 1e-6 * abs(c.paper8)


def test_matrix_loop_algebra():
    F = hd.su2_irrep(0.5)
    f = hd.MatrixLoop({1: F.x})
    g = hd.MatrixLoop({1: F.y})
    assert np.allclose(f.bracket(g).coefficient(2), F.z)
    assert np.allclose((f + g.scaled(2)).coefficient(1), F.x + 2 * F.y)
