import numpy as np
import pytest

from starloop import topology as top
from starloop.disk import DiskQuadrature
from starloop.errors import NonUnitarySlice
from starloop.jets import Const, X, identity
from starloop.jets.loops import LoopFamily

from conftest import random_matrix


@pytest.fixture(scope="module")
def gen():
    return top.su2_generator_loop()


@pytest.fixture(scope="module")
def q():
    return DiskQuadrature()


def test_three_form_reduces_to_one_ordering(rng):
    Lt, Lx, Ly = (random_matrix(rng, 3) for _ in range(3))
    six = top.wzw_by_permutations(Lt, Lx, Ly)
    assert six == pytest.approx(3 * np.trace(Lt @ (Lx @ Ly - Ly @ Lx)), abs=1e-12)


def test_generator_is_a_valid_loop(gen, q):
    assert gen.validate(q)
    pts = q.points[::131]
    for t in (0.13, 0.5, 0.81):
        assert gen.family.derivative_residual(pts, t, h=1e-5) < 1e-6


def test_generator_has_degree_one(gen, q):
    wz = top.wzw_integral(gen, q)
    w = top.winding_via_determinant(gen, q)
    assert abs(abs(wz) - 1) < 1e-3
    assert abs(abs(w.value) - 1) < 1e-3 and abs(w.value.imag) < 1e-3
    # the two integers agree with the same sign
    assert abs(w.value - wz) < 2e-3
    assert w.laurent_max < 1e-9


def test_jobs_do_not_change_the_result(gen, q):
    assert top.wzw_integral(gen, q, jobs=2) == top.wzw_integral(gen, q, jobs=1)


@pytest.mark.slow
def test_repetition_and_reversal(gen, q):
    base = top.wzw_integral(gen, q)
    assert top.wzw_integral(gen.repeated(2), q) == pytest.approx(2 * base, abs=2e-3)
    assert top.wzw_integral(gen.reversed(), q) == pytest.approx(-base, abs=1e-10)
    assert top.winding_via_determinant(gen.repeated(2), q).value == pytest.approx(2 * base, abs=2e-3)


def test_constant_loop_has_degree_zero(q):
    c = top.constant_loop(2)
    assert abs(top.wzw_integral(c, q)) < 1e-14
    assert abs(top.winding_via_determinant(c, q).value) < 1e-14


@pytest.mark.slow
def test_perturbation_keeps_the_degree(gen, q):
    p = top.perturbed_loop(gen, 0.1)
    assert p.validate(q)
    assert top.wzw_integral(p, q) == pytest.approx(top.wzw_integral(gen, q), abs=1e-3)


def test_symmetric_loop_has_degree_zero(q):
    s = top.symmetric_su2_loop()
    assert s.validate(q)
    assert abs(top.wzw_integral(s, q)) < 1e-3
    assert abs(top.winding_via_determinant(s, q).value) < 1e-3


def test_non_unitary_slice_rejected(q):
    A = np.array([[1.0, 0.0], [0.0, 2.0]])
    fam = LoopFamily(lambda t: identity(2) + np.sin(2 * np.pi * t) * (X @ Const(A)) * 0.1,
                     lambda t: (0.2 * np.pi * np.cos(2 * np.pi * t)) * (X @ Const(A)), closed=True)
    with pytest.raises(NonUnitarySlice):
        top.wzw_integral(top.GLoop(fam), q)


def test_open_family_is_not_a_loop():
    with pytest.raises(ValueError):
        top.GLoop(LoopFamily(lambda t: identity(2), lambda t: 0 * identity(2), closed=False))
