import os
import subprocess
import sys
from math import factorial

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, strategies as st

from starloop.errors import DomainError, OrderExceeded
from starloop.jets import (
    COS, EXP, SIN, BumpProfile, Const, Evaluator, LoopFamily, X, Y, U, compose, expm, identity, inverse,
    jet_eval, available_backends,
)
from starloop.jets import kernels
from starloop.jets import taylor1d as t1
from starloop.jets._tables import n_slots, slot
from starloop.jets.primitives import angular_profile

from conftest import random_matrix

PTS = np.array([[0.1, -0.3], [0.4, 0.2], [-0.5, 0.5]])


def test_separable_scalar_jet_matches_closed_form():
    # d^a_x d^b_y e^x sin y = e^x sin^(b)(y)
    f = compose(EXP, X) @ compose(SIN, Y)
    M = 6
    J = jet_eval(f, PTS, M)
    for a in range(M + 1):
        for b in range(M + 1 - a):
            dsin = [np.sin, np.cos, lambda y: -np.sin(y), lambda y: -np.cos(y)][b % 4]
            ref = np.exp(PTS[:, 0]) * dsin(PTS[:, 1]) / (factorial(a) * factorial(b))
            assert np.allclose(J[a, b][:, 0, 0], ref, atol=1e-13, rtol=1e-12)


def test_polynomial_jet_is_exact():
    # (x + 2y)^3 has every derivative known in closed form
    f = (X + 2.0 * Y) @ (X + 2.0 * Y) @ (X + 2.0 * Y)
    J = jet_eval(f, PTS, 4)
    x, y = PTS[:, 0], PTS[:, 1]
    assert np.allclose(J[1, 1][:, 0, 0], 12 * (x + 2 * y))
    assert np.allclose(J[0, 3][:, 0, 0], 8.0)  # f_yyy / 3! = 48 / 6
    assert np.allclose(J[2, 2][:, 0, 0], 0.0)


def test_matrix_exponential_value_and_first_derivatives(rng):
    A, B = random_matrix(rng, 3), random_matrix(rng, 3)
    F = expm(X @ Const(A) + Y @ Const(B))
    J = jet_eval(F, PTS, 1)
    h = 1e-5
    for p, (x, y) in enumerate(PTS):
        assert np.allclose(J[0, 0][p], sla.expm(x * A + y * B), atol=1e-12)
        fx = (sla.expm((x + h) * A + y * B) - sla.expm((x - h) * A + y * B)) / (2 * h)
        fy = (sla.expm(x * A + (y + h) * B) - sla.expm(x * A + (y - h) * B)) / (2 * h)
        assert np.allclose(J[1, 0][p], fx, atol=1e-7)
        assert np.allclose(J[0, 1][p], fy, atol=1e-7)


def test_inverse_jet_times_map_is_identity(rng):
    A = random_matrix(rng, 2)
    F = identity(2) + 0.3 * (X @ Const(A)) + 0.2 * (U @ Const(A @ A))
    ev = Evaluator(PTS)
    prod = ev.data(inverse(F) @ F, 5)
    ref = np.zeros_like(prod)
    ref[0] = np.eye(2)
    assert np.abs(prod - ref).max() < 1e-12


def test_partial_derivative_node_shifts_jet():
    f = compose(COS, X @ Y + Y)
    J = jet_eval(f, PTS, 5)
    Jd = jet_eval(f.d(1, 2), PTS, 2)
    # coefficient relation: d^1_x d^2_y f slot (a, b) = (a+1)!(b+2)!/(a! b!) * f slot (a+1, b+2)
    for a in range(3):
        for b in range(3 - a):
            w = factorial(a + 1) * factorial(b + 2) / (factorial(a) * factorial(b))
            assert np.allclose(Jd[a, b], w * J[a + 1, b + 2], atol=1e-12)


def test_order_limit():
    with pytest.raises(OrderExceeded):
        jet_eval(X, PTS, 11)


def test_points_outside_disk_rejected():
    with pytest.raises(DomainError):
        Evaluator(np.array([[1.0, 0.5]]))


def test_evaluator_reuses_shared_subexpression():
    g = expm(X @ Const(np.array([[0, 1j], [1j, 0]])))
    ev = Evaluator(PTS)
    a = ev.data_many([g @ g, g], [2, 2])
    assert np.allclose(a[0][0], a[1][0] @ a[1][0])


# --- one-variable series ---------------------------------------------------------

def test_taylor1d_elementary_series():
    s = t1.Taylor1D.variable(np.array([0.3, 1.2]), 6)
    assert np.allclose(t1.exp(s).derivatives(), np.exp([0.3, 1.2])[None, :] * np.ones((7, 1)))
    assert np.allclose(t1.log(t1.exp(s)).c, s.c, atol=1e-14)
    sn, cs = t1.sincos(s)
    assert np.allclose((sn * sn + cs * cs).c, t1.Taylor1D.constant(1.0, 6, 2).c, atol=1e-14)
    assert np.allclose((t1.sqrt(s) * t1.sqrt(s)).c, s.c, atol=1e-14)


def test_bump_profile_values_and_flatness():
    rho = BumpProfile(0.2)
    assert rho(0.1) == 0 and rho(1.0) == 1 and rho(0.6) == pytest.approx(0.5)
    assert rho.flatness(6) < 1e-12
    s = np.linspace(0.2, 1.0, 101)
    assert np.all(np.diff(rho(s).real) >= -1e-15)
    chi = rho.complement()
    assert np.allclose(chi(s) + rho(s), 1.0)


def test_angular_profile_gives_exact_boundary_mode():
    rho = BumpProfile(0.2)
    th = np.linspace(0, 2 * np.pi, 9)
    pts = np.column_stack([np.cos(th), np.sin(th)])
    for m in (1, 3, -2):
        z = X + 1j * Y if m > 0 else X - 1j * Y
        zm = z
        for _ in range(abs(m) - 1):
            zm = zm @ z
        f = compose(angular_profile(rho, m), U) @ zm
        assert np.allclose(f.values(pts)[:, 0, 0], np.exp(1j * m * th), atol=1e-14)


def test_loop_family_derivative_is_consistent():
    A = np.array([[0, 1], [-1, 0]], dtype=complex)
    fam = LoopFamily(lambda t: expm((t * X) @ Const(A)), lambda t: (X @ Const(A)) @ expm((t * X) @ Const(A)))
    assert fam.derivative_residual(PTS, 0.37) < 1e-7


# --- compiled versus numpy kernels -------------------------------------------------

@pytest.mark.skipif("cython" not in available_backends(), reason="compiled kernels not built")
@given(order=st.integers(0, 6), n=st.integers(1, 3), seed=st.integers(0, 2**16))
def test_backends_agree(order, n, seed):
    rng = np.random.default_rng(seed)
    S = n_slots(order)
    a = rng.standard_normal((S, 4, n, n)) + 1j * rng.standard_normal((S, 4, n, n))
    b = rng.standard_normal((S, 4, n, n)) + 1j * rng.standard_normal((S, 4, n, n))
    p = kernels.jet_mul(a, b, order, backend="python")
    c = kernels.jet_mul(a, b, order, backend="cython")
    assert np.allclose(p, c, atol=1e-12)
    a[0] += 3 * np.eye(n)
    inv0 = np.linalg.inv(a[0])
    assert np.allclose(kernels.jet_inv(a, order, inv0, backend="python"),
                       kernels.jet_inv(a, order, inv0, backend="cython"), atol=1e-12)


@given(order=st.integers(0, 5), seed=st.integers(0, 2**16))
def test_jet_product_is_associative(order, seed):
    rng = np.random.default_rng(seed)
    S = n_slots(order)
    a, b, c = (rng.standard_normal((S, 2, 2, 2)) + 1j * rng.standard_normal((S, 2, 2, 2)) for _ in range(3))
    m = kernels.jet_mul
    assert np.allclose(m(m(a, b, order), c, order), m(a, m(b, c, order), order), atol=1e-12)


def test_slot_layout_is_a_bijection():
    seen = {slot(a, b) for a in range(7) for b in range(7 - a)}
    assert seen == set(range(n_slots(6)))


def test_fallback_backend_selected_at_import():
    env = dict(os.environ, STARLOOP_KERNELS="python")
    code = "from starloop.jets import BACKEND, available_backends; print(BACKEND, available_backends())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split()[0] == "python"
