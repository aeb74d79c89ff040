import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from starloop.disk import (
    FLAT_CONSTANT, FLAT_IDENTITY, FLAT_LOOP, GENERAL, DiskQuadrature, StarElement, classify_boundary,
    gauss_legendre, mode_map, pairwise_sum, random_bounded, random_flat_constant, random_flat_identity,
    star_commutator, star_exp, star_inverse, star_product, trace_defect, trace_TR_nu,
)
from starloop.disk.quadrature import radial_rule
from starloop.errors import BoundaryNotFlat, SingularZerothOrder
from starloop.jets import EXP, Const, Evaluator, X, Y, compose, expm, identity, zero
from starloop.jets.primitives import BumpProfile
from starloop.nuseries import NuSeries

PTS = np.array([[0.0, 0.0], [0.3, -0.2], [-0.6, 0.5], [0.8, 0.1]])
A_DIAG = 1j * np.diag([1.0, -1.0])
B_MIXED = 1j * np.array([[1.0, 1.0], [1.0, -1.0]])


def sup_difference(f, g, points=PTS):
    a, b = f.values(points), g.values(points)
    return max(float(np.abs(a[p] - b[p]).max()) for p in a)


# --- quadrature -------------------------------------------------------------------

def test_gauss_legendre_is_exact_for_polynomials():
    x, w = gauss_legendre(6, 0.0, 2.0)
    for k in range(12):
        assert np.dot(w, x**k) == pytest.approx(2.0 ** (k + 1) / (k + 1), rel=1e-14)


@pytest.mark.parametrize("split", [None, 0.2, 0.35])
def test_disk_moments(split):
    q = DiskQuadrature(48, 64, 8, split=split)
    x, y = q.points.T
    assert q.integrate(np.ones(q.npoints)) == pytest.approx(np.pi, rel=1e-14)
    # int_D r**(2k) = 2 pi / (2k + 2), int_D x**2 y**2 = pi / 24
    for k in range(1, 6):
        assert q.integrate((x * x + y * y) ** k) == pytest.approx(np.pi / (k + 1), rel=1e-13)
    assert q.integrate(x**2 * y**2) == pytest.approx(np.pi / 24, rel=1e-13)
    assert abs(q.integrate(x**3 * y)) < 1e-15


def test_flat_profile_integral_converges():
    rho = BumpProfile(0.2)
    vals = []
    for nr in (24, 48, 96):
        q = DiskQuadrature(nr, 8, 8)
        u = (q.points**2).sum(axis=1)
        vals.append(q.integrate(rho(u).real))
    assert abs(vals[1] - vals[2]) < 1e-12


def test_radial_rule_panels():
    u, w = radial_rule(48, 0.2)
    assert np.sum(u < 0.2) == 6 and w.sum() == pytest.approx(1.0, rel=1e-15)
    assert len(radial_rule(5, 0.2)[0]) == 5


def test_pairwise_sum_matches_exact_sum(rng):
    v = rng.standard_normal(1001)
    assert pairwise_sum(v) == pytest.approx(math.fsum(v), abs=1e-12)
    assert pairwise_sum(np.zeros((0, 3))).shape == (3,)


# --- the Moyal product -----------------------------------------------------------------

def test_canonical_commutator():
    x, y = StarElement.from_map(X, 3), StarElement.from_map(Y, 3)
    c = star_commutator(x, y).values(PTS)
    assert np.allclose(c[0], 0) and np.allclose(c[1], -1j) and np.allclose(c[2], 0) and np.allclose(c[3], 0)


@pytest.mark.parametrize("a,b,c,d", [(0.7, -0.2, 0.3, 1.1), (1.0, 0.5, -0.4, 0.2)])
def test_moyal_product_of_exponentials(a, b, c, d):
    # e^{ax+by} * e^{cx+dy} = e^{(a+c)x+(b+d)y} exp((i nu / 2)(b c - a d))
    K = 5
    f = StarElement.from_map(compose(EXP, a * X + b * Y), K)
    g = StarElement.from_map(compose(EXP, c * X + d * Y), K)
    prod = star_product(f, g).values(PTS)
    base = np.exp((a + c) * PTS[:, 0] + (b + d) * PTS[:, 1])
    s = 0.5j * (b * c - a * d)
    for j in range(K + 1):
        assert np.allclose(prod[j][:, 0, 0], base * s**j / math.factorial(j), atol=1e-13, rtol=1e-12)


@given(seed=st.integers(0, 2**16))
def test_associativity(seed):
    rng = np.random.default_rng(seed)
    f, g, h = (random_bounded(rng, 2, 2, degree=2) for _ in range(3))
    lhs = star_product(star_product(f, g), h)
    rhs = star_product(f, star_product(g, h))
    assert sup_difference(lhs, rhs) < 1e-9


def test_zero_order_term_is_pointwise(rng):
    f, g = random_bounded(rng, 2, 2), random_bounded(rng, 2, 2)
    prod = star_product(f, g).values(PTS, powers=[0])[0]
    assert np.allclose(prod, f.values(PTS)[0] @ g.values(PTS)[0])


# --- inverse and exponential -------------------------------------------------------------

def test_star_inverse_is_two_sided(rng, profile):
    f = random_flat_identity(rng, 2, 3, profile)
    inv = star_inverse(f)
    one = StarElement.identity(2, 3)
    assert sup_difference(star_product(f, inv), one) < 1e-11
    assert sup_difference(star_product(inv, f), one) < 1e-11


def test_star_inverse_rejects_singular():
    f = StarElement.from_map(X @ identity(2), 2)
    with pytest.raises(SingularZerothOrder):
        star_inverse(f)


def test_star_exp_of_linear_function_is_ordinary_exp():
    # star powers of a linear function coincide with ordinary powers
    A = np.array([[0.3, 1j], [0.5, -0.2]])
    Xe = StarElement.from_map(X @ Const(A) + Y @ Const(0.5 * A), 2)
    e = star_exp(Xe, quad=DiskQuadrature(8, 8, 4))
    ref = expm(X @ Const(A) + Y @ Const(0.5 * A))
    vals = e.values(PTS)
    assert np.allclose(vals[0], ref.values(PTS), atol=1e-12)
    assert np.abs(vals[1]).max() < 1e-12 and np.abs(vals[2]).max() < 1e-12


def test_star_exp_inverse_pair(rng, profile):
    c = random_flat_constant(rng, 2, 2, profile, scale=0.4)
    q = DiskQuadrature(8, 8, 4)
    prod = star_product(star_exp(c, quad=q), star_exp(c.scaled(-1.0), quad=q))
    assert sup_difference(prod, StarElement.identity(2, 2)) < 1e-11


# --- boundary classes -------------------------------------------------------------------

def test_boundary_classification(profile):
    assert StarElement.identity(2).boundary == FLAT_IDENTITY
    assert StarElement.constant(A_DIAG).boundary == FLAT_CONSTANT
    assert StarElement.from_map(mode_map(A_DIAG, 2, profile)).boundary == FLAT_LOOP
    assert StarElement.from_map(X @ identity(2)).boundary == GENERAL
    chi = compose(profile.complement(), X * X + Y * Y)
    s = NuSeries((identity(2) + chi @ Const(A_DIAG), chi @ Const(B_MIXED), zero(2)))
    assert classify_boundary(s) == FLAT_IDENTITY


def test_boundary_values_multiply_for_constant_boundaries(rng, profile):
    f, g = random_flat_constant(rng, 2, 3, profile), random_flat_constant(rng, 2, 3, profile)
    ev = Evaluator(DiskQuadrature(8, 32, 4).boundary_points)
    prod = star_product(f, g).values(None, evaluator=ev)
    fv, gv = f.values(None, evaluator=ev), g.values(None, evaluator=ev)
    for p in prod:
        assert np.abs(prod[p] - sum(fv[a] @ gv[p - a] for a in range(p + 1))).max() < 1e-10


@pytest.mark.parametrize("m,k", [(1, 1), (2, -1), (3, -2)])
def test_loop_boundary_values_second_order_term(m, k, profile):
    # for boundary loops the nu**2 term on the circle is -(m k / 4) e^{i(m+k) theta} A B
    q = DiskQuadrature(8, 32, 4)
    f = StarElement.from_map(mode_map(A_DIAG, m, profile), 2)
    g = StarElement.from_map(mode_map(B_MIXED, k, profile), 2)
    ev = Evaluator(q.boundary_points)
    prod = star_product(f, g).values(None, evaluator=ev)
    fv, gv = f.values(None, evaluator=ev), g.values(None, evaluator=ev)
    assert np.abs(prod[0] - fv[0] @ gv[0]).max() < 1e-12
    assert np.abs(prod[1]).max() < 1e-10
    ref = -(m * k / 4) * np.exp(1j * (m + k) * q.theta)[:, None, None] * (A_DIAG @ B_MIXED)
    assert np.abs(prod[2] - ref).max() < 1e-10


# --- traces --------------------------------------------------------------------------

def test_trace_of_scalar_unit(quad):
    # TR_nu(nu) = (1/2 pi) int_D 1 = 1/2 at nu**0
    one_nu = StarElement(NuSeries((zero(1), identity(1), zero(1))), FLAT_CONSTANT)
    tr = trace_TR_nu(one_nu, quad)
    assert tr[0] == pytest.approx(0.5, rel=1e-14) and tr[-1] == 0


@given(seed=st.integers(0, 2**16))
def test_trace_property_on_constant_boundaries(seed):
    rng = np.random.default_rng(seed)
    profile = BumpProfile(0.2)
    q = DiskQuadrature()
    f, g = random_flat_constant(rng, 2, 2, profile), random_flat_constant(rng, 2, 2, profile)
    tr = trace_TR_nu(star_commutator(f, g), q)
    assert max(abs(c) for c in tr.coeffs) < 1e-9


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_trace_defect_matches_mode_formula(m, quad, profile):
    f = StarElement.from_map(mode_map(A_DIAG, m, profile), 2)
    g = StarElement.from_map(mode_map(B_MIXED, -m, profile), 2)
    d = trace_defect(f, g, quad)
    ref = -m * np.trace(A_DIAG @ B_MIXED)
    assert abs(d.laurent) < 1e-12
    assert abs(d.rhs - ref) < 1e-12
    assert abs(d.lhs[0] - ref) < 1e-6 * abs(ref)


def test_trace_defect_requires_flat_boundary(quad):
    f = StarElement.from_map(X @ identity(2), 2)
    with pytest.raises(BoundaryNotFlat):
        trace_defect(f, f, quad)
