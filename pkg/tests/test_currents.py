import numpy as np
import pytest
from scipy.linalg import expm

from starloop import currents as cur
from starloop.errors import CutoffTooLarge, DimensionMismatch

from conftest import random_matrix


def random_current(rng, modes, n_g=2):
    return cur.CurrentOperator({q: random_matrix(rng, n_g, True) for q in modes}, n_g)


def test_truncation_invariants():
    T = cur.SpectralTruncation3D(2, 2)
    assert T.size == 2 * 2 * 125
    assert max(T.invariants().values()) < 1e-13


def test_size_limit():
    with pytest.raises(CutoffTooLarge):
        cur.SpectralTruncation3D(20)


def test_current_matrix_is_anti_hermitian(rng):
    X = random_current(rng, [(1, 0, 0), (-1, 0, 0), (0, 1, -1), (0, -1, 1)])
    # anti-hermitian as a function iff A_{-q} = -A_q^*; enforce that
    modes = dict(X.modes)
    for q in [(1, 0, 0), (0, 1, -1)]:
        modes[tuple(-c for c in q)] = -modes[q].conj().T
    X = cur.CurrentOperator(modes)
    assert X.anti_hermitian_residual(cur.SpectralTruncation3D(1, 2)) < 1e-14


def test_deformation_matches_closed_form_blocks(rng):
    A = random_matrix(rng, 2, True)
    q = (1, -1, 0)
    T = cur.SpectralTruncation3D(2, 2)
    M = cur.deform(cur.CurrentOperator({q: A}), T)
    for k, n in enumerate(T.modes):
        tgt = T.index.get(tuple(a + b for a, b in zip(n, q)))
        if tgt is None:
            continue
        blk = M[T._slice(tgt), T._slice(k)]
        assert np.abs(blk - cur.deform_block(A, q, n)).max() < 1e-12


def test_constant_current_is_not_deformed(rng):
    X = cur.CurrentOperator({(0, 0, 0): random_matrix(rng, 2, True)})
    T = cur.SpectralTruncation3D(1, 2)
    assert np.abs(cur.deform(X, T) - X.matrix(T)).max() < 1e-14


def test_lundberg_cocycle_identities(rng):
    T = cur.SpectralTruncation3D(2, 2)

    def generic():
        a = random_matrix(rng, T.size, True)
        return a / np.sqrt(T.size)

    P, Q, R = generic(), generic(), generic()

    def c(a, b):
        return cur.lundberg_cocycle(a, b, T.eps)

    def br(a, b):
        return a @ b - b @ a

    scale = abs(c(P, Q))
    assert scale > 1e-2
    assert abs(c(P, Q) + c(Q, P)) < 1e-10 * scale
    assert abs(c(br(P, Q), R) + c(br(Q, R), P) + c(br(R, P), Q)) < 1e-10 * scale


def test_lundberg_cocycle_vanishes_on_spin_trivial_currents(rng):
    # every term is a spin trace of an odd product of sigma . (unit vector)
    # built from at most two directions, which is zero
    T = cur.SpectralTruncation3D(2, 2)
    X = random_current(rng, [(1, 0, 0), (0, 1, -1), (1, 1, 0)]).matrix(T)
    Y = random_current(rng, [(-1, 0, 0), (0, -1, 1), (-1, -1, 0)]).matrix(T)
    assert abs(cur.lundberg_cocycle(X, Y, T.eps)) < 1e-12 * np.linalg.norm(X) * np.linalg.norm(Y)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_shift_operator_cocycle(m):
    for lam in range(m, 6):
        _, eps = cur.shift_model(lam)
        v = cur.lundberg_cocycle(cur.shift_operator(m, lam), cur.shift_operator(-m, lam), eps)
        assert v == -m


def test_dimension_checks():
    T = cur.SpectralTruncation3D(1, 1)
    with pytest.raises(DimensionMismatch):
        cur.CurrentOperator({(0, 0, 0): np.eye(2)}).matrix(T)
    with pytest.raises(DimensionMismatch):
        cur.lundberg_cocycle(np.eye(2), np.eye(3), np.eye(2))


def test_hs_rows_and_gaps():
    X = cur.CurrentOperator({(1, 0, 0): np.array([[1j]])})
    rows = cur.hs_norm_comparison(X, [1, 2])
    assert [r.cutoff for r in rows] == [1, 2]
    assert all(r.hs_plain > 0 and r.hs_deformed > 0 for r in rows)
    synthetic = [cur.HSRow(1, 1.0, 1.0), cur.HSRow(2, 2.0, 1.5), cur.HSRow(3, 3.0, 1.8)]
    g = cur.hs_trend_gaps(synthetic)
    assert g == pytest.approx([3 / 1.25, 5 / (1.8**2 - 2.25)])
    assert cur.hs_trend_holds(synthetic)
    with pytest.raises(ValueError):
        cur.hs_norm_comparison(X, [2, 1])


def test_commutator_defect_vanishes_for_constant_currents(rng):
    X = cur.CurrentOperator({(0, 0, 0): random_matrix(rng, 2, True)})
    Y = cur.CurrentOperator({(0, 0, 0): random_matrix(rng, 2, True)})
    Z, d = cur.commutator_defect(X, Y, cur.SpectralTruncation3D(1, 2))
    assert np.abs(Z).max() < 1e-13 and d.weighted_defect < 1e-12


def test_dirac_spectrum():
    T = cur.SpectralTruncation3D(1, 1)
    ev = np.sort(np.linalg.eigvalsh(T.D))
    ref = np.sort(np.concatenate([[np.linalg.norm(n), -np.linalg.norm(n)] for n in T.modes]))
    assert np.allclose(ev, ref, atol=1e-13)
    assert T.size == 54


def test_cocycle_of_operator_with_itself_vanishes(rng):
    T = cur.SpectralTruncation3D(1, 2)
    X = random_current(rng, [(1, 0, 0), (0, 0, 0)]).matrix(T)
    assert cur.lundberg_cocycle(X, X, T.eps) == 0


def test_deform_is_linear_and_gauge_covariant(rng):
    T = cur.SpectralTruncation3D(1, 2)
    X = random_current(rng, [(1, 0, 0), (0, 1, 1)])
    Y = random_current(rng, [(0, 0, 1)])
    a, b = 0.3, -1.7j
    lin = cur.deform(a * X.matrix(T) + b * Y.matrix(T), T) - a * cur.deform(X, T) - b * cur.deform(Y, T)
    assert np.abs(lin).max() < 1e-13
    # constant gauge rotation g acting on the gauge factor only
    g = expm(random_matrix(rng, 2, True))
    G = np.kron(np.eye(T.size // 2), g)
    rot = cur.CurrentOperator({q: g @ A @ g.conj().T for q, A in X.modes.items()})
    assert np.abs(G @ cur.deform(X, T) @ G.conj().T - cur.deform(rot, T)).max() < 1e-12


def test_deformation_corrections_decay_with_mode_distance():
    X = cur.CurrentOperator({(1, 0, 0): np.array([[1j]])})
    shells = cur.deformation_shell_norms(X, [1, 2, 3])
    assert shells[0] > shells[1] > shells[2]


def test_hs_norms_scale_with_gauge_trace():
    one = cur.hs_norm_comparison(cur.CurrentOperator({(1, 0, 0): np.array([[1j]])}), [1, 2])
    two = cur.hs_norm_comparison(cur.CurrentOperator({(1, 0, 0): 1j * np.eye(2)}), [1, 2])
    for a, b in zip(one, two):
        assert b.hs_plain**2 == pytest.approx(2 * a.hs_plain**2, rel=1e-13)
        assert b.hs_deformed**2 == pytest.approx(2 * a.hs_deformed**2, rel=1e-13)


def test_constant_current_has_zero_hs_norms():
    rows = cur.hs_norm_comparison(cur.CurrentOperator({(0, 0, 0): np.array([[1j]])}), [1, 2])
    assert all(r.hs_plain < 1e-14 and r.hs_deformed < 1e-14 for r in rows)


def test_abelian_defect_is_the_deformed_commutator():
    X = cur.CurrentOperator({(1, 0, 0): np.array([[1j]])})
    Y = cur.CurrentOperator({(0, 1, 0): np.array([[2j]])})
    T = cur.SpectralTruncation3D(2, 1)
    Z, _ = cur.commutator_defect(X, Y, T)
    dx, dy = cur.deform(X, T), cur.deform(Y, T)
    assert np.abs(Z - (dx @ dy - dy @ dx)).max() < 1e-14
    assert np.abs(Z).max() > 1e-3


def test_zero_mode_choice_is_a_bounded_correction():
    X = cur.CurrentOperator({(1, 0, 0): np.array([[1j]])})
    d = cur.zero_mode_sensitivity(X, [1, 2, 3])
    # only blocks touching n = 0 change, so the difference does not grow with the cutoff
    assert d[1] == pytest.approx(d[2], rel=1e-12)
