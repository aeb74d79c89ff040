"""Verification suites behind the CLI subcommands.

Each suite takes a :class:`RunConfig` and returns ``(checks, diagnostics)``.
A module error inside one check is recorded as a failed check.
"""

import numpy as np
from scipy.integrate import quad as adaptive_quad

from .. import currents as cur
from .. import determinant as det
from .. import higherdim as hd
from .. import topology as top
from ..disk import (
    DiskQuadrature, StarElement, mode_map, random_bounded, random_flat_constant, star_commutator,
    star_product, trace_defect, trace_TR_nu,
)
from ..errors import StarloopError
from ..jets import expr as E
from ..jets.expr import Evaluator
from ..jets.loops import LoopFamily
from ..jets.primitives import BumpProfile
from ..nuseries import NuSeries
from .report import check, failed_check

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.diag([1.0 + 0j, -1.0])
A_DIAG = 1j * SIGMA_Z
B_MIXED = 1j * (SIGMA_X + SIGMA_Z)


class Recorder:
    def __init__(self):
        self.checks = []
        self.diagnostics = []

    def run(self, name, fn):
        """Call ``fn`` (returning one or more check records); errors fail the check."""
        try:
            out = fn()
        except (StarloopError, ArithmeticError, ValueError, np.linalg.LinAlgError) as exc:
            self.checks.append(failed_check(name, exc))
            return
        self.checks.extend(out if isinstance(out, list) else [out])

    def note(self, name, value, note=None):
        rec = {"name": name, "value": value}
        if note:
            rec["note"] = note
        self.diagnostics.append(rec)


def _quad(cfg, s0=None):
    return DiskQuadrature(cfg.nr, cfg.ntheta, cfg.nt, split=cfg.s0 if s0 is None else s0)


def _rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def _sup(elem, points):
    vals = elem.values(points)
    return max(float(np.abs(v).max()) for v in vals.values())


def _wrap(z):
    return abs(det.wrap_2pi_i(z))


def _rng(cfg, stream):
    return np.random.default_rng([cfg.seed, stream])


# --- disk algebra ------------------------------------------------------------------

def mode_defect(m, k, A, B, quad, K, profile):
    f = StarElement.from_map(mode_map(A, m, profile), K)
    g = StarElement.from_map(mode_map(B, k, profile), K)
    return trace_defect(f, g, quad)


def disk_suite(cfg):
    rec = Recorder()
    K, quad = cfg.order_k, _quad(cfg)
    profile = BumpProfile(cfg.s0)
    pts = np.vstack([quad.points, quad.boundary_points])

    def moyal():
        x, y = StarElement.from_map(E.X, K), StarElement.from_map(E.Y, K)
        c = star_commutator(x, y).values(quad.points[:16])
        expect = {p: (-1j if p == 1 else 0.0) for p in c}
        res = max(float(np.abs(c[p] - expect[p]).max()) for p in c)
        return check("moyal_commutator", complex(c[1][0, 0, 0]), -1j, res, cfg.tol("moyal"), "closed_form")

    def assoc():
        rng = _rng(cfg, 1)
        els = [random_bounded(rng, 2, K, degree=2, scale=0.5) for _ in range(20)]
        worst = 0.0
        for i in range(20):
            f, g, h = els[i], els[(i + 1) % 20], els[(i + 2) % 20]
            worst = max(worst, _sup(star_product(star_product(f, g), h) - star_product(f, star_product(g, h)), pts))
        return check("star_associativity", worst, 0.0, worst, cfg.tol("associativity"), "identity")

    def boundary_residuals(f, g):
        ev = Evaluator(quad.boundary_points)
        prod = star_product(f, g).values(None, evaluator=ev)
        fv, gv = f.values(None, evaluator=ev), g.values(None, evaluator=ev)
        return {p: prod[p] - sum(fv[a] @ gv[p - a] for a in range(p + 1)) for p in prod}

    def homomorphism():
        rng = _rng(cfg, 2)
        worst = 0.0
        for _ in range(4):
            f, g = random_flat_constant(rng, 2, K, profile), random_flat_constant(rng, 2, K, profile)
            worst = max(worst, max(float(np.abs(r).max()) for r in boundary_residuals(f, g).values()))
        return check("boundary_homomorphism", worst, 0.0, worst, cfg.tol("boundary_homomorphism"), "identity",
                     note="boundary-constant elements, all orders")

    def loop_boundary():
        # single modes: exact through nu**1, nu**2 term equals -(m k / 4) e^{i(m+k) theta} A B
        th = quad.theta
        first, second = 0.0, 0.0
        for m, k in ((2, -1), (1, 1), (1, -1), (3, -2)):
            f = StarElement.from_map(mode_map(A_DIAG, m, profile), 2)
            g = StarElement.from_map(mode_map(B_MIXED, k, profile), 2)
            res = boundary_residuals(f, g)
            first = max(first, float(np.abs(res[0]).max()), float(np.abs(res[1]).max()))
            ref = -(m * k / 4) * np.exp(1j * (m + k) * th)[:, None, None] * (A_DIAG @ B_MIXED)
            second = max(second, float(np.abs(res[2] - ref).max()))
        return [check("boundary_homomorphism_first_order", first, 0.0, first, cfg.tol("boundary_homomorphism"),
                      "identity", note="loop boundary values, powers 0 and 1"),
                check("boundary_second_order_closed_form", second, 0.0, second, 1e-10, "closed_form",
                      note="nu**2 deviation from the pointwise product for loop boundary values")]

    def trace_property():
        rng = _rng(cfg, 3)
        worst = 0.0
        for _ in range(10):
            f, g = random_flat_constant(rng, 2, K, profile), random_flat_constant(rng, 2, K, profile)
            worst = max(worst, max(abs(c) for c in trace_TR_nu(star_commutator(f, g), quad).coeffs))
        return check("trace_property", worst, 0.0, worst, cfg.tol("trace_property"), "identity")

    def defects():
        out = []
        for m in range(1, 5):
            d = mode_defect(m, -m, A_DIAG, B_MIXED, quad, K, profile)
            ref = -m * np.trace(A_DIAG @ B_MIXED)
            res = max(_rel(d.lhs[0], d.rhs), _rel(d.rhs, ref), abs(d.laurent))
            out.append(check(f"trace_defect_m{m}", d.lhs[0], complex(ref), res, cfg.tol("trace_defect"), "closed_form"))
        for m, k in ((1, 1), (2, -1)):
            d = mode_defect(m, k, A_DIAG, B_MIXED, quad, K, profile)
            res = max(abs(d.lhs[0]), abs(d.rhs), abs(d.laurent))
            out.append(check(f"trace_defect_orthogonal_{m}_{k}", d.lhs[0], 0.0, res, 1e-8, "closed_form"))
        return out

    def profile_independence():
        vals = [mode_defect(2, -2, A_DIAG, B_MIXED, _quad(cfg, s0), K, BumpProfile(s0)).lhs[0] for s0 in (0.1, 0.2, 0.3)]
        spread = max(abs(a - vals[0]) for a in vals)
        return check("profile_independence", vals, vals[0], spread, cfg.tol("profile_independence"), "identity")

    def convergence():
        a = mode_defect(2, -2, A_DIAG, B_MIXED, quad, K, profile).lhs[0]
        b = mode_defect(2, -2, A_DIAG, B_MIXED, quad.refined(), K, profile).lhs[0]
        return check("quadrature_convergence", a, b, abs(a - b), cfg.tol("quadrature_convergence"), "refinement")

    def truncation():
        other = 4 if K == 2 else 2
        a = mode_defect(2, -2, A_DIAG, B_MIXED, quad, K, profile).lhs[0]
        b = mode_defect(2, -2, A_DIAG, B_MIXED, quad, other, profile).lhs[0]
        return check("truncation_stability", a, b, abs(a - b), cfg.tol("truncation_stability"), "cross_check",
                     note=f"K={K} against K={other}")

    for name, fn in [("moyal_commutator", moyal), ("star_associativity", assoc),
                     ("boundary_homomorphism", homomorphism), ("loop_boundary", loop_boundary),
                     ("trace_property", trace_property),
                     ("trace_defect", defects), ("profile_independence", profile_independence),
                     ("quadrature_convergence", convergence), ("truncation_stability", truncation)]:
        rec.run(name, fn)
    return rec.checks, rec.diagnostics


# --- winding -------------------------------------------------------------------------

def winding_suite(cfg):
    rec = Recorder()
    quad = _quad(cfg)
    profile = BumpProfile(cfg.s0)
    gen = top.su2_generator_loop(profile)
    tol_int, tol_agree = cfg.tol("integer"), cfg.tol("agreement")
    cache = {}

    def both(loop):
        if loop.name not in cache:
            cache[loop.name] = (top.wzw_integral(loop, quad, jobs=cfg.jobs), top.winding_via_determinant(loop, quad))
        return cache[loop.name]

    def integer_checks(label, loop, magnitude):
        wz, wd = both(loop)
        w = wd.value
        return [
            check(f"{label}_wzw", wz, magnitude, abs(abs(wz) - magnitude), tol_int, "integer"),
            check(f"{label}_winding", w, magnitude, max(abs(abs(w.real) - magnitude), abs(w.imag)), tol_int, "integer"),
            check(f"{label}_agreement", abs(w), abs(wz), abs(abs(w) - abs(wz)), tol_agree, "cross_check"),
        ]

    rec.run("generator", lambda: integer_checks("generator", gen, 1.0))
    rec.run("repeated", lambda: integer_checks(f"repeated_{cfg.repeats}", gen.repeated(cfg.repeats), float(cfg.repeats)))
    rec.run("constant", lambda: integer_checks("constant", top.constant_loop(2), 0.0))

    def reversal():
        wz, wd = both(gen)
        rz, rd = both(gen.reversed())
        res = max(abs(rz + wz), abs(rd.value + wd.value))
        return check("orientation_reversal", [rz, rd.value], [-wz, -wd.value], res, tol_int, "identity")

    def perturbation():
        wz, wd = both(top.perturbed_loop(gen, 0.1, profile))
        res = max(abs(wz - round(wz)), abs(wd.value - round(wd.value.real)))
        same = round(wz) == round(both(gen)[0]) and round(wd.value.real) == round(both(gen)[1].value.real)
        return check("homotopy_invariance", [wz, wd.value], round(both(gen)[0]), res, tol_int, "integer",
                     passed=same and res <= tol_int)

    def laurent():
        vals = [both(gen)[1].laurent_max, both(top.perturbed_loop(gen, 0.1, profile))[1].laurent_max]
        return check("laurent_vanishes", max(vals), 0.0, max(vals), 1e-9, "identity")

    rec.run("orientation_reversal", reversal)
    rec.run("homotopy_invariance", perturbation)
    rec.run("laurent_vanishes", laurent)
    try:
        wz, wd = both(gen)
        rec.note("relative_sign", float(np.sign(wz) * np.sign(wd.value.real)),
                 "sign of (winding / wzw) for the generator")
        sym = top.symmetric_su2_loop(profile)
        rec.note("symmetric_loop_degree", [top.wzw_integral(sym, quad), top.winding_via_determinant(sym, quad).value],
                 "loop with f(t, theta) = f(1 - t, theta + pi) has degree zero")
    except StarloopError as exc:
        rec.note("diagnostics_error", str(exc))
    return rec.checks, rec.diagnostics


# --- cocycles and determinants -------------------------------------------------------------

def random_loop(rng, modes, n=2, scale=0.5):
    """Loop with random anti-hermitian traceless coefficients on the given modes."""
    out = {}
    for m in modes:
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = a - a.conj().T
        a -= np.trace(a) / n * np.eye(n)
        out[m] = scale * a
    return det.LoopAlgebraElement(out)


def chi_polynomial(rng, profile, scale=0.3, hermitian=False):
    """chi(u) times a random degree-1 polynomial; anti-hermitian traceless if requested."""
    chi = E.compose(profile.complement(), E.U)
    terms = []
    for mono in (E.identity(1), E.X, E.Y):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        if hermitian:
            a = a - a.conj().T
            a -= np.trace(a) / 2 * np.eye(2)
        terms.append(mono @ E.Const(scale * a))
    return chi @ E.add(*terms)


def group_element(rng, profile, K):
    """exp(Z) * (1 + nu chi P) with Z vanishing on the boundary; also its path."""
    Z = chi_polynomial(rng, profile, hermitian=True)
    g = StarElement.from_map(E.expm(Z), K)
    k = StarElement(NuSeries.from_dict({0: E.identity(2), 1: chi_polynomial(rng, profile)}, K, zero=E.zero(2)))
    return star_product(g, k), Z


def det_unipotent_oracle(c, profile, quad, K):
    """k = 1 + nu c rho(u); det k = exp(c J / 2) with J = int_0^1 rho(s) ds."""
    rho = E.compose(profile, E.U)
    k = StarElement(NuSeries.from_dict({0: E.identity(1), 1: c * rho}, K, zero=E.zero(1)))
    J = adaptive_quad(lambda s: profile(s).real, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=200,
                      points=[profile.s0])[0]
    return det.det_unipotent(k, quad), complex(np.exp(c * J / 2))


def cocycle_suite(cfg):
    rec = Recorder()
    K, quad = cfg.order_k, _quad(cfg)
    profile = BumpProfile(cfg.s0)

    def all_pairs():
        worst_star, worst_ref = 0.0, 0.0
        for m in range(-3, 4):
            for k in range(-3, 4):
                X = det.LoopAlgebraElement({m: A_DIAG}, profile)
                Y = det.LoopAlgebraElement({k: B_MIXED}, profile)
                v = det.lie_cocycle(X, Y, quad)
                ref = k * np.trace(A_DIAG @ B_MIXED) * (m + k == 0)
                worst_star = max(worst_star, _rel(v.c_star, v.c_boundary))
                worst_ref = max(worst_ref, _rel(v.c_boundary, ref))
        return [check("lie_cocycle_star_vs_boundary", worst_star, 0.0, worst_star, cfg.tol("cocycle"), "cross_check"),
                check("lie_cocycle_closed_form", worst_ref, 0.0, worst_ref, cfg.tol("cocycle"), "closed_form")]

    m, k = cfg.modes
    X = det.LoopAlgebraElement({m: A_DIAG}, profile)
    Y = det.LoopAlgebraElement({k: A_DIAG}, profile)
    ref = complex(k * np.trace(A_DIAG @ A_DIAG) * (m + k == 0))

    def headline():
        v = det.lie_cocycle(X, Y, quad)
        return check(f"lie_cocycle_{m}_{k}", v.c_star, ref, _rel(v.c_star, ref), cfg.tol("cocycle"), "closed_form")

    def antisymmetry():
        rng = _rng(cfg, 4)
        P, Q = random_loop(rng, (-2, 1, 3)), random_loop(rng, (-3, -1, 2))
        a, b = det.lie_cocycle(P, Q, quad).c_star, det.lie_cocycle(Q, P, quad).c_star
        return check("antisymmetry", a, -b, abs(a + b), 1e-10, "identity")

    def jacobi():
        rng = _rng(cfg, 5)
        P, Q, R = (random_loop(rng, rng.choice(np.arange(-2, 3), 3, replace=False)) for _ in range(3))

        def c(a, b):
            return det.lie_cocycle(a, b, quad).c_star

        res = abs(c(P.bracket(Q), R) + c(Q.bracket(R), P) + c(R.bracket(P), Q))
        return check("jacobi", res, 0.0, res, cfg.tol("jacobi"), "identity")

    def group_level():
        g = det.group_cocycle_extract(X, Y, cfg.amplitudes, quad, K)
        v = det.lie_cocycle(X, Y, quad)
        rec.note("group_cocycle_ratios", list(g.ratios), "log det / eps**2 per amplitude")
        rec.note("group_cocycle_deviation", [abs(r - g.limit) for r in g.ratios],
                 "|w(eps) / eps**2 - limit| per amplitude")
        return check("group_cocycle", g.limit, v.c_boundary, _rel(g.limit, v.c_boundary),
                     cfg.tol("group_cocycle"), "cross_check")

    def unipotent():
        got, ref_ = det_unipotent_oracle(0.7, profile, quad, K)
        return check("det_unipotent", got, ref_, abs(got - ref_) / abs(ref_), cfg.tol("det_unipotent"), "closed_form")

    def multiplicative():
        rng = _rng(cfg, 6)
        (f, Zf), (h, Zh) = group_element(rng, profile, K), group_element(rng, profile, K)
        lf = det.log_det(f, quad, det.exp_product_path([Zf]))
        lh = det.log_det(h, quad, det.exp_product_path([Zh]))
        lfh = det.log_det(star_product(f, h), quad, det.exp_product_path([Zf, Zh]))
        res = _wrap(lfh - lf - lh)
        return check("det_multiplicative", lfh, lf + lh, res, cfg.tol("det_multiplicative"), "identity")

    def path_independence():
        rng = _rng(cfg, 7)
        Z = chi_polynomial(rng, profile, scale=0.5, hermitian=True)
        W = chi_polynomial(rng, profile, scale=0.5, hermitian=True)
        p1 = det.exp_product_path([Z])
        p2 = LoopFamily(
            lambda t: E.expm(t * Z) @ E.expm(np.sin(np.pi * t) * W),
            lambda t: (Z @ E.expm(t * Z)) @ E.expm(np.sin(np.pi * t) * W)
            + E.expm(t * Z) @ ((np.pi * np.cos(np.pi * t)) * W @ E.expm(np.sin(np.pi * t) * W)),
            name="bent-path",
        )
        a, b = det.det_homotopy(p1, quad).value, det.det_homotopy(p2, quad).value
        return check("path_independence", a, b, _wrap(a - b), cfg.tol("path_independence"), "identity")

    for name, fn in [("lie_cocycle_pairs", all_pairs), ("lie_cocycle", headline), ("antisymmetry", antisymmetry),
                     ("jacobi", jacobi), ("group_cocycle", group_level), ("det_unipotent", unipotent),
                     ("det_multiplicative", multiplicative), ("path_independence", path_independence)]:
        rec.run(name, fn)
    return rec.checks, rec.diagnostics


# --- fuzzy sphere ---------------------------------------------------------------------

def fuzzy_loops(F):
    f = hd.MatrixLoop({2: F.x, -1: F.y})
    g = hd.MatrixLoop({-2: F.x, 1: F.z + F.y})
    return f, g


def fuzzy_suite(cfg):
    rec = Recorder()
    quad = _quad(cfg)
    profile = BumpProfile(cfg.s0)
    spins = sorted({cfg.spin} | {j / 2 for j in range(1, 21)})

    def relations():
        comm = max(hd.su2_irrep(j).commutation_residual() for j in spins)
        cas = max(hd.su2_irrep(j).casimir_residual() for j in spins)
        F = hd.su2_irrep(cfg.spin)
        jj = float(F.j) * (float(F.j) + 1)
        return [check("fuzzy_commutators", comm, 0.0, comm, cfg.tol("fuzzy_commutator"), "identity"),
                check("fuzzy_casimir", complex(F.casimir()[0, 0]), -jj, cas, cfg.tol("casimir"), "closed_form")]

    def traces():
        F = hd.su2_irrep(cfg.spin)
        tr = F.trace()
        res = tr.traciality_residual(_rng(cfg, 8))
        one = StarElement.identity(2 * F.d, cfg.order_k)
        t = hd.tensor_trace(one, tr, quad, n=2)
        ref = 2 * F.d / 2
        return [check("trace_tracial", res, 0.0, res, 1e-12, "identity"),
                check("tensor_trace_identity", t.laurent[-1], ref, abs(t.laurent[-1] - ref), 1e-12, "closed_form")]

    def parity():
        F = hd.su2_irrep(cfg.spin)
        f, g = fuzzy_loops(F)
        c = hd.loop_cocycle_S(f, g, F.trace(), n=1)
        X = det.LoopAlgebraElement(f.modes, profile)
        Y = det.LoopAlgebraElement(g.modes, profile)
        v = det.lie_cocycle(X, Y, quad)
        return check("fuzzy_cocycle_parity", v.c_star, c.paper8, _rel(v.c_star, c.paper8), cfg.tol("fuzzy_cocycle"),
                     "cross_check", note=f"paper13 normalization value {c.paper13}")

    rec.run("fuzzy_relations", relations)
    rec.run("fuzzy_traces", traces)
    rec.run("fuzzy_cocycle_parity", parity)
    F = hd.su2_irrep(cfg.spin)
    rec.note("fuzzy_dimension", F.d, "2j + 1; the ideal generator fixes j = N, so N(N+1) is not the dimension")
    return rec.checks, rec.diagnostics


# --- currents --------------------------------------------------------------------------

def _random_current(rng, modes, n_g):
    out = {}
    for q in modes:
        a = rng.standard_normal((n_g, n_g)) + 1j * rng.standard_normal((n_g, n_g))
        out[q] = a - a.conj().T
    return cur.CurrentOperator(out, n_g)


def deform_suite(cfg):
    rec = Recorder()
    ng = 1
    A = np.array([[1j]])
    X = cur.CurrentOperator({(1, 0, 0): A})

    def invariants():
        T = cur.SpectralTruncation3D(1)
        worst = max(T.invariants().values())
        return check("truncation_invariants", worst, 0.0, worst, 1e-13, "identity")

    def closed_form():
        T = cur.SpectralTruncation3D(2)
        M = cur.deform(X, T)
        worst = 0.0
        for k, n in enumerate(T.modes):
            tgt = T.index.get((n[0] + 1, n[1], n[2]))
            if tgt is not None:
                blk = M[tgt * 2:(tgt + 1) * 2, k * 2:(k + 1) * 2]
                worst = max(worst, float(np.abs(blk - cur.deform_block(A, (1, 0, 0), n)).max()))
        Tc = cur.SpectralTruncation3D(2)
        C = cur.CurrentOperator({(0, 0, 0): A})
        const = float(np.abs(cur.deform(C, Tc) - C.matrix(Tc)).max())
        return [check("deform_closed_form", worst, 0.0, worst, cfg.tol("deform_block"), "closed_form"),
                check("deform_constant", const, 0.0, const, cfg.tol("deform_block"), "identity")]

    def lundberg():
        # spin-trivial currents give c = 0 identically (odd spin traces), so the
        # identities are exercised on generic anti-hermitian operators of the window
        rng = _rng(cfg, 9)
        T = cur.SpectralTruncation3D(2, 2)

        def generic():
            a = rng.standard_normal((T.size, T.size)) + 1j * rng.standard_normal((T.size, T.size))
            return (a - a.conj().T) / np.sqrt(T.size)

        P, Q, R = generic(), generic(), generic()

        def c(a, b):
            return cur.lundberg_cocycle(a, b, T.eps)

        def br(a, b):
            return a @ b - b @ a

        value = c(P, Q)
        J1 = _random_current(rng, [(1, 0, 0), (0, 1, 0)], 2).matrix(T)
        J2 = _random_current(rng, [(-1, 0, 0), (0, -1, 0)], 2).matrix(T)
        rec.note("lundberg_value", value, "c(P, Q) for the generic operators used in the identities")
        rec.note("lundberg_currents", c(J1, J2), "spin-trivial currents: vanishes identically")
        scale = max(1.0, abs(value))
        anti = abs(c(P, Q) + c(Q, P)) / scale
        jac = abs(c(br(P, Q), R) + c(br(Q, R), P) + c(br(R, P), Q)) / scale
        return [check("lundberg_antisymmetry", anti, 0.0, anti, cfg.tol("lundberg"), "identity"),
                check("lundberg_cocycle_identity", jac, 0.0, jac, cfg.tol("lundberg"), "identity")]

    def shift():
        worst, vals = 0.0, []
        for m in range(1, 4):
            for lam in range(m, 5):
                _, eps = cur.shift_model(lam)
                v = cur.lundberg_cocycle(cur.shift_operator(m, lam), cur.shift_operator(-m, lam), eps)
                vals.append(v)
                worst = max(worst, abs(abs(v) - m), abs(v.imag))
        return check("shift_cocycle", vals, "+-m", worst, 1e-12, "closed_form")

    def hs_trend():
        rows = cur.hs_norm_comparison(X, cfg.cutoffs)
        gaps = cur.hs_trend_gaps(rows)
        rec.note("hs_rows", [[r.cutoff, r.hs_plain**2, r.hs_deformed**2] for r in rows],
                 "cutoff, ||[eps, X]||_HS^2, ||[eps, X~]||_HS^2")
        alt = cur.hs_norm_comparison(X, cfg.cutoffs, sign=-1)
        rec.note("hs_gaps_opposite_sign", cur.hs_trend_gaps(alt),
                 "same table with the correction term subtracted instead of added")
        rec.note("deformation_shell_norms", cur.deformation_shell_norms(X, cfg.cutoffs[:3]),
                 "largest |X~ - X| block column on each shell |n|_inf = cutoff")
        rec.note("zero_mode_sensitivity", cur.zero_mode_sensitivity(X, cfg.cutoffs[:3]),
                 "change of ||[eps, X~]||_HS^2 when eps(0) = -1")
        return check("hs_trend", gaps, "> 1 and increasing", None, None, "trend", passed=cur.hs_trend_holds(rows))

    def defect():
        Xn = cur.CurrentOperator({(1, 0, 0): 1j * SIGMA_X})
        Yn = cur.CurrentOperator({(0, 1, 0): 1j * SIGMA_Z, (0, 0, 0): 1j * SIGMA_Y})
        sweep = cur.defect_sweep(Xn, Yn, (1, 2, 3))
        dz = [b.weighted_defect - a.weighted_defect for a, b in zip(sweep[:-1], sweep[1:])]
        dc = [b.weighted_commutator - a.weighted_commutator for a, b in zip(sweep[:-1], sweep[1:])]
        rec.note("defect_sweep", [[d.cutoff, d.weighted_defect, d.weighted_commutator] for d in sweep],
                 "cutoff, ||(1+D^2) Z||, ||(1+D^2) [X~, Y~]||")
        ok = all(a < b for a, b in zip(dz, dc))
        return check("commutator_defect_trend", dz, dc, None, None, "trend", passed=ok)

    for name, fn in [("truncation_invariants", invariants), ("deform_closed_form", closed_form),
                     ("lundberg", lundberg), ("shift_cocycle", shift), ("hs_trend", hs_trend),
                     ("commutator_defect_trend", defect)]:
        rec.run(name, fn)
    return rec.checks, rec.diagnostics


SUITES = {
    "disk-verify": disk_suite,
    "winding": winding_suite,
    "cocycle": cocycle_suite,
    "fuzzy": fuzzy_suite,
    "deform": deform_suite,
}
