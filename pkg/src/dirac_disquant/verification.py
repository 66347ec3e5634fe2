"""Verification suites: every closed form checked against an independent route.

Each suite returns a VerificationReport whose records are deterministic
functions of the seed.  Random-point sweeps fan out over a thread pool capped
by DIRAC_DISQUANT_THREADS; results combine through maxima, so the worker
count never changes a report.
"""

import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import algebra, covariant, particle, rotator
from .minkowski import as4, mdot
from .report import RunConfig, VerificationReport, worker_count

SUITE_NAMES = ("all", "algebra", "appendixA", "appendixB", "appendixC",
               "particle", "rotator", "consistency")


def _sweep_max(fn, n_items):
    """max over fn(i) for i in range(n_items), optionally threaded."""
    workers = worker_count()
    if workers <= 1:
        return max(fn(i) for i in range(n_items))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return max(pool.map(fn, range(n_items)))


def run_suite(name, cfg: RunConfig) -> VerificationReport:
    fns = {
        "algebra": suite_algebra,
        "appendixA": suite_appendix_a,
        "appendixB": suite_appendix_b,
        "appendixC": suite_appendix_c,
        "particle": suite_particle,
        "rotator": suite_rotator,
        "consistency": suite_consistency,
    }
    if name == "all":
        t0 = time.perf_counter()
        report = VerificationReport(suite="all", seed=cfg.seed, tol_scale=cfg.tol_scale)
        for sub in ("algebra", "appendixA", "appendixB", "appendixC",
                    "particle", "rotator", "consistency"):
            part = fns[sub](cfg)
            report.records.extend(part.records)
        report.wall_time = time.perf_counter() - t0
        return report
    if name not in fns:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    return fns[name](cfg)


# ---------------------------------------------------------------- algebra


def suite_algebra(cfg: RunConfig) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="algebra", seed=cfg.seed, tol_scale=cfg.tol_scale)
    rng = np.random.default_rng(cfg.seed)
    g = algebra.build_gamma_basis((0.0, 0.0, 1.0))
    eye = np.eye(4)

    r = max(
        np.abs(g.gamma[l] @ g.gamma[k] + g.gamma[k] @ g.gamma[l]
               - 2.0 * g.metric[k, l] * eye).max()
        for k in range(4) for l in range(4)
    )
    rep.add("gamma-anticommutation",
            "gamma^l gamma^k + gamma^k gamma^l = 2 g^kl over all 16 pairs",
            r, 1e-12)

    eps3 = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps3[a, b, c] = 1.0
        eps3[a, c, b] = -1.0
    r = max(
        np.abs(g.sigma[a] @ g.sigma[b]
               - ((1.0 if a == b else 0.0) * eye
                  + 1j * np.einsum("c,cij->ij", eps3[a, b], g.sigma))).max()
        for a in range(3) for b in range(3)
    )
    rep.add("pauli-relation",
            "sigma_a sigma_b = delta_ab + i eps_abc sigma_c", r, 1e-12)

    r = max(
        np.abs(g.gamma5 @ g.gamma5 + eye).max(),
        max(np.abs(g.gamma5 @ g.sigma[a] - g.sigma[a] @ g.gamma5).max()
            for a in range(3)),
        max(np.abs(g.gamma[0] @ g.gamma[a + 1] + 1j * g.gamma5 @ g.sigma[a]).max()
            for a in range(3)),
        np.abs(g.gamma[0] @ g.gamma5 + g.gamma5 @ g.gamma[0]).max(),
        np.abs(g.gamma[0].conj().T - g.gamma[0]).max(),
        max(np.abs(g.gamma[a].conj().T + g.gamma[a]).max() for a in (1, 2, 3)),
        max(np.abs(g.gamma[0] @ g.sigma[a] - g.sigma[a] @ g.gamma[0]).max()
            for a in range(3)),
    )
    rep.add("gamma5-spin-relations",
            "gamma5^2 = -1, [gamma5, sigma] = 0, gamma0 gamma^a = -i gamma5 sigma_a, "
            "hermiticity", r, 1e-12)

    r = 0.0
    for _ in range(8):
        z = _unit3(rng)
        gz = algebra.build_gamma_basis(z)
        pi = gz.pi_projector
        zs = gz.sigma_dot(z)
        r = max(
            r,
            np.abs(pi @ pi - pi).max(),
            np.abs(gz.gamma[0] @ pi - pi).max(),
            np.abs(zs @ pi - pi).max(),
            np.abs(pi @ gz.gamma5 @ pi).max(),
            max(np.abs(pi @ gz.sigma[a] @ pi - z[a] * pi).max() for a in range(3)),
            abs(np.trace(pi) - 1.0),
        )
    rep.add("projector-relations",
            "Pi^2 = Pi, gamma0 Pi = Pi, (z.sigma) Pi = Pi, Pi gamma5 Pi = 0, "
            "Pi sigma Pi = z Pi, tr Pi = 1 over random z", r, 1e-12)

    rep.add("projector-proper-form",
            "z = (0,0,1) gives Pi = diag(1,0,0,0)",
            np.abs(g.pi_projector - np.diag([1.0, 0, 0, 0])).max(), 1e-12)

    n_params = 1000
    params = [algebra.random_spinor_params(np.random.default_rng(cfg.seed + 1000 + i))
              for i in range(n_params)]

    def equivalence(i):
        p = params[i]
        gb = algebra.build_gamma_basis(p.z)
        bm = algebra.bilinears_matrix(algebra.spinor_from_params(p, gb), gb)
        bc = algebra.bilinears_closed_form(p)
        scale = max(np.abs(bc.j).max(), np.abs(bc.S).max(), abs(bc.scalar), 1e-300)
        return max(np.abs(bm.j - bc.j).max(), np.abs(bm.S - bc.S).max(),
                   abs(bm.scalar - bc.scalar)) / scale

    rep.add("bilinear-equivalence",
            f"matrix-route vs closed-form bilinears, {n_params} random parameter sets "
            "(relative)", _sweep_max(equivalence, n_params), 1e-10)

    def identities(i):
        p = params[i]
        gb = algebra.build_gamma_basis(p.z)
        bm = algebra.bilinears_matrix(algebra.spinor_from_params(p, gb), gb)
        a4 = p.amplitude ** 4
        return max(abs(mdot(bm.S, bm.S) + mdot(bm.j, bm.j)) / a4,
                   abs(mdot(bm.j, bm.S)) / a4)

    rep.add("flux-spin-identities",
            "S.S = -j.j and j.S = 0 (relative to A^4)",
            _sweep_max(identities, n_params), 1e-10)

    def rho_check(i):
        p = params[i]
        gb = algebra.build_gamma_basis(p.z)
        bm = algebra.bilinears_matrix(algebra.spinor_from_params(p, gb), gb)
        return abs(bm.rho - p.amplitude ** 2) / p.amplitude ** 2

    rep.add("rho-equals-amplitude-squared", "sqrt(j.j) = A^2 (relative)",
            _sweep_max(rho_check, n_params), 1e-12)

    def xi_checks(i):
        p = params[i]
        bc = algebra.bilinears_closed_form(p)
        xi = algebra.xi_from_bilinears(bc)
        r1 = np.abs(xi - p.xi).max()
        r2 = abs(np.linalg.norm(xi) - 1.0)
        s_back = algebra.spin_from_xi(xi, bc.j, bc.rho)
        r3 = np.abs(s_back - bc.S).max() / max(np.abs(bc.S).max(), 1e-300)
        return max(r1, r2, r3)

    rep.add("xi-extraction-roundtrip",
            "xi from (j,S) is unit, equals 2n(n.z)-z, and regenerates S",
            _sweep_max(xi_checks, n_params), 1e-10)

    r = 0.0
    for i in range(200):
        rng_i = np.random.default_rng(cfg.seed + 5000 + i)
        z = _unit3(rng_i)
        xi = _unit3(rng_i)
        if 1.0 + float(np.dot(xi, z)) < 1e-6:
            continue
        n = algebra.n_from_xi(xi, z)
        xi_back = 2.0 * n * float(np.dot(n, z)) - z
        r = max(r, np.abs(xi_back - xi).max(), abs(np.linalg.norm(n) - 1.0))
    rep.add("n-from-xi-inversion",
            "n = (xi+z)/sqrt(2(1+xi.z)) reproduces xi = 2n(n.z)-z", r, 1e-10)

    rep.wall_time = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------ appendix A


def suite_appendix_a(cfg: RunConfig, n_points=100) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="appendixA", seed=cfg.seed, tol_scale=cfg.tol_scale)
    rng = np.random.default_rng(cfg.seed)
    fields = [covariant.random_param_field(np.random.default_rng(cfg.seed + 100 + k))
              for k in range(10)]
    points = rng.uniform(-0.5, 0.5, size=(n_points, 4))

    def residual_at(i, h):
        fld = fields[i % len(fields)]
        g = algebra.build_gamma_basis(fld.z)
        x = points[i]
        pieces = covariant.lagrangian_pieces(fld, x, cfg.m, cfg.hbar)
        fd = covariant.kinetic_term_matrix(fld, x, g, cfg.hbar, h=h)
        return abs(fd - pieces.kinetic_total)

    errors = {}
    for h in (1e-3, 5e-4, 2.5e-4, 1e-4):
        errors[h] = _sweep_max(lambda i, h=h: residual_at(i, h), n_points)

    rep.add("kinetic-split-residual",
            f"finite-difference kinetic term vs F1+F2+F3+F4 at h=1e-4, "
            f"{n_points} points", errors[1e-4], 1e-6)

    order1 = np.log2(errors[1e-3] / errors[5e-4])
    order2 = np.log2(errors[5e-4] / errors[2.5e-4])
    rep.add("kinetic-split-convergence",
            "observed finite-difference order across h = 1e-3, 5e-4, 2.5e-4 "
            "(record = 1.9 - min order)", 1.9 - min(order1, order2), 0.0)

    def decomposition(i):
        fld = fields[i % len(fields)]
        x = points[i]
        pieces = covariant.lagrangian_pieces(fld, x, cfg.m, cfg.hbar)
        p = fld.params(x)
        rho = p.amplitude ** 2
        total = pieces.l_cl + pieces.l_q1 + pieces.l_q2
        expect = -cfg.m * rho * np.cos(p.kappa) + pieces.kinetic_total
        return abs(total - expect) / max(abs(expect), 1.0)

    rep.add("lagrangian-decomposition",
            "L_cl + L_q1 + L_q2 = -m rho cos kappa + (F1+F2+F3+F4)",
            _sweep_max(decomposition, n_points), 1e-12)

    rep.wall_time = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------ appendix B


def suite_appendix_b(cfg: RunConfig, n_points=500) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="appendixB", seed=cfg.seed, tol_scale=cfg.tol_scale)
    rng = np.random.default_rng(cfg.seed)
    fields = [covariant.random_param_field(np.random.default_rng(cfg.seed + 200 + k))
              for k in range(10)]
    points = rng.uniform(-0.5, 0.5, size=(n_points, 4))

    def pieces_at(i):
        fld = fields[i % len(fields)]
        return fld, points[i], covariant.lagrangian_pieces(fld, points[i], cfg.m, cfg.hbar)

    def f4_equiv(i):
        _, _, pc = pieces_at(i)
        scale = max(abs(pc.f4), 1e-3)
        return abs(pc.f4 - pc.f4_cov) / scale

    rep.add("orbit-term-covariant-equivalence",
            f"F4 three-dimensional vs covariant form, {n_points} points (relative)",
            _sweep_max(f4_equiv, n_points), 1e-10)

    def f4_q_equiv(i):
        _, _, pc = pieces_at(i)
        scale = max(abs(pc.f4), 1e-3)
        return abs(pc.f4_cov - pc.f4_cov_q) / scale

    rep.add("orbit-term-unit-vector-form",
            "covariant F4 through (j + f rho) vs through the unit vector q",
            _sweep_max(f4_q_equiv, n_points), 1e-10)

    def f3_equiv(i):
        _, _, pc = pieces_at(i)
        scale = max(abs(pc.f3), 1e-3)
        return abs(pc.f3 - pc.f3_cov) / scale

    rep.add("spin-term-covariant-equivalence",
            "F3 three-dimensional vs covariant form through mu (relative)",
            _sweep_max(f3_equiv, n_points), 1e-10)

    def f3_regularization(i):
        fld, x, pc = pieces_at(i)
        alt = covariant.f3_without_inner_factor(fld, x, cfg.hbar)
        return abs(pc.f3_cov - alt) / max(abs(pc.f3), 1e-3)

    rep.add("spin-term-regularization-invariance",
            "normalization factor inside vs outside the derivative leaves F3 unchanged",
            _sweep_max(f3_regularization, n_points), 1e-10)

    def aux_units(i):
        fld, x, _ = pieces_at(i)
        jet = fld.jet(x)
        p = jet.params
        bc = algebra.bilinears_closed_form(p)
        aux = covariant.CovariantAux.from_state(bc.j, bc.rho, p.xi, p.z)
        return max(abs(mdot(aux.nu, aux.nu) + 1.0), abs(mdot(aux.q, aux.q) - 1.0),
                   abs(mdot(aux.f, aux.f) - 1.0))

    rep.add("auxiliary-unit-vectors", "nu.nu = -1, q.q = 1, f.f = 1",
            _sweep_max(aux_units, min(n_points, 100)), 1e-10)

    def splitting(i):
        rng_i = np.random.default_rng(cfg.seed + 300 + i)
        j = np.array([0.0, 0, 0, 0])
        while mdot(j, j) <= 0.1:
            j = rng_i.normal(size=4)
            j[0] = abs(j[0]) + 1.0
        grad = rng_i.normal(size=4)
        par, perp = covariant.split_derivative(j, grad)
        return max(np.abs(par + perp - grad).max(),
                   abs(mdot(j, perp)) / np.abs(grad).max())

    rep.add("derivative-splitting",
            "parallel + transversal = gradient and j.transversal = 0",
            _sweep_max(splitting, 200), 1e-12)

    rep.wall_time = time.perf_counter() - t0
    return rep


# ------------------------------------------------------------ appendix C


def suite_appendix_c(cfg: RunConfig, n_z=100) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="appendixC", seed=cfg.seed, tol_scale=cfg.tol_scale)

    def full_residual(i):
        rng_i = np.random.default_rng(cfg.seed + 400 + i)
        xdot, xddot, xi = _random_worldline_jet(rng_i)
        xidot = particle.xi_rate(xdot, xddot, xi)
        z = _unit3(rng_i)
        # Near xi.z = -1 the formulas are genuinely singular and the check
        # would only measure roundoff amplification; keep clear of the wall.
        if 1.0 + float(np.dot(xi, z)) < 1e-2:
            z = -z
        res_full, res_red = particle.xi_equation_check(
            xi, xidot, xdot, xddot, z, hbar=cfg.hbar)
        return max(res_full, res_red)

    rep.add("spin-equation-z-independence",
            f"full variational spin equation residual with the z-free rate, "
            f"{n_z} random z and jets", _sweep_max(full_residual, n_z), 1e-10)

    rng = np.random.default_rng(cfg.seed + 450)
    xdot, xddot, xi = _random_worldline_jet(rng)
    z = _unit3(rng)
    if 1.0 + float(np.dot(xi, z)) < 1e-3:
        z = -z
    xidot = particle.xi_rate(xdot, xddot, xi)
    direction = np.cross(xi, _unit3(rng))
    direction /= np.linalg.norm(direction)
    ratios = []
    for delta in (1e-4, 1e-5):
        res, _ = particle.xi_equation_check(xi, xidot + delta * direction,
                                            xdot, xddot, z, hbar=cfg.hbar)
        ratios.append(res / delta)
    rep.add("spin-equation-linear-sensitivity",
            "residual of the full equation grows linearly in a xidot perturbation",
            abs(ratios[0] / ratios[1] - 1.0), 1e-3)

    rep.wall_time = time.perf_counter() - t0
    return rep


def _random_worldline_jet(rng):
    """A timelike velocity in the proper gauge, an acceleration, a unit spin."""
    v = rng.normal(size=3)
    xdot = np.concatenate(([np.sqrt(1.0 + v @ v)], v))
    xddot = np.concatenate(([0.0], rng.normal(size=3)))
    # Proper-time gauge is preserved to first order when xdot.xddot = 0.
    xddot[0] = float(np.dot(v, xddot[1:])) / xdot[0]
    xi = _unit3(rng)
    return xdot, xddot, xi


# -------------------------------------------------------------- particle


def suite_particle(cfg: RunConfig) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="particle", seed=cfg.seed, tol_scale=cfg.tol_scale)
    p = particle.DcParams(m=cfg.m, hbar=cfg.hbar)

    b_values = (0.1, 1.0, 10.0)
    n_tau = 64

    res_reduced = res_gauge = res_constraints = 0.0
    res_w0 = res_omega = 0.0
    drift = p_spatial = p_match = 0.0
    res_lag = res_mass = 0.0
    for b in b_values:
        sol = particle.helix_solution(b, phase=0.3, p=p)
        res_w0 = max(res_w0, abs(sol.w0 * (b + 1.0) + 1.0))
        res_omega = max(res_omega,
                        abs(abs(sol.Omega) - 2.0 / (p.lam * (b + 1.0) ** 2)))
        P0_ref = particle.momentum(sol.state(0.0), np.zeros(3), p)
        scale = max(np.abs(P0_ref).max(), 1e-300)
        for tau in np.linspace(0.0, sol.tau_period, n_tau):
            st = sol.state(tau)
            ydot = particle._y_rate(sol, tau)
            r1, r2, r3 = particle.reduced_residuals(
                st.y, ydot, st.xi, st.xdot[0], sol.w0, p)
            res_reduced = max(res_reduced, np.abs(r1).max(), abs(r2), abs(r3))
            res_gauge = max(res_gauge, abs(mdot(st.xdot, st.xdot) - 1.0))
            res_constraints = max(
                res_constraints,
                abs(float(np.dot(st.y, ydot))),
                abs(float(np.dot(st.y, st.xi))),
                abs(float(np.dot(st.y, st.y)) - b),
            )
            P = particle.momentum(st, np.zeros(3), p)
            drift = max(drift, np.abs(P - P0_ref).max() / scale)
            p_spatial = max(p_spatial, np.abs(P[1:]).max())
            p_match = max(p_match, abs(P[0] - p.m * sol.w0))
            res_lag = max(res_lag, abs(
                particle.lagrangian_dc(st, p)
                - particle.lagrangian_dc_covariant(st, p)))
        u, mass = particle.relativize(particle.momentum(sol.state(0.1), np.zeros(3), p))
        res_mass = max(res_mass, abs(mass - sol.obs.m_dcr),
                       abs(mdot(u, u) - 1.0))

    rep.add("helix-reduced-system",
            "closed-form helix satisfies the reduced first-order system, "
            "b in {0.1, 1, 10}", res_reduced, 1e-9)
    rep.add("helix-proper-gauge", "xdot.xdot = 1 along the helix", res_gauge, 1e-10)
    rep.add("helix-y-constraints", "y.ydot = 0, y.xi = 0, y^2 = b", res_constraints, 1e-10)
    rep.add("helix-w0-relation", "w0 (b+1) = -1", res_w0, 1e-12)
    rep.add("helix-lab-frequency", "|Omega| = 2 / (lam (b+1)^2)", res_omega, 1e-12)
    rep.add("momentum-conservation",
            "momentum drift over one period (relative)", drift, 1e-8)
    rep.add("momentum-rest-frame",
            "spatial momentum vanishes and P_0 = m w0 on the helix",
            max(p_spatial, p_match), 1e-8)
    rep.add("lagrangian-covariant-equivalence",
            "three-dimensional vs covariant worldline Lagrangian on helix states",
            res_lag, 1e-12)
    rep.add("relativized-mass", "sqrt(P.P) = m/(b+1) and u.u = 1", res_mass, 1e-12)

    b_grid = np.concatenate(([0.0], np.logspace(-2, 2, 41)))

    # Substituting w0 = -1/(b+1) must zero the frequency-matching relation
    # -(lam omega) b = 2 (1 - (1 - w0)/(b + 2)) identically.
    r = 0.0
    for b in b_grid:
        w0 = -1.0 / (b + 1.0)
        lam_omega = -(1.0 - w0) / (b + 2.0) + w0
        r = max(r, abs(-lam_omega * b - 2.0 * (1.0 - (1.0 - w0) / (b + 2.0))))
    rep.add("frequency-matching-chain",
            "w0 = -1/(b+1) zeroes the scalar reduced equation for b in [0, 100]",
            r, 1e-12)

    r = 0.0
    for b in b_grid:
        ob = particle.observables(b, p)
        oz = particle.observables_from_zeta(ob.zeta, p)
        scale = max(abs(ob.m_dcr), abs(ob.v), abs(ob.omega_dcr), abs(ob.a_dcr), 1.0)
        r = max(r,
                abs(ob.m_dcr - oz.m_dcr) / scale,
                abs(ob.v - oz.v) / scale,
                abs(ob.omega_dcr - oz.omega_dcr) / scale,
                abs(ob.a_dcr - oz.a_dcr) / scale,
                abs(ob.zeta - np.sinh(2.0 * ob.beta)) / max(ob.zeta, 1.0),
                abs(ob.v - p.c * np.tanh(ob.beta)),
                abs(ob.m_dcr - p.m / np.cosh(ob.beta)))
    rep.add("observable-dual-forms",
            "b-parametrized vs rapidity-parametrized observables, b in [0, 100]",
            r, 1e-12)

    r = max(particle.integrate_xi_along_helix(particle.helix_solution(b, 0.0, p))
            for b in b_values)
    rep.add("spin-axis-constancy",
            "integrated spin equation keeps xi constant along the helix", r, 1e-9)

    rng = np.random.default_rng(cfg.seed + 600)
    r = 0.0
    for _ in range(100):
        xdot, xddot, xi = _random_worldline_jet(rng)
        xidot = particle.xi_rate(xdot, xddot, xi)
        st = particle.WorldlineState(tau0=0.0, x=np.zeros(4), xdot=xdot,
                                     xddot=xddot, xi=xi)
        r = max(r, abs(particle.lagrangian_dc(st, p, xidot)
                       - particle.lagrangian_dc_covariant(st, p, xidot)))
    rep.add("lagrangian-covariant-equivalence-generic",
            "dual Lagrangian forms on random worldline jets", r, 1e-12)

    r = 0.0
    for i, b in enumerate((0.5, 3.0)):
        rng_b = np.random.default_rng(cfg.seed + 700 + i)
        u = rng_b.uniform(-0.45, 0.45, size=3)
        lam = particle.boost_matrix(u)
        f_boost = lam[:, 0]
        sol = particle.helix_solution(b, 0.0, p)
        expect = particle.boost_matrix(-u) @ particle.momentum(
            sol.state(0.0), np.zeros(3), p)
        for tau in np.linspace(0.0, sol.tau_period, 16):
            st = sol.state(tau)
            got = particle.momentum_covariant(
                lam @ st.xdot, lam @ st.xddot, lam @ as4(0.0, st.xi),
                np.zeros(4), p, f_boost)
            r = max(r, np.abs(got - expect).max())
    rep.add("boosted-momentum-covariance",
            "momentum of the boosted helix is the boosted constant", r, 1e-10)

    rep.wall_time = time.perf_counter() - t0
    return rep


# --------------------------------------------------------------- rotator


def suite_rotator(cfg: RunConfig) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="rotator", seed=cfg.seed, tol_scale=cfg.tol_scale)

    pr = rotator.RotatorParams(m0=cfg.m0, a=1.0, P0=2.0 * np.sqrt(2.0) * cfg.m0)
    cf = rotator.closed_form_rotator(pr)

    r_dyn = 0.0
    r_steady = 0.0
    h = 1e-6
    for tau in np.linspace(0.0, cf.tau_period, 32):
        s = cf.state(tau)
        sp = cf.state(tau + h)
        sm = cf.state(tau - h)
        xdot_c, xdot, pdot, _ = rotator._rhs(s.x, s.p, s.P, pr)
        r_dyn = max(
            r_dyn,
            np.abs((sp.x - sm.x) / (2 * h) - xdot).max(),
            np.abs((sp.p - sm.p) / (2 * h) - pdot).max() / max(np.abs(pdot).max(), 1.0),
            np.abs((sp.X - sm.X) / (2 * h) - xdot_c).max(),
        )
        r_steady = max(r_steady, cf.steady_state_residual(-pr.P0 * tau / (4 * pr.m0)))
        mon = rotator.constraint_monitors(s, pr)
        r_steady = max(r_steady, max(mon.values()))
    rep.add("closed-form-dynamics",
            "closed-form rotator satisfies the constrained equations of motion "
            "(finite-difference check)", r_dyn, 1e-6)
    rep.add("closed-form-constraints",
            "steady-state and constraint residuals of the closed form", r_steady, 1e-12)

    steps = 2000
    dt = cf.tau_period / steps
    traj = rotator.integrate_rotator(pr, cf.state(0.0), steps, dt)
    dev = 0.0
    for k, st in enumerate(traj.states):
        ref = cf.state(k * dt)
        dev = max(dev, np.abs(st.x - ref.x).max(), np.abs(st.X - ref.X).max())
    rep.add("integrator-vs-closed-form",
            "integrated established motion vs closed form over one period "
            "(dt = period/2000)", dev, 1e-6)
    rep.add("integrator-constraint-monitors",
            "all five constraint monitors along the trajectory",
            float(traj.monitors.max()), 1e-8)
    rep.add("integrator-conserved-zeta",
            "conserved eps_iklm x^k p^l P^m drift (relative)", traj.zeta_drift, 1e-8)
    rep.add("integrator-multiplier-nu",
            "multiplier nu stays at zero on established motion", traj.nu_max, 1e-9)

    static = rotator.RotatorParams(m0=cfg.m0, a=1.0, P0=2.0 * cfg.m0)
    scf = rotator.closed_form_rotator(static)
    straj = rotator.integrate_rotator(static, scf.state(0.0), 200, 0.05)
    r = max(np.abs(st.x - scf.state(0.0).x).max() for st in straj.states)
    r = max(r, max(np.abs(st.p).max() for st in straj.states))
    rep.add("static-threshold-motion",
            "P0 = 2 m0 start stays a static antipodal pair", r, 1e-12)

    omega_check = abs(cf.omega - np.sqrt(pr.P0 ** 2 - 4 * pr.m0 ** 2) / (4 * pr.m0 * pr.a))
    omega0_check = abs(cf.omega0 + np.sqrt(pr.P0 ** 2 - 4 * pr.m0 ** 2) / (pr.a * pr.P0))
    rep.add("rotation-frequencies",
            "omega and omega0 match their closed forms", max(omega_check, omega0_check),
            1e-15)

    r = 0.0
    for p0_factor in (1.0 + 1e-9, 1.5, 2.0, 10.0, 1e3):
        prx = rotator.RotatorParams(m0=cfg.m0, a=1.0, P0=2.0 * cfg.m0 * p0_factor)
        r = max(r, prx.a * abs(prx.omega0) / prx.c)
    rep.add("subluminal-speed",
            "particle speed a |omega0| stays below c for P0 > 2 m0", r, 1.0 - 1e-12)

    r = max(abs(rotator.mass_increase(1.0 / np.sqrt(2.0)) - (np.sqrt(2.0) - 1.0)),
            abs(rotator.mass_increase(0.5) - (2.0 / np.sqrt(3.0) - 1.0)),
            abs(rotator.mass_increase(0.0)))
    rep.add("mass-increase-values",
            "gamma(v) spot values at v = 0, 1/sqrt(2), 1/2", r, 1e-12)

    bound = rotator.rigidity_domain_bound(cfg.m0, cfg.hbar, cfg.c)
    r = max(abs(rotator.rigidity(0.0, cfg.m0, cfg.hbar, cfg.c)),
            abs(rotator.rigidity(0.6 * bound, cfg.m0, cfg.hbar, cfg.c) - 0.25))
    rep.add("rigidity-values", "rigidity spot values at a = 0 and 4 a m0 c/hbar = 0.6",
            r, 1e-12)

    a_grid = np.linspace(0.0, 0.999 * bound, 200)
    gam = np.array([rotator.rigidity(a, cfg.m0, cfg.hbar, cfg.c) for a in a_grid])
    mono = float(np.max(np.maximum(0.0, gam[:-1] - gam[1:])))
    rep.add("rigidity-monotone", "rigidity curve strictly increases on its domain",
            mono, 0.0)

    rep.wall_time = time.perf_counter() - t0
    return rep


# ----------------------------------------------------------- consistency


def suite_consistency(cfg: RunConfig) -> VerificationReport:
    t0 = time.perf_counter()
    rep = VerificationReport(suite="consistency", seed=cfg.seed,
                             tol_scale=cfg.tol_scale)
    p = particle.DcParams(m=cfg.m, hbar=cfg.hbar, c=cfg.c)

    r = 0.0
    for b in (0.1, 1.0, 10.0):
        ob = particle.observables(b, p)
        ident = rotator.identify_dcr_rr("dcr_to_rr", m=cfg.m, zeta=ob.zeta,
                                        hbar=cfg.hbar, c=cfg.c)
        r = max(r, abs(ident["M"] - ob.m_dcr))
        r = max(r, abs(ident["a"] - ob.a_dcr))
        r = max(r, abs(ident["v"] - ob.v))
        gam_rig = rotator.rigidity(ob.a_dcr, ident["m0"], cfg.hbar, cfg.c)
        gam_kin = rotator.mass_increase(ident["v"], cfg.c)
        r = max(r, abs(gam_rig - gam_kin))
        pr = rotator.RotatorParams(m0=ident["m0"], a=ob.a_dcr, P0=ident["M"],
                                   c=cfg.c, hbar=cfg.hbar)
        # omega0 is angle per unit x^0 = c t, so c |omega0| is the lab rate.
        r = max(r, abs(cfg.c * abs(pr.omega0) - ob.omega_dcr))
    rep.add("helix-rotator-identification",
            "helix observables match the rotator under the parameter map, "
            "b in {0.1, 1, 10}", r, 1e-12)

    r = 0.0
    for v in (0.1, 0.5, 0.9):
        back = rotator.identify_dcr_rr("rr_to_dcr", m0=cfg.m0, v=v,
                                       hbar=cfg.hbar, c=cfg.c)
        gam_rig = rotator.rigidity(back["a"], cfg.m0, cfg.hbar, cfg.c)
        gam_kin = rotator.mass_increase(v, cfg.c)
        r = max(r, abs(gam_rig - gam_kin))
    rep.add("rigidity-grand-consistency",
            "rigidity(a) equals the kinematic mass increase for v in {0.1, 0.5, 0.9}",
            r, 1e-12)

    bound = rotator.rigidity_domain_bound(cfg.m0, cfg.hbar, cfg.c)
    r = max(abs(rotator.rigidity(0.0, cfg.m0, cfg.hbar, cfg.c)),
            abs(rotator.rigidity(0.6 * bound, cfg.m0, cfg.hbar, cfg.c) - 0.25))
    rep.add("rigidity-spot-values", "gamma(0) = 0 and gamma at 4 a m0 c/hbar = 0.6 "
            "equals 0.25", r, 1e-12)

    r = 0.0
    for zeta in (0.1, 1.0, 10.0):
        fwd = rotator.identify_dcr_rr("dcr_to_rr", m=cfg.m, zeta=zeta,
                                      hbar=cfg.hbar, c=cfg.c)
        back = rotator.identify_dcr_rr("rr_to_dcr", m0=fwd["m0"], v=fwd["v"],
                                       hbar=cfg.hbar, c=cfg.c)
        r = max(r, abs(back["m"] - cfg.m) / cfg.m, abs(back["zeta"] - zeta) / zeta,
                abs(back["a"] - fwd["a"]) / max(fwd["a"], 1e-300),
                abs(back["m_dcr"] - fwd["M"]) / fwd["M"])
    rep.add("identification-roundtrip",
            "dcr->rr->dcr is the identity for zeta in {0.1, 1, 10} (relative)",
            r, 1e-12)

    back = rotator.identify_dcr_rr("rr_to_dcr", m0=1.0, v=0.5, hbar=1.0, c=1.0)
    r = max(abs(back["m"] - 8.0 / 3.0), abs(back["m_dcr"] - 2.0 / np.sqrt(0.75)),
            abs(back["omega_dcr"] - 4.0), abs(back["a"] - 0.125),
            abs(back["moment_to_angular_momentum"] - 0.25))
    rep.add("identification-spot-values",
            "rr->dcr at v = 0.5, m0 = 1 (m, m_dcr, omega_dcr, a, mu0/A)", r, 1e-12)

    rep.wall_time = time.perf_counter() - t0
    return rep


def _unit3(rng):
    while True:
        v = rng.normal(size=3)
        n = np.linalg.norm(v)
        if n > 1e-6:
            return v / n
