import numpy as np
import pytest

from dirac_disquant.errors import (
    DomainError,
    StabilityError,
    SubThresholdError,
)
from dirac_disquant.minkowski import mdot
from dirac_disquant.rotator import (
    RigidityCurve,
    RotatorParams,
    closed_form_rotator,
    constraint_monitors,
    identify_dcr_rr,
    integrate_rotator,
    mass_increase,
    rigidity,
    rigidity_domain_bound,
    zeta_vector,
)

PR = RotatorParams(m0=1.0, a=1.0, P0=2.0 * np.sqrt(2.0))


class TestClosedForm:
    def test_frequencies(self):
        assert abs(PR.omega - 0.5) < 1e-15
        assert abs(PR.omega0 + 1.0 / np.sqrt(2.0)) < 1e-15
        assert PR.a * abs(PR.omega0) < 1.0

    def test_threshold_is_static(self):
        pr = RotatorParams(m0=1.0, a=1.0, P0=2.0)
        cf = closed_form_rotator(pr)
        assert pr.omega == 0.0
        one, two = cf.worldlines_at_time(3.0)
        assert np.abs(one[1:] + two[1:]).max() < 1e-15
        assert np.abs(one[1:] - [1.0, 0, 0]).max() < 1e-15

    def test_sub_threshold_rejected(self):
        with pytest.raises(SubThresholdError):
            RotatorParams(m0=1.0, a=1.0, P0=1.9)

    def test_steady_state_conditions(self):
        cf = closed_form_rotator(PR)
        for t in np.linspace(0.0, 10.0, 20):
            assert cf.steady_state_residual(t) < 1e-12

    def test_constraints_and_worldlines(self):
        cf = closed_form_rotator(PR)
        for tau in np.linspace(0.0, cf.tau_period, 20):
            s = cf.state(tau)
            mon = constraint_monitors(s, PR)
            assert max(mon.values()) < 1e-12
            one, two = s.worldlines()
            assert np.abs((one + two) / 2 - s.X).max() < 1e-14
            assert abs(np.linalg.norm(one[1:] - two[1:]) - 2 * PR.a) < 1e-12

    def test_equations_of_motion_by_finite_differences(self):
        from dirac_disquant.rotator import _rhs
        cf = closed_form_rotator(PR)
        h = 1e-6
        for tau in np.linspace(0.0, cf.tau_period, 12):
            s, sp, sm = cf.state(tau), cf.state(tau + h), cf.state(tau - h)
            dX, dx, dp, nu = _rhs(s.x, s.p, s.P, PR)
            assert abs(nu) < 1e-14
            assert np.abs((sp.x - sm.x) / (2 * h) - dx).max() < 1e-8
            assert np.abs((sp.p - sm.p) / (2 * h) - dp).max() < 1e-7
            assert np.abs((sp.X - sm.X) / (2 * h) - dX).max() < 1e-8


class TestIntegrator:
    def test_matches_closed_form_over_period(self):
        cf = closed_form_rotator(PR)
        steps = 2000
        dt = cf.tau_period / steps
        traj = integrate_rotator(PR, cf.state(0.0), steps, dt)
        dev = max(np.abs(st.x - cf.state(k * dt).x).max()
                  for k, st in enumerate(traj.states))
        assert dev < 1e-6
        assert traj.monitors.max() < 1e-8
        assert traj.zeta_drift < 1e-8
        assert traj.nu_max < 1e-9

    def test_zeta_vector_spacelike_conserved(self):
        cf = closed_form_rotator(PR)
        z0 = zeta_vector(cf.state(0.0))
        assert mdot(z0, z0) < 0
        for tau in np.linspace(0.0, cf.tau_period, 10):
            assert np.abs(zeta_vector(cf.state(tau)) - z0).max() < 1e-12

    def test_static_start_stays_static(self):
        pr = RotatorParams(m0=1.0, a=1.0, P0=2.0)
        cf = closed_form_rotator(pr)
        traj = integrate_rotator(pr, cf.state(0.0), 100, 0.05)
        ref = cf.state(0.0)
        for st in traj.states:
            assert np.abs(st.x - ref.x).max() < 1e-12
            assert np.abs(st.p).max() < 1e-12

    def test_too_large_step_rejected(self):
        cf = closed_form_rotator(PR)
        with pytest.raises(StabilityError):
            integrate_rotator(PR, cf.state(0.0), 10, cf.tau_period / 10)

    def test_bad_initial_state_rejected(self):
        cf = closed_form_rotator(PR)
        import dataclasses
        bad = dataclasses.replace(cf.state(0.0), x=np.array([0.0, 1.5, 0, 0]))
        with pytest.raises(DomainError):
            integrate_rotator(PR, bad, 10, 0.01)


class TestMassIncrease:
    def test_zero_speed(self):
        assert mass_increase(0.0) == 0.0

    def test_spot_values(self):
        assert abs(mass_increase(1 / np.sqrt(2.0)) - (np.sqrt(2.0) - 1)) < 1e-12
        assert abs(mass_increase(0.5) - (2 / np.sqrt(3.0) - 1)) < 1e-15

    def test_matches_total_mass_route(self):
        # (M - 2 m0)/(2 m0) with M = P0 on the closed-form solution.
        v = PR.a * abs(PR.omega0)
        assert abs(mass_increase(v) - (PR.P0 - 2.0) / 2.0) < 1e-12

    def test_superluminal_rejected(self):
        with pytest.raises(DomainError):
            mass_increase(1.0)
        with pytest.raises(DomainError):
            mass_increase(2.0, c=1.5)


class TestRigidity:
    def test_zero_radius(self):
        assert rigidity(0.0, 1.0) == 0.0

    def test_spot_value(self):
        bound = rigidity_domain_bound(1.0)
        assert abs(rigidity(0.6 * bound, 1.0) - 0.25) < 1e-15

    def test_monotone_increasing(self):
        bound = rigidity_domain_bound(2.0, hbar=1.5, c=1.0)
        grid = np.linspace(0.0, 0.999 * bound, 100)
        vals = [rigidity(a, 2.0, hbar=1.5) for a in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_domain_bound_enforced(self):
        bound = rigidity_domain_bound(1.0)
        with pytest.raises(DomainError):
            rigidity(bound, 1.0)
        with pytest.raises(DomainError):
            rigidity(-0.1, 1.0)

    def test_curve_type_invariants(self):
        bound = rigidity_domain_bound(1.0)
        curve = RigidityCurve.sample(1.0, 1.0, 1.0, 0.0, 0.9999 * bound, 300)
        assert curve.gamma[0] == 0.0
        assert np.all(np.diff(curve.gamma) > 0)
        assert curve.gamma[-1] > 20.0  # diverges toward the bound
        assert curve.domain_bound == bound
        with pytest.raises(DomainError):
            RigidityCurve.sample(1.0, 1.0, 1.0, 0.0, bound, 10)
        with pytest.raises(DomainError):
            RigidityCurve.sample(1.0, 1.0, 1.0, 0.0, 0.1, 1)


class TestIdentification:
    def test_zeta_zero(self):
        out = identify_dcr_rr("dcr_to_rr", m=1.0, zeta=0.0)
        assert abs(out["M"] - 1.0) < 1e-15
        assert abs(out["m0"] - 0.5) < 1e-15
        assert out["a"] == 0.0

    def test_v_zero(self):
        out = identify_dcr_rr("rr_to_dcr", m0=1.0, v=0.0)
        assert out["m"] == 2.0
        assert out["m_dcr"] == 2.0
        assert out["a"] == 0.0

    def test_half_speed_spot_values(self):
        out = identify_dcr_rr("rr_to_dcr", m0=1.0, v=0.5)
        assert abs(out["m"] - 8.0 / 3.0) < 1e-15
        assert abs(out["m_dcr"] - 2.0 / np.sqrt(0.75)) < 1e-12
        assert out["omega_dcr"] == 4.0
        assert out["a"] == 0.125
        assert abs(out["moment_to_angular_momentum"] - 0.25) < 1e-15

    @pytest.mark.parametrize("zeta", [0.1, 1.0, 10.0])
    def test_roundtrip(self, zeta):
        fwd = identify_dcr_rr("dcr_to_rr", m=1.0, zeta=zeta)
        back = identify_dcr_rr("rr_to_dcr", m0=fwd["m0"], v=fwd["v"])
        assert abs(back["m"] - 1.0) < 1e-12
        assert abs(back["zeta"] - zeta) < 1e-12 * max(1.0, zeta)
        assert abs(back["m_dcr"] - fwd["M"]) < 1e-12

    def test_rigidity_equals_mass_increase(self):
        for v in (0.1, 0.5, 0.9):
            out = identify_dcr_rr("rr_to_dcr", m0=1.0, v=v)
            assert abs(rigidity(out["a"], 1.0) - mass_increase(v)) < 1e-12

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            identify_dcr_rr("rr_to_dcr", m0=1.0, v=1.0)
        with pytest.raises(DomainError):
            identify_dcr_rr("dcr_to_rr", m=1.0)
        with pytest.raises(DomainError):
            identify_dcr_rr("sideways", m=1.0, zeta=1.0)
