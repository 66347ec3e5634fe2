"""Relativistic rotator: two equal masses in established rotation.

Center/relative variables X = (x1 + x2)/2, x = (x1 - x2)/2 with constraints
x.x = -a^2, p.x = 0, P.p = 0 and the synchronization condition Xdot.x = 0.
On established motion the gauge scalar beta and the multiplier nu vanish and
the equations of motion reduce to

    Xdot = -(P - nu x) / (4 m0)
    xdot = -p / (4 m0)
    pdot = -x (4 m0^2 - P.P) / (4 m0 a^2) - nu P / (4 m0)

whose closed-form solution is a pair of antipodal circular worldlines of
radius a with tau-frequency omega = sqrt(P0^2 - 4 m0^2)/(4 m0 a) and lab
frequency omega0 = -sqrt(P0^2 - 4 m0^2)/(a P0).  The module integrates the
constrained system with RK4 plus per-step projection, evaluates the closed
form, and implements the rigidity function and the parameter identification
with the classical Dirac particle's helix.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    StabilityError,
    StepSizeError,
    SubThresholdError,
)
from .minkowski import mdot


@dataclass(frozen=True)
class RotatorParams:
    """Particle mass, half-separation, total energy, and constants."""

    m0: float
    a: float
    P0: float
    phase: float = 0.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.m0 <= 0 or self.a <= 0:
            raise DomainError("m0 and a must be positive")
        if self.P0 < 2.0 * self.m0:
            raise SubThresholdError(
                f"P0 = {self.P0} below the two-particle threshold 2 m0 = {2 * self.m0}")

    @property
    def omega(self) -> float:
        """Angular frequency in the worldline parameter tau."""
        return np.sqrt(self.P0 ** 2 - 4.0 * self.m0 ** 2) / (4.0 * self.m0 * self.a)

    @property
    def omega0(self) -> float:
        """Angular frequency in coordinate time (negative by convention)."""
        return -np.sqrt(self.P0 ** 2 - 4.0 * self.m0 ** 2) / (self.a * self.P0)


@dataclass(frozen=True)
class RotatorState:
    """Center and relative coordinates/momenta with the multipliers."""

    tau: float
    X: np.ndarray
    x: np.ndarray
    p: np.ndarray
    P: np.ndarray
    beta: float = 0.0
    nu: float = 0.0
    mu_dot: float = 0.0

    def __post_init__(self):
        for name in ("X", "x", "p", "P"):
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=float))

    def worldlines(self):
        """Positions of the two particles, X + x and X - x."""
        return self.X + self.x, self.X - self.x


def constraint_monitors(s: RotatorState, p: RotatorParams) -> dict:
    """The five on-shell constraint residuals (absolute values)."""
    xdot_center = -(s.P - s.nu * s.x) / (4.0 * p.m0)
    pp_target = -(mdot(s.P, s.P) - 4.0 * p.m0 ** 2) - p.a ** 2 * s.nu ** 2
    return {
        "x.x + a^2": abs(mdot(s.x, s.x) + p.a ** 2),
        "p.x": abs(mdot(s.p, s.x)),
        "P.p": abs(mdot(s.P, s.p)),
        "p.p - target": abs(mdot(s.p, s.p) - pp_target),
        "Xdot.x": abs(mdot(xdot_center, s.x)),
    }


def zeta_vector(s: RotatorState) -> np.ndarray:
    """Conserved spacelike vector zeta_i = eps_iklm x^k p^l P^m."""
    out = np.empty(4)
    for i in range(4):
        e = np.zeros(4)
        e[i] = 1.0
        out[i] = np.linalg.det(np.column_stack([e, s.x, s.p, s.P]))
    return out


@dataclass(frozen=True)
class RotatorClosedForm:
    """Closed-form rotator motion in the frame P = (P0, 0, 0, 0)."""

    params: RotatorParams

    @property
    def omega(self):
        return self.params.omega

    @property
    def omega0(self):
        return self.params.omega0

    @property
    def tau_period(self) -> float:
        om = self.params.omega
        if om == 0.0:
            raise DomainError("static rotator (P0 = 2 m0) has no period")
        return 2.0 * np.pi / om

    def state(self, tau) -> RotatorState:
        p = self.params
        th = p.omega * tau + p.phase
        x = np.array([0.0, p.a * np.cos(th), p.a * np.sin(th), 0.0])
        # Upper components; the lower-index momentum has opposite spatial signs.
        prel = np.array([0.0,
                         4.0 * p.a * p.m0 * p.omega * np.sin(th),
                         -4.0 * p.a * p.m0 * p.omega * np.cos(th),
                         0.0])
        X = np.array([-p.P0 * tau / (4.0 * p.m0), 0.0, 0.0, 0.0])
        P = np.array([p.P0, 0.0, 0.0, 0.0])
        mu_dot = -mdot(prel, prel) / (8.0 * p.m0 * p.a ** 2)
        return RotatorState(tau=float(tau), X=X, x=x, p=prel, P=P,
                            beta=0.0, nu=0.0, mu_dot=float(mu_dot))

    def worldlines_at_time(self, t):
        """Particle positions (4-vectors) as functions of coordinate time."""
        p = self.params
        th = p.omega0 * t + p.phase
        one = np.array([t, p.a * np.cos(th), p.a * np.sin(th), 0.0])
        two = np.array([t, -p.a * np.cos(th), -p.a * np.sin(th), 0.0])
        return one, two

    def steady_state_residual(self, t) -> float:
        """Residual of the orthogonality conditions udot.(x1 - x2) = 0."""
        p = self.params
        th = p.omega0 * t + p.phase
        d1 = np.array([1.0, -p.a * p.omega0 * np.sin(th),
                       p.a * p.omega0 * np.cos(th), 0.0])
        sep = self.worldlines_at_time(t)[0] - self.worldlines_at_time(t)[1]
        return max(abs(mdot(d1, sep)), abs(mdot(-d1 + 2.0 * np.array([1.0, 0, 0, 0]), sep)))


def closed_form_rotator(p: RotatorParams) -> RotatorClosedForm:
    return RotatorClosedForm(params=p)


@dataclass
class RotatorTrajectory:
    """Integrated samples plus per-sample diagnostics and drift summary."""

    states: list
    monitors: np.ndarray          # (n, 5)
    monitor_names: list
    zeta_drift: float             # max relative zeta_i drift
    nu_max: float
    pre_projection_drift: float


def _rhs(x, prel, P, p: RotatorParams):
    nu = -mdot(P, x) / p.a ** 2
    xdot_center = -(P - nu * x) / (4.0 * p.m0)
    xdot = -prel / (4.0 * p.m0)
    pdot = (-x * (4.0 * p.m0 ** 2 - mdot(P, P)) / (4.0 * p.m0 * p.a ** 2)
            - nu * P / (4.0 * p.m0))
    return xdot_center, xdot, pdot, nu


def _project(x, prel, P, p: RotatorParams):
    xx = mdot(x, x)
    if xx >= 0:
        raise StepSizeError("relative coordinate left the spacelike sphere")
    x = x * (p.a / np.sqrt(-xx))
    prel = prel - x * (mdot(prel, x) / mdot(x, x)) - P * (mdot(prel, P) / mdot(P, P))
    return x, prel


def integrate_rotator(p: RotatorParams, initial: RotatorState, steps, dt) -> RotatorTrajectory:
    """RK4 on the established-motion branch with per-step projection.

    beta is held at 0 and nu is computed algebraically from P.x each step
    (it stays near 0 and is monitored, not trusted).  After each step x is
    renormalized to the sphere x.x = -a^2 and p is orthogonalized against x
    and P.  Raises StabilityError for omega dt >= 0.1 and StepSizeError if
    the pre-projection constraint drift exceeds 1e-6.
    """
    if p.omega * dt >= 0.1:
        raise StabilityError(
            f"omega dt = {p.omega * dt:.3f} too large; reduce the step")
    mon0 = constraint_monitors(initial, p)
    if max(mon0.values()) > 1e-10:
        raise DomainError(
            f"initial state violates the constraints by {max(mon0.values()):.3e}")

    X = initial.X.copy()
    x = initial.x.copy()
    prel = initial.p.copy()
    P = initial.P.copy()
    tau = initial.tau

    names = list(mon0.keys())
    states = [initial]
    monitors = [np.array([mon0[k] for k in names])]
    zeta0 = zeta_vector(initial)
    zeta_scale = max(np.abs(zeta0).max(), 1e-30)
    zeta_drift = 0.0
    nu_max = abs(initial.nu)
    pre_drift = 0.0

    for _ in range(steps):
        def deriv(xc, pc):
            dX, dx, dp, _ = _rhs(xc, pc, P, p)
            return dX, dx, dp

        k1 = deriv(x, prel)
        k2 = deriv(x + 0.5 * dt * k1[1], prel + 0.5 * dt * k1[2])
        k3 = deriv(x + 0.5 * dt * k2[1], prel + 0.5 * dt * k2[2])
        k4 = deriv(x + dt * k3[1], prel + dt * k3[2])

        X = X + dt / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        x = x + dt / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        prel = prel + dt / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        tau += dt

        raw_drift = abs(mdot(x, x) + p.a ** 2)
        pre_drift = max(pre_drift, raw_drift)
        if raw_drift > 1e-6:
            raise StepSizeError(
                f"constraint drift {raw_drift:.3e} before projection; reduce dt")
        x, prel = _project(x, prel, P, p)

        nu = -mdot(P, x) / p.a ** 2
        mu_dot = -mdot(prel, prel) / (8.0 * p.m0 * p.a ** 2)
        state = RotatorState(tau=tau, X=X, x=x, p=prel, P=P,
                             beta=0.0, nu=float(nu), mu_dot=float(mu_dot))
        states.append(state)
        mon = constraint_monitors(state, p)
        monitors.append(np.array([mon[k] for k in names]))
        zeta_drift = max(zeta_drift,
                         float(np.abs(zeta_vector(state) - zeta0).max()) / zeta_scale)
        nu_max = max(nu_max, abs(nu))

    return RotatorTrajectory(
        states=states,
        monitors=np.array(monitors),
        monitor_names=names,
        zeta_drift=zeta_drift,
        nu_max=nu_max,
        pre_projection_drift=pre_drift,
    )


def mass_increase(v, c=1.0) -> float:
    """Relative rotational mass increase gamma = 1/sqrt(1 - v^2/c^2) - 1."""
    if not 0.0 <= v < c:
        raise DomainError(f"speed must satisfy 0 <= v < c, got {v!r}")
    return 1.0 / np.sqrt(1.0 - (v / c) ** 2) - 1.0


def rigidity(a, m0, hbar=1.0, c=1.0) -> float:
    """Rigidity function gamma = hbar / sqrt(hbar^2 - (4 a m0 c)^2) - 1.

    Defined for 0 <= a < hbar / (4 m0 c); the bound is where the particle
    speed reaches c.
    """
    bound = hbar / (4.0 * m0 * c)
    if a < 0 or a >= bound:
        raise DomainError(
            f"radius must satisfy 0 <= a < hbar/(4 m0 c) = {bound!r}, got {a!r}")
    return hbar / np.sqrt(hbar ** 2 - (4.0 * a * m0 * c) ** 2) - 1.0


def rigidity_domain_bound(m0, hbar=1.0, c=1.0) -> float:
    return hbar / (4.0 * m0 * c)


@dataclass(frozen=True)
class RigidityCurve:
    """Sampled rigidity function: gamma(0) = 0, strictly increasing, and
    diverging at the domain bound hbar/(4 m0 c)."""

    m0: float
    hbar: float
    c: float
    a: np.ndarray
    gamma: np.ndarray

    @property
    def domain_bound(self) -> float:
        return rigidity_domain_bound(self.m0, self.hbar, self.c)

    @classmethod
    def sample(cls, m0, hbar, c, a_min, a_max, n) -> "RigidityCurve":
        if n < 2:
            raise DomainError("need at least 2 samples")
        bound = rigidity_domain_bound(m0, hbar, c)
        if not 0.0 <= a_min < a_max:
            raise DomainError("need 0 <= a_min < a_max")
        if a_max >= bound:
            raise DomainError(
                f"a_max must stay below hbar/(4 m0 c) = {bound!r}")
        a = np.linspace(a_min, a_max, n)
        gamma = np.array([rigidity(v, m0, hbar, c) for v in a])
        return cls(m0=m0, hbar=hbar, c=c, a=a, gamma=gamma)


def identify_dcr_rr(direction, *, m=None, zeta=None, m0=None, v=None,
                    hbar=1.0, c=1.0, e_charge=1.0) -> dict:
    """Map parameters between the helix particle and the rotator.

    dcr_to_rr: from (m, zeta) to the rotator's (M, m0, a, v).
    rr_to_dcr: from (m0, v) to the particle's (m, m_dcr, omega_dcr, a, zeta),
    plus the angular momentum and magnetic moment of the charged rotator.
    """
    if direction == "dcr_to_rr":
        if m is None or zeta is None:
            raise DomainError("dcr_to_rr needs m and zeta")
        if zeta < 0:
            raise DomainError("zeta must be nonnegative")
        root = np.sqrt(1.0 + zeta ** 2)
        M = m * np.sqrt(2.0) / np.sqrt(root + 1.0)
        m0_out = m / (root + 1.0)
        a = zeta * hbar / (4.0 * m * c)
        v_out = 4.0 * a * m0_out * c ** 2 / hbar
        return {
            "direction": direction,
            "m": m, "zeta": zeta,
            "M": float(M), "m0": float(m0_out), "a": float(a), "v": float(v_out),
            "P0": float(M),
        }
    if direction == "rr_to_dcr":
        if m0 is None or v is None:
            raise DomainError("rr_to_dcr needs m0 and v")
        if not 0.0 <= v < c:
            raise DomainError(f"speed must satisfy 0 <= v < c, got {v!r}")
        g2 = 1.0 - (v / c) ** 2
        m_out = 2.0 * m0 / g2
        m_dcr = 2.0 * m0 / np.sqrt(g2)
        omega_dcr = 4.0 * m0 * c ** 2 / hbar
        a = v * hbar / (4.0 * m0 * c ** 2)
        zeta_out = 4.0 * a * m_out * c / hbar
        ang_mom = 2.0 * m0 * a * v / np.sqrt(g2)
        mag_moment = e_charge * a * v / (2.0 * np.sqrt(g2))
        return {
            "direction": direction,
            "m0": m0, "v": v,
            "m": float(m_out), "m_dcr": float(m_dcr),
            "omega_dcr": float(omega_dcr), "a": float(a), "zeta": float(zeta_out),
            "angular_momentum": float(ang_mom),
            "magnetic_moment": float(mag_moment),
            "moment_to_angular_momentum": float(e_charge / (4.0 * m0)),
        }
    raise DomainError(f"unknown direction {direction!r}")
