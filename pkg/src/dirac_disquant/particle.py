"""Classical Dirac particle: worldline Lagrangian, momentum, helix solution.

The worldline action (proper-time parameter tau, metric +---) is

    L = -m sqrt(xdot.xdot) + hbar (xidot x xi).z / (2 (1 + xi.z))
        + (hbar/2) Q (xdot_sp x xddot_sp).xi

with Q = 1 / (sqrt(xdot.xdot) (sqrt(xdot.xdot) + xdot^0)).  Its conserved
momentum P_i (lower index; P_0 is negative for positive energy) is evaluated
exactly, and the reduced first-order system in y = xdot_sp / sqrt(1 + xdot^0)
is solved in closed form: a helix of radius

    a = hbar (b+1) sqrt(b (b+2)) / (2 m c),   b = y^2 = const >= 0

whose observables (total mass, speed, lab angular velocity) exist in two
algebraically equivalent parametrizations, by b and by the rapidity beta
with sinh(2 beta) = 4 a m c / hbar.  Trajectory machinery works in units
with c = 1 (x^0 is time); only the observable formulas carry an explicit c.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    DomainError,
    InsufficientJetError,
    SingularDenominatorError,
)
from .minkowski import BASIS4, as4, eps4, lower, mdot, spatial


@dataclass(frozen=True)
class DcParams:
    """Mass, quantum constant, axis z, and the frame vector f."""

    m: float
    hbar: float
    c: float = 1.0
    z: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    f: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0, 0.0, 0.0]))

    def __post_init__(self):
        object.__setattr__(self, "z", np.asarray(self.z, dtype=float))
        object.__setattr__(self, "f", np.asarray(self.f, dtype=float))
        if self.m <= 0 or self.hbar <= 0 or self.c <= 0:
            raise DomainError("m, hbar and c must be positive")
        if abs(np.dot(self.z, self.z) - 1.0) > 1e-10:
            raise DomainError("z must be a unit 3-vector")
        if abs(mdot(self.f, self.f) - 1.0) > 1e-10 or self.f[0] <= 0:
            raise DomainError("f must be a future-directed unit timelike 4-vector")

    @property
    def lam(self) -> float:
        """Length scale hbar / (m c)."""
        return self.hbar / (self.m * self.c)


@dataclass(frozen=True)
class WorldlineState:
    """One point of a worldline jet: position, velocity, acceleration, spin axis."""

    tau0: float
    x: np.ndarray
    xdot: np.ndarray
    xddot: np.ndarray
    xi: np.ndarray
    y: np.ndarray = None

    def __post_init__(self):
        for name in ("x", "xdot", "xddot"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, np.asarray(v, dtype=float))
        object.__setattr__(self, "xi", np.asarray(self.xi, dtype=float))
        if self.y is None:
            object.__setattr__(
                self, "y", spatial(self.xdot) / np.sqrt(1.0 + self.xdot[0]))
        else:
            object.__setattr__(self, "y", np.asarray(self.y, dtype=float))


def q_factor(xdot, f=None):
    """Q(xdot; f) = 1 / (sqrt(xdot.xdot) (xdot.f + sqrt(xdot.xdot)))."""
    xdot = np.asarray(xdot, dtype=float)
    ss = mdot(xdot, xdot)
    if ss <= 0:
        raise DomainError("worldline velocity must be timelike")
    s = np.sqrt(ss)
    xf = xdot[0] if f is None else mdot(xdot, np.asarray(f, dtype=float))
    denom = s + xf
    if denom < 1e-9:
        raise SingularDenominatorError("sqrt(xdot.xdot) + xdot.f below tolerance")
    return 1.0 / (s * denom)


def q_gradient(xdot, f=None):
    """Lower-index gradient dQ/dxdot^i."""
    xdot = np.asarray(xdot, dtype=float)
    f4 = BASIS4[0] if f is None else np.asarray(f, dtype=float)
    s = np.sqrt(mdot(xdot, xdot))
    xf = mdot(xdot, f4)
    q = 1.0 / (s * (s + xf))
    xlow = lower(xdot)
    flow = lower(f4)
    return -q * q * (2.0 * xlow + xlow * (xf / s) + s * flow)


def _spin_term(xi, xidot, z):
    one_plus = 1.0 + float(np.dot(xi, z))
    if one_plus < 1e-9:
        raise SingularDenominatorError("1 + xi.z below tolerance (antipodal xi, z)")
    return float(np.dot(np.cross(xidot, xi), z)) / (2.0 * one_plus)


def lagrangian_dc(s: WorldlineState, p: DcParams, xidot=None) -> float:
    """Worldline Lagrangian in the three-dimensional form."""
    xidot = np.zeros(3) if xidot is None else np.asarray(xidot, dtype=float)
    ss = mdot(s.xdot, s.xdot)
    if ss <= 0:
        raise DomainError("worldline velocity must be timelike")
    q = q_factor(s.xdot)
    orbit = 0.5 * q * float(np.dot(np.cross(spatial(s.xdot), spatial(s.xddot)), s.xi))
    return (-p.m * np.sqrt(ss)
            + p.hbar * _spin_term(s.xi, xidot, p.z)
            + p.hbar * orbit)


def lagrangian_dc_covariant(s: WorldlineState, p: DcParams, xidot=None, f=None) -> float:
    """Same Lagrangian through 4-dimensional epsilon contractions.

    The spin and orbit terms place the frame vector in the slot that makes
    them reduce to the three-dimensional form at f = (1,0,0,0): the spin term
    contracts (xi, xidot, f, z) and the orbit term (xdot, xddot, xi, f).
    """
    xidot = np.zeros(3) if xidot is None else np.asarray(xidot, dtype=float)
    f4 = p.f if f is None else np.asarray(f, dtype=float)
    xi4 = as4(0.0, s.xi)
    xidot4 = as4(0.0, xidot)
    z4 = as4(0.0, p.z)
    ss = mdot(s.xdot, s.xdot)
    if ss <= 0:
        raise DomainError("worldline velocity must be timelike")
    denom = 2.0 * (1.0 - mdot(xi4, z4))
    if denom < 2e-9:
        raise SingularDenominatorError("1 - xi.z (4d) below tolerance")
    q = q_factor(s.xdot, f4)
    return (-p.m * np.sqrt(ss)
            - p.hbar * eps4(xi4, xidot4, f4, z4) / denom
            - 0.5 * p.hbar * q * eps4(s.xdot, s.xddot, xi4, f4))


def _eps_free(slot, b, c, d):
    """eps contraction with one free lower index in the given slot."""
    out = np.empty(4)
    for i in range(4):
        args = [b, c, d]
        args.insert(slot, BASIS4[i])
        out[i] = eps4(*args)
    return out


def momentum_covariant(xdot, xddot, xi4, xidot4, p: DcParams, f=None) -> np.ndarray:
    """Momentum P_i (lower components) for an arbitrary frame vector f.

    P_i = dL/dxdot^i - d/dtau (dL/dxddot^i) of the covariant Lagrangian;
    the derivative of the orbit term expands through the acceleration and
    the spin rate, nothing higher.
    """
    f = p.f if f is None else np.asarray(f, dtype=float)
    xdot = np.asarray(xdot, dtype=float)
    xddot = np.asarray(xddot, dtype=float)
    xi4 = np.asarray(xi4, dtype=float)
    xidot4 = np.asarray(xidot4, dtype=float)

    s_norm = np.sqrt(mdot(xdot, xdot))
    q = q_factor(xdot, f)
    gq = q_gradient(xdot, f)
    qdot = float(gq @ xddot)
    w_f = eps4(xdot, xddot, xi4, f)

    out = -p.m * lower(xdot) / s_norm
    out -= 0.5 * p.hbar * w_f * gq
    out -= 0.5 * p.hbar * q * _eps_free(0, xddot, xi4, f)
    out += 0.5 * p.hbar * (qdot * _eps_free(1, xdot, xi4, f)
                           + q * _eps_free(1, xddot, xi4, f)
                           + q * _eps_free(1, xdot, xidot4, f))
    return out


def momentum(s: WorldlineState, xidot, p: DcParams) -> np.ndarray:
    """Conserved momentum P_i (lower components) with f = p.f.

    The total derivative in the definition expands through the acceleration,
    so the state must carry xddot.
    """
    if s.xddot is None:
        raise InsufficientJetError("momentum needs the acceleration xddot")
    xidot = np.asarray(xidot, dtype=float)
    return momentum_covariant(s.xdot, s.xddot, as4(0.0, s.xi),
                              as4(0.0, xidot), p, p.f)


def boost_matrix(velocity) -> np.ndarray:
    """Pure Lorentz boost (upper-index action) carrying the rest frame to
    one moving with the given 3-velocity, |velocity| < 1."""
    v = np.asarray(velocity, dtype=float)
    v2 = float(v @ v)
    if v2 >= 1.0:
        raise DomainError("boost velocity must satisfy |v| < 1")
    gamma = 1.0 / np.sqrt(1.0 - v2)
    lam = np.eye(4)
    lam[0, 0] = gamma
    lam[0, 1:] = lam[1:, 0] = gamma * v
    if v2 > 0:
        lam[1:, 1:] += (gamma - 1.0) * np.outer(v, v) / v2
    return lam


def relativize(P):
    """Unit 4-velocity and mass from a timelike momentum: u_i = -P_i / M."""
    P = np.asarray(P, dtype=float)
    pp = mdot(P, P)
    if pp <= 0:
        raise DomainError(f"momentum must be timelike, got P.P = {pp!r}")
    M = np.sqrt(pp)
    return -P / M, float(M)


class HelixObservables(NamedTuple):
    m_dcr: float
    a_dcr: float
    v: float
    omega_dcr: float
    zeta: float
    beta: float


def observables(b, p: DcParams) -> HelixObservables:
    """Helix observables in the b parametrization (c explicit).

    m_dcr = m/(b+1), a = lam (b+1) sqrt(b(b+2))/2, v = c sqrt(b(b+2))/(b+1),
    omega_dcr = 2 m c^2 / (hbar (b+1)^2), zeta = 4 a m c / hbar = sinh(2 beta).
    """
    if b < 0:
        raise DomainError("b must be nonnegative")
    root = np.sqrt(b * (b + 2.0))
    m_dcr = p.m / (b + 1.0)
    a_dcr = 0.5 * p.lam * (b + 1.0) * root
    v = p.c * root / (b + 1.0)
    omega_dcr = 2.0 * p.m * p.c ** 2 / (p.hbar * (b + 1.0) ** 2)
    zeta = 4.0 * a_dcr * p.m * p.c / p.hbar
    beta = np.arccosh(b + 1.0)
    return HelixObservables(m_dcr, a_dcr, v, omega_dcr, zeta, float(beta))


def observables_from_zeta(zeta, p: DcParams) -> HelixObservables:
    """The same observables in the zeta / rapidity parametrization."""
    if zeta < 0:
        raise DomainError("zeta must be nonnegative")
    root = np.sqrt(1.0 + zeta ** 2)
    beta = 0.5 * np.arcsinh(zeta)
    m_dcr = p.m * np.sqrt(2.0) / np.sqrt(root + 1.0)
    a_dcr = zeta * p.hbar / (4.0 * p.m * p.c)
    v = p.c * zeta / (root + 1.0)
    omega_dcr = 4.0 * p.m * p.c ** 2 / (p.hbar * (root + 1.0))
    return HelixObservables(float(m_dcr), float(a_dcr), float(v),
                            float(omega_dcr), float(zeta), float(beta))


@dataclass(frozen=True)
class HelixSolution:
    """Closed-form helix worldline and all derived observables.

    Signs: omega = -2/(lam (b+1)) is the angular velocity of y in tau,
    Omega = omega/(b+1) the signed lab angular velocity; observables report
    |Omega|.  The spin axis xi is constant along the rotation axis.
    """

    b: float
    phase: float
    params: DcParams
    w0: float
    omega: float
    Omega: float
    obs: HelixObservables

    @property
    def xi(self) -> np.ndarray:
        return np.array([0.0, 0.0, 1.0])

    @property
    def tau_period(self) -> float:
        if self.omega == 0.0:
            raise DomainError("static worldline (b = 0) has no period")
        return 2.0 * np.pi / abs(self.omega)

    def y_of(self, tau):
        th = self.omega * tau + self.phase
        return np.sqrt(self.b) * np.array([np.cos(th), np.sin(th), 0.0])

    def state(self, tau) -> WorldlineState:
        b = self.b
        th = self.omega * tau + self.phase
        root = np.sqrt(b * (b + 2.0))
        cs, sn = np.cos(th), np.sin(th)
        x = np.empty(4)
        x[0] = (b + 1.0) * tau
        if self.omega == 0.0:
            x[1:] = 0.0
        else:
            x[1:] = (root / self.omega) * np.array([sn, -cs, 0.0])
        xdot = as4(b + 1.0, root * np.array([cs, sn, 0.0]))
        xddot = as4(0.0, root * self.omega * np.array([-sn, cs, 0.0]))
        return WorldlineState(tau0=float(tau), x=x, xdot=xdot, xddot=xddot,
                              xi=self.xi)

    def jerk(self, tau) -> np.ndarray:
        th = self.omega * tau + self.phase
        root = np.sqrt(self.b * (self.b + 2.0))
        return as4(0.0, -root * self.omega ** 2
                   * np.array([np.cos(th), np.sin(th), 0.0]))

    def position_at_time(self, t) -> np.ndarray:
        """Spatial position as a function of coordinate time x^0 = t."""
        return spatial(self.state(t / (self.b + 1.0)).x)

    def momentum_lo(self) -> np.ndarray:
        """The conserved momentum (p0, 0, 0, 0) with p0 = m w0."""
        return np.array([self.params.m * self.w0, 0.0, 0.0, 0.0])


def helix_solution(b, phase=0.0, p: DcParams = None) -> HelixSolution:
    """Closed-form solution of the reduced system with y^2 = b."""
    if p is None:
        p = DcParams(m=1.0, hbar=1.0)
    if b < 0:
        raise DomainError("b must be nonnegative")
    w0 = -1.0 / (b + 1.0)
    lam = p.lam
    omega = (-(1.0 - w0) / (b + 2.0) + w0) / lam
    return HelixSolution(
        b=float(b), phase=float(phase), params=p, w0=w0,
        omega=float(omega), Omega=float(omega / (b + 1.0)),
        obs=observables(b, p),
    )


def reduced_residuals(y, ydot, xi, xdot0, w0, p: DcParams):
    """Residuals of the reduced first-order system at one jet point.

    Returns (r1, r2, r3): the vector equation residual, the scalar equation
    residual, and the time-gauge residual xdot^0 - (y^2 + 1).
    """
    y = np.asarray(y, dtype=float)
    ydot = np.asarray(ydot, dtype=float)
    xi = np.asarray(xi, dtype=float)
    lam = p.lam
    y2 = float(np.dot(y, y))
    r1 = lam * np.cross(ydot, xi + 0.5 * y * float(np.dot(y, xi))) \
        + y * ((1.0 - w0) / (y2 + 2.0) - w0)
    r2 = lam * float(np.dot(ydot, np.cross(y, xi))) \
        - 2.0 * (1.0 - (1.0 - w0) / (y2 + 2.0))
    r3 = xdot0 - (y2 + 1.0)
    return r1, float(r2), float(r3)


def xi_rate(xdot, xddot, xi):
    """The z-free spin equation: xidot = -(xdot_sp x xddot_sp) x xi Q."""
    xdot = np.asarray(xdot, dtype=float)
    xddot = np.asarray(xddot, dtype=float)
    q = q_factor(xdot)
    return -np.cross(np.cross(spatial(xdot), spatial(xddot)),
                     np.asarray(xi, dtype=float)) * q


def xi_equation_check(xi, xidot, xdot, xddot, z, hbar=1.0):
    """Residuals of the full spin equation and of its z-free reduction.

    The full equation is the constrained variation of the Lagrangian in xi:
    xi x E = 0 with E = dL/dxi - d/dtau dL/dxidot.  Returns
    (|xi x E|_max, |xidot - xi_rate|_max).  When xidot solves the reduced
    equation the full residual vanishes for every unit z.
    """
    xi = np.asarray(xi, dtype=float)
    xidot = np.asarray(xidot, dtype=float)
    z = np.asarray(z, dtype=float)
    if abs(float(np.dot(xi, xidot))) > 1e-10:
        raise DomainError("xidot must be tangent to the unit sphere (xi.xidot = 0)")
    one_plus = 1.0 + float(np.dot(z, xi))
    if one_plus < 1e-9:
        raise SingularDenominatorError("1 + xi.z below tolerance (antipodal xi, z)")

    q = q_factor(xdot)
    w = q * np.cross(spatial(np.asarray(xdot, float)),
                     spatial(np.asarray(xddot, float)))
    e_vec = 0.5 * hbar * (
        2.0 * np.cross(z, xidot) / one_plus
        + (float(np.dot(xidot, z)) * np.cross(xi, z)
           - float(np.dot(np.cross(xidot, xi), z)) * z) / one_plus ** 2
        + w
    )
    res_full = float(np.abs(np.cross(xi, e_vec)).max())
    res_reduced = float(np.abs(xidot - xi_rate(xdot, xddot, xi)).max())
    return res_full, res_reduced


def integrate_xi_along_helix(sol: HelixSolution, steps=2000, periods=1.0):
    """RK4-integrate the spin equation along the helix; returns max drift.

    The closed form asserts xi = const; this integrates xidot = (y x ydot) x xi
    from xi(0) = (0,0,1) and reports the largest deviation, an independent
    confirmation rather than an assumption.
    """
    if sol.b == 0.0:
        return 0.0
    h = periods * sol.tau_period / steps
    xi = sol.xi.copy()
    drift = 0.0

    def rate(tau, xi_c):
        st = sol.state(tau)
        ydot = _y_rate(sol, tau)
        return np.cross(np.cross(st.y, ydot), xi_c)

    tau = 0.0
    for _ in range(steps):
        k1 = rate(tau, xi)
        k2 = rate(tau + h / 2, xi + h / 2 * k1)
        k3 = rate(tau + h / 2, xi + h / 2 * k2)
        k4 = rate(tau + h, xi + h * k3)
        xi = xi + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        tau += h
        drift = max(drift, float(np.abs(xi - sol.xi).max()))
    return drift


def _y_rate(sol: HelixSolution, tau):
    th = sol.omega * tau + sol.phase
    return np.sqrt(sol.b) * sol.omega * np.array([-np.sin(th), np.cos(th), 0.0])
