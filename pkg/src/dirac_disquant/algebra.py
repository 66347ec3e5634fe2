"""Dirac gamma matrices, spinors from hydrodynamic parameters, and bilinears.

A state of the spinor field is held as eight real parameters: an amplitude
``A``, a pseudoscalar angle ``kappa``, a phase ``phi``, a rapidity 3-vector
``eta`` and a unit 3-vector ``n``, together with a fixed unit 3-vector ``z``
that selects the rank-1 projector ``Pi``.  The spinor is the matrix product

    psi = A exp(i phi + gamma5 kappa / 2) exp(-i gamma5 sigma.eta / 2)
            exp(i pi/2 sigma.n) Pi

and the module evaluates its bilinears (scalar, flux 4-vector ``j``, spin
4-pseudovector ``S``) twice: by direct matrix algebra and by closed forms in
the parameters.  The two routes are compared by the verification suites.

Conventions.  Metric diag(+1,-1,-1,-1); standard Dirac basis for gamma^k.
The spin matrices are fixed by the Pauli relation

    sigma_a sigma_b = delta_ab + i eps_abc sigma_c

which forces sigma_a = +i gamma^b gamma^c (cyclic) and
gamma5 = -gamma^0 gamma^1 gamma^2 gamma^3, so that
gamma^0 gamma^a = -i gamma5 sigma_a holds.  All operations below are
basis-independent; only these product relations matter.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, LightlikeFluxError, NumericConsistencyError

_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

def _check_unit3(v, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DomainError(f"{name} must be a 3-vector")
    if abs(np.dot(v, v) - 1.0) > 1e-10:
        raise DomainError(f"{name} must be a unit vector, got |{name}|^2 = {np.dot(v, v)!r}")
    return v


@dataclass(frozen=True)
class GammaBasis:
    """Concrete 4x4 representation of the Dirac algebra for one choice of z.

    ``pi_projector`` is the rank-1 Hermitian projector
    (1 + gamma^0)(1 + z.sigma)/4 and ``pi_column`` a unit vector spanning its
    range, so any sandwich Pi X Pi equals (pi_column^* X pi_column) Pi.
    """

    z: np.ndarray
    gamma: np.ndarray          # shape (4, 4, 4): gamma[k] is gamma^k
    gamma5: np.ndarray
    sigma: np.ndarray          # shape (3, 4, 4)
    pi_projector: np.ndarray
    pi_column: np.ndarray
    metric: np.ndarray = field(default_factory=lambda: np.diag([1.0, -1.0, -1.0, -1.0]))

    def sigma_dot(self, v):
        """sigma . v for a real 3-vector v."""
        return np.einsum("a,aij->ij", np.asarray(v, dtype=float), self.sigma)


def build_gamma_basis(z=(0.0, 0.0, 1.0)) -> GammaBasis:
    """Construct the Dirac representation and the projector for unit vector z.

    With z = (0, 0, 1) the projector is diag(1, 0, 0, 0) (the proper
    representation); for other z it is still rank 1 with trace 1.
    """
    z = _check_unit3(z, "z")

    ident2 = np.eye(2, dtype=complex)
    zero2 = np.zeros((2, 2), dtype=complex)

    gamma = np.empty((4, 4, 4), dtype=complex)
    gamma[0] = np.block([[ident2, zero2], [zero2, -ident2]])
    for a in range(3):
        gamma[a + 1] = np.block([[zero2, _PAULI[a]], [-_PAULI[a], zero2]])

    # gamma5 = -g0 g1 g2 g3; sigma_a = +i g^b g^c (cyclic).  These signs make
    # the Pauli relation close with eps_123 = +1 and g0 g^a = -i gamma5 sigma_a.
    gamma5 = -gamma[0] @ gamma[1] @ gamma[2] @ gamma[3]
    sigma = np.empty((3, 4, 4), dtype=complex)
    sigma[0] = 1j * gamma[2] @ gamma[3]
    sigma[1] = 1j * gamma[3] @ gamma[1]
    sigma[2] = 1j * gamma[1] @ gamma[2]

    eye4 = np.eye(4, dtype=complex)
    z_sigma = np.einsum("a,aij->ij", z, sigma)
    pi = 0.25 * (eye4 + gamma[0]) @ (eye4 + z_sigma)

    # Pi is Hermitian rank 1: take its largest column, normalize, and fix the
    # global phase so the dominant component is real positive (deterministic).
    norms = np.linalg.norm(pi, axis=0)
    col = pi[:, int(np.argmax(norms))]
    col = col / np.linalg.norm(col)
    k = int(np.argmax(np.abs(col)))
    col = col * np.exp(-1j * np.angle(col[k]))

    return GammaBasis(z=z, gamma=gamma, gamma5=gamma5, sigma=sigma,
                      pi_projector=pi, pi_column=col)


@dataclass(frozen=True)
class SpinorParams:
    """The eight real parameters of the spinor plus the constant axis z."""

    amplitude: float
    kappa: float
    phi: float
    eta: np.ndarray   # rapidity 3-vector, may be zero
    n: np.ndarray     # unit 3-vector
    z: np.ndarray     # unit 3-vector, constant

    def __post_init__(self):
        object.__setattr__(self, "eta", np.asarray(self.eta, dtype=float))
        object.__setattr__(self, "n", _check_unit3(self.n, "n"))
        object.__setattr__(self, "z", _check_unit3(self.z, "z"))
        if self.amplitude < 0:
            raise DomainError("amplitude must be nonnegative")

    @property
    def eta_norm(self) -> float:
        return float(np.linalg.norm(self.eta))

    @property
    def v(self) -> np.ndarray:
        """Unit rapidity direction; zero vector in the eta = 0 limit."""
        e = self.eta_norm
        if e == 0.0:
            return np.zeros(3)
        return self.eta / e

    @property
    def xi(self) -> np.ndarray:
        """The spin direction 2 n (n.z) - z, a unit 3-vector."""
        return 2.0 * self.n * float(np.dot(self.n, self.z)) - self.z


@dataclass(frozen=True)
class Spinor:
    """Four complex components: the projector column of the matrix spinor."""

    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "components",
                           np.asarray(self.components, dtype=complex))
        if self.components.shape != (4,):
            raise DomainError("spinor needs exactly 4 complex components")

    def matrix(self, basis: GammaBasis) -> np.ndarray:
        """Reconstruct the 4x4 matrix form psi = column (x) pi_column^*."""
        return np.outer(self.components, basis.pi_column.conj())


@dataclass(frozen=True)
class Bilinears:
    """Scalar psi-bar psi, flux j, spin pseudovector S, and rho = sqrt(j.j)."""

    scalar: float
    j: np.ndarray
    S: np.ndarray
    rho: float

    def __post_init__(self):
        object.__setattr__(self, "j", np.asarray(self.j, dtype=float))
        object.__setattr__(self, "S", np.asarray(self.S, dtype=float))


def spinor_rotor_matrices(p: SpinorParams, g: GammaBasis):
    """The three closed-form exponential factors of the spinor, in order."""
    eye4 = np.eye(4, dtype=complex)
    half_kappa = 0.5 * p.kappa
    f_phase = p.amplitude * np.exp(1j * p.phi) * (
        np.cos(half_kappa) * eye4 + np.sin(half_kappa) * g.gamma5
    )
    e = p.eta_norm
    if e == 0.0:
        f_boost = eye4.copy()
    else:
        # (i gamma5 sigma.v)^2 = +1, so the exponential is hyperbolic.
        f_boost = np.cosh(e / 2) * eye4 - 1j * np.sinh(e / 2) * (g.gamma5 @ g.sigma_dot(p.v))
    f_rot = 1j * g.sigma_dot(p.n)       # exp(i pi/2 sigma.n), (sigma.n)^2 = 1
    return f_phase, f_boost, f_rot


def spinor_from_params(p: SpinorParams, g: GammaBasis) -> Spinor:
    """Evaluate the spinor by the closed half-angle exponential forms."""
    f_phase, f_boost, f_rot = spinor_rotor_matrices(p, g)
    return Spinor(f_phase @ f_boost @ f_rot @ g.pi_column)


IMAG_TOL = 1e-8


def bilinears_matrix(s: Spinor, g: GammaBasis) -> Bilinears:
    """Bilinears by direct matrix algebra on the spinor column.

    j^k = psi-bar gamma^k psi and S^l = i psi-bar gamma5 gamma^l psi with
    psi-bar = psi^* gamma^0.  All eight numbers must come out real; an
    imaginary residual above 1e-8 raises NumericConsistencyError.
    """
    c = s.components
    bar = c.conj() @ g.gamma[0]
    scalar_c = bar @ c
    j_c = np.array([bar @ (g.gamma[k] @ c) for k in range(4)])
    s_c = np.array([1j * (bar @ (g.gamma5 @ g.gamma[k] @ c)) for k in range(4)])

    resid = max(abs(scalar_c.imag), np.abs(j_c.imag).max(), np.abs(s_c.imag).max())
    if resid > IMAG_TOL:
        raise NumericConsistencyError(
            f"bilinears acquired imaginary parts up to {resid:.3e}")

    j = j_c.real
    jj = j[0] ** 2 - j[1] ** 2 - j[2] ** 2 - j[3] ** 2
    return Bilinears(scalar=float(scalar_c.real), j=j, S=s_c.real,
                     rho=float(np.sqrt(max(jj, 0.0))))


def bilinears_closed_form(p: SpinorParams) -> Bilinears:
    """Bilinears straight from the parameters, no matrices.

    j^0 = A^2 cosh eta, j = A^2 sinh(eta) v, S^0 = A^2 sinh(eta) (xi.v),
    S = A^2 [xi + (cosh eta - 1) v (v.xi)] with xi = 2n(n.z) - z.  At
    eta = 0 every sinh-weighted term has the removable limit zero.
    """
    a2 = p.amplitude ** 2
    e = p.eta_norm
    v = p.v
    xi = p.xi

    j = np.empty(4)
    j[0] = a2 * np.cosh(e)
    j[1:] = a2 * np.sinh(e) * v

    S = np.empty(4)
    S[0] = a2 * np.sinh(e) * float(np.dot(xi, v))
    S[1:] = a2 * (xi + (np.cosh(e) - 1.0) * v * float(np.dot(v, xi)))

    return Bilinears(scalar=a2 * np.cos(p.kappa), j=j, S=S, rho=a2)


RHO_TOL = 1e-12


def xi_from_bilinears(b: Bilinears) -> np.ndarray:
    """Recover the unit spin direction xi from (j, S).

    xi^a = [S^a - j^a S^0 / (j^0 + rho)] / rho; requires timelike flux.
    """
    if b.rho <= RHO_TOL:
        raise LightlikeFluxError(
            f"flux is lightlike within tolerance (rho = {b.rho:.3e})")
    return (b.S[1:] - b.j[1:] * b.S[0] / (b.j[0] + b.rho)) / b.rho


def spin_from_xi(xi, j, rho) -> np.ndarray:
    """Inverse map: spin pseudovector from xi and the flux."""
    xi = np.asarray(xi, dtype=float)
    j = np.asarray(j, dtype=float)
    jxi = float(np.dot(j[1:], xi))
    S = np.empty(4)
    S[0] = jxi
    S[1:] = rho * xi + jxi * j[1:] / (rho + j[0])
    return S


XI_Z_TOL = 1e-9


def n_from_xi(xi, z) -> np.ndarray:
    """Rotation axis n = (xi + z)/sqrt(2(1 + xi.z)); singular at xi = -z."""
    xi = np.asarray(xi, dtype=float)
    z = np.asarray(z, dtype=float)
    denom = 2.0 * (1.0 + float(np.dot(xi, z)))
    if denom < 2.0 * XI_Z_TOL:
        raise DomainError("xi antipodal to z: 1 + xi.z below tolerance")
    return (xi + z) / np.sqrt(denom)


def random_spinor_params(rng: np.random.Generator, z=None) -> SpinorParams:
    """Draw a generic parameter set; amplitudes in [0.3, 2], |eta| up to 2.5.

    The rapidity cap keeps cosh^2(eta) roundoff amplification below the
    1e-12 relative tolerance on the rho = A^2 identity.
    """
    if z is None:
        z = _random_unit(rng)
    n = _random_unit(rng)
    return SpinorParams(
        amplitude=float(rng.uniform(0.3, 2.0)),
        kappa=float(rng.uniform(-np.pi, np.pi)),
        phi=float(rng.uniform(-np.pi, np.pi)),
        eta=_random_unit(rng) * rng.uniform(0.0, 2.5),
        n=n,
        z=np.asarray(z, dtype=float),
    )


def _random_unit(rng):
    while True:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            return v / norm
