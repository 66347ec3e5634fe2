import numpy as np
import pytest

from dirac_disquant.algebra import build_gamma_basis


@pytest.fixture(scope="session")
def basis_z():
    """Basis for the proper representation z = (0, 0, 1)."""
    return build_gamma_basis((0.0, 0.0, 1.0))


def expm_taylor(m, terms=30):
    """Term-by-term Taylor series of the matrix exponential (test oracle)."""
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ m / k
        out = out + term
    return out


def unit3(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)
