"""Small helpers for 4-vectors in the metric diag(+1, -1, -1, -1).

Arrays hold upper (contravariant) components unless a name says otherwise.
Index 0 is time.
"""

import numpy as np

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

#: Coordinate basis vectors e_0..e_3 as rows.
BASIS4 = np.eye(4)


def mdot(a, b):
    """Minkowski scalar product a^i b_i = a0*b0 - a.b."""
    return float(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])


def lower(v):
    """Flip spatial signs: upper components -> lower components (and back)."""
    out = np.array(v, dtype=float)
    out[1:] = -out[1:]
    return out


def eps4(a, b, c, d):
    """Total contraction eps_{iklm} a^i b^k c^l d^m with eps_0123 = +1.

    Equals the determinant of the matrix whose columns are (a, b, c, d).
    """
    return float(np.linalg.det(np.column_stack([a, b, c, d])))


def as4(t, spatial):
    v = np.empty(4)
    v[0] = t
    v[1:] = spatial
    return v


def spatial(v):
    return np.asarray(v[1:], dtype=float)
