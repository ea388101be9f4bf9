"""Covariance-matrix algebra for Gaussian states of bosonic modes.

Conventions: quadratures ``X = (a + a^dag)/sqrt(2)``, ``Y = -i(a - a^dag)/sqrt(2)``,
so the vacuum covariance matrix is ``I/2``. Modes are interleaved: mode ``i``
(0-based) occupies rows/columns ``2i`` (X) and ``2i + 1`` (Y).
"""

import numpy as np

PHYSICALITY_TOL = 1e-8
# below this the two-mode discriminant is treated as rounding noise
DISCRIMINANT_TOL = 1e-9


class CovarianceMatrix:
    """Symmetric ``2N x 2N`` quadrature covariance matrix.

    The input is symmetrized as ``(V + V.T)/2`` on construction, so
    ``v.matrix`` is exactly symmetric.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"expected an even square matrix, got shape {m.shape}")
        m = 0.5 * (m + m.T)
        if np.any(np.diag(m) < 0):
            raise ValueError("covariance matrix has a negative variance")
        m.setflags(write=False)
        self.matrix = m

    @property
    def n_modes(self):
        return self.matrix.shape[0] // 2

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def __repr__(self):
        return f"CovarianceMatrix(n_modes={self.n_modes})"

    @classmethod
    def vacuum(cls, n_modes):
        return cls(0.5 * np.eye(2 * n_modes))

    @classmethod
    def thermal(cls, occupations):
        occ = np.repeat(np.asarray(occupations, dtype=float), 2)
        return cls(np.diag(occ + 0.5))


def symplectic_form(n_modes):
    """``Omega = direct_sum([[0, 1], [-1, 0]])`` in interleaved ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def tmsv_cm(r):
    """Covariance matrix of a two-mode squeezed vacuum with real parameter ``r``.

    Uses the sign convention ``C = (sinh 2r / 2) diag(1, -1)``.
    """
    a = 0.5 * np.cosh(2 * r)
    c = 0.5 * np.sinh(2 * r)
    v = np.array([
        [a, 0, c, 0],
        [0, a, 0, -c],
        [c, 0, a, 0],
        [0, -c, 0, a],
    ])
    return CovarianceMatrix(v)


def _matrix(v):
    return np.asarray(v, dtype=float)


def _check_mode(mode, n_modes):
    if not 0 <= mode < n_modes:
        raise IndexError(f"mode {mode} out of range for {n_modes} modes")


def extract_bipartite(v, mode_a, mode_b):
    """4x4 principal submatrix of ``v`` over modes ``mode_a`` and ``mode_b``."""
    m = _matrix(v)
    n = m.shape[0] // 2
    _check_mode(mode_a, n)
    _check_mode(mode_b, n)
    if mode_a == mode_b:
        raise ValueError("bipartite extraction needs two distinct modes")
    idx = [2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1]
    return CovarianceMatrix(m[np.ix_(idx, idx)])


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def pt_symplectic_min(v4):
    """Smallest symplectic eigenvalue of the partially transposed two-mode CM.

    Uses the invariants ``s = det A + det B - 2 det C`` and ``det V``:
    ``nu_min^2 = 2 det V / (s + sqrt(s^2 - 4 det V))``. The discriminant
    ``s^2 - 4 det V = (nu_+^2 - nu_-^2)^2`` is evaluated as ``tr(N^2)`` with
    ``N`` the traceless part of ``(Omega V~)^2``; the textbook difference
    cancels catastrophically for nearly pure or nearly vacuum states.
    """
    m = _matrix(v4)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-mode CM, got {m.shape}")
    a, b, c = m[:2, :2], m[2:, 2:], m[:2, 2:]
    s = _det2(a) + _det2(b) - 2.0 * _det2(c)
    det_v = np.linalg.det(m)
    flip = np.array([1.0, 1.0, 1.0, -1.0])
    k = symplectic_form(2) @ (m * np.outer(flip, flip))
    k2 = k @ k
    n = k2 - (np.trace(k2) / 4.0) * np.eye(4)
    disc = float(np.sum(n * n.T))
    if disc < -DISCRIMINANT_TOL * max(1.0, s * s) or s * s - 4.0 * det_v < -DISCRIMINANT_TOL * max(1.0, s * s):
        raise ArithmeticError(
            f"negative two-mode discriminant {min(disc, s * s - 4 * det_v):.3e}: "
            "covariance matrix is unphysical"
        )
    root = np.sqrt(max(disc, 0.0))
    if s + root <= 0:
        raise ArithmeticError("degenerate two-mode invariants")
    return float(np.sqrt(max(2.0 * det_v / (s + root), 0.0)))


def log_negativity(v4):
    """Logarithmic negativity ``max(0, -ln(2 nu_min))`` of a two-mode CM (natural log)."""
    nu = pt_symplectic_min(v4)
    if nu == 0.0:
        return np.inf
    return max(0.0, -np.log(2.0 * nu))


def excitation_number(v, mode):
    """Residual quanta ``(<dX^2> + <dY^2> - 1)/2`` in one mode."""
    m = _matrix(v)
    _check_mode(mode, m.shape[0] // 2)
    return 0.5 * (m[2 * mode, 2 * mode] + m[2 * mode + 1, 2 * mode + 1] - 1.0)


def check_physicality(v, tol=PHYSICALITY_TOL):
    """True iff ``V + (i/2) Omega`` has no eigenvalue below ``-tol``."""
    m = _matrix(v)
    h = m + 0.5j * symplectic_form(m.shape[0] // 2)
    return bool(np.linalg.eigvalsh(h).min() >= -tol)


def local_rotation(*angles):
    """Block-diagonal phase-space rotation, one angle per mode."""
    blocks = [np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]]) for t in angles]
    out = np.zeros((2 * len(blocks), 2 * len(blocks)))
    for i, blk in enumerate(blocks):
        out[2 * i:2 * i + 2, 2 * i:2 * i + 2] = blk
    return out
