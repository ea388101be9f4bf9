"""Truncated Fock-space oracle for the pulsed scheme.

Density matrices are stored as tensors with one ket axis and one bra axis per
mode, ``data[k_0, ..., k_{n-1}, b_0, ..., b_{n-1}]``. Loss and state transfer
are realized physically: the mode is mixed with a vacuum ancilla by a
beam-splitter unitary (the matrix exponential of its generator) and one
output port is traced out.

Nothing here relies on Gaussianity, so agreement with :mod:`mechnet.pulse`
is a genuine cross-check.
"""

import math
from functools import lru_cache

import numpy as np
from scipy import sparse
from scipy.linalg import expm
from scipy.sparse.csgraph import connected_components

from .gaussian import CovarianceMatrix

TAIL_TOL = 1e-8


class TruncationTooSmall(ValueError):
    """Probability outside the truncated space exceeds the tolerance."""


class TruncatedDensityMatrix:
    """Fock-basis density operator on 1-3 modes, each truncated to ``dim`` levels."""

    def __init__(self, data, n_modes, dim, tail=0.0):
        if not 1 <= n_modes <= 3:
            raise ValueError("only 1 to 3 modes are supported")
        data = np.asarray(data, dtype=complex)
        shape = (dim,) * (2 * n_modes)
        if data.shape != shape:
            data = data.reshape(shape)
        self.data = data
        self.n_modes = n_modes
        self.dim = dim
        self.tail = tail

    @classmethod
    def from_matrix(cls, matrix, n_modes, dim, tail=0.0):
        return cls(np.asarray(matrix).reshape((dim,) * (2 * n_modes)), n_modes, dim, tail)

    @property
    def matrix(self):
        size = self.dim ** self.n_modes
        return self.data.reshape(size, size)

    def trace(self):
        return float(np.trace(self.matrix).real)

    def hermiticity_error(self):
        m = self.matrix
        return float(np.abs(m - m.conj().T).max())

    def min_eigenvalue(self):
        m = self.matrix
        return float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min())

    def purity(self):
        m = self.matrix
        return float(np.einsum("ij,ji->", m, m).real)

    def partial_trace(self, keep):
        """Reduced state on the modes listed in ``keep`` (in that order)."""
        keep = list(keep)
        n = self.n_modes
        letters = "abcdefgh"
        ket = list(letters[:n])
        bra = [c.upper() for c in ket]
        for i in range(n):
            if i not in keep:
                bra[i] = ket[i]
        out = "".join(ket[i] for i in keep) + "".join(bra[i] for i in keep)
        data = np.einsum("".join(ket) + "".join(bra) + "->" + out, self.data)
        return TruncatedDensityMatrix(data, len(keep), self.dim, self.tail)

    def __repr__(self):
        return f"TruncatedDensityMatrix(n_modes={self.n_modes}, dim={self.dim})"


def vacuum(n_modes, dim):
    data = np.zeros((dim,) * (2 * n_modes), dtype=complex)
    data[(0,) * (2 * n_modes)] = 1.0
    return TruncatedDensityMatrix(data, n_modes, dim)


def thermal(n_mean, dim):
    """Single-mode thermal state truncated at ``dim`` levels (not renormalized; the lost weight is recorded in ``tail``)."""
    if n_mean == 0:
        return vacuum(1, dim)
    ratio = n_mean / (1.0 + n_mean)
    p = ratio ** np.arange(dim) / (1.0 + n_mean)
    tail = ratio ** dim
    return TruncatedDensityMatrix(np.diag(p), 1, dim, tail)


def tmsv_tail(r, dim):
    """Probability mass of a two-mode squeezed vacuum beyond ``dim`` levels."""
    return float(np.tanh(r) ** (2 * dim))


def tmsv_dimension(r, tol=TAIL_TOL):
    """Smallest truncation keeping the two-mode squeezed vacuum tail below ``tol``."""
    lam = np.tanh(r)
    if lam == 0:
        return 2
    return max(2, math.ceil(np.log(tol) / (2 * np.log(lam))))


def tmsv(r, dim=None):
    """Two-mode squeezed vacuum ``sech r * sum (i tanh r)^n |n, n>`` on modes ``(b1, optical)``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    if dim is None:
        dim = tmsv_dimension(r)
    if dim < 2:
        raise ValueError("dim must be at least 2")
    tail = tmsv_tail(r, dim)
    if tail > TAIL_TOL:
        raise TruncationTooSmall(
            f"tail {tail:.2e} above {TAIL_TOL:.0e}; use dim >= {tmsv_dimension(r)}"
        )
    n = np.arange(dim)
    coeff = (1j * np.tanh(r)) ** n / np.cosh(r)
    psi = np.zeros((dim, dim), dtype=complex)
    psi[n, n] = coeff
    data = np.einsum("ab,cd->abcd", psi, psi.conj())
    return TruncatedDensityMatrix(data, 2, dim, tail)


def ladder(dim):
    """Truncated annihilation operator."""
    return np.diag(np.sqrt(np.arange(1, dim)), 1).astype(complex)


@lru_cache(maxsize=64)
def _beamsplitter_blocks(dim, theta, phi):
    # generator e^{i phi} x^dag y - e^{-i phi} x y^dag conserves x+y photon number,
    # so exp(theta * G) is block diagonal; block N has basis |n, N-n>, n = 0..N
    blocks = []
    for total in range(dim):
        n = np.arange(total)
        hop = np.sqrt((n + 1.0) * (total - n))
        gen = np.zeros((total + 1, total + 1), dtype=complex)
        gen[n + 1, n] = np.exp(1j * phi) * hop
        gen[n, n + 1] = -np.exp(-1j * phi) * hop
        blocks.append(expm(theta * gen))
    return tuple(blocks)


def beamsplitter_unitary(dim, theta, phi=0.0):
    """Dense two-mode beam-splitter unitary on the span of ``|x, y>`` with ``x + y < dim``.

    Heisenberg action: ``x -> cos(theta) x + e^{i phi} sin(theta) y`` and
    ``y -> cos(theta) y - e^{-i phi} sin(theta) x``. Returned as a
    ``dim^2 x dim^2`` matrix; columns with ``x + y >= dim`` are zero.
    """
    u = np.zeros((dim * dim, dim * dim), dtype=complex)
    for total, block in enumerate(_beamsplitter_blocks(dim, theta, phi)):
        idx = np.array([n * dim + (total - n) for n in range(total + 1)])
        u[np.ix_(idx, idx)] = block
    return u


def _kraus(dim, theta, phi, keep):
    """Kraus operators ``K[j, out, in]`` from coupling a mode to a vacuum ancilla.

    ``keep`` selects the retained output port: ``"x"`` is the original mode,
    ``"y"`` the ancilla. ``j`` counts quanta left in the traced port.
    """
    k = np.zeros((dim, dim, dim), dtype=complex)
    for total, block in enumerate(_beamsplitter_blocks(dim, theta, phi)):
        column = block[:, total]  # input |total, 0>
        for n_x, amp in enumerate(column):
            n_y = total - n_x
            if keep == "x":
                k[n_y, n_x, total] = amp
            else:
                k[n_x, n_y, total] = amp
    return k


def _apply_kraus(rho, mode, kraus):
    n, d = rho.n_modes, rho.dim
    x = np.moveaxis(rho.data, (mode, n + mode), (0, 1))
    y = np.zeros_like(x)
    for j in range(d):
        # number conserving: K_j maps |o + j> to |o>
        amp = np.array([kraus[j, o, o + j] for o in range(d - j)])
        if not np.any(amp):
            continue
        weight = np.multiply.outer(amp, amp.conj())
        weight = weight.reshape(weight.shape + (1,) * (x.ndim - 2))
        y[: d - j, : d - j] += weight * x[j:, j:]
    data = np.moveaxis(y, (0, 1), (mode, n + mode))
    return TruncatedDensityMatrix(data, n, d, rho.tail)


def _check_mode(rho, mode):
    if not 0 <= mode < rho.n_modes:
        raise IndexError(f"mode {mode} out of range for {rho.n_modes} modes")


def apply_beamsplitter_loss(rho, mode, transmittance):
    """Pure-loss channel: mix ``mode`` with vacuum at the given transmittance, trace the ancilla."""
    _check_mode(rho, mode)
    if not 0.0 <= transmittance <= 1.0:
        raise ValueError("transmittance must lie in [0, 1]")
    theta = float(np.arccos(np.sqrt(transmittance)))
    return _apply_kraus(rho, mode, _kraus(rho.dim, theta, 0.0, "x"))


def apply_transfer(rho, efficiency, mode=1):
    """Swap the optical ``mode`` onto a fresh vacuum resonator, trace the optical output.

    The resonator ends up as ``b2 -> sqrt(1-W) b2 + i sqrt(W) C``. The
    returned state keeps the mode order, with the optical slot replaced by
    ``b2``.
    """
    _check_mode(rho, mode)
    if not 0.0 <= efficiency <= 1.0:
        raise ValueError("efficiency must lie in [0, 1]")
    theta = float(np.arcsin(np.sqrt(efficiency)))
    return _apply_kraus(rho, mode, _kraus(rho.dim, theta, np.pi / 2, "y"))


def mechanical_pair(r, W, R, dim=None):
    """Full channel pipeline: squeeze, lose ``R`` in transit, transfer with ``W``.

    Returns the state of ``(b1, b2)``.
    """
    rho = tmsv(r, dim)
    rho = apply_beamsplitter_loss(rho, 1, 1.0 - R)
    return apply_transfer(rho, W, mode=1)


def _expect(op, rho_matrix):
    return np.einsum("ij,ji->", rho_matrix, op)


def numeric_cm(rho):
    """Quadrature covariance matrix from a Fock-space density matrix."""
    d, n = rho.dim, rho.n_modes
    a = ladder(d)
    quads = [(a + a.conj().T) / np.sqrt(2), -1j * (a - a.conj().T) / np.sqrt(2)]
    singles = [rho.partial_trace([i]).matrix for i in range(n)]
    mean = np.array([_expect(q, singles[i]).real for i in range(n) for q in quads])
    v = np.zeros((2 * n, 2 * n))
    for i in range(n):
        for s in range(2):
            for t in range(2):
                prod = quads[s] @ quads[t]
                v[2 * i + s, 2 * i + t] = _expect(prod, singles[i]).real
    for i in range(n):
        for j in range(i + 1, n):
            pair = rho.partial_trace([i, j]).matrix
            for s in range(2):
                for t in range(2):
                    val = _expect(np.kron(quads[s], quads[t]), pair).real
                    v[2 * i + s, 2 * j + t] = v[2 * j + t, 2 * i + s] = val
    v -= np.outer(mean, mean)
    return CovarianceMatrix(v)


def partial_transpose(rho, modes=(1,)):
    """Transpose the ket and bra indices of ``modes``."""
    n = rho.n_modes
    axes = list(range(2 * n))
    for m in modes:
        axes[m], axes[n + m] = axes[n + m], axes[m]
    return TruncatedDensityMatrix(rho.data.transpose(axes), n, rho.dim, rho.tail)


def numeric_log_negativity(rho, split=(1,)):
    """``ln || rho^{T_B} ||_1`` with the transpose taken on the modes in ``split``."""
    pt = partial_transpose(rho, split).matrix
    pt = 0.5 * (pt + pt.conj().T)
    return float(np.log(sum(np.abs(ev).sum() for ev in _block_eigvalsh(pt))))


def _block_eigvalsh(h, cutoff=1e-300):
    # the spectrum of a Hermitian matrix is the union of the spectra of its
    # decoupled blocks; channels built from number-conserving unitaries leave
    # many exact zeros, so this is much cheaper than one dense solve
    mask = sparse.csr_matrix(np.abs(h) > cutoff)
    count, labels = connected_components(mask, directed=False)
    for k in range(count):
        idx = np.flatnonzero(labels == k)
        yield np.linalg.eigvalsh(h[np.ix_(idx, idx)])


def closed_form_lossy_tmsv(r, R, dim):
    """Series for the squeezed state after its optical half lost a fraction ``R``.

    Term by term::

        rho = sech^2 r  sum_{n,n'} (i tanh r)^n (-i tanh r)^{n'} |n><n'|_b1
              (x) sum_t sqrt(C(n,t) C(n',t)) R^t T^{(n+n')/2 - t} |n-t><n'-t|_opt
    """
    T = 1.0 - R
    lam = np.tanh(r)
    out = np.zeros((dim,) * 4, dtype=complex)
    for n in range(dim):
        for n2 in range(dim):
            pre = (1j * lam) ** n * (-1j * lam) ** n2 / np.cosh(r) ** 2
            for t in range(min(n, n2) + 1):
                c = math.sqrt(math.comb(n, t) * math.comb(n2, t))
                out[n, n - t, n2, n2 - t] += pre * c * R ** t * T ** ((n + n2) / 2 - t)
    return TruncatedDensityMatrix(out, 2, dim)


def closed_form_mechanical_pair(r, R, W, dim):
    """Series for the ``(b1, b2)`` state after loss ``R`` and transfer ``W``.

    Extends :func:`closed_form_lossy_tmsv` by the sum over ``l`` quanta left
    behind in the optical output, each surviving quantum picking up a factor
    ``i sqrt(W)`` (ket) or ``-i sqrt(W)`` (bra).
    """
    T = 1.0 - R
    lam = np.tanh(r)
    out = np.zeros((dim,) * 4, dtype=complex)
    for n in range(dim):
        for n2 in range(dim):
            pre = (1j * lam) ** n * (-1j * lam) ** n2 / np.cosh(r) ** 2
            for t in range(min(n, n2) + 1):
                ct = math.sqrt(math.comb(n, t) * math.comb(n2, t)) * R ** t * T ** ((n + n2) / 2 - t)
                for l in range(min(n - t, n2 - t) + 1):
                    q, p = n - t - l, n2 - t - l
                    cl = math.sqrt(math.comb(n - t, l) * math.comb(n2 - t, l))
                    out[n, q, n2, p] += (pre * ct * cl * 1j ** q * (-1j) ** p
                                         * W ** ((q + p) / 2) * (1 - W) ** l)
    return TruncatedDensityMatrix(out, 2, dim)
