"""Complex 2-vector and 2x2 matrix algebra with qubit conventions.

Basis convention used everywhere in this package: ``|e> = (1, 0)^T`` and
``|g> = (0, 1)^T``, so the lowering operator ``sigma = |g><e|`` has its only
nonzero entry in the lower-left corner.  Bloch coordinates follow the
convention ``sigma_z |e> = +|e>``:

    x = 2 Re rho_eg,   y = -2 Im rho_eg,   z = rho_ee - rho_gg,

where ``rho_eg`` is the (e, g) off-diagonal element.  Pure states live on
the unit sphere, the maximally mixed state at the origin.
"""

from __future__ import annotations

import cmath

import numpy as np

from .errors import ZeroVectorError

KET_E = np.array([1.0, 0.0], dtype=complex)
KET_G = np.array([0.0, 1.0], dtype=complex)

SIGMA = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g><e|
SIGMA_X = SIGMA + SIGMA.conj().T
SIGMA_DAG_SIGMA = SIGMA.conj().T @ SIGMA  # |e><e|
I2 = np.eye(2, dtype=complex)

_NORM_FLOOR = 1e-300


def norm2(s: np.ndarray) -> float:
    """Squared Euclidean norm of a state vector."""
    return float(np.real(np.vdot(s, s)))


def normalize(s: np.ndarray) -> np.ndarray:
    """Return the unit-norm vector along `s`, preserving the global phase.

    Raises ZeroVectorError if the norm underflows.
    """
    n2 = norm2(s)
    if n2 < _NORM_FLOOR:
        raise ZeroVectorError("cannot normalize a (near-)zero vector")
    return np.asarray(s, dtype=complex) / np.sqrt(n2)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2 for normalized pure states; insensitive to global phase."""
    return float(abs(np.vdot(a, b)) ** 2)


def project(s: np.ndarray) -> np.ndarray:
    """Rank-1 projector |s><s| of a normalized pure state."""
    s = np.asarray(s, dtype=complex)
    return np.outer(s, s.conj())


def bloch_of(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (x, y, z) of a density matrix, sigma_z|e> = +|e>."""
    x = 2.0 * float(np.real(rho[0, 1]))
    y = -2.0 * float(np.imag(rho[0, 1]))
    z = float(np.real(rho[0, 0] - rho[1, 1]))
    return np.array([x, y, z])


def bloch_of_state(s: np.ndarray) -> np.ndarray:
    """Bloch vector of a normalized pure state."""
    return bloch_of(project(s))


def is_density_matrix(rho: np.ndarray, tol: float = 1e-12) -> bool:
    """Hermitian, unit trace, eigenvalues >= -tol."""
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        return False
    if abs(np.trace(rho).real - 1.0) > tol or abs(np.trace(rho).imag) > tol:
        return False
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    return bool(np.min(evals) >= -tol)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) * sum of singular values of a - b."""
    return 0.5 * float(np.sum(np.linalg.svd(a - b, compute_uv=False)))


def expm2(m: np.ndarray) -> np.ndarray:
    """Exact exponential of a 2x2 complex matrix.

    Uses the Cayley-Hamilton closed form: with eigenvalues h +- d
    (h = tr/2, d = sqrt(h^2 - det)),

        exp(m) = e^h [cosh(d) I + sinh(d)/d (m - h I)].

    sinh(d)/d is evaluated by series when |d| is small, so degenerate and
    near-degenerate spectra are handled without cancellation.
    """
    h = 0.5 * (m[0, 0] + m[1, 1])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    d = cmath.sqrt(h * h - det)
    if abs(d) < 1e-8:
        d2 = d * d
        sinch = 1.0 + d2 / 6.0 + d2 * d2 / 120.0
        coshd = 1.0 + d2 / 2.0 + d2 * d2 / 24.0
    else:
        sinch = cmath.sinh(d) / d
        coshd = cmath.cosh(d)
    eh = cmath.exp(h)
    return eh * (coshd * I2 + sinch * (np.asarray(m, dtype=complex) - h * I2))
