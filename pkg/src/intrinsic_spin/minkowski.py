r"""Minkowski-space kinematics in natural units (c = 1).

Metric signature is (-,+,+,+); index 0 is time. Four-vectors are plain
``ndarray`` of shape ``(4,)``, Lorentz matrices are ``(4, 4)`` arrays acting
on contravariant components, and rank-2 tensors are ``(4, 4, ...)`` arrays
whose trailing axes may carry operator (matrix) values.

The Levi-Civita symbol is fixed by :math:`\varepsilon_{0123} = +1` and the
dual of an antisymmetric tensor is

.. math:: {}^*T_{ab} = -\tfrac12 \varepsilon_{abcd} T^{cd}.
"""
from __future__ import annotations

import contextlib
import itertools
from typing import Iterator

import numpy as np

from .errors import OffShellMomentum

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])

LORENTZ_TOL = 1e-12
ON_SHELL_TOL = 1e-9

# Sign of the lowered-index symbol eps_{0123}; only flipped for convention audits.
_EPSILON_0123 = 1.0


def _permutation_parity(perm: tuple[int, ...]) -> int:
    perm = list(perm)
    parity = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            parity = -parity
    return parity


def _build_levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        eps[perm] = _permutation_parity(perm)
    return eps


_LEVI_CIVITA = _build_levi_civita()


def levi_civita() -> np.ndarray:
    """Lowered-index Levi-Civita symbol eps_{abcd} as a (4,4,4,4) array."""
    return _EPSILON_0123 * _LEVI_CIVITA


def epsilon_sign() -> float:
    return _EPSILON_0123


@contextlib.contextmanager
def epsilon_convention(sign: float) -> Iterator[None]:
    """Temporarily set eps_{0123} to ``sign`` (+1 or -1).

    Only intended for debugging the dual convention: every identity that
    depends on the orientation should break under ``sign=-1``.
    """
    global _EPSILON_0123
    if sign not in (1, -1):
        raise ValueError("epsilon sign must be +1 or -1")
    previous = _EPSILON_0123
    _EPSILON_0123 = float(sign)
    try:
        yield
    finally:
        _EPSILON_0123 = previous


def four_vector(components) -> np.ndarray:
    v = np.asarray(components, dtype=float)
    if v.shape != (4,):
        raise ValueError(f"expected 4 components, got shape {v.shape}")
    return v


def minkowski_dot(a, b) -> float:
    """Return -a^0 b^0 + a.b (contracts the leading axis)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]


def lower(v: np.ndarray) -> np.ndarray:
    """Lower the leading index of a (4, ...) array. Also raises, since eta is its own inverse."""
    v = np.asarray(v)
    out = v.copy()
    out[0] = -out[0]
    return out


def lower_pair(T: np.ndarray) -> np.ndarray:
    """Lower the two leading indices of a (4, 4, ...) tensor."""
    return lower(np.swapaxes(lower(np.swapaxes(np.asarray(T), 0, 1)), 0, 1))


raise_pair = lower_pair


def antisym_tensor(t01=0.0, t02=0.0, t03=0.0, t12=0.0, t13=0.0, t23=0.0) -> np.ndarray:
    """Assemble an antisymmetric (4, 4, ...) tensor from its six independent components.

    Components may be scalars or equally-shaped arrays (operator-valued tensors).
    """
    comps = {(0, 1): t01, (0, 2): t02, (0, 3): t03, (1, 2): t12, (1, 3): t13, (2, 3): t23}
    tail = np.broadcast(*[np.asarray(c) for c in comps.values()]).shape
    dtype = np.result_type(*[np.asarray(c) for c in comps.values()], float)
    T = np.zeros((4, 4) + tail, dtype=dtype)
    for (a, b), value in comps.items():
        T[a, b] = value
        T[b, a] = -np.asarray(value)
    return T


def hodge_dual(T: np.ndarray) -> np.ndarray:
    r"""Dual of an upper-index antisymmetric tensor, returned with lower indices.

    Computes :math:`{}^*T_{ab} = -\frac12\varepsilon_{abcd}T^{cd}`. Works for
    operator-valued tensors of shape ``(4, 4, d, d)``.

    Applying the dual twice (raising indices in between) gives ``-T``, the
    Lorentzian-signature result, independently of the sign of eps_{0123}.
    """
    T = np.asarray(T)
    return -0.5 * np.tensordot(levi_civita(), T, axes=([2, 3], [0, 1]))


def is_lorentz(L: np.ndarray, tol: float = LORENTZ_TOL) -> bool:
    L = np.asarray(L, dtype=float)
    if L.shape != (4, 4):
        return False
    return bool(np.max(np.abs(L.T @ METRIC @ L - METRIC)) <= tol)


def is_proper_orthochronous(L: np.ndarray, tol: float = LORENTZ_TOL) -> bool:
    L = np.asarray(L, dtype=float)
    return is_lorentz(L, tol) and L[0, 0] >= 1.0 - tol and np.linalg.det(L) > 0.0


def lorentz_inverse(L: np.ndarray) -> np.ndarray:
    """Exact inverse of a Lorentz matrix, eta L^T eta."""
    return METRIC @ np.asarray(L, dtype=float).T @ METRIC


def boost(rapidity) -> np.ndarray:
    """Pure boost with rapidity vector ``rapidity`` (direction times |chi|).

    Maps the rest vector (1,0,0,0) to (cosh chi, sinh chi n).
    """
    xi = np.asarray(rapidity, dtype=float)
    chi = float(np.linalg.norm(xi))
    L = np.eye(4)
    if chi == 0.0:
        return L
    n = xi / chi
    ch, sh = np.cosh(chi), np.sinh(chi)
    L[0, 0] = ch
    L[0, 1:] = sh * n
    L[1:, 0] = sh * n
    L[1:, 1:] += (ch - 1.0) * np.outer(n, n)
    return L


def boost_along(axis, rapidity: float) -> np.ndarray:
    n = np.asarray(axis, dtype=float)
    return boost(rapidity * n / np.linalg.norm(n))


def rotation(axis, angle: float) -> np.ndarray:
    """Active rotation by ``angle`` about ``axis`` embedded as a 4x4 Lorentz matrix."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    K = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    L = np.eye(4)
    L[1:, 1:] = np.eye(3) + np.sin(angle) * K + (1.0 - np.cos(angle)) * (K @ K)
    return L


def on_shell(p, m: float, tol: float = ON_SHELL_TOL) -> np.ndarray:
    """Validate ``p`` against the mass shell and return it with p^0 recomputed.

    Raises :class:`OffShellMomentum` if ``m <= 0``, ``p^0 <= 0`` or
    ``|p.p + m^2| > tol * m^2``.
    """
    p = four_vector(p)
    if not m > 0:
        raise OffShellMomentum(f"mass must be positive, got {m}")
    if p[0] <= 0:
        raise OffShellMomentum(f"energy must be positive, got p0={p[0]}")
    defect = minkowski_dot(p, p) + m * m
    if abs(defect) > tol * m * m:
        raise OffShellMomentum(f"p.p + m^2 = {defect:.3e} exceeds tolerance {tol:g} m^2")
    out = p.copy()
    out[0] = np.sqrt(m * m + p[1:] @ p[1:])
    return out


def standard_boost(p, m: float) -> np.ndarray:
    """Pure boost L(p) with L(p)(m,0,0,0) = p."""
    p = on_shell(p, m)
    q = p[1:]
    L = np.eye(4)
    L[0, 0] = p[0] / m
    L[0, 1:] = q / m
    L[1:, 0] = q / m
    L[1:, 1:] += np.outer(q, q) / (m * (p[0] + m))
    return L


def wigner_rotation(Lam: np.ndarray, p, m: float) -> np.ndarray:
    """Little-group element L(Lam p)^-1 Lam L(p).

    The result fixes the time axis and has an SO(3) spatial block (up to
    rounding).
    """
    Lam = np.asarray(Lam, dtype=float)
    p = on_shell(p, m)
    q = Lam @ p
    q[0] = np.sqrt(m * m + q[1:] @ q[1:])
    return lorentz_inverse(standard_boost(q, m)) @ Lam @ standard_boost(p, m)
