"""Angular-momentum matrices and rotation representations for arbitrary spin."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import NotARotation

ROTATION_TOL = 1e-9


@dataclass(frozen=True, order=True)
class SpinValue:
    """Spin quantum number stored as the integer 2s."""

    twice_s: int

    def __post_init__(self):
        if int(self.twice_s) != self.twice_s or self.twice_s < 0:
            raise ValueError(f"twice_s must be a non-negative integer, got {self.twice_s!r}")
        object.__setattr__(self, "twice_s", int(self.twice_s))

    @classmethod
    def of(cls, s) -> "SpinValue":
        """Build from a spin value: ``SpinValue.of("3/2")``, ``SpinValue.of(0.5)``, ``SpinValue.of(1)``."""
        if isinstance(s, SpinValue):
            return s
        twice = Fraction(str(s)) * 2 if isinstance(s, str) else Fraction(s).limit_denominator(2) * 2
        if twice.denominator != 1:
            raise ValueError(f"spin must be a non-negative integer or half-integer, got {s!r}")
        return cls(int(twice))

    @property
    def s(self) -> float:
        return self.twice_s / 2

    @property
    def dim(self) -> int:
        return self.twice_s + 1

    @property
    def casimir(self) -> float:
        return self.s * (self.s + 1)

    def __str__(self) -> str:
        return str(self.twice_s // 2) if self.twice_s % 2 == 0 else f"{self.twice_s}/2"


def as_spin(s) -> SpinValue:
    return SpinValue.of(s)


def angular_momentum_matrices(s) -> np.ndarray:
    """Return the stacked triple ``(Sx, Sy, Sz)`` as a ``(3, d, d)`` complex array.

    The basis is the Sz eigenbasis ordered m = s, s-1, ..., -s.
    """
    s = as_spin(s)
    j = s.s
    m = j - np.arange(s.dim)
    # <m+1|S+|m> sits on the superdiagonal in descending-m order
    s_plus = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    s_minus = s_plus.conj().T
    sx = 0.5 * (s_plus + s_minus)
    sy = -0.5j * (s_plus - s_minus)
    sz = np.diag(m).astype(complex)
    return np.stack([sx, sy, sz])


def spatial_block(R: np.ndarray, tol: float = ROTATION_TOL) -> np.ndarray:
    """Extract the SO(3) block of a 4x4 matrix that fixes the time axis."""
    R = np.asarray(R, dtype=float)
    if R.shape == (3, 3):
        Q = R
    else:
        e0 = np.array([1.0, 0.0, 0.0, 0.0])
        if np.max(np.abs(R @ e0 - e0)) > tol or np.max(np.abs(R[0] - e0)) > tol:
            raise NotARotation("matrix does not fix the time axis")
        Q = R[1:, 1:]
    if np.max(np.abs(Q.T @ Q - np.eye(3))) > tol or np.linalg.det(Q) < 0:
        raise NotARotation("spatial block is not in SO(3)")
    return Q


def axis_angle(R: np.ndarray) -> tuple[np.ndarray, float]:
    """Axis n and angle theta in [0, pi] with R = exp(theta n.K).

    At theta = pi, where n and -n describe the same rotation, the
    lexicographically larger of the two is returned. At theta = 0 the axis
    is (0, 0, 1) by convention.
    """
    Q = spatial_block(R)
    rotvec = Rotation.from_matrix(Q).as_rotvec()
    theta = float(np.linalg.norm(rotvec))
    if theta < 1e-15:
        return np.array([0.0, 0.0, 1.0]), 0.0
    n = rotvec / theta
    if np.pi - theta < 1e-9:
        theta = np.pi
        n = max(n, -n, key=tuple)
    return n, theta


def rotation_rep(s, R: np.ndarray) -> np.ndarray:
    """Spin-s matrix D(R) = exp(-i theta n.S).

    For half-integer s this is fixed only up to sign; the sign is whatever
    the ``axis_angle`` branch produces. Conjugations and expectation values
    are unaffected.
    """
    s = as_spin(s)
    n, theta = axis_angle(R)
    if theta == 0.0:
        return np.eye(s.dim, dtype=complex)
    generator = np.tensordot(n, angular_momentum_matrices(s), axes=1)
    evals, evecs = np.linalg.eigh(generator)
    return (evecs * np.exp(-1j * theta * evals)) @ evecs.conj().T
