r"""Relativistic spin observables at a fixed on-shell momentum.

The intrinsic spin tensor is built from the Pauli-Lubanski operator as

.. math:: S_{ab} = \frac{i}{P^2}[W_a, W_b], \qquad P^2 = -m^2,

and can be split, relative to any observer four-velocity v, into an
angular part :math:`\Sigma_a(v) = {}^*S_{ab}v^b` and a mass-moment part
:math:`M_a(v) = S_{ab}v^b`. Neither part is observer independent on its own.
The Wigner spin (the bare rest-frame matrices S) is provided as the 3-vector
candidate that fails intrinsicality.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import minkowski as mk
from .poincare_rep import OnShellMomentum, pauli_lubanski
from .spin_algebra import angular_momentum_matrices

FRAME_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SpinTensorOp:
    """Operator-valued antisymmetric tensor S^{mu nu}(p), upper indices, shape (4, 4, d, d)."""

    momentum: OnShellMomentum | None
    components: np.ndarray

    @property
    def lowered(self) -> np.ndarray:
        return mk.lower_pair(self.components)

    @property
    def dim(self) -> int:
        return self.components.shape[-1]


@dataclass(frozen=True, eq=False)
class ObserverFrame:
    """Orthonormal tetrad stored column-wise: column 0 is v, columns 1-3 are e_1..e_3."""

    tetrad: np.ndarray

    def __post_init__(self):
        E = np.array(self.tetrad, dtype=float)
        if E.shape != (4, 4):
            raise ValueError("tetrad must be a 4x4 matrix")
        if np.max(np.abs(E.T @ mk.METRIC @ E - mk.METRIC)) > FRAME_TOL * max(1.0, np.abs(E).max() ** 2):
            raise ValueError("tetrad is not orthonormal")
        if E[0, 0] <= 0:
            raise ValueError("observer four-velocity must be future pointing")
        E.setflags(write=False)
        object.__setattr__(self, "tetrad", E)

    @classmethod
    def lab(cls) -> "ObserverFrame":
        return cls(np.eye(4))

    @classmethod
    def from_lorentz(cls, Lam: np.ndarray) -> "ObserverFrame":
        """The lab tetrad carried along by ``Lam``."""
        return cls(np.asarray(Lam, dtype=float))

    @classmethod
    def comoving(cls, p: OnShellMomentum) -> "ObserverFrame":
        return cls(mk.standard_boost(p.four, p.m))

    @property
    def v(self) -> np.ndarray:
        return self.tetrad[:, 0]

    @property
    def spatial_axes(self) -> np.ndarray:
        """Rows are e_1, e_2, e_3 (contravariant components)."""
        return self.tetrad[:, 1:].T


def _commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def intrinsic_spin_tensor(s, p: OnShellMomentum) -> SpinTensorOp:
    """S^{ab}(p) = (i / P^2) [W^a, W^b] with P^2 = -m^2, by direct commutators."""
    W = pauli_lubanski(s, p)
    d = W.shape[-1]
    S = np.zeros((4, 4, d, d), dtype=complex)
    p2 = -p.m * p.m
    for a in range(4):
        for b in range(a + 1, 4):
            S[a, b] = (1j / p2) * _commutator(W[a], W[b])
            S[b, a] = -S[a, b]
    return SpinTensorOp(p, S)


def contract_vector(T: np.ndarray, u: np.ndarray) -> np.ndarray:
    """T_{ab} u^b for a lower-index (4, 4, ...) tensor T and contravariant u."""
    return np.tensordot(np.asarray(u), np.moveaxis(T, 1, 0), axes=1)


def dual_times_momentum(S: SpinTensorOp) -> np.ndarray:
    """*S_{ab} p^b (lower index); equals W_a for the intrinsic tensor."""
    return contract_vector(mk.hodge_dual(S.components), S.momentum.four)


def tensor_times_momentum(S: SpinTensorOp) -> np.ndarray:
    """S_{ab} p^b (lower index); vanishes for the intrinsic tensor."""
    return contract_vector(S.lowered, S.momentum.four)


def spin_norm(S: SpinTensorOp) -> np.ndarray:
    """S_{ab} S^{ab} / 2 as a (d, d) matrix."""
    low = S.lowered
    return 0.5 * np.einsum("abij,abjk->ik", low, S.components)


def _tetrad_components(one_form: np.ndarray, frame: ObserverFrame) -> np.ndarray:
    return np.tensordot(frame.spatial_axes, one_form, axes=1)


def sigma_vector(S: SpinTensorOp, frame: ObserverFrame) -> np.ndarray:
    """Spatial tetrad components of Sigma_a(v) = *S_{ab} v^b, shape (3, d, d)."""
    return _tetrad_components(contract_vector(mk.hodge_dual(S.components), frame.v), frame)


def mass_moment(S: SpinTensorOp, frame: ObserverFrame) -> np.ndarray:
    """Spatial tetrad components of M_a(v) = S_{ab} v^b, shape (3, d, d)."""
    return _tetrad_components(contract_vector(S.lowered, frame.v), frame)


def reconstruct_tensor(sigma: np.ndarray, mass: np.ndarray, frame: ObserverFrame,
                       momentum: OnShellMomentum | None = None) -> SpinTensorOp:
    r"""Rebuild S from its observer split.

    Uses :math:`S_{ab} = v_a M_b - v_b M_a + \varepsilon_{abcd} v^c \Sigma^d`
    with both one-forms reassembled from their tetrad components.
    """
    sigma = np.asarray(sigma)
    mass = np.asarray(mass)
    axes = frame.spatial_axes
    sigma_up = np.tensordot(axes.T, sigma, axes=1)
    mass_low = mk.lower(np.tensordot(axes.T, mass, axes=1))
    v_low = mk.lower(frame.v)
    S_low = np.multiply.outer(v_low, mass_low) - np.swapaxes(np.multiply.outer(v_low, mass_low), 0, 1)
    eps_v = np.tensordot(mk.levi_civita(), frame.v, axes=([2], [0]))
    S_low = S_low + np.tensordot(eps_v, sigma_up, axes=([2], [0]))
    return SpinTensorOp(momentum, mk.raise_pair(S_low))


def sigma_closed_form(s, p: OnShellMomentum) -> np.ndarray:
    """Lab-frame Sigma = (P^0 S - (S.P) P / (m + P^0)) / m, shape (3, d, d)."""
    S = angular_momentum_matrices(s)
    q = p.spatial
    pS = np.tensordot(q, S, axes=1)
    return (p.p0 * S - np.multiply.outer(q, pS) / (p.m + p.p0)) / p.m


def wigner_spin_family(s) -> Callable[[OnShellMomentum], np.ndarray]:
    """Momentum-independent Wigner spin matrices (Sx, Sy, Sz) in every sector."""
    S = angular_momentum_matrices(s)
    S.setflags(write=False)

    def family(momentum: OnShellMomentum) -> np.ndarray:
        return S

    return family


def su2_defect(ops: np.ndarray) -> float:
    """max over cyclic (i, j, k) of ||[A_i, A_j] - i A_k||_max."""
    ops = np.asarray(ops)
    return max(
        float(np.max(np.abs(_commutator(ops[i], ops[j]) - 1j * ops[k])))
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    )


def su2_pair_defects(ops: np.ndarray) -> dict[str, float]:
    ops = np.asarray(ops)
    names = "xyz"
    return {
        f"[{names[i]},{names[j]}]-i{names[k]}": float(
            np.max(np.abs(_commutator(ops[i], ops[j]) - 1j * ops[k])))
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    }


def scalar_contraction(c: np.ndarray, S: SpinTensorOp) -> np.ndarray:
    """c_{mu nu} S^{mu nu} for an upper-index numeric tensor c (indices lowered with eta)."""
    c_low = mk.lower_pair(np.asarray(c, dtype=float))
    return np.tensordot(c_low, S.components, axes=([0, 1], [0, 1]))
