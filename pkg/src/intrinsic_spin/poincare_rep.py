"""Momentum-sector realization of the massive spin-s Poincare irrep.

States are finite superpositions of momentum eigenkets, with momenta treated
as orthonormal discrete labels. Each momentum carries a (2s+1)-dimensional
spin space, and every operator here acts block-diagonally over sectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import minkowski as mk
from .errors import MissingSector, OffShellMomentum
from .spin_algebra import SpinValue, angular_momentum_matrices, as_spin, rotation_rep

MATCH_TOL = 1e-9
NORM_TOL = 1e-10


@dataclass(frozen=True)
class OnShellMomentum:
    """Mass m and spatial momentum p; the energy is derived."""

    m: float
    p: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if not self.m > 0:
            raise OffShellMomentum(f"mass must be positive, got {self.m}")
        p = tuple(float(x) for x in self.p)
        if len(p) != 3 or not all(np.isfinite(p)):
            raise ValueError(f"spatial momentum must be 3 finite numbers, got {self.p!r}")
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "p", p)

    @classmethod
    def rest(cls, m: float = 1.0) -> "OnShellMomentum":
        return cls(m)

    @classmethod
    def from_four_vector(cls, P, m: float) -> "OnShellMomentum":
        P = mk.on_shell(P, m)
        return cls(m, tuple(P[1:]))

    @property
    def spatial(self) -> np.ndarray:
        return np.array(self.p)

    @property
    def p0(self) -> float:
        q = self.spatial
        return float(np.sqrt(self.m * self.m + q @ q))

    @property
    def four(self) -> np.ndarray:
        return np.array((self.p0,) + self.p)

    def transformed(self, Lam: np.ndarray) -> "OnShellMomentum":
        return OnShellMomentum(self.m, tuple((np.asarray(Lam) @ self.four)[1:]))

    def matches(self, other: "OnShellMomentum", tol: float = MATCH_TOL) -> bool:
        scale = max(self.m, self.p0, other.p0)
        return abs(self.m - other.m) <= tol * scale and bool(
            np.max(np.abs(self.spatial - other.spatial)) <= tol * scale
        )


# A momentum-indexed operator family: OnShellMomentum -> (d, d) matrix (or a
# stack of matrices).
SectorOperatorFamily = Callable[[OnShellMomentum], np.ndarray]


class SectorFamily:
    """Operator family defined on an explicit, finite list of momenta.

    Calling it with a momentum absent from the list (within the matching
    tolerance) raises :class:`MissingSector`.
    """

    def __init__(self, sectors: Iterable[tuple[OnShellMomentum, np.ndarray]], tol: float = MATCH_TOL):
        self._sectors = [(k, np.asarray(v)) for k, v in sectors]
        self.tol = tol

    def __call__(self, momentum: OnShellMomentum) -> np.ndarray:
        for key, matrix in self._sectors:
            if key.matches(momentum, self.tol):
                return matrix
        raise MissingSector(f"no operator at momentum {momentum.p}")

    def __len__(self) -> int:
        return len(self._sectors)


@dataclass(frozen=True, eq=False)
class MomentumSpinState:
    """Normalized finite superposition sum_k |p_k> (x) chi_k."""

    spin: SpinValue
    terms: tuple[tuple[OnShellMomentum, np.ndarray], ...] = field(default=())

    def __post_init__(self):
        spin = as_spin(self.spin)
        object.__setattr__(self, "spin", spin)
        terms = []
        for momentum, amp in self.terms:
            amp = np.array(amp, dtype=complex)
            amp.setflags(write=False)
            if amp.shape != (spin.dim,):
                raise ValueError(f"amplitude shape {amp.shape} does not match spin {spin}")
            terms.append((momentum, amp))
        if not terms:
            raise ValueError("a state needs at least one term")
        masses = {t[0].m for t in terms}
        if len(masses) != 1:
            raise ValueError("all terms must share one mass")
        for i, (ki, _) in enumerate(terms):
            for kj, _ in terms[:i]:
                if ki.matches(kj):
                    raise ValueError(f"duplicate momentum label {ki.p}")
        norm = sum(float(np.vdot(a, a).real) for _, a in terms)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} differs from 1")
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def from_terms(cls, spin, terms: Sequence[tuple[OnShellMomentum, Sequence[complex]]],
                   normalize: bool = True) -> "MomentumSpinState":
        amps = [np.asarray(a, dtype=complex) for _, a in terms]
        if normalize:
            norm = np.sqrt(sum(float(np.vdot(a, a).real) for a in amps))
            amps = [a / norm for a in amps]
        return cls(spin, tuple((k, a) for (k, _), a in zip(terms, amps)))

    @classmethod
    def single(cls, spin, momentum: OnShellMomentum, amplitude) -> "MomentumSpinState":
        return cls.from_terms(spin, [(momentum, amplitude)])

    @property
    def mass(self) -> float:
        return self.terms[0][0].m

    def momenta(self) -> list[OnShellMomentum]:
        return [k for k, _ in self.terms]


def pauli_lubanski(s, p: OnShellMomentum) -> np.ndarray:
    r"""Contravariant Pauli-Lubanski operator W^mu(p) as a ``(4, d, d)`` array.

    :math:`W^0 = \mathbf p\cdot\mathbf S`,
    :math:`\mathbf W = m\mathbf S + (\mathbf p\cdot\mathbf S)\mathbf p/(p^0+m)`,
    i.e. the standard boost applied to (0, mS).
    """
    S = angular_momentum_matrices(s)
    q = p.spatial
    pS = np.tensordot(q, S, axes=1)
    W = np.empty((4,) + S.shape[1:], dtype=complex)
    W[0] = pS
    W[1:] = p.m * S + np.multiply.outer(q, pS) / (p.p0 + p.m)
    return W


def boost_state(Lam: np.ndarray, psi: MomentumSpinState) -> MomentumSpinState:
    """Apply U(Lam): each term (p, chi) goes to (Lam p, D(R(Lam, p)) chi)."""
    terms = []
    for k, chi in psi.terms:
        R = mk.wigner_rotation(Lam, k.four, k.m)
        terms.append((k.transformed(Lam), rotation_rep(psi.spin, R) @ chi))
    return MomentumSpinState(psi.spin, tuple(terms))


def expectation(psi: MomentumSpinState, family: SectorOperatorFamily) -> complex:
    """Sum over terms of chi^dagger O(p) chi; no cross terms between momenta."""
    total = 0.0 + 0.0j
    for k, chi in psi.terms:
        total += np.vdot(chi, np.asarray(family(k)) @ chi)
    return complex(total)


def overlap(psi: MomentumSpinState, phi: MomentumSpinState) -> complex:
    """<psi|phi> with momentum labels matched within tolerance."""
    total = 0.0 + 0.0j
    for k, a in psi.terms:
        for q, b in phi.terms:
            if k.matches(q):
                total += np.vdot(a, b)
    return complex(total)
