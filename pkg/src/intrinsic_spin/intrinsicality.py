r"""Executable intrinsicality criteria.

Classical side: a property :math:`A(v, \tau, y)` measured on the hyperplane
:math:`x\cdot v = -\tau` through the point y. It is observer independent
when both first-order constraints hold,

.. math::

    (\partial_{y^c} + v_c v^d \partial_{y^d}) A = 0, \qquad
    (\partial_{v^c} + v_c v^d \partial_{v^d} - (y_c - \tau v_c)\partial_\tau) A = 0,

and then A reduces to a constant. The checkers below evaluate these residuals
by central finite differences. Derivatives along v are taken only in
directions tangent to the unit hyperboloid, each trial point renormalized
back onto it.

Quantum side: an observer-indexed operator family A(v) is intrinsic when its
expectation values agree between observers related by a Lorentz
transformation, with the state transformed by the Wigner representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.stats import qmc

from . import minkowski as mk
from .errors import NonFiniteEvaluation, OrthogonalityViolated
from .poincare_rep import MomentumSpinState, OnShellMomentum, boost_state, expectation
from .report import CheckReport
from .spin_algebra import angular_momentum_matrices, as_spin
from .spin_observables import ObserverFrame, intrinsic_spin_tensor, scalar_contraction

DEFAULT_STEP = 1e-4
DEFAULT_TOL = 1e-6
QUANTUM_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-9

Sample = tuple[np.ndarray, float, np.ndarray]


@dataclass(frozen=True)
class ClassicalProperty:
    """A real, vector-valued property A(v, tau, y) with ``component_count`` outputs."""

    evaluator: Callable[[np.ndarray, float, np.ndarray], Sequence[float]]
    component_count: int = 1
    name: str = "property"

    def __call__(self, v, tau, y) -> np.ndarray:
        out = np.atleast_1d(np.asarray(self.evaluator(v, tau, y), dtype=float))
        if out.shape != (self.component_count,):
            raise ValueError(f"{self.name}: expected {self.component_count} components, got shape {out.shape}")
        if not np.all(np.isfinite(out)):
            raise NonFiniteEvaluation(f"{self.name} returned non-finite values at v={v}, tau={tau}, y={y}")
        return out


@dataclass(frozen=True)
class SamplingSpec:
    """Scrambled Halton samples of (v, tau, y).

    v is drawn from a box of rapidity vectors with |chi| <= ``max_rapidity``;
    tau and the components of y are drawn from their ranges, after which y is
    moved along v onto the hyperplane y.v = -tau.
    """

    n: int = 64
    seed: int = 0
    max_rapidity: float = 2.0
    tau_range: tuple[float, float] = (-1.0, 1.0)
    y_range: tuple[float, float] = (-1.0, 1.0)

    def unit_points(self, dims: int) -> np.ndarray:
        return qmc.Halton(d=dims, scramble=True, seed=self.seed).random(self.n)

    def velocities(self) -> list[np.ndarray]:
        u = self.unit_points(3)
        half = self.max_rapidity / np.sqrt(3.0)
        return [mk.boost(half * (2 * row - 1)) @ np.array([1.0, 0.0, 0.0, 0.0]) for row in u]

    def draw(self) -> list[Sample]:
        u = self.unit_points(8)
        half = self.max_rapidity / np.sqrt(3.0)
        t_lo, t_hi = self.tau_range
        y_lo, y_hi = self.y_range
        out = []
        for row in u:
            v = mk.boost(half * (2 * row[:3] - 1)) @ np.array([1.0, 0.0, 0.0, 0.0])
            tau = t_lo + (t_hi - t_lo) * row[3]
            y = y_lo + (y_hi - y_lo) * row[4:]
            y = y + (mk.minkowski_dot(y, v) + tau) * v
            out.append((v, float(tau), y))
        return out


def _samples(samples) -> list[Sample]:
    if isinstance(samples, SamplingSpec):
        return samples.draw()
    return [(np.asarray(v, dtype=float), float(tau), np.asarray(y, dtype=float)) for v, tau, y in samples]


def _sample_inputs(v, tau, y) -> dict:
    return {"v": list(map(float, v)), "tau": float(tau), "y": list(map(float, y))}


def _normalize_velocity(w: np.ndarray) -> np.ndarray:
    return w / np.sqrt(-mk.minkowski_dot(w, w))


def orthonormal_complement(v: np.ndarray) -> np.ndarray:
    """Three spacelike unit vectors (rows) orthogonal to unit timelike v and to each other."""
    v = _normalize_velocity(np.asarray(v, dtype=float))
    return mk.standard_boost(v, 1.0)[:, 1:].T


def translation_residual(A: ClassicalProperty, v, tau, y, h: float = DEFAULT_STEP) -> float:
    """max over components and c of |(d/dy^c + v_c v^d d/dy^d) A|."""
    grad = np.empty((4, A.component_count))
    for c in range(4):
        e = np.zeros(4)
        e[c] = h
        grad[c] = (A(v, tau, y + e) - A(v, tau, y - e)) / (2 * h)
    v_low = mk.lower(v)
    projected = grad + np.outer(v_low, v @ grad)
    return float(np.max(np.abs(projected)))


def hyperplane_residual(A: ClassicalProperty, v, tau, y, h: float = DEFAULT_STEP) -> float:
    """max over components and c of |(d/dv^c + v_c v^d d/dv^d - (y_c - tau v_c) d/dtau) A|.

    The projected v-gradient is assembled from derivatives along an
    orthonormal basis of the plane orthogonal to v.
    """
    basis = orthonormal_complement(v)
    projected = np.zeros((4, A.component_count))
    for e in basis:
        directional = (A(_normalize_velocity(v + h * e), tau, y)
                       - A(_normalize_velocity(v - h * e), tau, y)) / (2 * h)
        projected += np.outer(mk.lower(e), directional)
    d_tau = (A(v, tau + h, y) - A(v, tau - h, y)) / (2 * h)
    projected -= np.outer(mk.lower(y) - tau * mk.lower(v), d_tau)
    return float(np.max(np.abs(projected)))


def translation_invariance_check(A: ClassicalProperty, samples=SamplingSpec(), h: float = DEFAULT_STEP,
                                 tol: float = DEFAULT_TOL) -> CheckReport:
    rows = [(_sample_inputs(v, tau, y), translation_residual(A, v, tau, y, h)) for v, tau, y in _samples(samples)]
    return CheckReport.from_samples("translation_invariance", rows, tol, property=A.name, h=h)


def hyperplane_invariance_check(A: ClassicalProperty, samples=SamplingSpec(), h: float = DEFAULT_STEP,
                                tol: float = DEFAULT_TOL) -> CheckReport:
    rows = [(_sample_inputs(v, tau, y), hyperplane_residual(A, v, tau, y, h)) for v, tau, y in _samples(samples)]
    return CheckReport.from_samples("hyperplane_invariance", rows, tol, property=A.name, h=h)


def intrinsic_check(A: ClassicalProperty, samples=SamplingSpec(), h: float = DEFAULT_STEP,
                    tol: float = DEFAULT_TOL) -> CheckReport:
    """Both differential constraints plus the spread of A over all samples.

    A sample's residual is the larger of its two constraint residuals and
    its deviation from the value of A at the first sample.
    """
    pts = _samples(samples)
    reference = A(*pts[0])
    rows = []
    stage = {"translation": 0.0, "hyperplane": 0.0, "direct_variation": 0.0}
    for v, tau, y in pts:
        t = translation_residual(A, v, tau, y, h)
        o = hyperplane_residual(A, v, tau, y, h)
        d = float(np.max(np.abs(A(v, tau, y) - reference)))
        stage = {"translation": max(stage["translation"], t),
                 "hyperplane": max(stage["hyperplane"], o),
                 "direct_variation": max(stage["direct_variation"], d)}
        rows.append((_sample_inputs(v, tau, y), max(t, o, d)))
    failed = [name for name, r in stage.items() if not r <= tol]
    return CheckReport.from_samples("intrinsic", rows, tol, property=A.name, h=h,
                                    stage_residuals=stage, failed_stages=failed)


def threevector_nogo_check(A: Callable[[np.ndarray], Sequence[float]], samples=SamplingSpec(),
                           tol: float = DEFAULT_TOL) -> CheckReport:
    """Falsifier for 3-vector (v-orthogonal four-vector) candidates.

    For each sampled four-velocity v, checks |A(v).v| (must vanish, else
    :class:`OrthogonalityViolated`), the invariance gap ||A(v) - A(v_0)||
    relative to the first sample, and the contraction |A(v).e| with every
    unit e orthogonal to v from an orthonormal basis. An intrinsic 3-vector
    must pass both, and then it is null: its Minkowski norm is bounded by
    ``kappa * tol`` with ``kappa = sqrt(3)``, reported alongside the largest
    norm actually observed.
    """
    if isinstance(samples, SamplingSpec):
        velocities = samples.velocities()
    else:
        velocities = [np.asarray(v, dtype=float) for v in samples]
    a0 = None
    rows = []
    invariance = contraction = max_norm = 0.0
    for v in velocities:
        a = np.asarray(A(v), dtype=float)
        if a.shape != (4,) or not np.all(np.isfinite(a)):
            raise NonFiniteEvaluation(f"candidate returned {a!r} at v={v}")
        ortho = abs(mk.minkowski_dot(a, v))
        if ortho > ORTHOGONALITY_TOL * max(1.0, float(np.abs(a).max()) * float(np.abs(v).max())):
            raise OrthogonalityViolated(f"A(v).v = {ortho:.3e} at v={v}")
        if a0 is None:
            a0 = a
        gap = float(np.max(np.abs(a - a0)))
        contract = max(abs(mk.minkowski_dot(a, e)) for e in orthonormal_complement(v))
        norm = float(np.sqrt(max(mk.minkowski_dot(a, a), 0.0)))
        invariance, contraction, max_norm = max(invariance, gap), max(contraction, contract), max(max_norm, norm)
        rows.append(({"v": list(map(float, v)), "A": a.tolist()}, max(gap, contract)))
    return CheckReport.from_samples(
        "threevector_nogo", rows, tol,
        invariance_residual=invariance,
        contraction_residual=contraction,
        max_norm=max_norm,
        kappa=float(np.sqrt(3.0)),
        theorem="an observer-independent four-vector orthogonal to every four-velocity vanishes",
    )


# Observer-indexed family: ObserverFrame -> (OnShellMomentum -> (d, d) matrix).
ObserverFamily = Callable[[ObserverFrame], Callable[[OnShellMomentum], np.ndarray]]


def quantum_intrinsicality_check(family: ObserverFamily, psi: MomentumSpinState,
                                 boosts: Iterable[np.ndarray], tol: float = QUANTUM_TOL,
                                 name: str = "quantum_intrinsicality") -> CheckReport:
    """Compare <psi|A(v_lab)|psi> with <U(L)psi|A(L v_lab)|U(L)psi> for every L.

    The family receives the observer as an :class:`ObserverFrame` whose
    tetrad is the lab tetrad carried by L.
    """
    lab = ObserverFrame.lab()
    lhs = expectation(psi, family(lab))
    rows = []
    for i, Lam in enumerate(boosts):
        Lam = np.asarray(Lam, dtype=float)
        rhs = expectation(boost_state(Lam, psi), family(ObserverFrame.from_lorentz(Lam)))
        rows.append(({"index": i, "lorentz": Lam.tolist(), "lhs": lhs.real, "rhs": rhs.real,
                      "imag_lhs": lhs.imag, "imag_rhs": rhs.imag}, abs(lhs - rhs)))
    return CheckReport.from_samples(name, rows, tol)


def tensor_contraction_family(s, c: np.ndarray) -> ObserverFamily:
    """c_{mu nu} S^{mu nu} with c given by its lab-tetrad components and carried by each tetrad."""
    c = np.asarray(c, dtype=float)

    def family(frame: ObserverFrame):
        E = frame.tetrad
        c_frame = E @ c @ E.T

        def sector(p: OnShellMomentum) -> np.ndarray:
            return scalar_contraction(c_frame, intrinsic_spin_tensor(s, p))

        return sector

    return family


def wigner_component_family(s, axis) -> ObserverFamily:
    """n.S with the same matrix in every sector and for every observer."""
    matrix = np.tensordot(np.asarray(axis, dtype=float), angular_momentum_matrices(s), axes=1)

    def family(frame: ObserverFrame):
        return lambda p: matrix

    return family


def identity_family(s) -> ObserverFamily:
    eye = np.eye(as_spin(s).dim, dtype=complex)

    def family(frame: ObserverFrame):
        return lambda p: eye

    return family
