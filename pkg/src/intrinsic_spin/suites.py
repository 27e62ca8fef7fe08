"""Verification suites: each function sweeps one identity and returns a CheckReport."""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import em_coupling as em
from . import intrinsicality as it
from . import minkowski as mk
from .poincare_rep import MomentumSpinState, OnShellMomentum, boost_state, expectation, pauli_lubanski
from .report import CheckReport
from .spin_algebra import angular_momentum_matrices, as_spin, rotation_rep
from .spin_observables import (
    ObserverFrame,
    dual_times_momentum,
    intrinsic_spin_tensor,
    mass_moment,
    reconstruct_tensor,
    sigma_closed_form,
    sigma_vector,
    spin_norm,
    su2_defect,
    tensor_times_momentum,
)


def random_momenta(rng: np.random.Generator, n: int, m: float = 1.0, max_p: float = 10.0) -> list[OnShellMomentum]:
    """Isotropic directions, |p| uniform in [0, max_p * m]."""
    out = []
    for _ in range(n):
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        out.append(OnShellMomentum(m, tuple(rng.uniform(0.0, max_p * m) * d)))
    return out


def random_lorentz(rng: np.random.Generator, max_rapidity: float = 2.0) -> np.ndarray:
    """Rotation (random axis and angle) times a boost with |chi| <= max_rapidity."""
    axis = rng.normal(size=3)
    d = rng.normal(size=3)
    d /= np.linalg.norm(d)
    return mk.rotation(axis, rng.uniform(0.0, np.pi)) @ mk.boost(rng.uniform(0.0, max_rapidity) * d)


def random_antisym(rng: np.random.Generator) -> np.ndarray:
    return mk.antisym_tensor(*rng.uniform(-1.0, 1.0, size=6))


def _p(k: OnShellMomentum) -> dict:
    return {"p": list(k.p), "m": k.m}


def casimir_check(spins: Iterable, momenta: Sequence[OnShellMomentum], tol: float = 1e-9) -> CheckReport:
    """W.p = 0 and W_mu W^mu = m^2 s(s+1) on every sector."""
    rows = []
    for s in spins:
        s = as_spin(s)
        for k in momenta:
            W = pauli_lubanski(s, k)
            wp = np.tensordot(mk.lower(k.four), W, axes=1)
            w2 = np.einsum("aij,ajk->ik", mk.lower(W), W)
            target = k.m ** 2 * s.casimir * np.eye(s.dim)
            rows.append(({"spin": str(s), **_p(k)}, float(max(np.abs(wp).max(), np.abs(w2 - target).max()))))
    return CheckReport.from_samples("casimir", rows, tol)


def tensor_identity_checks(spins: Iterable, momenta: Sequence[OnShellMomentum], tol: float = 1e-9) -> list[CheckReport]:
    """Dual (*S p = W), transversality (S p = 0) and norm (S.S/2 = s(s+1))."""
    dual, trans, norm = [], [], []
    for s in spins:
        s = as_spin(s)
        for k in momenta:
            S = intrinsic_spin_tensor(s, k)
            label = {"spin": str(s), **_p(k)}
            W_low = mk.lower(pauli_lubanski(s, k))
            dual.append((label, float(np.abs(dual_times_momentum(S) - W_low).max())))
            trans.append((label, float(np.abs(tensor_times_momentum(S)).max())))
            norm.append((label, float(np.abs(spin_norm(S) - s.casimir * np.eye(s.dim)).max())))
    return [
        CheckReport.from_samples("dual_identity", dual, tol),
        CheckReport.from_samples("transversality", trans, tol),
        CheckReport.from_samples("spin_norm", norm, tol),
    ]


def covariance_residual(s, Lam: np.ndarray, k: OnShellMomentum) -> float:
    """|| D^dag S(Lam p) D - Lam S(p) Lam^T ||_max."""
    R = mk.wigner_rotation(Lam, k.four, k.m)
    D = rotation_rep(s, R)
    lhs = np.einsum("ij,abjk,kl->abil", D.conj().T, intrinsic_spin_tensor(s, k.transformed(Lam)).components, D)
    rhs = np.einsum("ar,bs,rsij->abij", Lam, Lam, intrinsic_spin_tensor(s, k).components)
    return float(np.abs(lhs - rhs).max())


def covariance_check(cases: Iterable[tuple[object, np.ndarray, OnShellMomentum]], tol: float = 1e-9) -> CheckReport:
    rows = [({"spin": str(as_spin(s)), "lorentz": np.asarray(L).tolist(), **_p(k)}, covariance_residual(s, L, k))
            for s, L, k in cases]
    return CheckReport.from_samples("covariance", rows, tol)


def sigma_closed_form_check(spins: Iterable, momenta: Sequence[OnShellMomentum], tol: float = 1e-10) -> CheckReport:
    lab = ObserverFrame.lab()
    rows = []
    for s in spins:
        for k in momenta:
            S = intrinsic_spin_tensor(s, k)
            rows.append(({"spin": str(as_spin(s)), **_p(k)},
                         float(np.abs(sigma_vector(S, lab) - sigma_closed_form(s, k)).max())))
    return CheckReport.from_samples("sigma_closed_form", rows, tol)


def comoving_su2_check(spins: Iterable, momenta: Sequence[OnShellMomentum], tol: float = 1e-10) -> CheckReport:
    """Sigma in the co-moving frame closes su(2) and M vanishes there."""
    rows = []
    for s in spins:
        for k in momenta:
            S = intrinsic_spin_tensor(s, k)
            frame = ObserverFrame.comoving(k)
            r = max(su2_defect(sigma_vector(S, frame)), float(np.abs(mass_moment(S, frame)).max()))
            rows.append(({"spin": str(as_spin(s)), **_p(k)}, r))
    return CheckReport.from_samples("comoving_su2", rows, tol)


def lab_su2_gap(s, k: OnShellMomentum) -> float:
    return su2_defect(sigma_vector(intrinsic_spin_tensor(s, k), ObserverFrame.lab()))


def reconstruction_check(cases: Iterable[tuple[object, OnShellMomentum, ObserverFrame]], tol: float = 1e-9) -> CheckReport:
    rows = []
    for s, k, frame in cases:
        S = intrinsic_spin_tensor(s, k)
        rebuilt = reconstruct_tensor(sigma_vector(S, frame), mass_moment(S, frame), frame, k)
        rows.append(({"spin": str(as_spin(s)), "tetrad": frame.tetrad.tolist(), **_p(k)},
                     float(np.abs(rebuilt.components - S.components).max())))
    return CheckReport.from_samples("reconstruction", rows, tol)


def em_three_form_check(cases: Iterable[tuple[object, OnShellMomentum, em.EMField]], tol: float = 1e-9) -> CheckReport:
    rows = []
    for s, k, f in cases:
        H = em.interaction_hamiltonian(s, k, f)
        herm = float(np.abs(H - H.conj().T).max())
        rows.append(({"spin": str(as_spin(s)), "E": list(f.E), "B": list(f.B), "alpha": f.alpha, **_p(k)},
                     max(em.three_form_deviation(s, k, f), herm)))
    return CheckReport.from_samples("em_three_form", rows, tol)


def em_frame_consistency_check(cases: Iterable[tuple[MomentumSpinState, np.ndarray, em.EMField]],
                               tol: float = 1e-9) -> CheckReport:
    """<psi|H_I(F)|psi> = <U psi|H_I(L F L^T)|U psi>."""
    rows = []
    for psi, Lam, f in cases:
        F = em.field_tensor(f)
        F_moved = Lam @ F @ Lam.T
        s = psi.spin
        lhs = expectation(psi, lambda k: em.interaction_hamiltonian(s, k, (F, f.alpha)))
        rhs = expectation(boost_state(Lam, psi), lambda k: em.interaction_hamiltonian(s, k, (F_moved, f.alpha)))
        rows.append(({"momenta": [list(k.p) for k in psi.momenta()], "lorentz": Lam.tolist(),
                      "lhs": lhs.real, "rhs": rhs.real}, abs(lhs - rhs)))
    return CheckReport.from_samples("em_frame_consistency", rows, tol)


def nr_momenta(direction, m: float = 1.0, scales=(1e-3, 3e-3, 1e-2, 3e-2)) -> list[tuple[float, float, float]]:
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    return [tuple(x * m * d) for x in scales]


def spin_x_state(s, momentum: OnShellMomentum) -> MomentumSpinState:
    """Single-momentum state with the spinor in the top Sx eigenvector."""
    evals, evecs = np.linalg.eigh(angular_momentum_matrices(s)[0])
    return MomentumSpinState.single(s, momentum, evecs[:, -1])


def random_state(rng: np.random.Generator, s, momenta: Sequence[OnShellMomentum]) -> MomentumSpinState:
    d = as_spin(s).dim
    terms = [(k, rng.normal(size=d) + 1j * rng.normal(size=d)) for k in momenta]
    return MomentumSpinState.from_terms(s, terms)


def contraction_intrinsicality_check(s, states: Sequence[MomentumSpinState], boosts: Sequence[np.ndarray],
                                     tensors: Sequence[np.ndarray], tol: float = 1e-9) -> CheckReport:
    """Quantum intrinsicality of c_{mu nu} S^{mu nu} over every (state, c, boost)."""
    rows = []
    for ci, c in enumerate(tensors):
        family = it.tensor_contraction_family(s, c)
        for si, psi in enumerate(states):
            rep = it.quantum_intrinsicality_check(family, psi, boosts, tol)
            for inputs, r in rep.samples:
                rows.append(({"tensor": ci, "state": si, **inputs}, r))
    return CheckReport.from_samples("quantum_intrinsicality", rows, tol)


def classical_calibration_properties(mass: float = 1.0) -> list[it.ClassicalProperty]:
    """Properties that satisfy both constraints analytically."""
    dot = mk.minkowski_dot
    return [
        it.ClassicalProperty(lambda v, tau, y: 1.0, 1, "constant"),
        it.ClassicalProperty(lambda v, tau, y: mass, 1, "mass"),
        it.ClassicalProperty(lambda v, tau, y: np.exp(0.1 * (tau + dot(v, y))), 1, "exp_hyperplane_offset"),
    ]
