r"""Spin coupling to a constant classical electromagnetic field.

The interaction Hamiltonian in a momentum sector p is

.. math:: H_I = -\frac{\alpha}{2} F^{ab} S_{ab}(p),

built from the intrinsic spin tensor. Two rewritings are provided and are
identical to it sector by sector: the rest-frame magnetic form
:math:`-\alpha B^a(P) W_a / m` with :math:`B_a(P) = {}^*F_{ab}P^b/m`, and the
observer (lab) frame form in terms of E and B. The small-momentum limit keeps
the full electric term :math:`(\mathbf E\times\mathbf p)\cdot\mathbf S/m`, twice
the Thomas-corrected value; no Thomas correction is applied here.

Field tensor convention: :math:`F^{0i} = E_i`, :math:`F^{ij} = \varepsilon_{ijk}B_k`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import minkowski as mk
from .errors import NotHermitian
from .report import CheckReport
from .poincare_rep import OnShellMomentum, pauli_lubanski
from .spin_algebra import angular_momentum_matrices
from .spin_observables import contract_vector, intrinsic_spin_tensor

# Sign of F^{0i} relative to E_i. Fixed by matching the lab-frame form; the
# test-suite checks that flipping it breaks that match.
ELECTRIC_SIGN = 1.0

HERMITIAN_TOL = 1e-9


@dataclass(frozen=True)
class EMField:
    E: tuple[float, float, float] = (0.0, 0.0, 0.0)
    B: tuple[float, float, float] = (0.0, 0.0, 0.0)
    alpha: float = 1.0

    def __post_init__(self):
        E = tuple(float(x) for x in self.E)
        B = tuple(float(x) for x in self.B)
        if len(E) != 3 or len(B) != 3:
            raise ValueError("E and B must have three components")
        if not (np.all(np.isfinite(E)) and np.all(np.isfinite(B)) and np.isfinite(self.alpha)):
            raise ValueError("field components must be finite")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "alpha", float(self.alpha))


def field_tensor(f: EMField, electric_sign: float | None = None) -> np.ndarray:
    """Contravariant F^{ab} (4x4, antisymmetric)."""
    if electric_sign is None:
        electric_sign = ELECTRIC_SIGN
    E = electric_sign * np.asarray(f.E)
    Bx, By, Bz = f.B
    return mk.antisym_tensor(t01=E[0], t02=E[1], t03=E[2], t12=Bz, t13=-By, t23=Bx)


def field_from_tensor(F: np.ndarray, alpha: float = 1.0, electric_sign: float | None = None) -> EMField:
    """Inverse of :func:`field_tensor`."""
    if electric_sign is None:
        electric_sign = ELECTRIC_SIGN
    F = np.asarray(F, dtype=float)
    E = electric_sign * F[0, 1:]
    B = (F[2, 3], F[3, 1], F[1, 2])
    return EMField(tuple(E), B, alpha)


def field_invariants(F: np.ndarray) -> tuple[float, float]:
    """Return (F_ab F^ab, F_ab *F^ab); the first is 2(|B|^2 - |E|^2)."""
    F = np.asarray(F, dtype=float)
    F_low = mk.lower_pair(F)
    dual_up = mk.raise_pair(mk.hodge_dual(F))
    return float(np.sum(F_low * F)), float(np.sum(F_low * dual_up))


def _as_tensor(field) -> tuple[np.ndarray, float]:
    if isinstance(field, EMField):
        return field_tensor(field), field.alpha
    F, alpha = field
    return np.asarray(F, dtype=float), float(alpha)


def interaction_hamiltonian(s, p: OnShellMomentum, field) -> np.ndarray:
    """H_I = -alpha F^{ab} S_{ab} / 2.

    ``field`` is an :class:`EMField` or a ``(F, alpha)`` pair with F the
    contravariant field tensor.
    """
    F, alpha = _as_tensor(field)
    S_low = intrinsic_spin_tensor(s, p).lowered
    return -0.5 * alpha * np.tensordot(F, S_low, axes=([0, 1], [0, 1]))


def rest_frame_field(p: OnShellMomentum, field) -> np.ndarray:
    """B_a(P) = *F_{ab} P^b / m, lower index."""
    F, _ = _as_tensor(field)
    return contract_vector(mk.hodge_dual(F), p.four) / p.m


def rest_frame_B_form(s, p: OnShellMomentum, field) -> np.ndarray:
    """-alpha B^a(P) W_a / m."""
    _, alpha = _as_tensor(field)
    B_low = rest_frame_field(p, field)
    W_up = pauli_lubanski(s, p)
    return -alpha * np.tensordot(B_low, W_up, axes=1) / p.m


def lab_frame_form(s, p: OnShellMomentum, f: EMField) -> np.ndarray:
    """-alpha [ (E x P).S / m + (P0/m S_perp + S_par).B ].

    At zero momentum the parallel part is taken as zero, so the form reduces
    to -alpha S.B.
    """
    S = angular_momentum_matrices(s)
    P = p.spatial
    E, B = np.asarray(f.E), np.asarray(f.B)
    electric = np.tensordot(np.cross(E, P), S, axes=1) / p.m
    norm = np.linalg.norm(P)
    if norm == 0.0:
        S_par = np.zeros_like(S)
    else:
        n = P / norm
        S_par = np.multiply.outer(n, np.tensordot(n, S, axes=1))
    S_perp = S - S_par
    magnetic = np.tensordot(B, (p.p0 / p.m) * S_perp + S_par, axes=1)
    return -f.alpha * (electric + magnetic)


def nr_hamiltonian(s, p: OnShellMomentum, f: EMField) -> np.ndarray:
    """Small-momentum form -alpha [ (E x p).S / m + S.B ]."""
    S = angular_momentum_matrices(s)
    E, B = np.asarray(f.E), np.asarray(f.B)
    return -f.alpha * (np.tensordot(np.cross(E, p.spatial), S, axes=1) / p.m + np.tensordot(B, S, axes=1))


def spectrum(H: np.ndarray, tol: float = HERMITIAN_TOL) -> list[float]:
    """Ascending eigenvalues of a Hermitian matrix."""
    H = np.asarray(H)
    if np.max(np.abs(H - H.conj().T), initial=0.0) > tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return [float(x) for x in np.linalg.eigvalsh(0.5 * (H + H.conj().T))]


def electric_coefficient(s, f: EMField, m: float = 1.0, step: float = 1e-3) -> dict:
    """Extract the linear-in-p electric coupling coefficient numerically.

    Evaluates H_I at momenta +-step*n with B switched off and n orthogonal to
    E, takes the central difference dH/dp along n, and projects it onto the
    matrix G = -(E x n).S. The result is compared with alpha/m, and with the
    Thomas-corrected alpha/(2m).
    """
    E = np.asarray(f.E)
    if np.linalg.norm(E) == 0.0:
        E = np.array([1.0, 0.0, 0.0])
    e_hat = E / np.linalg.norm(E)
    trial = np.array([0.0, 0.0, 1.0]) if abs(e_hat[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    n = np.cross(e_hat, trial)
    n /= np.linalg.norm(n)
    probe = EMField(tuple(E), (0.0, 0.0, 0.0), f.alpha)
    H_plus = interaction_hamiltonian(s, OnShellMomentum(m, tuple(step * n)), probe)
    H_minus = interaction_hamiltonian(s, OnShellMomentum(m, tuple(-step * n)), probe)
    dH = (H_plus - H_minus) / (2 * step)
    G = -np.tensordot(np.cross(E, n), angular_momentum_matrices(s), axes=1)
    coefficient = float(np.vdot(G, dH).real / np.vdot(G, G).real)
    expected = f.alpha / m
    return {
        "coefficient": coefficient,
        "expected": expected,
        "thomas_corrected": f.alpha / (2 * m),
        "ratio_to_thomas": coefficient / (f.alpha / (2 * m)) if f.alpha else float("nan"),
        "relative_error": abs(coefficient - expected) / abs(expected) if expected else abs(coefficient),
    }


def nr_limit_check(s, f: EMField, momenta, m: float = 1.0, exponent_range=(1.8, 2.2),
                   coefficient_rtol: float = 0.01) -> CheckReport:
    """Compare H_I with its small-momentum form over a list of spatial momenta.

    The residual ||H_I(p) - H_NR(p)||_max should scale as |p|^2. The report
    is scored against ``tolerance = 1`` with the larger of the electric
    coefficient error in units of ``coefficient_rtol`` and the fitted slope's
    distance from the centre of ``exponent_range`` in units of its
    half-width, so it passes exactly when both lie inside their bands.
    Identically vanishing residuals (no transverse B) leave the slope
    undefined and it is then not scored.
    """
    samples = []
    norms, residuals = [], []
    for q in momenta:
        p = OnShellMomentum(m, tuple(q))
        r = float(np.max(np.abs(interaction_hamiltonian(s, p, f) - nr_hamiltonian(s, p, f))))
        samples.append(({"p": list(p.p)}, r))
        norms.append(float(np.linalg.norm(p.spatial)))
        residuals.append(r)
    norms, residuals = np.array(norms), np.array(residuals)
    fit_mask = (norms > 0) & (residuals > 1e-14)
    exponent = None
    if fit_mask.sum() >= 2:
        exponent = float(np.polyfit(np.log(norms[fit_mask]), np.log(residuals[fit_mask]), 1)[0])
    coeff = electric_coefficient(s, f, m)
    lo, hi = exponent_range
    scores = [coeff["relative_error"] / coefficient_rtol]
    if exponent is not None:
        scores.append(abs(exponent - 0.5 * (lo + hi)) / (0.5 * (hi - lo)))
    return CheckReport(
        check="nr_limit",
        tolerance=1.0,
        max_residual=max(scores),
        samples=samples,
        metadata={
            "scaling_exponent": exponent,
            "exponent_range": [lo, hi],
            "max_hamiltonian_residual": float(residuals.max()) if len(residuals) else 0.0,
            "electric_coefficient": coeff["coefficient"],
            "expected_coefficient": coeff["expected"],
            "coefficient_relative_error": coeff["relative_error"],
            "coefficient_rtol": coefficient_rtol,
            "thomas_corrected_coefficient": coeff["thomas_corrected"],
            "ratio_to_thomas": coeff["ratio_to_thomas"],
        },
    )


def three_form_deviation(s, p: OnShellMomentum, f: EMField) -> float:
    """Largest pairwise ||.||_max difference among the three Hamiltonian forms."""
    forms = [interaction_hamiltonian(s, p, f), rest_frame_B_form(s, p, f), lab_frame_form(s, p, f)]
    return max(float(np.max(np.abs(a - b))) for i, a in enumerate(forms) for b in forms[i + 1:])
