import numpy as np
import pytest

from intrinsic_spin import intrinsicality as it
from intrinsic_spin import minkowski as mk
from intrinsic_spin.errors import NonFiniteEvaluation, OrthogonalityViolated
from intrinsic_spin.poincare_rep import MomentumSpinState, OnShellMomentum
from intrinsic_spin.spin_algebra import SpinValue, angular_momentum_matrices

from conftest import SQ2

K = np.array([0.5, 1.0, -2.0, 0.25])
LAB_V = np.array([1.0, 0.0, 0.0, 0.0])
Y0 = np.array([0.3, 0.5, -0.7, 0.1])
TAU0 = 0.3  # y.v = -0.3, so Y0 lies on the hyperplane
SAMPLING = it.SamplingSpec(n=24, seed=3)

# Rest spin-x state under a rapidity-1 y boost: the Wigner rotation of a rest
# momentum under a pure boost is the identity, so the constant S_z family
# sees no change at all.
LITERAL_WITNESS_GAP = 0.0
# p = (0,0,1), spin-y state, same boost: Wigner angle tan(t/2) = tanh(asinh(1)/2) tanh(1/2),
# rotation about x, so <S_z> moves from 0 to sin(t)/2.
SUPPLEMENTARY_WITNESS_GAP = 0.18464967126173704


def dot(a, b):
    return mk.minkowski_dot(a, b)


def wedge(v, tau, y):
    T = np.outer(y, K) - np.outer(K, y)
    return T[np.triu_indices(4, 1)]


def test_sampling_is_on_hyperplane_and_deterministic():
    pts = SAMPLING.draw()
    for v, tau, y in pts:
        assert dot(v, v) == pytest.approx(-1.0)
        assert v[0] > 0
        assert dot(y, v) == pytest.approx(-tau, abs=1e-12)
    again = it.SamplingSpec(n=24, seed=3).draw()
    assert all(np.array_equal(a[2], b[2]) for a, b in zip(pts, again))
    assert not np.array_equal(pts[0][2], it.SamplingSpec(n=24, seed=4).draw()[0][2])


def test_orthonormal_complement():
    v = mk.boost([0.4, -1.0, 0.2]) @ LAB_V
    E = it.orthonormal_complement(v)
    for i, e in enumerate(E):
        assert dot(e, v) == pytest.approx(0.0, abs=1e-12)
        for j, f in enumerate(E):
            assert dot(e, f) == pytest.approx(float(i == j), abs=1e-12)


@pytest.mark.parametrize("value", [1.0, 0.938])
def test_constants_pass_both_stages(value):
    A = it.ClassicalProperty(lambda v, tau, y: value, 1, "c")
    assert it.translation_invariance_check(A, SAMPLING).max_residual <= 1e-12
    assert it.hyperplane_invariance_check(A, SAMPLING).passed
    assert it.intrinsic_check(A, SAMPLING).passed


def test_wedge_translation_residual_pinned():
    A = it.ClassicalProperty(wedge, 6, "y^k")
    # projected gradient at the lab observer keeps d/dy^i only; largest entry is |k^3| = 2
    assert it.translation_residual(A, LAB_V, TAU0, Y0) == pytest.approx(2.0, rel=1e-8)
    rep = it.translation_invariance_check(A, SAMPLING)
    assert not rep.passed


def test_v_dot_k_hyperplane_residual_pinned():
    A = it.ClassicalProperty(lambda v, tau, y: dot(v, K), 1, "v.k")
    # projected gradient equals k projected on v-perp; at the lab that is (0, k1, k2, k3)
    assert it.hyperplane_residual(A, LAB_V, TAU0, Y0) == pytest.approx(2.0, rel=1e-6)
    v = mk.boost([0.3, 0.2, -0.5]) @ LAB_V
    expected = np.max(np.abs(mk.lower(K + dot(v, K) * v)))
    assert it.hyperplane_residual(A, v, TAU0, Y0) == pytest.approx(expected, rel=1e-6)
    assert not it.hyperplane_invariance_check(A, SAMPLING).passed


def test_y_dot_y_fails_translation_stage():
    A = it.ClassicalProperty(lambda v, tau, y: dot(y, y), 1, "y.y")
    assert it.translation_residual(A, LAB_V, TAU0, Y0) == pytest.approx(1.4, rel=1e-8)
    rep = it.intrinsic_check(A, SAMPLING)
    assert not rep.passed
    assert "translation" in rep.metadata["failed_stages"]


def test_energy_like_property_fails():
    A = it.ClassicalProperty(lambda v, tau, y: v[0], 1, "v0")
    rep = it.intrinsic_check(A, SAMPLING)
    assert not rep.passed
    assert "direct_variation" in rep.metadata["failed_stages"]
    assert "hyperplane" in rep.metadata["failed_stages"]


def test_non_finite_property_raises():
    A = it.ClassicalProperty(lambda v, tau, y: np.nan, 1, "nan")
    with pytest.raises(NonFiniteEvaluation):
        it.translation_invariance_check(A, SAMPLING)


def test_finite_difference_error_is_second_order():
    A = it.ClassicalProperty(lambda v, tau, y: np.sin(tau + dot(v, y)), 1, "sin")
    for check in (it.translation_invariance_check, it.hyperplane_invariance_check):
        r1 = check(A, SAMPLING, h=1e-4).max_residual
        r2 = check(A, SAMPLING, h=5e-5).max_residual
        assert 3.0 <= r1 / r2 <= 5.0


def test_nogo_zero_vector_passes():
    rep = it.threevector_nogo_check(lambda v: np.zeros(4), SAMPLING)
    assert rep.passed
    assert rep.metadata["max_norm"] == 0.0


def test_nogo_projected_vector_fails_invariance():
    def A(v):
        return K + dot(v, K) * v

    v2 = mk.boost_along([0, 1, 0], 1.0) @ LAB_V
    rep = it.threevector_nogo_check(A, [LAB_V, v2])
    expected_gap = np.max(np.abs(A(v2) - A(LAB_V)))
    assert rep.metadata["invariance_residual"] == pytest.approx(expected_gap)
    # v2.k = -(k0 cosh 1 - k2 sinh 1) = -g; the time component moves by k0 - g cosh 1
    g = 0.5 * np.cosh(1) + 2 * np.sinh(1)
    assert expected_gap == pytest.approx(max(abs(0.5 - g * np.cosh(1)), abs(g * np.sinh(1))))
    assert not rep.passed


def test_nogo_constant_vector_fails_contraction():
    k = np.array([0.0, 0.0, 0.0, 1.0])
    vs = [mk.boost([a, b, 0.0]) @ LAB_V for a, b in [(0, 0), (0.5, 0.1), (-0.3, 0.8)]]
    rep = it.threevector_nogo_check(lambda v: k, vs)
    assert rep.metadata["invariance_residual"] == 0.0
    assert rep.metadata["contraction_residual"] == pytest.approx(1.0)
    assert not rep.passed


def test_nogo_rejects_non_orthogonal():
    with pytest.raises(OrthogonalityViolated):
        it.threevector_nogo_check(lambda v: K, SAMPLING)


def spin_state(axis, momentum):
    S = angular_momentum_matrices("1/2")
    _, vecs = np.linalg.eigh(S[axis])
    return MomentumSpinState.single("1/2", momentum, vecs[:, -1])


BOOST_Y = mk.boost_along([0, 1, 0], 1.0)


def test_literal_wigner_witness_value():
    psi = spin_state(0, OnShellMomentum.rest())
    rep = it.quantum_intrinsicality_check(it.wigner_component_family("1/2", [0, 0, 1]), psi, [BOOST_Y])
    assert rep.max_residual == pytest.approx(LITERAL_WITNESS_GAP, abs=1e-15)


def test_supplementary_wigner_witness_matches_angle_oracle():
    psi = spin_state(1, OnShellMomentum(1.0, (0.0, 0.0, 1.0)))
    rep = it.quantum_intrinsicality_check(it.wigner_component_family("1/2", [0, 0, 1]), psi, [BOOST_Y])
    theta = 2 * np.arctan(np.tanh(np.arcsinh(1.0) / 2) * np.tanh(0.5))
    assert rep.max_residual == pytest.approx(np.sin(theta) / 2, abs=1e-12)
    assert rep.max_residual == pytest.approx(SUPPLEMENTARY_WITNESS_GAP, abs=1e-12)
    assert not rep.passed


@pytest.mark.parametrize("s", ["1/2", "1", "3/2"])
def test_contraction_family_is_intrinsic(s):
    rng = np.random.default_rng(8)
    d = SpinValue.of(s).dim
    terms = [(OnShellMomentum(1.0, tuple(rng.normal(size=3))), rng.normal(size=d) + 1j * rng.normal(size=d))
             for _ in range(3)]
    psi = MomentumSpinState.from_terms(s, terms)
    boosts = [BOOST_Y, mk.rotation([1, 1, 0], 0.4) @ mk.boost([0.3, -1.1, 0.6])]
    for c in (mk.antisym_tensor(t01=1.0), mk.antisym_tensor(t12=1.0), mk.antisym_tensor(*rng.uniform(-1, 1, 6))):
        rep = it.quantum_intrinsicality_check(it.tensor_contraction_family(s, c), psi, boosts)
        assert rep.passed, rep.max_residual


def test_identity_family_is_exact():
    psi = spin_state(0, OnShellMomentum(1.0, (0.3, 0.1, 0.0)))
    rep = it.quantum_intrinsicality_check(it.identity_family("1/2"), psi, [BOOST_Y, mk.boost([1, 1, 1])])
    assert rep.max_residual <= 1e-14
