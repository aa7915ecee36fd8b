"""Moment map, spin squeezing, invariant-sign classification."""

import numpy as np
import pytest

from symsq.collective import (
    Branch,
    classify,
    classify_invariants,
    collective_forms,
    moments_from_pair,
    pair_from_moments,
    squeezing,
)
from symsq.covariance import c_negativity_test
from symsq.errors import InvalidN, TraceViolation, ZeroMeanSpin
from symsq.invariants import special_class_invariants, symmetric_six
from symsq.states import (
    SpecialClassState,
    random_special_class,
    random_symmetric_state,
    symmetric_from_special,
)


def test_moment_map_round_trip(rng):
    state = random_symmetric_state(3, rng)
    for n in (2, 3, 7, 40):
        m = moments_from_pair(state.s, state.T, n)
        s, t = pair_from_moments(m)
        assert np.max(np.abs(s - state.s)) < 1e-12
        assert np.max(np.abs(t - state.T)) < 1e-12


def test_moment_map_factors():
    s = np.array([0.0, 0.0, 1.0])
    t = np.diag([0.0, 0.0, 1.0])
    m = moments_from_pair(s, t, 6)
    assert np.allclose(m.j_mean, [0, 0, 3])  # N s / 2
    assert abs(m.j_second[2, 2] - 9.0) < 1e-12  # (N/4)(1 + (N-1))


def test_moment_map_validation(rng):
    state = random_symmetric_state(3, rng)
    with pytest.raises(InvalidN):
        moments_from_pair(state.s, state.T, 1)
    with pytest.raises(TraceViolation):
        moments_from_pair(state.s, 2 * state.T, 4)


def test_squeezing_coherent_state_is_unity(product_state):
    rep = squeezing(product_state.s, product_state.T, 10)
    assert abs(rep.xi_sq - 1.0) < 1e-12
    assert rep.degenerate_direction


def test_squeezing_requires_mean_spin(bell_state):
    with pytest.raises(ZeroMeanSpin):
        squeezing(bell_state.s, bell_state.T, 4)


def test_squeezing_transverse_eigenvalues(rng):
    """t_perp_-/+ are the eigenvalues of T restricted to the plane
    orthogonal to the mean spin."""
    for _ in range(50):
        state = random_symmetric_state(3, rng)
        s0 = np.linalg.norm(state.s)
        if s0 < 0.1:
            continue
        rep = squeezing(state.s, state.T, 5)
        n0 = state.s / s0
        # orthonormal transverse frame
        a = np.eye(3)[np.argmin(np.abs(n0))]
        e1 = np.cross(n0, a)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(n0, e1)
        tp = np.array([[e1 @ state.T @ e1, e1 @ state.T @ e2],
                       [e2 @ state.T @ e1, e2 @ state.T @ e2]])
        w = np.sort(np.linalg.eigvalsh(tp))
        assert abs(rep.t_perp_minus - w[0]) < 1e-10
        assert abs(rep.t_perp_plus - w[1]) < 1e-10
        assert abs(rep.xi_sq - (1 + 4 * rep.t_perp_minus)) < 1e-12


def test_squeezed_iff_i5_negative(rng):
    mismatches = 0
    for _ in range(500):
        state = random_symmetric_state(3, rng)
        inv = symmetric_six(state)
        if inv.I3 < 0.01 or abs(inv.I5) < 1e-8:
            continue
        xi_sq = squeezing(state.s, state.T, 2).xi_sq
        if (xi_sq < 1.0) != (inv.I5 < 0.0):
            mismatches += 1
    assert mismatches == 0


def test_classification_branches(bell_state, product_state):
    assert classify(bell_state).branch is Branch.I3_ZERO_I1_NEGATIVE
    assert classify(product_state).branch is Branch.SEPARABLE_SIGNATURE
    # W-like reduced pair: I4, I5 nonnegative but I4 - I3^2 < 0
    from symsq.models import dicke_pair
    _, inv = dicke_pair(4, 1)
    assert classify_invariants(inv).branch is Branch.I4_POS_COMBO_NEGATIVE


def test_classification_complete_on_special_class(rng):
    """On the special class the four sign tests exactly decide
    entanglement (PPT verdict)."""
    for _ in range(2000):
        p = random_special_class(rng)
        state = symmetric_from_special(p)
        min_eig, entangled = c_negativity_test(state)
        if abs(min_eig) < 1e-7:
            continue
        cls = classify_invariants(special_class_invariants(p))
        assert (cls.branch is not Branch.SEPARABLE_SIGNATURE) == entangled


def test_classification_incomplete_in_general():
    """Regression: outside the special class a symmetric state can be
    entangled (C < 0) while I1, I4, I5, I4 - I3^2 are all positive; the
    sign tests are sufficient conditions only."""
    found = False
    rng = np.random.default_rng(3)
    for _ in range(3000):
        state = random_symmetric_state(3, rng)
        min_eig, entangled = c_negativity_test(state)
        if not entangled or min_eig > -1e-3:
            continue
        inv = symmetric_six(state)
        if (inv.I3 > 1e-3 and inv.I1 > 1e-6 and inv.I4 > 1e-6
                and inv.I5 > 1e-6 and inv.combo_I4_minus_I3sq > 1e-6):
            found = True
            break
    assert found


def test_collective_forms_dual_route(rng):
    for _ in range(100):
        state = random_symmetric_state(3, rng)
        if np.linalg.norm(state.s) < 0.05:
            continue
        inv = symmetric_six(state)
        for n in (2, 4, 9):
            rec = collective_forms(inv, state.s, state.T, n)
            assert rec.max_deviation < 1e-10


def test_collective_forms_requires_mean_spin(bell_state):
    with pytest.raises(ZeroMeanSpin):
        collective_forms(symmetric_six(bell_state), bell_state.s, bell_state.T, 4)
