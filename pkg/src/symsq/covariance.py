"""Covariance-matrix entanglement criteria for two-qubit and collective states.

The central object for a symmetric pair state is C = T - s s^T: the state
is entangled exactly when C has a negative eigenvalue, and this is
equivalent to the partial-transpose test.  The equivalence is verified
constructively through a basis change to the angular-momentum basis
followed by a congruence that block-diagonalizes the partially transposed
matrix into (1/2) diag(T - s s^T, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ChainMismatch, InvalidN, NonUnitVector, NotSymmetricState
from .numerics import hermitian_eigenvalues, sym3_eigen
from .states import (
    SymmetricTwoQubitState,
    TwoQubitState,
    partial_transpose,
    rho_from_bloch,
)

# Product basis -> {|1,1>, |1,0>, |1,-1>, |0,0>}.
_SQ2 = np.sqrt(2.0)
U_ANGULAR = np.array(
    [
        [1, 0, 0, 0],
        [0, 1 / _SQ2, 1 / _SQ2, 0],
        [0, 0, 0, 1],
        [0, 1 / _SQ2, -1 / _SQ2, 0],
    ],
    dtype=complex,
)

# Angular-momentum basis -> the real combinations {|X>, |Y>, |Z>, |0,0>}
# in which the partially transposed symmetric state becomes the real
# bordered matrix (1/2) [[T, s], [s^T, 1]].
U_PRIME = (1 / _SQ2) * np.array(
    [
        [-1, 0, 1, 0],
        [-1j, 0, -1j, 0],
        [0, _SQ2, 0, 0],
        [0, 0, 0, _SQ2],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class CovarianceBlocks:
    A: np.ndarray  # I - s s^T
    B: np.ndarray  # I - r r^T
    C: np.ndarray  # T - s r^T


@dataclass(frozen=True)
class BarInvariants:
    bar1: float  # det C
    bar2: float  # Tr C
    bar3: float  # Tr C^2
    bar4: float  # (bar2^2 - bar3)/2
    entangled: bool  # bar1 < 0 or bar4 < 0


@dataclass(frozen=True)
class CollectiveCriterion:
    N: int
    S: np.ndarray           # <J> = N s / 2
    Vn: np.ndarray          # collective covariance matrix
    witness_matrix: np.ndarray  # Vn + S S^T / N
    min_eig: float
    entangled: bool         # min_eig < N/4


@dataclass(frozen=True)
class ChainDiagnostics:
    bordered_deviation: float   # vs (1/2) [[T, s],[s^T, 1]]
    block_deviation: float      # vs (1/2) diag(T - ss^T, 1) after congruence
    negatives_pt: int
    negatives_block: int
    inertia_match: bool


def covariance_blocks(state: TwoQubitState) -> CovarianceBlocks:
    s, r, t = state.s, state.r, state.T
    return CovarianceBlocks(
        A=np.eye(3) - np.outer(s, s),
        B=np.eye(3) - np.outer(r, r),
        C=t - np.outer(s, r),
    )


def _require_symmetric(state):
    if not isinstance(state, SymmetricTwoQubitState):
        raise NotSymmetricState("operation requires a symmetric two-qubit state")


def c_matrix(state: SymmetricTwoQubitState) -> np.ndarray:
    _require_symmetric(state)
    return state.T - np.outer(state.s, state.s)


def c_negativity_test(state: SymmetricTwoQubitState, tol: float = 1e-9):
    """(min eigenvalue of C, entangled flag); exact PPT-equivalent test."""
    w, _ = sym3_eigen(c_matrix(state))
    min_eig = float(w[0])
    return min_eig, min_eig < -tol


def ppt_equivalence_chain(state: SymmetricTwoQubitState) -> ChainDiagnostics:
    """Verify the constructive PPT <-> C < 0 chain step by step."""
    _require_symmetric(state)
    s, t = state.s, state.T
    pt = partial_transpose(state)
    # Composing the transpose with a pi rotation of the second qubit about
    # axis 2 flips the sign of every sigma_2i; the composite is unitarily
    # equivalent to the bare partial transpose (same spectrum) and is the
    # form the basis-change chain diagonalizes.
    pt_rotated = rho_from_bloch(s, -s, -t)

    u = U_PRIME @ U_ANGULAR
    bordered = u @ pt_rotated @ u.conj().T
    target = 0.5 * np.block([[t, s.reshape(3, 1)], [s.reshape(1, 3), np.ones((1, 1))]])
    dev_bordered = float(np.max(np.abs(bordered - target)))

    ell = np.eye(4)
    ell[:3, 3] = -s
    block = ell @ np.real(bordered) @ ell.T
    block_target = np.zeros((4, 4))
    block_target[:3, :3] = 0.5 * (t - np.outer(s, s))
    block_target[3, 3] = 0.5
    dev_block = float(np.max(np.abs(block - block_target)))
    if max(dev_bordered, dev_block) > 1e-10:
        raise ChainMismatch(
            f"transformation chain deviates: bordered {dev_bordered:g}, block {dev_block:g}")

    # Congruence preserves inertia, not the spectrum: compare counts of
    # negative eigenvalues on the two ends of the chain.
    w_pt = hermitian_eigenvalues(pt)
    w_block = hermitian_eigenvalues(block + 0j)
    neg_pt = int(np.sum(w_pt < -1e-11))
    neg_block = int(np.sum(w_block < -1e-11))
    return ChainDiagnostics(
        bordered_deviation=dev_bordered,
        block_deviation=dev_block,
        negatives_pt=neg_pt,
        negatives_block=neg_block,
        inertia_match=neg_pt == neg_block,
    )


def bar_invariants(state: SymmetricTwoQubitState, tol: float = 1e-9) -> BarInvariants:
    c = c_matrix(state)
    bar1 = float(np.linalg.det(c))
    bar2 = float(np.trace(c))
    bar3 = float(np.trace(c @ c))
    bar4 = 0.5 * (bar2 * bar2 - bar3)
    return BarInvariants(
        bar1=bar1, bar2=bar2, bar3=bar3, bar4=bar4,
        entangled=bar1 < -tol or bar4 < -tol,
    )


def collective_criterion(s, T, N: int, tol: float = 1e-9) -> CollectiveCriterion:
    """Pairwise-entanglement witness from collective first/second moments."""
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise InvalidN("N must be an integer >= 2")
    s = np.asarray(s, dtype=float)
    t = np.asarray(T, dtype=float)
    c = t - np.outer(s, s)
    big_s = 0.5 * N * s
    vn = 0.25 * N * (np.eye(3) - np.outer(s, s) + (N - 1) * c)
    witness = vn + np.outer(big_s, big_s) / N
    w, _ = sym3_eigen(witness)
    min_eig = float(w[0])
    return CollectiveCriterion(
        N=int(N), S=big_s, Vn=vn, witness_matrix=witness,
        min_eig=min_eig, entangled=min_eig < N / 4.0 - tol,
    )


def korbicz_witness(s, T, k_hat, tol: float = 1e-9) -> float:
    """k^T (T - s s^T) k along the unit direction k_hat.

    A negative value certifies the generalized spin-squeezing inequality
    4 <Delta J_k^2>/N < 1 - 4 <J_k>^2/N^2; the exact minimum over
    directions is the least eigenvalue of C.
    """
    k = np.asarray(k_hat, dtype=float)
    if abs(np.linalg.norm(k) - 1.0) > max(tol, 1e-9):
        raise NonUnitVector("k_hat must be a unit vector")
    s = np.asarray(s, dtype=float)
    t = np.asarray(T, dtype=float)
    return float(k @ (t - np.outer(s, s)) @ k)


def korbicz_minimum(s, T) -> float:
    """Exact minimization of korbicz_witness over unit directions."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(T, dtype=float)
    w, _ = sym3_eigen(t - np.outer(s, s))
    return float(w[0])
