"""Brute-force symmetric-subspace simulator.

Everything here works directly with the (N+1)-dimensional collective
basis |J = N/2, M> (M descending from N/2), using dense matrices and the
LAPACK eigensolver: an implementation route deliberately disjoint from
the closed forms and the hand-rolled Jacobi kernels it is used to check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .collective import CollectiveMoments, pair_from_moments
from .errors import InvalidN, ParityViolation
from .states import SymmetricTwoQubitState, from_bloch


@dataclass(frozen=True)
class CollectiveState:
    N: int
    amplitudes: np.ndarray  # length N+1, index i <-> M = N/2 - i

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.N + 1,):
            raise InvalidN("amplitude vector must have length N+1")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def m_values(self) -> np.ndarray:
        return self.N / 2.0 - np.arange(self.N + 1)


@dataclass(frozen=True)
class JOperators:
    N: int
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray


@lru_cache(maxsize=None)
def build_j_operators(N: int) -> JOperators:
    """Collective spin matrices in the |J, M> basis, M = N/2 ... -N/2."""
    if not isinstance(N, int) or N < 1:
        raise InvalidN("N must be an integer >= 1")
    j = N / 2.0
    m = j - np.arange(N + 1)
    jp = np.zeros((N + 1, N + 1))
    # J+ |J, M> = sqrt((J - M)(J + M + 1)) |J, M + 1>; raising M moves one
    # index up in the descending-M ordering.
    for i in range(1, N + 1):
        mm = m[i]
        jp[i - 1, i] = np.sqrt((j - mm) * (j + mm + 1.0))
    jm_op = jp.T
    j1 = (jp + jm_op) / 2.0
    j2 = (jp - jm_op) / 2.0j
    j3 = np.diag(m)
    return JOperators(N=N, J1=j1 + 0j, J2=j2, J3=j3 + 0j)


def evolve_ku(N: int, chi_t: float) -> CollectiveState:
    """One-axis twisting exp(-i chi_t J1^2) applied to |J, -J>."""
    if N < 2:
        raise InvalidN("N must be >= 2")
    ops = build_j_operators(N)
    h = np.real(ops.J1 @ ops.J1)
    w, v = np.linalg.eigh(h)
    start = np.zeros(N + 1, dtype=complex)
    start[-1] = 1.0  # M = -N/2
    psi = v @ (np.exp(-1j * chi_t * w) * (v.conj().T @ start))
    return CollectiveState(N=N, amplitudes=psi)


def rotation_pi2_about_2(N: int) -> np.ndarray:
    """Matrix of exp(-i (pi/2) J2) on the collective basis."""
    ops = build_j_operators(N)
    w, v = np.linalg.eigh(ops.J2)
    return v @ np.diag(np.exp(-1j * (np.pi / 2) * w)) @ v.conj().T


def build_atomic_state(N: int, theta: float) -> CollectiveState:
    """Zero eigenstate of the squeezed-bath lowering operator.

    Amplitudes proportional to <J,M| exp(-i pi/2 J2) |J,0> e^(M theta);
    the rotation matrix element is evaluated spectrally, so this route
    shares nothing with the closed-sum coefficient formula it validates.
    """
    if N % 2 != 0 or N < 2:
        raise ParityViolation("the steady state exists for even N >= 2")
    rot = rotation_pi2_about_2(N)
    d_col = np.real(rot[:, N // 2])  # overlap with M = 0
    m = N / 2.0 - np.arange(N + 1)
    amp = d_col * np.exp(m * theta)
    norm = np.linalg.norm(amp)
    return CollectiveState(N=N, amplitudes=amp / norm)


def build_dicke_state(N: int, M) -> CollectiveState:
    if abs(2 * M - round(2 * M)) > 0 or (N + round(2 * M)) % 2 != 0:
        raise ParityViolation("N + 2M must be even")
    if abs(M) > N / 2.0:
        raise ParityViolation("|M| must not exceed N/2")
    amp = np.zeros(N + 1, dtype=complex)
    amp[int(round(N / 2.0 - M))] = 1.0
    return CollectiveState(N=N, amplitudes=amp)


def moments_of(state: CollectiveState) -> CollectiveMoments:
    ops = build_j_operators(state.N)
    psi = state.amplitudes
    js = (ops.J1, ops.J2, ops.J3)
    j_mean = np.array([np.real(psi.conj() @ (op @ psi)) for op in js])
    j_second = np.empty((3, 3))
    vecs = [op @ psi for op in js]
    for i in range(3):
        for k in range(i, 3):
            val = np.real(np.vdot(vecs[i], vecs[k]))
            j_second[i, k] = val
            j_second[k, i] = val
    return CollectiveMoments(N=state.N, j_mean=j_mean, j_second=j_second)


def pair_state_of(state: CollectiveState) -> SymmetricTwoQubitState:
    """Two-qubit reduced state of any pair, via the moment inversion."""
    if state.N < 2:
        raise InvalidN("pair reduction needs N >= 2")
    s, t = pair_from_moments(moments_of(state))
    return from_bloch(s, s, t, symmetric=True)


# ----------------------------------------------------------------------
# Full 2^N-dimensional cross-check utilities (test-scale N <= 6 only).

def full_hilbert_vector(state: CollectiveState) -> np.ndarray:
    """Embed the collective state into the 2^N product space.

    |J, M> is the normalized symmetrization of the strings with
    k = N/2 - M spin-down qubits (|0> is spin-up).
    """
    n = state.N
    if n > 6:
        raise InvalidN("full-Hilbert embedding is a test utility for N <= 6")
    psi = np.zeros(2 ** n, dtype=complex)
    for idx in range(2 ** n):
        k = bin(idx).count("1")
        psi[idx] = state.amplitudes[k] / np.sqrt(comb(n, k))
    return psi


def reduced_pair_from_full(psi: np.ndarray, n: int) -> np.ndarray:
    """Partial trace over qubits 3..N of a pure 2^N state vector."""
    m = psi.reshape(4, -1) if n > 2 else psi.reshape(4, 1)
    return m @ m.conj().T
