"""Two-qubit density matrices and their Bloch decomposition.

Basis convention throughout: the computational product basis
{|00>, |01>, |10>, |11>} with |0> the spin-up (m = +1/2) single-qubit
state.  The exchange-symmetric (triplet) subspace is spanned by
|1,1> = |00>, |1,0> = (|01> + |10>)/sqrt(2), |1,-1> = |11>, and the
singlet is (|01> - |10>)/sqrt(2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidDensityMatrix,
    NonUnitary,
    NotPositive,
    NotSymmetricState,
)
from .numerics import DEFAULT_TOL, hermitian_eigenvalues, hermitian_eigh, pauli, su2_to_so3

# Positivity gate used when assembling states from Bloch data; slightly
# looser than the working tolerance to absorb rounding accumulated in
# model-generated inputs.
FROM_BLOCH_PSD_TOL = 1e-9

# One- and two-qubit Pauli operator tables, built once.
_SIG = [pauli(i) for i in range(3)]
_I2 = np.eye(2, dtype=complex)
_SIG1 = [np.kron(s, _I2) for s in _SIG]          # sigma_i on qubit 1
_SIG2 = [np.kron(_I2, s) for s in _SIG]          # sigma_i on qubit 2
_SIG12 = [[np.kron(a, b) for b in _SIG] for a in _SIG]

SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)
TRIPLET_BASIS = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0), 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    dtype=complex,
)  # rows: |1,1>, |1,0>, |1,-1>


def _expval(rho: np.ndarray, op: np.ndarray) -> float:
    return float(np.real(np.sum(rho * op.T)))


@dataclass(frozen=True)
class TwoQubitState:
    """A validated 4x4 density matrix with cached Bloch data (s, r, T)."""

    rho: np.ndarray
    s: np.ndarray = field(init=False)
    r: np.ndarray = field(init=False)
    T: np.ndarray = field(init=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidDensityMatrix(f"expected 4x4, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > DEFAULT_TOL:
            raise InvalidDensityMatrix("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > DEFAULT_TOL:
            raise InvalidDensityMatrix("trace differs from 1")
        w = hermitian_eigenvalues(rho)
        if w[0] < -FROM_BLOCH_PSD_TOL:
            raise NotPositive("density matrix has a negative eigenvalue", min_eig=float(w[0]))
        object.__setattr__(self, "rho", rho)
        s = np.array([_expval(rho, _SIG1[i]) for i in range(3)])
        r = np.array([_expval(rho, _SIG2[i]) for i in range(3)])
        t = np.array([[_expval(rho, _SIG12[i][j]) for j in range(3)] for i in range(3)])
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "T", t)

    def bloch(self):
        return self.s, self.r, self.T


class SymmetricTwoQubitState(TwoQubitState):
    """Two-qubit state supported on the exchange-symmetric subspace.

    Enforces r = s, T = T^T, Tr T = 1 and vanishing singlet population.
    """

    def __post_init__(self):
        super().__post_init__()
        tol = 1e-8
        if (
            np.max(np.abs(self.r - self.s)) > tol
            or np.max(np.abs(self.T - self.T.T)) > tol
            or abs(np.trace(self.T) - 1.0) > tol
        ):
            raise NotSymmetricState("state violates r = s, T = T^T or Tr T = 1")
        singlet_pop = float(np.real(SINGLET.conj() @ self.rho @ SINGLET))
        if singlet_pop > tol:
            raise NotSymmetricState(f"singlet population {singlet_pop:g} is nonzero")


def bloch_decompose(state: TwoQubitState):
    """(s, r, T) with s_i = Tr(rho sigma_1i), t_ij = Tr(rho sigma_1i sigma_2j)."""
    return state.bloch()


def rho_from_bloch(s, r, T) -> np.ndarray:
    """Assemble the 4x4 matrix of the Bloch parametrization (unvalidated)."""
    s = np.asarray(s, dtype=float)
    r = np.asarray(r, dtype=float)
    t = np.asarray(T, dtype=float)
    rho = np.eye(4, dtype=complex)
    for i in range(3):
        rho += s[i] * _SIG1[i] + r[i] * _SIG2[i]
        for j in range(3):
            rho += t[i, j] * _SIG12[i][j]
    return rho / 4.0


def from_bloch(s, r, T, symmetric: bool = False) -> TwoQubitState:
    """Build a validated state from Bloch data; rejects non-PSD input."""
    rho = rho_from_bloch(s, r, T)
    cls = SymmetricTwoQubitState if symmetric else TwoQubitState
    return cls(rho)


@dataclass(frozen=True)
class SpecialClassState:
    """Four-parameter symmetric family rho = [[a,0,0,b],[0,c,c,0],[0,c,c,0],[b,0,0,d]].

    Normalized so that a + 2c + d = 1.  b is real (its sign is physical
    only through |b| in every closed form).  Positivity requires a, c, d
    nonnegative and b^2 <= a d.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        tol = 1e-9
        if min(self.a, self.c, self.d) < -tol:
            raise InvalidDensityMatrix("a, c, d must be nonnegative")
        if abs(self.a + 2 * self.c + self.d - 1.0) > tol:
            raise InvalidDensityMatrix("a + 2c + d must equal 1")
        if self.b * self.b > self.a * self.d + tol:
            raise NotPositive("need b^2 <= a d for positivity",
                              min_eig=float(self.a * self.d - self.b * self.b))

    def matrix(self) -> np.ndarray:
        a, b, c, d = self.a, self.b, self.c, self.d
        return np.array(
            [
                [a, 0, 0, b],
                [0, c, c, 0],
                [0, c, c, 0],
                [b, 0, 0, d],
            ],
            dtype=complex,
        )

    def bloch(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        s = np.array([0.0, 0.0, a - d])
        t = np.diag([2 * (c + b), 2 * (c - b), a + d - 2 * c])
        return s, t


def symmetric_from_special(p: SpecialClassState) -> SymmetricTwoQubitState:
    return SymmetricTwoQubitState(p.matrix())


def partial_transpose(state: TwoQubitState) -> np.ndarray:
    """Partial transpose over the second qubit: rho_{m mu; n nu} -> rho_{m nu; n mu}."""
    rho = state.rho if isinstance(state, TwoQubitState) else np.asarray(state, dtype=complex)
    pt = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    return pt


_SYSY = np.kron(_SIG[1], _SIG[1])


def concurrence(state: TwoQubitState) -> float:
    """Wootters concurrence from the spin-flipped spectrum.

    The lambda_i are square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), computed through the Hermitian form
    sqrt(rho) rho~ sqrt(rho) which shares the same spectrum.
    """
    rho = state.rho
    rho_tilde = _SYSY @ rho.conj() @ _SYSY
    w, v = hermitian_eigh(rho)
    sqrt_rho = v @ np.diag(np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    m = sqrt_rho @ rho_tilde @ sqrt_rho
    lam = np.sqrt(np.clip(hermitian_eigenvalues(m, tol=1e-8), 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def entanglement_of_formation(state: TwoQubitState) -> float:
    """Binary entropy of (1 + sqrt(1 - C^2))/2."""
    c = concurrence(state)
    x = 0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - c * c)))
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def apply_local_unitaries(state: TwoQubitState, u1, u2) -> TwoQubitState:
    """Conjugate by u1 (x) u2; Bloch data rotates by the SO(3) images."""
    for u in (u1, u2):
        u = np.asarray(u, dtype=complex)
        if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - np.eye(2))) > DEFAULT_TOL:
            raise NonUnitary("local factors must be 2x2 unitaries")
    big = np.kron(np.asarray(u1, dtype=complex), np.asarray(u2, dtype=complex))
    return TwoQubitState(big @ state.rho @ big.conj().T)


# ----------------------------------------------------------------------
# Random samplers (deterministic given a seed).

def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def haar_qubit_state(rng) -> np.ndarray:
    """Haar-random pure qubit ket via normalized complex Gaussians."""
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    return z / np.linalg.norm(z)


def haar_unitary_2x2(rng) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def _dirichlet_flat(rng, n: int) -> np.ndarray:
    """Flat Dirichlet weights via normalized standard exponentials."""
    e = rng.exponential(size=n)
    return e / e.sum()


def random_separable_symmetric(n_terms: int, seed=None) -> SymmetricTwoQubitState:
    """Convex mixture sum_w p_w rho_w (x) rho_w of identical pure pairs."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    rng = _rng(seed)
    p = _dirichlet_flat(rng, n_terms)
    rho = np.zeros((4, 4), dtype=complex)
    for w in range(n_terms):
        psi = haar_qubit_state(rng)
        one = np.outer(psi, psi.conj())
        rho += p[w] * np.kron(one, one)
    return SymmetricTwoQubitState(rho)


def random_symmetric_state(rank: int, seed=None) -> SymmetricTwoQubitState:
    """Random mixed state supported on span{|1,1>, |1,0>, |1,-1>}."""
    if not 1 <= rank <= 3:
        raise ValueError("rank must be in 1..3")
    rng = _rng(seed)
    p = _dirichlet_flat(rng, rank)
    rho = np.zeros((4, 4), dtype=complex)
    for w in range(rank):
        amp = rng.normal(size=3) + 1j * rng.normal(size=3)
        amp /= np.linalg.norm(amp)
        psi = amp @ TRIPLET_BASIS
        rho += p[w] * np.outer(psi, psi.conj())
    return SymmetricTwoQubitState(rho)


def random_special_class(seed=None) -> SpecialClassState:
    """Uniform-ish sampler over the special class: (a, 2c, d) flat on the
    simplex and b uniform in the positivity interval [-sqrt(ad), sqrt(ad)]."""
    rng = _rng(seed)
    a, two_c, d = _dirichlet_flat(rng, 3)
    bmax = np.sqrt(a * d)
    b = rng.uniform(-bmax, bmax) if bmax > 0 else 0.0
    return SpecialClassState(a=float(a), b=float(b), c=float(two_c / 2), d=float(d))


# ----------------------------------------------------------------------
# State file format: a JSON object with exactly one of the keys
# "rho" (4x4 array of [re, im] pairs), "bloch" ({"s","r","T"}) or
# "special" ({"a","b","c","d"}).

def state_from_json(obj: dict) -> TwoQubitState:
    keys = {"rho", "bloch", "special"} & set(obj)
    if len(keys) != 1:
        raise ValueError("state object must contain exactly one of 'rho', 'bloch', 'special'")
    key = keys.pop()
    if key == "rho":
        arr = np.asarray(obj["rho"], dtype=float)
        if arr.shape != (4, 4, 2):
            raise ValueError("'rho' must be a 4x4 array of [re, im] pairs")
        return TwoQubitState(arr[..., 0] + 1j * arr[..., 1])
    if key == "bloch":
        b = obj["bloch"]
        return from_bloch(b["s"], b["r"], b["T"])
    sp = obj["special"]
    return symmetric_from_special(
        SpecialClassState(a=float(sp["a"]), b=float(sp["b"]), c=float(sp["c"]), d=float(sp["d"]))
    )


def load_state_file(path) -> TwoQubitState:
    with open(path, encoding="utf-8") as fh:
        return state_from_json(json.load(fh))
