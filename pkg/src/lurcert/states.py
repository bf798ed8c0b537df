"""Density matrices: validation, the built-in state families, JSON files.

Bipartite states live on the tensor product A (x) B with the descending-m
basis on each factor; the flattened index is i_A * dim_B + i_B.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import InitVar, dataclass, field
from pathlib import Path

import numpy as np

from . import linalg
from .linalg import (
    DEFAULT_TOLERANCES,
    DimensionMismatchError,
    InvalidParameterError,
    NotHermitianError,
    Tolerances,
)
from .spin_ops import SpinQuantum, spin_components


class StateValidationError(linalg.LurcertError):
    code = "state"


class TraceNotOneError(StateValidationError):
    code = "trace-not-one"


class NotPositiveError(StateValidationError):
    code = "not-positive"


class StateFormatError(StateValidationError):
    """State file does not follow the JSON schema."""

    code = "parse"


_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False, repr=False)
class DensityMatrix:
    """Validated quantum state: Hermitian, unit trace, positive semidefinite.

    ``dims`` is ``(d,)`` for a single system or ``(d_a, d_b)`` for a
    bipartite one.  The stored matrix is kept exactly as supplied (so file
    round trips are bit-exact); eigenvalues within tolerance of [0, 1] are
    clipped in the ``eigenvalues`` field only.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]
    tolerances: InitVar[Tolerances | None] = None
    eigenvalues: np.ndarray = field(init=False)

    def __post_init__(self, tolerances):
        tol = tolerances or DEFAULT_TOLERANCES
        m = linalg.as_square_matrix(self.matrix)

        dims = self.dims
        if isinstance(dims, (int, np.integer)):
            dims = (int(dims),)
        dims = tuple(int(d) for d in dims)
        if len(dims) not in (1, 2) or any(d < 1 for d in dims):
            raise DimensionMismatchError(f"dims must be (d,) or (d_a, d_b) of positives, got {dims}")
        if int(np.prod(dims)) != m.shape[0]:
            raise DimensionMismatchError(
                f"dims {dims} imply dimension {int(np.prod(dims))}, matrix has {m.shape[0]}"
            )

        dev = linalg.hermiticity_deviation(m)
        if dev > tol.hermiticity:
            raise NotHermitianError(
                f"state deviates from Hermiticity by {dev:.3e} (tolerance {tol.hermiticity:.1e})"
            )
        tr = np.trace(m)
        if abs(tr - 1.0) > tol.trace_deviation:
            raise TraceNotOneError(f"state trace is {tr:.17g}, expected 1")
        eigenvalues = np.linalg.eigvalsh(m)
        if eigenvalues[0] < tol.positivity_floor:
            raise NotPositiveError(
                f"state is not positive semidefinite: min eigenvalue {eigenvalues[0]:.3e}"
            )

        m = np.array(m, dtype=complex)
        m.setflags(write=False)
        eigenvalues = np.clip(eigenvalues, 0.0, 1.0)
        eigenvalues.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "eigenvalues", eigenvalues)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def dim_a(self) -> int:
        return self.dims[0]

    @property
    def dim_b(self) -> int | None:
        return self.dims[1] if len(self.dims) == 2 else None

    @property
    def is_bipartite(self) -> bool:
        return len(self.dims) == 2

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={self.dims})"


def validate(matrix, dims, tolerances: Tolerances | None = None) -> DensityMatrix:
    """Check Hermiticity, unit trace and positivity; return the validated state."""
    return DensityMatrix(matrix, dims, tolerances)


@dataclass(frozen=True, eq=False, repr=False)
class PureState:
    """Unit-norm state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise InvalidParameterError("state vector must have at least one amplitude")
        if not np.all(np.isfinite(amps)):
            raise InvalidParameterError("state vector amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise InvalidParameterError(f"state vector norm is {norm:.17g}, expected 1")
        amps = np.array(amps, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, vector) -> "PureState":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidParameterError("cannot normalize the zero vector")
        return cls(v / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def phase_normalized(self) -> "PureState":
        """Rotate the global phase so the first non-negligible amplitude is
        real and nonnegative (reproducible serialization)."""
        amps = self.amplitudes
        idx = np.flatnonzero(np.abs(amps) > _NORM_TOL)
        if idx.size == 0:
            return self
        lead = amps[idx[0]]
        return PureState(amps * (lead.conjugate() / abs(lead)))

    def projector(self, dims=None, tolerances: Tolerances | None = None) -> DensityMatrix:
        dims = (self.dim,) if dims is None else dims
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), dims, tolerances)

    def __repr__(self) -> str:
        return f"PureState(dim={self.dim})"


def _check_probabilities(weights, what: str = "probabilities") -> tuple[float, ...]:
    ws = tuple(float(w) for w in weights)
    for w in ws:
        if w < 0:
            raise InvalidParameterError(f"{what} must be nonnegative, got {w}")
    if abs(sum(ws) - 1.0) > 1e-12:
        raise InvalidParameterError(f"{what} must sum to 1, got {sum(ws):.17g}")
    return ws


def _check_fraction(p, name: str) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {p}")
    return p


def singlet_ket(spin: SpinQuantum) -> PureState:
    """Two-party spin-l singlet (1/sqrt(N)) sum_m (-1)^(l-m) |m> (x) |-m>.

    Annihilated by every joint component L_i(A) + L_i(B).
    """
    if spin.two_l < 1:
        raise InvalidParameterError("no two-party singlet exists for l = 0")
    n = spin.dim
    vec = np.zeros(n * n, dtype=complex)
    for i in range(n):  # i = l - m, so the sign alternates with the index
        vec[i * n + (n - 1 - i)] = (-1) ** i
    return PureState(vec / np.sqrt(n))


def singlet_state(spin: SpinQuantum, tolerances: Tolerances | None = None) -> DensityMatrix:
    """Projector onto the two-party spin-l singlet."""
    n = spin.dim
    return singlet_ket(spin).projector(dims=(n, n), tolerances=tolerances)


def bell_kets() -> dict[str, PureState]:
    """The four Bell states of a 2x2 pair in the descending-m product basis.

    S is the singlet; each triplet Ti is annihilated by S_i(A) + S_i(B).
    Construction is verified against those defining relations.
    """
    s2 = np.sqrt(2.0)
    kets = {
        "S": PureState(np.array([0, 1, -1, 0], dtype=complex) / s2),
        "T1": PureState(np.array([1, 0, 0, -1], dtype=complex) / s2),
        "T2": PureState(np.array([1, 0, 0, 1], dtype=complex) / s2),
        "T3": PureState(np.array([0, 1, 1, 0], dtype=complex) / s2),
    }
    pauli = [2 * op for op in spin_components(SpinQuantum(1))]
    eye = np.eye(2)
    for i, name in enumerate(("T1", "T2", "T3")):
        joint = np.kron(pauli[i], eye) + np.kron(eye, pauli[i])
        residual = np.abs(joint @ kets[name].amplitudes).max()
        if residual > 1e-12:
            raise RuntimeError(f"triplet {name} fails its annihilation check: {residual:.3e}")
        overlap = abs(np.vdot(kets["S"].amplitudes, kets[name].amplitudes))
        if overlap > 1e-12:
            raise RuntimeError(f"triplet {name} is not orthogonal to the singlet: {overlap:.3e}")
    return kets


def bell_states(tolerances: Tolerances | None = None) -> dict[str, DensityMatrix]:
    """Projectors onto the four Bell states, keyed S, T1, T2, T3."""
    return {
        name: ket.projector(dims=(2, 2), tolerances=tolerances)
        for name, ket in bell_kets().items()
    }


def bell_mixture(p_s, p_1, p_2, p_3, tolerances: Tolerances | None = None) -> DensityMatrix:
    """Mixture p_S |S><S| + p_1 |T1><T1| + p_2 |T2><T2| + p_3 |T3><T3|."""
    weights = _check_probabilities((p_s, p_1, p_2, p_3), what="Bell weights")
    kets = bell_kets()
    matrix = np.zeros((4, 4), dtype=complex)
    for w, name in zip(weights, ("S", "T1", "T2", "T3")):
        amps = kets[name].amplitudes
        matrix += w * np.outer(amps, amps.conj())
    return DensityMatrix(matrix, (2, 2), tolerances)


def white_noise_mixture(
    spin: SpinQuantum, p_w, tolerances: Tolerances | None = None
) -> DensityMatrix:
    """Singlet mixed with white noise: (1-p_W)|sing><sing| + p_W 1/N^2."""
    p_w = _check_fraction(p_w, "p_w")
    n = spin.dim
    sing = singlet_ket(spin).amplitudes
    matrix = (1 - p_w) * np.outer(sing, sing.conj()) + p_w * np.eye(n * n) / (n * n)
    return DensityMatrix(matrix, (n, n), tolerances)


def x_basis_kets() -> list[np.ndarray]:
    """L_x eigenvectors for l = 1 ordered by eigenvalue -1, 0, +1, each with
    its first non-negligible component made real positive."""
    lx = spin_components(SpinQuantum(2)).operators[0]
    _, vecs = linalg.hermitian_eigen(lx)
    kets = []
    for k in range(3):
        v = vecs[:, k]
        lead = v[np.flatnonzero(np.abs(v) > _NORM_TOL)[0]]
        kets.append(v * (lead.conjugate() / abs(lead)))
    return kets


def x_decoherence_mixture(p_d, tolerances: Tolerances | None = None) -> DensityMatrix:
    """Spin-1 singlet decohered in the L_x basis.

    Mixes the singlet with the three anticorrelated L_x product states
    |m_x; -m_x>, so the joint uncertainty of L_x(A) + L_x(B) stays zero for
    every p_D.
    """
    p_d = _check_fraction(p_d, "p_d")
    sing = singlet_ket(SpinQuantum(2)).amplitudes
    matrix = (1 - p_d) * np.outer(sing, sing.conj())
    minus, zero, plus = x_basis_kets()
    for a, b in ((minus, plus), (zero, zero), (plus, minus)):
        prod = np.kron(a, b)
        matrix += (p_d / 3) * np.outer(prod, prod.conj())
    return DensityMatrix(matrix, (3, 3), tolerances)


def min_uncertainty_state_n3(phi: float) -> PureState:
    """Three-level state attaining the two-component bound 7/16:
    (sqrt(5)/4) e^{-i phi} |-1> + (sqrt(6)/4) |0> + (sqrt(5)/4) e^{+i phi} |+1>.

    In the descending-m basis |+1>, |0>, |-1> map to indices 0, 1, 2.
    """
    a = np.sqrt(5.0) / 4
    b = np.sqrt(6.0) / 4
    return PureState(
        np.array([a * np.exp(1j * phi), b, a * np.exp(-1j * phi)], dtype=complex)
    )


def maximally_mixed(dims, tolerances: Tolerances | None = None) -> DensityMatrix:
    dims = (dims,) if isinstance(dims, (int, np.integer)) else tuple(dims)
    total = int(np.prod(dims))
    return DensityMatrix(np.eye(total, dtype=complex) / total, dims, tolerances)


def random_pure_state(dim: int, rng: np.random.Generator) -> PureState:
    """Haar-uniform pure state from a normalized complex Gaussian vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState.normalized(v)


def random_mixed_state(
    dim: int, rng: np.random.Generator, dims=None, tolerances: Tolerances | None = None
) -> DensityMatrix:
    """Full-rank random state G G^dag / Tr(G G^dag) with Gaussian G."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityMatrix(m, (dim,) if dims is None else dims, tolerances)


def random_product_state(
    dim_a: int,
    dim_b: int,
    rng: np.random.Generator,
    pure: bool = False,
    tolerances: Tolerances | None = None,
) -> DensityMatrix:
    """Random product state rho_A (x) rho_B (separable by construction)."""
    if pure:
        rho_a = random_pure_state(dim_a, rng).projector().matrix
        rho_b = random_pure_state(dim_b, rng).projector().matrix
    else:
        rho_a = random_mixed_state(dim_a, rng).matrix
        rho_b = random_mixed_state(dim_b, rng).matrix
    return DensityMatrix(np.kron(rho_a, rho_b), (dim_a, dim_b), tolerances)


# --- JSON state files ----------------------------------------------------
#
# Schema: {"dims": [dA] or [dA, dB], "matrix": [[[re, im], ...], ...]}
# Full matrices, reals with 17 significant digits (exact double round trip).


def state_to_json(state: DensityMatrix) -> str:
    rows = []
    for row in state.matrix:
        cells = ",".join(f"[{z.real:.17g},{z.imag:.17g}]" for z in row)
        rows.append(f"[{cells}]")
    dims = ",".join(str(d) for d in state.dims)
    return f'{{"dims":[{dims}],"matrix":[{",".join(rows)}]}}'


def state_from_json(text: str, tolerances: Tolerances | None = None) -> DensityMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"state file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"dims", "matrix"}:
        raise StateFormatError('state file must be an object with keys "dims" and "matrix"')
    dims = doc["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) not in (1, 2)
        or not all(isinstance(d, int) and d >= 1 for d in dims)
    ):
        raise StateFormatError('"dims" must be a list of one or two positive integers')
    rows = doc["matrix"]
    total = int(np.prod(dims))
    if not isinstance(rows, list) or len(rows) != total:
        raise StateFormatError(f'"matrix" must be a list of {total} rows')
    matrix = np.zeros((total, total), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != total:
            raise StateFormatError(f"matrix row {i} must have {total} entries")
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in cell)
            ):
                raise StateFormatError(f"matrix entry ({i},{j}) must be a [re, im] pair")
            matrix[i, j] = complex(cell[0], cell[1])
    return DensityMatrix(matrix, tuple(dims), tolerances)


def write_state(state: DensityMatrix, path) -> None:
    Path(path).write_text(state_to_json(state) + "\n", encoding="utf-8")


def read_state(path, tolerances: Tolerances | None = None) -> DensityMatrix:
    return state_from_json(Path(path).read_text(encoding="utf-8"), tolerances)


def state_digest(state: DensityMatrix) -> str:
    """SHA-256 of the canonical JSON serialization."""
    return hashlib.sha256(state_to_json(state).encode("utf-8")).hexdigest()
