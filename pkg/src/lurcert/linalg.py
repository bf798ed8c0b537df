"""Dense complex linear algebra shared by all modules.

Operators and states are plain numpy ``complex128`` square arrays.  This
module owns the centralized validation tolerances and the structured
errors raised when an input breaks a contract.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

import numpy as np

ENV_TOLERANCE_VAR = "LURCERT_VALIDATION_TOL"


class LurcertError(ValueError):
    """Base class for structured errors; ``code`` is a stable machine tag."""

    code = "error"


class DimensionMismatchError(LurcertError):
    code = "dim-mismatch"


class NotHermitianError(LurcertError):
    code = "not-hermitian"


class InvalidParameterError(LurcertError):
    code = "invalid-parameter"


@dataclass(frozen=True)
class Tolerances:
    """Validation tolerances, centralized so there is a single knob.

    ``hermiticity``, ``trace_deviation`` and ``positivity_floor`` gate state
    and operator validation; ``eigen_residual`` is the accuracy contract of
    the eigensolver.  Certified uncertainty bounds never depend on these.
    """

    hermiticity: float = 1e-9
    eigen_residual: float = 1e-8
    positivity_floor: float = -1e-9
    trace_deviation: float = 1e-9

    @classmethod
    def from_env(cls) -> "Tolerances":
        """Default tolerances, with the validation epsilon overridden by
        the ``LURCERT_VALIDATION_TOL`` environment variable when set."""
        raw = os.environ.get(ENV_TOLERANCE_VAR)
        if raw is None:
            return cls()
        try:
            eps = float(raw)
        except ValueError as exc:
            raise InvalidParameterError(
                f"{ENV_TOLERANCE_VAR} must be a number, got {raw!r}"
            ) from exc
        if not eps > 0:
            raise InvalidParameterError(f"{ENV_TOLERANCE_VAR} must be positive, got {raw!r}")
        return replace(cls(), hermiticity=eps, trace_deviation=eps, positivity_floor=-eps)


DEFAULT_TOLERANCES = Tolerances()


def as_square_matrix(data) -> np.ndarray:
    """Coerce to a complex square matrix, rejecting non-finite entries."""
    m = np.asarray(data, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidParameterError("matrix entries must be finite")
    return m


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def multiply(a, b) -> np.ndarray:
    """Matrix product of two square matrices of equal dimension."""
    a = as_square_matrix(a)
    b = as_square_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"cannot multiply {a.shape[0]}x{a.shape[0]} by {b.shape[0]}x{b.shape[0]}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ((i*db+k),(j*db+l)) = a[i,j]*b[k,l]."""
    return np.kron(as_square_matrix(a), as_square_matrix(b))


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_square_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_square_matrix(a)))


def hermiticity_deviation(a) -> float:
    """Max entrywise deviation of ``a`` from its conjugate transpose."""
    a = as_square_matrix(a)
    return float(np.abs(a - a.conj().T).max())


def ensure_hermitian(a, tol: float | None = None, what: str = "matrix") -> np.ndarray:
    tol = DEFAULT_TOLERANCES.hermiticity if tol is None else tol
    a = as_square_matrix(a)
    dev = hermiticity_deviation(a)
    if dev > tol:
        raise NotHermitianError(
            f"{what} deviates from Hermiticity by {dev:.3e} (tolerance {tol:.1e})"
        )
    return a


def hermitian_eigen(a, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the orthonormal eigenvectors as
    columns.  Ordering inside a degenerate eigenvalue cluster is
    unspecified; callers must not depend on it.
    """
    a = ensure_hermitian(a, tol)
    return np.linalg.eigh(a)


def unitary_from_generator(h, angle: float = 1.0) -> np.ndarray:
    """exp(i*angle*h) for Hermitian ``h``, built from its eigendecomposition."""
    w, v = hermitian_eigen(h)
    return (v * np.exp(1j * angle * w)) @ v.conj().T
