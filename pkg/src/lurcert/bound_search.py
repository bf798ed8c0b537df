"""Numerical certification of uncertainty limits by global minimization.

The uncertainty sum is concave over density matrices, so its minimum over
all states is attained at a pure state; the search space is the unit
sphere of state vectors.  Projected gradient descent with random restarts
provides the estimate, and a dense-grid brute force (dimension <= 3) the
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatchError, InvalidParameterError
from .spin_ops import OperatorSet
from .states import PureState

# Margin below a claimed bound before the search declares a refutation.
REFUTATION_MARGIN = 1e-7
# Restart minima within this distance of the best count as the same basin.
AGREEMENT_WINDOW = 1e-8
# Global-minimum confidence requires this fraction of restarts agreeing.
CONFIDENCE_FRACTION = 0.25


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic search configuration; a fixed seed fixes the run.

    The line search backtracks by halving from at most ``initial_step``;
    the starting trial is the spectral (Barzilai-Borwein) step estimated
    from the previous move, which keeps plain gradient descent fast on the
    degenerate minimizer manifolds these objectives have.
    """

    restarts: int = 64
    max_iterations: int = 10_000
    gradient_tolerance: float = 1e-10
    initial_step: float = 0.5
    step_shrink: float = 0.5
    min_step: float = 1e-18
    armijo: float = 1e-4
    stall_window: int = 50
    stall_decrease: float = 1e-14
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("restarts", "max_iterations", "stall_window"):
            if getattr(self, name) < 1:
                raise InvalidParameterError(f"{name} must be a positive integer")
        for name in ("gradient_tolerance", "initial_step", "min_step", "stall_decrease"):
            if not getattr(self, name) > 0:
                raise InvalidParameterError(f"{name} must be positive")
        if not 0 < self.step_shrink < 1:
            raise InvalidParameterError("step_shrink must lie in (0, 1)")
        if not 0 < self.armijo < 1:
            raise InvalidParameterError("armijo must lie in (0, 1)")


@dataclass(frozen=True, eq=False)
class SearchResult:
    """Best minimum over restarts with per-restart bookkeeping."""

    minimum: float
    argmin: PureState
    restart_minima: tuple[float, ...]
    restart_converged: tuple[bool, ...]
    restarts_agreeing: int
    low_confidence: bool

    @property
    def converged_count(self) -> int:
        return sum(self.restart_converged)

    @property
    def any_converged(self) -> bool:
        return any(self.restart_converged)


def _objective(ops, squares, psi: np.ndarray) -> float:
    f = 0.0
    for a, a2 in zip(ops, squares):
        mean = np.vdot(psi, a @ psi).real
        f += np.vdot(psi, a2 @ psi).real - mean * mean
    return f


def _objective_and_gradient(ops, squares, psi: np.ndarray) -> tuple[float, np.ndarray]:
    f = 0.0
    grad = np.zeros_like(psi)
    for a, a2 in zip(ops, squares):
        a_psi = a @ psi
        a2_psi = a2 @ psi
        mean = np.vdot(psi, a_psi).real
        f += np.vdot(psi, a2_psi).real - mean * mean
        grad += 2.0 * (a2_psi - 2.0 * mean * a_psi)
    # Tangent projection on the unit sphere; the global-phase component of
    # the gradient vanishes identically because f is phase invariant.
    grad -= np.vdot(psi, grad).real * psi
    return f, grad


def _minimize_single(ops, squares, psi: np.ndarray, config: SearchConfig, history=None):
    """One projected-gradient descent run; returns (minimum, psi, converged)."""
    f, grad = _objective_and_gradient(ops, squares, psi)
    if history is not None:
        history.append(f)
    spectral_step = config.initial_step
    anchor = f
    since_anchor = 0
    for _ in range(config.max_iterations):
        grad_sq = np.vdot(grad, grad).real
        if np.sqrt(grad_sq) < config.gradient_tolerance:
            return f, psi, True
        step = min(spectral_step, config.initial_step)
        accepted = None
        while step >= config.min_step:
            candidate = psi - step * grad
            candidate = candidate / np.linalg.norm(candidate)
            f_candidate = _objective(ops, squares, candidate)
            if f_candidate <= f - config.armijo * step * grad_sq:
                accepted = (candidate, step)
                break
            step *= config.step_shrink
        if accepted is None:
            # No descent left at floating-point resolution.
            return f, psi, True
        candidate, step = accepted
        f_new, grad_new = _objective_and_gradient(ops, squares, candidate)
        move = candidate - psi
        curvature = np.vdot(move, grad_new - grad).real
        if curvature > 0:
            spectral_step = np.vdot(move, move).real / curvature
        else:
            spectral_step = config.initial_step
        psi, f, grad = candidate, f_new, grad_new
        if history is not None:
            history.append(f)
        since_anchor += 1
        if since_anchor >= config.stall_window:
            if anchor - f < config.stall_decrease:
                return f, psi, True
            anchor = f
            since_anchor = 0
    return f, psi, False


def _random_start(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def minimize_sum_uncertainty(
    operator_set: OperatorSet, config: SearchConfig | None = None
) -> SearchResult:
    """Minimize the uncertainty sum of ``operator_set`` over pure states.

    The run is fully deterministic for a fixed config: restart r draws its
    start from the stream seeded by (rng_seed, r), and the best restart is
    reported together with how many restarts agreed with it.
    """
    config = config or SearchConfig()
    ops = list(operator_set)
    squares = [a @ a for a in ops]
    dim = operator_set.dim

    minima = []
    converged_flags = []
    best_f = np.inf
    best_psi = None
    for r in range(config.restarts):
        rng = np.random.default_rng([config.rng_seed, r])
        f, psi, converged = _minimize_single(ops, squares, _random_start(dim, rng), config)
        minima.append(f)
        converged_flags.append(converged)
        if f < best_f:
            best_f = f
            best_psi = psi

    agreeing = sum(1 for f in minima if f - best_f < AGREEMENT_WINDOW)
    return SearchResult(
        minimum=best_f,
        argmin=PureState.normalized(best_psi).phase_normalized(),
        restart_minima=tuple(minima),
        restart_converged=tuple(converged_flags),
        restarts_agreeing=agreeing,
        low_confidence=agreeing < CONFIDENCE_FRACTION * config.restarts,
    )


@dataclass(frozen=True, eq=False)
class BoundCertification:
    """Outcome of checking a claimed bound against the search.

    "supported" is evidence, not proof; "refuted" comes with a witness
    state whose uncertainty sum beats the claim.
    """

    verdict: str
    claimed: float
    achieved: float
    witness: PureState | None
    search: SearchResult


def certify_bound(
    operator_set: OperatorSet, claimed: float, config: SearchConfig | None = None
) -> BoundCertification:
    """Search for a state refuting ``claimed`` as a lower bound."""
    if claimed < 0:
        raise InvalidParameterError(f"claimed bound must be nonnegative, got {claimed}")
    result = minimize_sum_uncertainty(operator_set, config)
    if result.minimum < claimed - REFUTATION_MARGIN:
        return BoundCertification("refuted", claimed, result.minimum, result.argmin, result)
    return BoundCertification("supported", claimed, result.minimum, None, result)


def _grid_minimum(ops, squares, states: np.ndarray) -> float:
    total = np.zeros(states.shape[0])
    for a, a2 in zip(ops, squares):
        means = np.einsum("ki,ki->k", states.conj(), states @ a.T).real
        seconds = np.einsum("ki,ki->k", states.conj(), states @ a2.T).real
        total += seconds - means * means
    return float(total.min())


def brute_force_minimum(
    operator_set: OperatorSet, grid_resolution: float, full_phases: bool = False
) -> float:
    """Exhaustive minimum of the uncertainty sum over a dense grid of
    normalized state vectors; the independent oracle for small dimensions.

    Dimension 2 scans the full (theta, phi) sphere.  Dimension 3 scans the
    real-amplitude family (phases restricted to 0 or pi) by default, which
    contains minimizers for every catalog set; ``full_phases=True`` scans
    both phases too at the same resolution (use coarse grids).  The grid
    minimum overshoots the true minimum by O(resolution^2).
    """
    if not grid_resolution > 0:
        raise InvalidParameterError("grid resolution must be positive")
    dim = operator_set.dim
    if dim > 3:
        raise DimensionMismatchError("brute force is limited to dimension <= 3")
    ops = list(operator_set)
    squares = [a @ a for a in ops]

    if dim == 1:
        return _grid_minimum(ops, squares, np.ones((1, 1), dtype=complex))

    half_turn = np.arange(0.0, np.pi / 2 + grid_resolution / 2, grid_resolution)
    full_turn = np.arange(0.0, 2 * np.pi, grid_resolution)

    if dim == 2:
        theta, phi = np.meshgrid(half_turn, full_turn, indexing="ij")
        states = np.stack(
            [np.cos(theta), np.sin(theta) * np.exp(1j * phi)], axis=-1
        ).reshape(-1, 2)
        return _grid_minimum(ops, squares, states)

    if full_phases:
        best = np.inf
        for t1 in half_turn:
            t2, p1, p2 = np.meshgrid(half_turn, full_turn, full_turn, indexing="ij")
            states = np.stack(
                [
                    np.full(t2.shape, np.cos(t1), dtype=complex),
                    np.sin(t1) * np.cos(t2) * np.exp(1j * p1),
                    np.sin(t1) * np.sin(t2) * np.exp(1j * p2),
                ],
                axis=-1,
            ).reshape(-1, 3)
            best = min(best, _grid_minimum(ops, squares, states))
        return best

    t1, t2 = np.meshgrid(half_turn, half_turn, indexing="ij")
    blocks = []
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            blocks.append(
                np.stack(
                    [np.cos(t1), s1 * np.sin(t1) * np.cos(t2), s2 * np.sin(t1) * np.sin(t2)],
                    axis=-1,
                ).reshape(-1, 3)
            )
    return _grid_minimum(ops, squares, np.concatenate(blocks).astype(complex))
