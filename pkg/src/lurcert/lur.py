"""Local uncertainty relations for bipartite systems.

Joint operators A_i (x) 1 + 1 (x) B_i obey the local limit U_A + U_B on
every separable state; any state whose joint uncertainty sum falls below
that limit is certified entangled.  The relative violation
C = 1 - total / (U_A + U_B) is 1 at the singlet and <= 0 when nothing is
violated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatchError, InvalidParameterError
from .spin_ops import OperatorSet, SpinQuantum, stokes_components
from .states import (
    DensityMatrix,
    bell_mixture,
    state_digest,
    x_decoherence_mixture,
    _check_probabilities,
    _check_fraction,
)
from .uncertainty import UncertaintyRelation, catalog_bound, variance

# A state must undercut the local limit by this much before it is flagged;
# false positives are the fatal error mode for a witness.
VERDICT_MARGIN = 1e-9

_CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class JointOperatorSet:
    """Joint properties A_i + B_i with the local limit U_A + U_B."""

    set_a: OperatorSet
    set_b: OperatorSet
    joint: tuple[np.ndarray, ...]
    local_limit: float
    bound_provenance: tuple[str, str]
    label: str

    @property
    def dim_a(self) -> int:
        return self.set_a.dim

    @property
    def dim_b(self) -> int:
        return self.set_b.dim


def build_joint(
    set_a: OperatorSet,
    u_a: float,
    set_b: OperatorSet,
    u_b: float,
    provenance: tuple[str, str] = ("unspecified", "unspecified"),
    label: str | None = None,
) -> JointOperatorSet:
    """Combine two local operator sets into the joint set A_i + B_i.

    The sets may act on systems of different dimension, but must have equal
    cardinality.  The local limit is the sum of the two certified bounds
    and must be positive for the relative violation to be meaningful.
    """
    if len(set_a) != len(set_b):
        raise DimensionMismatchError(
            f"operator sets have different cardinality: {len(set_a)} vs {len(set_b)}"
        )
    if u_a < 0 or u_b < 0:
        raise InvalidParameterError("local bounds must be nonnegative")
    local_limit = float(u_a) + float(u_b)
    if not local_limit > 0:
        raise InvalidParameterError("local limit must be positive to define a violation")
    eye_a = np.eye(set_a.dim)
    eye_b = np.eye(set_b.dim)
    joint = tuple(
        np.kron(a, eye_b) + np.kron(eye_a, b) for a, b in zip(set_a, set_b)
    )
    return JointOperatorSet(
        set_a=set_a,
        set_b=set_b,
        joint=joint,
        local_limit=local_limit,
        bound_provenance=tuple(provenance),
        label=label or f"{set_a.label}+{set_b.label}",
    )


def joint_from_relations(rel_a: UncertaintyRelation, rel_b: UncertaintyRelation) -> JointOperatorSet:
    return build_joint(
        rel_a.operator_set,
        rel_a.bound,
        rel_b.operator_set,
        rel_b.bound,
        provenance=(rel_a.provenance, rel_b.provenance),
    )


# CLI relation names -> catalog kind plus size derived from the side dimension.
RELATION_KINDS = ("l3", "s3", "l2n2", "s2n2", "l2n3", "s2n3")

_RELATION_TABLE = {
    "l3": ("spin3", None),
    "s3": ("stokes3", None),
    "l2n2": ("spin2_N2", 2),
    "s2n2": ("stokes2_N2", 2),
    "l2n3": ("spin2_N3", 3),
    "s2n3": ("stokes2_N3", 3),
}


def joint_from_catalog(relation: str, dim_a: int, dim_b: int) -> JointOperatorSet:
    """Symmetric catalog relation applied to both sides of a dim_a x dim_b pair."""
    if relation not in _RELATION_TABLE:
        raise InvalidParameterError(
            f"unknown relation kind {relation!r}; valid: {RELATION_KINDS}"
        )
    kind, required_dim = _RELATION_TABLE[relation]
    sides = []
    for dim in (dim_a, dim_b):
        if dim < 2:
            raise InvalidParameterError(f"relation {relation!r} needs dimension >= 2, got {dim}")
        if required_dim is not None and dim != required_dim:
            raise InvalidParameterError(
                f"relation {relation!r} applies to {required_dim}-level systems, got dimension {dim}"
            )
        size = SpinQuantum(dim - 1) if kind.startswith("spin") else dim - 1
        sides.append(catalog_bound(kind, size))
    joint = joint_from_relations(*sides)
    return JointOperatorSet(
        set_a=joint.set_a,
        set_b=joint.set_b,
        joint=joint.joint,
        local_limit=joint.local_limit,
        bound_provenance=joint.bound_provenance,
        label=relation,
    )


@dataclass(frozen=True, eq=False)
class LurCertificate:
    """Measured joint uncertainties against the local limit.

    ``entangled`` is True only when the total undercuts the local limit by
    more than the verdict margin; False does NOT imply separability.
    """

    per_component: tuple[float, ...]
    total: float
    local_limit: float
    relative_violation: float
    entangled: bool
    bound_provenance: tuple[str, str]
    state_digest: str
    relation_label: str

    def to_json_dict(self) -> dict:
        return {
            "per_component": list(self.per_component),
            "total": self.total,
            "local_limit": self.local_limit,
            "relative_violation": self.relative_violation,
            "verdict": self.entangled,
            "bound_provenance": list(self.bound_provenance),
            "state_digest": self.state_digest,
            "relation": self.relation_label,
        }


def certify(rho: DensityMatrix, joint: JointOperatorSet) -> LurCertificate:
    """Evaluate the local uncertainty relation on a bipartite state."""
    if not rho.is_bipartite:
        raise DimensionMismatchError("certification needs a bipartite state with dims (d_a, d_b)")
    if (rho.dim_a, rho.dim_b) != (joint.dim_a, joint.dim_b):
        raise DimensionMismatchError(
            f"state dims {rho.dims} do not match joint operator dims "
            f"({joint.dim_a}, {joint.dim_b})"
        )
    per_component = tuple(variance(rho, j) for j in joint.joint)
    total = sum(per_component)
    return LurCertificate(
        per_component=per_component,
        total=total,
        local_limit=joint.local_limit,
        relative_violation=1.0 - total / joint.local_limit,
        entangled=total < joint.local_limit - VERDICT_MARGIN,
        bound_provenance=joint.bound_provenance,
        state_digest=state_digest(rho),
        relation_label=joint.label,
    )


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Concurrence of a 2x2 pair via the spin-flip construction.

    C = max(0, l1 - l2 - l3 - l4) with l_k the descending square roots of
    the eigenvalues of rho (sy x sy) rho* (sy x sy), conjugation taken in
    the computational product basis.  Used as the independent oracle for
    the entanglement content of Bell mixtures.
    """
    if rho.dims != (2, 2):
        raise DimensionMismatchError(f"concurrence needs a 2x2 pair, got dims {rho.dims}")
    sy = stokes_components(1).operators[1]
    flip = np.kron(sy, sy)
    # The square roots of eig(rho flip rho* flip) are the singular values of
    # sqrt(rho) flip sqrt(rho)*, which avoids taking sqrt of noisy near-zero
    # eigenvalues.
    w, v = np.linalg.eigh(rho.matrix)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    lam = np.linalg.svd(root @ flip @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


@dataclass(frozen=True)
class BellMixtureAnalysis:
    """Relative violations and the concurrence formula for a Bell mixture.

    ``c_s2`` uses only two measured components and is a lower estimate of
    the concurrence; ``concurrence_formula`` = max(0, 2 p_S - 1) is exact
    when the singlet weight dominates (p_S > 1/2).
    """

    c_s3: float
    c_s2: float
    concurrence_formula: float


def bell_mixture_analysis(p_s, p_1, p_2, p_3) -> BellMixtureAnalysis:
    """Closed-form violations for the Bell mixture, cross-checked against
    direct certification of the constructed state."""
    p_s, p_1, p_2, p_3 = _check_probabilities((p_s, p_1, p_2, p_3), what="Bell weights")
    c_s3 = 2 * p_s - 1
    c_s2 = 2 * p_s - 1 - 2 * p_3
    rho = bell_mixture(p_s, p_1, p_2, p_3)
    measured3 = certify(rho, joint_from_catalog("s3", 2, 2)).relative_violation
    measured2 = certify(rho, joint_from_catalog("s2n2", 2, 2)).relative_violation
    if abs(measured3 - c_s3) > _CROSS_CHECK_TOL or abs(measured2 - c_s2) > _CROSS_CHECK_TOL:
        raise RuntimeError(
            f"Bell-mixture closed forms disagree with direct certification: "
            f"{measured3:.17g} vs {c_s3:.17g}, {measured2:.17g} vs {c_s2:.17g}"
        )
    return BellMixtureAnalysis(
        c_s3=c_s3, c_s2=c_s2, concurrence_formula=max(0.0, 2 * p_s - 1)
    )


@dataclass(frozen=True)
class VisibilityRecord:
    """Polarization visibilities, each in [-1, 1]; v3 may be absent."""

    v1: float
    v2: float
    v3: float | None = None

    def __post_init__(self):
        for name in ("v1", "v2", "v3"):
            v = getattr(self, name)
            if v is None:
                continue
            if not -1.0 <= v <= 1.0:
                raise InvalidParameterError(f"visibility {name} must lie in [-1, 1], got {v}")

    def present(self) -> tuple[float, ...]:
        return (self.v1, self.v2) if self.v3 is None else (self.v1, self.v2, self.v3)


@dataclass(frozen=True)
class VisibilityUncertainties:
    """Joint uncertainties 2(1 - V_i) inferred from visibilities.

    The mapping holds only for states without local polarization; the
    caller asserts that and the assertion is recorded.
    """

    per_component: tuple[float, ...]
    no_local_polarization_asserted: bool
    concurrence_lower_bound: float


def visibility_to_uncertainty(
    record: VisibilityRecord, no_local_polarization: bool = True
) -> VisibilityUncertainties:
    """Map each visibility V_i to the joint uncertainty 2(1 - V_i) and
    report the concurrence estimate V_1 + V_2 - 1."""
    return VisibilityUncertainties(
        per_component=tuple(2.0 * (1.0 - v) for v in record.present()),
        no_local_polarization_asserted=bool(no_local_polarization),
        concurrence_lower_bound=record.v1 + record.v2 - 1.0,
    )


def stokes_visibilities(rho: DensityMatrix) -> VisibilityRecord:
    """Exact visibilities V_i = -<S_i(A) S_i(B)> of a 2x2 pair, the
    normalized contrast between anti-correlated and correlated settings."""
    if rho.dims != (2, 2):
        raise DimensionMismatchError(f"visibilities need a 2x2 pair, got dims {rho.dims}")
    values = []
    for s in stokes_components(1):
        corr = np.trace(rho.matrix @ np.kron(s, s)).real
        values.append(-float(corr))
    return VisibilityRecord(*values)


def white_noise_violation(spin: SpinQuantum, p_w: float) -> float:
    """Closed-form three-component violation for the white-noise family:
    C = 1 - p_W (N+1)/2, identical in the spin and Stokes normalizations."""
    p_w = _check_fraction(p_w, "p_w")
    return 1.0 - p_w * (spin.dim + 1) / 2.0


def white_noise_two_component_violation(p_w: float) -> float:
    """Closed-form two-component violation for white noise on a 3x3 pair:
    C = 1 - (64/21) p_W."""
    p_w = _check_fraction(p_w, "p_w")
    return 1.0 - 64.0 * p_w / 21.0


@dataclass(frozen=True)
class DecoherenceAnalysis:
    """Relative violations for the spin-1 pair decohered in the L_x basis."""

    c_l3: float
    c_l2: float


def decoherence_analysis(p_d) -> DecoherenceAnalysis:
    """Closed forms C_L3 = 1 - (4/3) p_D and C_L2 = 1 - (32/21) p_D,
    cross-checked against direct certification of the constructed state."""
    p_d = _check_fraction(p_d, "p_d")
    c_l3 = 1.0 - 4.0 * p_d / 3.0
    c_l2 = 1.0 - 32.0 * p_d / 21.0
    rho = x_decoherence_mixture(p_d)
    measured3 = certify(rho, joint_from_catalog("l3", 3, 3)).relative_violation
    measured2 = certify(rho, joint_from_catalog("l2n3", 3, 3)).relative_violation
    if abs(measured3 - c_l3) > _CROSS_CHECK_TOL or abs(measured2 - c_l2) > _CROSS_CHECK_TOL:
        raise RuntimeError(
            f"decoherence closed forms disagree with direct certification: "
            f"{measured3:.17g} vs {c_l3:.17g}, {measured2:.17g} vs {c_l2:.17g}"
        )
    return DecoherenceAnalysis(c_l3=c_l3, c_l2=c_l2)
