"""Fusion frame systems on a single space.

A system is a finite family of weighted subspaces {(V_i, v_i)} of C^n.
The frame operator is S = sum_i v_i^2 P_{V_i}; the system is a frame when
the smallest eigenvalue of S is bounded away from zero, and the extremal
eigenvalues of S are the optimal frame bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ArityMismatch, DimensionMismatch, NotAFrame, Singular
from .linalg import (
    SubspaceBasis,
    adjoint,
    as_operator,
    as_vector,
    hermitian_eig,
    invert,
    operator_norm,
    orthonormalize,
)

FRAME_TOL_REL = 1e-10   # lower bound must exceed this multiple of ||S||
TIGHT_TOL = 1e-9        # (B - A) <= TIGHT_TOL * B counts as tight
DUAL_TOL = 1e-8
ROI_TOL = 1e-8


@dataclass(frozen=True)
class WeightedSubspace:
    basis: SubspaceBasis
    weight: float

    def __post_init__(self):
        if not (self.weight > 0 and np.isfinite(self.weight)):
            raise ValueError(f"weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class FusionSystem:
    """Weighted subspace family; immutable after construction."""

    ambient_dim: int
    members: tuple[WeightedSubspace, ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")
        if not self.members:
            raise ValueError("system needs at least one member")
        object.__setattr__(self, "members", tuple(self.members))
        for k, m in enumerate(self.members):
            if m.basis.ambient_dim != self.ambient_dim:
                raise DimensionMismatch(
                    f"member {k} lives in dim {m.basis.ambient_dim}, "
                    f"system has dim {self.ambient_dim}"
                )

    def __len__(self) -> int:
        return len(self.members)

    @property
    def weights(self) -> np.ndarray:
        return np.array([m.weight for m in self.members])


@dataclass(frozen=True)
class CoefficientFamily:
    """One vector per member, each lying in that member's subspace."""

    parts: tuple[np.ndarray, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(np.asarray(p, dtype=complex) for p in self.parts))


@dataclass(frozen=True)
class FrameBounds:
    """Optimal bounds: extremal eigenvalues of the frame operator."""

    lower: float
    upper: float
    is_frame: bool
    is_tight: bool


def projection(basis: SubspaceBasis) -> np.ndarray:
    """Orthogonal projection onto the subspace, P = B B^H."""
    b = basis.matrix
    return b @ adjoint(b)


def analysis(sys: FusionSystem, f) -> CoefficientFamily:
    """Map f to the family {v_i P_{V_i} f}."""
    v = as_vector(f)
    if v.size != sys.ambient_dim:
        raise DimensionMismatch(f"vector dim {v.size} != ambient dim {sys.ambient_dim}")
    parts = []
    for m in sys.members:
        b = m.basis.matrix
        parts.append(m.weight * (b @ (adjoint(b) @ v)))
    return CoefficientFamily(tuple(parts))


def synthesis(sys: FusionSystem, coeffs: CoefficientFamily) -> np.ndarray:
    """Adjoint of analysis: sum_i v_i f_i."""
    if len(coeffs.parts) != len(sys.members):
        raise DimensionMismatch(
            f"{len(coeffs.parts)} coefficient parts for {len(sys.members)} members"
        )
    out = np.zeros(sys.ambient_dim, dtype=complex)
    for m, part in zip(sys.members, coeffs.parts):
        p = as_vector(part)
        if p.size != sys.ambient_dim:
            raise DimensionMismatch("coefficient part has wrong dimension")
        out += m.weight * p
    return out


def frame_operator(sys: FusionSystem) -> np.ndarray:
    """S = sum_i v_i^2 P_{V_i}; Hermitian and positive semidefinite."""
    s = np.zeros((sys.ambient_dim, sys.ambient_dim), dtype=complex)
    for m in sys.members:
        s += m.weight**2 * projection(m.basis)
    return 0.5 * (s + adjoint(s))


def frame_bounds(
    sys: FusionSystem,
    frame_tol_rel: float = FRAME_TOL_REL,
    tight_tol: float = TIGHT_TOL,
) -> FrameBounds:
    """Optimal bounds = extremal eigenvalues of the frame operator."""
    spec = hermitian_eig(frame_operator(sys))
    lower = float(spec.eigenvalues[0])
    upper = float(spec.eigenvalues[-1])
    is_frame = lower > frame_tol_rel * max(upper, 0.0)
    is_tight = is_frame and (upper - lower) <= tight_tol * upper
    return FrameBounds(lower=lower, upper=upper, is_frame=is_frame, is_tight=is_tight)


def _inverse_frame_operator(sys: FusionSystem) -> np.ndarray:
    if not frame_bounds(sys).is_frame:
        raise NotAFrame("frame operator is not invertible within tolerance")
    return invert(frame_operator(sys))


def canonical_dual(sys: FusionSystem) -> FusionSystem:
    """The system {(S^{-1} V_i, v_i)}, bases re-orthonormalized."""
    s_inv = _inverse_frame_operator(sys)
    members = []
    for m in sys.members:
        cols = s_inv @ m.basis.matrix
        members.append(
            WeightedSubspace(basis=orthonormalize(cols.T), weight=m.weight)
        )
    return FusionSystem(ambient_dim=sys.ambient_dim, members=tuple(members))


def reconstruct_canonical(sys: FusionSystem, f) -> np.ndarray:
    """Apply sum_i v_i^2 P_{S^{-1}V_i} S^{-1} P_{V_i} to f (equals f for a frame)."""
    v = as_vector(f)
    if v.size != sys.ambient_dim:
        raise DimensionMismatch(f"vector dim {v.size} != ambient dim {sys.ambient_dim}")
    s_inv = _inverse_frame_operator(sys)
    dual = canonical_dual(sys)
    out = np.zeros(sys.ambient_dim, dtype=complex)
    for m, dm in zip(sys.members, dual.members):
        out += m.weight**2 * (projection(dm.basis) @ (s_inv @ (projection(m.basis) @ v)))
    return out


def is_alternative_dual(
    sys: FusionSystem, cand: FusionSystem, dual_tol: float = DUAL_TOL
) -> tuple[bool, float]:
    """Test sum_i v_i v'_i P_{V'_i} S^{-1} P_{V_i} = I.

    Returns (verdict, residual) with residual = ||sum - I||_F / sqrt(dim).
    """
    if cand.ambient_dim != sys.ambient_dim:
        raise DimensionMismatch("candidate lives on a different space")
    if len(cand.members) != len(sys.members):
        raise ArityMismatch(f"{len(cand.members)} candidate members for {len(sys.members)}")
    s_inv = _inverse_frame_operator(sys)
    n = sys.ambient_dim
    acc = np.zeros((n, n), dtype=complex)
    for m, c in zip(sys.members, cand.members):
        acc += m.weight * c.weight * (projection(c.basis) @ s_inv @ projection(m.basis))
    residual = float(np.linalg.norm(acc - np.eye(n))) / np.sqrt(n)
    return residual <= dual_tol, residual


def check_resolution_of_identity(
    ops: Sequence, roi_tol: float = ROI_TOL
) -> tuple[bool, float]:
    """Does the (finite) operator family sum to the identity?

    Unconditional convergence is vacuous for finite lists.  Residual is
    ||sum - I||_F / sqrt(dim).
    """
    mats = [as_operator(o) for o in ops]
    if not mats:
        raise DimensionMismatch("empty operator list")
    n = mats[0].shape[0]
    for m in mats:
        if m.shape != (n, n):
            raise DimensionMismatch(f"expected {n}x{n} operators, got {m.shape}")
    residual = float(np.linalg.norm(sum(mats) - np.eye(n))) / np.sqrt(n)
    return residual <= roi_tol, residual


def transport_subspace(t, basis: SubspaceBasis) -> SubspaceBasis:
    """Orthonormal basis of T V for invertible T.

    For unitary T the transported projection satisfies P_{TV} T = T P_V.
    Raises Singular when T is not invertible.
    """
    m = as_operator(t)
    if m.shape != (basis.ambient_dim, basis.ambient_dim):
        raise DimensionMismatch("operator does not act on the basis's space")
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= m.shape[0] * np.finfo(float).eps * s[0]:
        raise Singular("transport operator is singular")
    return orthonormalize((m @ basis.matrix).T)


def frame_operator_norms(sys: FusionSystem) -> tuple[float, float]:
    """(||S||, ||S^{-1}||) for a frame system."""
    s = frame_operator(sys)
    return operator_norm(s), operator_norm(_inverse_frame_operator(sys))
