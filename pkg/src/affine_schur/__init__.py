"""Exact computations in the affine Schur algebra S^(n, r) at v = 1."""

from __future__ import annotations

from .algebra import (
    AlgebraElement,
    antiauto,
    basis_element,
    basis_product,
    identity,
    idempotent,
    multiply,
    multiply_basis_coset,
    multiply_basis_oracle,
    verify_classical_presentation,
)
from .cells import (
    CellLabel,
    IdealHandle,
    LaurentPresentation,
    MembershipCertificate,
    b_lambda,
    chain,
    d_values,
    membership,
    rho,
    sn_orbit_ideal_equality,
    stratum_basis,
)
from .combinatorics import AffineWeylElement, YoungSubgroup, compositions, dual_partition, partitions, total_order
from .matrices import PeriodicMatrix, basis, diag, embed, format_matrix, parse_matrix
from .segments import OmegaPoint, Segment, SegmentMultiset, phi, phi_inverse, shape

__version__ = "0.1.0"

__all__ = [
    "AffineWeylElement",
    "AlgebraElement",
    "CellLabel",
    "IdealHandle",
    "LaurentPresentation",
    "MembershipCertificate",
    "OmegaPoint",
    "PeriodicMatrix",
    "Segment",
    "SegmentMultiset",
    "YoungSubgroup",
    "antiauto",
    "b_lambda",
    "basis",
    "basis_element",
    "basis_product",
    "chain",
    "compositions",
    "d_values",
    "diag",
    "dual_partition",
    "embed",
    "format_matrix",
    "identity",
    "idempotent",
    "membership",
    "multiply",
    "multiply_basis_coset",
    "multiply_basis_oracle",
    "parse_matrix",
    "partitions",
    "phi",
    "phi_inverse",
    "rho",
    "shape",
    "sn_orbit_ideal_equality",
    "stratum_basis",
    "total_order",
    "verify_classical_presentation",
]
