// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "embedflow/block_matrix.hpp"
#include "embedflow/spectral.hpp"

namespace embedflow {

enum class PlanarReason {
    no_negative_eigenvalues,
    equal_negative_diagonalizable,
    unpaired_negative_block,
    distinct_negative_eigenvalues,
};

/// Hyphenated tag, e.g. "equal-negative-diagonalizable".
std::string to_string(PlanarReason reason);

/// Which planar normal form the logarithm was taken of: "J1" (two real
/// positive eigenvalues), "J2" (positive Jordan block), "J3" (rotation),
/// "J4" (diag(-l, -l)).
struct PlanarVerdict {
    bool embeddable = false;
    PlanarReason reason = PlanarReason::no_negative_eigenvalues;
    std::string family;
    /// Logarithm in the input coordinates, row-major 2x2; empty if not embeddable.
    std::vector<double> log;
    /// The logarithm as a block matrix in canonical order.
    std::optional<BlockMatrix> log_blocks;
    /// Field eigenvalues of the logarithm have no weak resonance up to degree 10.
    bool weakly_nonresonant = false;
};

/// Planar embedding classification. Throws std::invalid_argument unless
/// dimension 2 and std::domain_error on a non-hyperbolic matrix.
PlanarVerdict classify_2d(const BlockMatrix& a);

/// Real normal form of a dense 2x2 matrix {a11, a12, a21, a22}: eigenvalues
/// by the quadratic formula, diagonalizability by the rank of A - lambda I.
/// Eigenvalues closer than tol (relative) count as equal.
BlockMatrix planar_block_form(const std::vector<double>& dense, double tol = 1e-9);

/// Real logarithm with real spectrum for a matrix whose eigenvalues are all
/// real and positive. Throws std::domain_error otherwise.
BlockMatrix positive_spectrum_log(const BlockMatrix& a);

} // namespace embedflow
