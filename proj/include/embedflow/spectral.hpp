// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "embedflow/block_matrix.hpp"
#include "embedflow/log_scalar.hpp"
#include "embedflow/number.hpp"
#include "embedflow/poly_jet.hpp"

namespace embedflow {

/// Coordinates real_count.. dimension-1 are grouped in consecutive pairs
/// (i, i+1), each carrying z = x_i + i x_{i+1} and its conjugate.
struct RealPairing {
    std::size_t dimension = 0;
    std::size_t real_count = 0;

    static RealPairing none(std::size_t n) { return {n, n}; }
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
    /// Throws std::invalid_argument when the pairs cannot cover the tail.
    void validate() const;
    bool trivial() const { return real_count == dimension; }
};

/// Branch integers: one k per negative pair (angle (2k+1)pi), one l per
/// rotation block (principal angle + 2 l pi), in canonical block order.
struct BranchChoice {
    std::vector<long> k;
    std::vector<long> l;

    /// "k=0,l=1", "k=0/1,l=-1" for several blocks, or "none"; a missing list means all zeros.
    static BranchChoice parse(std::string_view text);
    std::string to_string() const;
    friend bool operator==(const BranchChoice&, const BranchChoice&) = default;
};

struct RealLogCertificate {
    bool exists = false;
    /// Pairs of identical negative Jordan blocks (indices into the input blocks).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> unpaired;
};

/// A with its blocks reordered into real blocks first and complex blocks
/// after, identical negative Jordan blocks merged into complex blocks with
/// interleaved coordinates.
struct CanonicalForm {
    BlockMatrix matrix;
    /// Canonical coordinate -> original coordinate.
    std::vector<std::size_t> to_original;
    RealPairing pairing;
    /// Indices into matrix.blocks, in the order the branch integers refer to them.
    std::vector<std::size_t> negative_pairs;
    std::vector<std::size_t> rotations;
};

/// Lower triangular linear part in complex coordinates (z, conj z per pair).
struct TriangularForm {
    std::size_t n = 0;
    std::vector<Complex> matrix;
    std::optional<std::vector<GaussRational>> exact;
    std::vector<Number> diagonal;
    RealPairing pairing;

    Complex at(std::size_t i, std::size_t j) const { return matrix[i * n + j]; }
    bool diagonal_only() const;
};

bool is_hyperbolic(const BlockMatrix& a);
/// Throws std::domain_error when a has a zero eigenvalue.
RealLogCertificate has_real_log(const BlockMatrix& a);
CanonicalForm canonicalize(const BlockMatrix& a);

struct RealLog {
    CanonicalForm canonical;
    /// Logarithm of canonical.matrix, block by block.
    BlockMatrix log;
    BranchChoice branch;
};

/// exp(log) == a. Throws std::domain_error when no real logarithm exists and
/// std::invalid_argument on a branch list of the wrong length.
RealLog real_log(const BlockMatrix& a, const BranchChoice& branch = {});

/// Dense exponential of a block matrix, computed block by block.
std::vector<double> block_exp_dense(const BlockMatrix& b);

/// Permutes a dense matrix given in original coordinates into canonical ones.
std::vector<double> to_canonical_dense(const std::vector<double>& dense, const std::vector<std::size_t>& to_original);

TriangularForm triangular_form(const BlockMatrix& canonical);

/// Field eigenvalues of a triangularized logarithm, in complex coordinates.
std::vector<LogScalar> field_eigenvalues(const TriangularForm& b);

/// First branch in the +-bound window whose field eigenvalues have no weak
/// resonance at degrees 2..degree. Candidates are tried by increasing
/// |k|+|l|, ties broken lexicographically.
std::optional<BranchChoice> weakly_nonresonant_branch(const BlockMatrix& a, unsigned degree, long bound = 3);

} // namespace embedflow
