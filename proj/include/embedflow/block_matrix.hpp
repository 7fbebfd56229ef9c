// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "embedflow/number.hpp"

namespace embedflow {

/// One block of a real normal-form matrix, stored as a lower block-Toeplitz
/// pattern: toeplitz[0] sits on the diagonal, toeplitz[d] on the d-th
/// sub(block)diagonal, missing entries are zero.
///
/// Real blocks have 1x1 cells holding real numbers. Complex blocks have 2x2
/// cells; a cell holding c = a + ib is the matrix [[a, b], [-b, a]], and the
/// block occupies 2*cells interleaved coordinates.
struct Block {
    enum class Kind { real, complex };
    enum class Origin { jordan, rotation, negative_pair };

    Kind kind = Kind::real;
    Origin origin = Origin::jordan;
    std::size_t cells = 1;
    std::vector<Number> toeplitz;

    static Block jordan(const Number& eigenvalue, std::size_t size);
    /// alpha + i beta with identity cells below the diagonal.
    static Block rotation(const Number& c, std::size_t cells);

    std::size_t order() const { return kind == Kind::real ? cells : 2 * cells; }
    const Number& diagonal() const { return toeplitz.at(0); }
    /// Entry d of the Toeplitz pattern, zero when absent.
    Number entry(std::size_t d) const;
    bool has_nilpotent_part() const;
};

/// Block-diagonal real matrix in real normal form.
struct BlockMatrix {
    std::vector<Block> blocks;

    std::size_t dimension() const;
    /// Coordinate offset of each block.
    std::vector<std::size_t> offsets() const;
    /// Row-major real matrix.
    std::vector<double> to_dense() const;
    bool is_diagonal() const;

    std::string describe() const;
};

/// Recognize a dense row-major n x n matrix as exactly block structured:
/// lower Jordan blocks with unit subdiagonal and 2x2 rotation cells with
/// identity cells below. Throws std::invalid_argument otherwise.
BlockMatrix block_matrix_from_dense(std::size_t n, const std::vector<Rational>& dense);

} // namespace embedflow
