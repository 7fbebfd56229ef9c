// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/block_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace embedflow {

Block Block::jordan(const Number& eigenvalue, std::size_t size)
{
    if (size == 0) {
        throw std::invalid_argument("Jordan block of size 0");
    }
    if (!eigenvalue.is_real()) {
        throw std::invalid_argument("Jordan block eigenvalue must be real");
    }
    Block b;
    b.kind = Kind::real;
    b.origin = Origin::jordan;
    b.cells = size;
    b.toeplitz.push_back(eigenvalue);
    if (size > 1) {
        b.toeplitz.push_back(Number::from_gauss(GaussRational(1)));
    }
    return b;
}

Block Block::rotation(const Number& c, std::size_t cells)
{
    if (cells == 0) {
        throw std::invalid_argument("rotation block with 0 cells");
    }
    if (c.value.imag() == 0.0 && c.is_real()) {
        throw std::invalid_argument("rotation block needs beta != 0");
    }
    Block b;
    b.kind = Kind::complex;
    b.origin = Origin::rotation;
    b.cells = cells;
    b.toeplitz.push_back(c);
    if (cells > 1) {
        b.toeplitz.push_back(Number::from_gauss(GaussRational(1)));
    }
    return b;
}

Number Block::entry(std::size_t d) const
{
    if (d < toeplitz.size()) {
        return toeplitz[d];
    }
    return Number::from_gauss(GaussRational(0));
}

bool Block::has_nilpotent_part() const
{
    for (std::size_t d = 1; d < toeplitz.size() && d < cells; ++d) {
        if (toeplitz[d].value != std::complex<double>{}) {
            return true;
        }
    }
    return false;
}

std::size_t BlockMatrix::dimension() const
{
    std::size_t n = 0;
    for (const auto& b : blocks) {
        n += b.order();
    }
    return n;
}

std::vector<std::size_t> BlockMatrix::offsets() const
{
    std::vector<std::size_t> out;
    std::size_t o = 0;
    for (const auto& b : blocks) {
        out.push_back(o);
        o += b.order();
    }
    return out;
}

std::vector<double> BlockMatrix::to_dense() const
{
    const std::size_t n = dimension();
    std::vector<double> m(n * n, 0.0);
    std::size_t o = 0;
    for (const auto& b : blocks) {
        for (std::size_t row = 0; row < b.cells; ++row) {
            for (std::size_t col = 0; col <= row; ++col) {
                const std::complex<double> c = b.entry(row - col).value;
                if (b.kind == Block::Kind::real) {
                    m[(o + row) * n + o + col] = c.real();
                } else {
                    const std::size_t r = o + 2 * row;
                    const std::size_t s = o + 2 * col;
                    m[r * n + s] = c.real();
                    m[r * n + s + 1] = c.imag();
                    m[(r + 1) * n + s] = -c.imag();
                    m[(r + 1) * n + s + 1] = c.real();
                }
            }
        }
        o += b.order();
    }
    return m;
}

bool BlockMatrix::is_diagonal() const
{
    for (const auto& b : blocks) {
        if (b.kind == Block::Kind::complex || b.has_nilpotent_part()) {
            return false;
        }
    }
    return true;
}

std::string BlockMatrix::describe() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& b : blocks) {
        os << (first ? "" : "; ");
        first = false;
        os << (b.kind == Block::Kind::real ? "real" : "complex") << "[" << b.cells << "](";
        for (std::size_t d = 0; d < b.toeplitz.size(); ++d) {
            os << (d ? ", " : "") << b.toeplitz[d].to_string();
        }
        os << ")";
    }
    return os.str();
}

BlockMatrix block_matrix_from_dense(std::size_t n, const std::vector<Rational>& dense)
{
    if (dense.size() != n * n) {
        throw std::invalid_argument("dense matrix size mismatch");
    }
    auto at = [&](std::size_t i, std::size_t j) -> const Rational& { return dense[i * n + j]; };
    BlockMatrix out;
    std::size_t p = 0;
    while (p < n) {
        const bool rotation = p + 1 < n && sgn(at(p, p + 1)) != 0;
        if (rotation) {
            const Rational alpha = at(p, p);
            const Rational beta = at(p, p + 1);
            std::size_t cells = 1;
            while (p + 2 * cells + 1 < n && at(p + 2 * cells, p + 2 * cells - 2) == 1 &&
                   at(p + 2 * cells, p + 2 * cells) == alpha && at(p + 2 * cells, p + 2 * cells + 1) == beta) {
                ++cells;
            }
            out.blocks.push_back(Block::rotation(Number::from_gauss(GaussRational(alpha, beta)), cells));
            p += 2 * cells;
        } else {
            const Rational lambda = at(p, p);
            std::size_t size = 1;
            while (p + size < n && at(p + size, p + size - 1) == 1 && at(p + size, p + size) == lambda &&
                   !(p + size + 1 < n && sgn(at(p + size, p + size + 1)) != 0)) {
                ++size;
            }
            out.blocks.push_back(Block::jordan(Number::from_gauss(GaussRational(lambda)), size));
            p += size;
        }
    }
    // Every entry must be reproduced by the recognized structure.
    const std::vector<double> rebuilt = out.to_dense();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rebuilt[i * n + j] != to_double(at(i, j))) {
                throw std::invalid_argument("matrix is not in real normal form (entry " + std::to_string(i + 1) +
                                            "," + std::to_string(j + 1) + ")");
            }
        }
    }
    return out;
}

} // namespace embedflow
