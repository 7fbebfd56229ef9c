// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/classify.hpp"

#include <cmath>
#include <stdexcept>

#include "embedflow/resonance.hpp"

namespace embedflow {

namespace {

constexpr unsigned kPlanarCheckDegree = 10;

bool real_positive(const Block& b)
{
    return b.kind == Block::Kind::real && b.diagonal().is_real() && b.diagonal().value.real() > 0.0;
}

bool real_negative(const Block& b)
{
    return b.kind == Block::Kind::real && b.diagonal().is_real() && b.diagonal().value.real() < 0.0;
}

std::vector<double> to_input_coordinates(const RealLog& lg)
{
    const auto& perm = lg.canonical.to_original;
    const std::size_t n = perm.size();
    const auto canon = lg.log.to_dense();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[perm[i] * n + perm[j]] = canon[i * n + j];
        }
    }
    return out;
}

} // namespace

std::string to_string(PlanarReason reason)
{
    switch (reason) {
    case PlanarReason::no_negative_eigenvalues:
        return "no-negative-eigenvalues";
    case PlanarReason::equal_negative_diagonalizable:
        return "equal-negative-diagonalizable";
    case PlanarReason::unpaired_negative_block:
        return "unpaired-negative-block";
    case PlanarReason::distinct_negative_eigenvalues:
        return "distinct-negative-eigenvalues";
    }
    return "unknown";
}

PlanarVerdict classify_2d(const BlockMatrix& a)
{
    if (a.dimension() != 2) {
        throw std::invalid_argument("classify_2d: expected a 2x2 matrix, got dimension " +
                                    std::to_string(a.dimension()));
    }
    if (!is_hyperbolic(a)) {
        throw std::domain_error("classify_2d: matrix is not hyperbolic");
    }
    PlanarVerdict v;
    std::size_t negatives = 0;
    for (const auto& b : a.blocks) {
        negatives += real_negative(b) ? b.cells : 0;
    }
    const RealLogCertificate cert = has_real_log(a);
    if (!cert.exists) {
        v.embeddable = false;
        const bool two_scalars = a.blocks.size() == 2 && negatives == 2;
        v.reason = two_scalars ? PlanarReason::distinct_negative_eigenvalues : PlanarReason::unpaired_negative_block;
        return v;
    }
    v.embeddable = true;
    if (negatives == 2) {
        v.reason = PlanarReason::equal_negative_diagonalizable;
        v.family = "J4";
    } else {
        v.reason = PlanarReason::no_negative_eigenvalues;
        const Block& first = a.blocks.front();
        v.family = first.kind == Block::Kind::complex ? "J3" : first.cells == 2 ? "J2" : "J1";
    }
    const RealLog lg = real_log(a);
    v.log = to_input_coordinates(lg);
    v.log_blocks = lg.log;
    const auto report = field_resonances(field_eigenvalues(triangular_form(lg.log)), kPlanarCheckDegree);
    v.weakly_nonresonant = report.weak.empty();
    return v;
}

BlockMatrix planar_block_form(const std::vector<double>& dense, double tol)
{
    if (dense.size() != 4) {
        throw std::invalid_argument("planar_block_form: expected 4 entries");
    }
    const double a = dense[0];
    const double b = dense[1];
    const double c = dense[2];
    const double d = dense[3];
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = tr * tr - 4.0 * det;
    const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    BlockMatrix out;
    if (std::abs(disc) <= tol * scale * scale) {
        const double lambda = tr / 2.0;
        // rank of A - lambda I is 0 exactly when every entry vanishes
        const bool diagonalizable = std::abs(a - lambda) <= tol * scale && std::abs(d - lambda) <= tol * scale &&
                                    std::abs(b) <= tol * scale && std::abs(c) <= tol * scale;
        if (diagonalizable) {
            out.blocks.push_back(Block::jordan(Number::from_double(lambda), 1));
            out.blocks.push_back(Block::jordan(Number::from_double(lambda), 1));
        } else {
            out.blocks.push_back(Block::jordan(Number::from_double(lambda), 2));
        }
        return out;
    }
    if (disc > 0.0) {
        const double root = std::sqrt(disc);
        // stable form of the quadratic formula
        const double q = -0.5 * (-tr + std::copysign(root, -tr));
        double l1 = q;
        double l2 = det / q;
        if (l1 < l2) {
            std::swap(l1, l2);
        }
        out.blocks.push_back(Block::jordan(Number::from_double(l1), 1));
        out.blocks.push_back(Block::jordan(Number::from_double(l2), 1));
        return out;
    }
    const double alpha = tr / 2.0;
    const double beta = std::sqrt(-disc) / 2.0;
    out.blocks.push_back(Block::rotation(Number::from_complex({alpha, beta}), 1));
    return out;
}

BlockMatrix positive_spectrum_log(const BlockMatrix& a)
{
    for (const auto& b : a.blocks) {
        if (!real_positive(b)) {
            throw std::domain_error("positive_spectrum_log: eigenvalue " + b.diagonal().to_string() +
                                    " is not real and positive");
        }
    }
    return real_log(a).log;
}

} // namespace embedflow
