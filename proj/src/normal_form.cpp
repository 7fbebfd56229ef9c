// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/normal_form.hpp"

#include <sstream>

namespace embedflow {

namespace {

std::string near_message(const MonomialRef& where, double divisor)
{
    std::ostringstream os;
    os << "near resonance: |lambda^m - lambda_j| = " << divisor << " below " << kNearResonanceThreshold
       << " at component " << where.j + 1 << " monomial " << where.m;
    return os.str();
}

} // namespace

NearResonanceError::NearResonanceError(MonomialRef where, double divisor)
    : std::runtime_error(near_message(where, divisor)), where_(std::move(where)), divisor_(divisor)
{
}

std::vector<MonomialRef> triangular_basis(std::size_t n, unsigned r)
{
    std::vector<MultiIndex> monomials = monomials_of_degree(n, r);
    std::reverse(monomials.begin(), monomials.end());
    std::vector<MonomialRef> out;
    out.reserve(n * monomials.size());
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& m : monomials) {
            out.push_back({j, m});
        }
    }
    return out;
}

} // namespace embedflow
