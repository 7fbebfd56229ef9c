// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/multi_index.hpp"

#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace embedflow {

MultiIndex MultiIndex::unit(std::size_t dimension, std::size_t i)
{
    MultiIndex m(dimension);
    m.exps_.at(i) = 1;
    return m;
}

unsigned MultiIndex::degree() const
{
    return std::accumulate(exps_.begin(), exps_.end(), 0U);
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& o)
{
    if (o.dimension() != dimension()) {
        throw std::invalid_argument("multi-index dimension mismatch");
    }
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        exps_[i] += o.exps_[i];
    }
    return *this;
}

std::string MultiIndex::to_string() const
{
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& m)
{
    os << '(';
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        os << (i ? "," : "") << m[i];
    }
    return os << ')';
}

std::strong_ordering lex_compare(const MultiIndex& a, const MultiIndex& b)
{
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("lex_compare: dimension mismatch");
    }
    for (std::size_t l = 0; l < a.dimension(); ++l) {
        if (a[l] != b[l]) {
            return a[l] > b[l] ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const
{
    const unsigned da = a.degree();
    const unsigned db = b.degree();
    if (da != db) {
        return da < db;
    }
    return lex_compare(a, b) == std::strong_ordering::less;
}

namespace {

void enumerate(std::size_t pos, unsigned remaining, MultiIndex& current, std::vector<MultiIndex>& out)
{
    if (pos + 1 == current.dimension()) {
        current[pos] = remaining;
        out.push_back(current);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        current[pos] = e;
        enumerate(pos + 1, remaining - e, current, out);
    }
    current[pos] = 0;
}

} // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned d)
{
    std::vector<MultiIndex> out;
    if (n == 0) {
        return out;
    }
    MultiIndex current(n);
    enumerate(0, d, current, out);
    return out;
}

std::size_t monomial_count(std::size_t n, unsigned d)
{
    // C(d+n-1, n-1)
    std::size_t result = 1;
    for (std::size_t k = 1; k < n; ++k) {
        result = result * (d + k) / k;
    }
    return result;
}

} // namespace embedflow

std::size_t std::hash<embedflow::MultiIndex>::operator()(const embedflow::MultiIndex& m) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (unsigned e : m.exponents()) {
        h ^= e;
        h *= 0x100000001b3ULL;
    }
    return h;
}
