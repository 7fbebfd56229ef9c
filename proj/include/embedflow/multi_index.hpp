// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace embedflow {

/// Exponent vector m in Z_+^n. The degree |m| is derived from the entries.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dimension) : exps_(dimension, 0U) {}
    MultiIndex(std::initializer_list<unsigned> exps) : exps_(exps) {}
    explicit MultiIndex(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    static MultiIndex unit(std::size_t dimension, std::size_t i);

    std::size_t dimension() const { return exps_.size(); }
    unsigned degree() const;
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<unsigned>& exponents() const { return exps_; }

    MultiIndex& operator+=(const MultiIndex& o);
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    std::string to_string() const;

private:
    std::vector<unsigned> exps_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& m);

/// Lexicographic order on multi-indices: a comes before b when, at the first
/// position l where they differ, a[l] > b[l]. Returns less when a is before b.
/// Throws std::invalid_argument on dimension mismatch.
std::strong_ordering lex_compare(const MultiIndex& a, const MultiIndex& b);

/// Degree first, then lex_compare. Used as the storage order of jets.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of dimension n and total degree d, in lex order.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, unsigned d);

/// C(d+n-1, n-1): number of monomials of degree d in n variables.
std::size_t monomial_count(std::size_t n, unsigned d);

} // namespace embedflow

template <>
struct std::hash<embedflow::MultiIndex> {
    std::size_t operator()(const embedflow::MultiIndex& m) const noexcept;
};
