// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "embedflow/poly_jet.hpp"
#include "embedflow/spectral.hpp"

namespace embedflow {

namespace detail {

// x = P w, with x_i = (w_i + w_{i+1})/2 and x_{i+1} = (w_i - w_{i+1})/(2i).
template <class C>
std::vector<C> pairing_matrix(const RealPairing& pairing, bool inverse)
{
    using T = CoeffTraits<C>;
    const std::size_t n = pairing.dimension;
    std::vector<C> m(n * n, T::zero());
    for (std::size_t i = 0; i < pairing.real_count; ++i) {
        m[i * n + i] = T::from_int(1);
    }
    const GaussRational half(Rational(1, 2));
    const GaussRational i_unit(Rational(0), Rational(1));
    for (const auto& [a, b] : pairing.pairs()) {
        if (!inverse) {
            m[a * n + a] = T::from_gauss(half);
            m[a * n + b] = T::from_gauss(half);
            m[b * n + a] = T::from_gauss(GaussRational(Rational(0), Rational(-1, 2)));
            m[b * n + b] = T::from_gauss(GaussRational(Rational(0), Rational(1, 2)));
        } else {
            m[a * n + a] = T::from_int(1);
            m[a * n + b] = T::from_gauss(i_unit);
            m[b * n + a] = T::from_int(1);
            m[b * n + b] = T::from_gauss(-i_unit);
        }
    }
    return m;
}

} // namespace detail

/// F* = P^{-1} o F o P in conjugate coordinates (z, conj z) per pair.
template <class C>
PolyJet<C> complexify(const PolyJet<C>& f, const RealPairing& pairing)
{
    pairing.validate();
    if (pairing.dimension != f.dimension()) {
        throw std::invalid_argument("complexify: pairing dimension " + std::to_string(pairing.dimension) +
                                    " does not match jet dimension " + std::to_string(f.dimension()));
    }
    if (pairing.trivial()) {
        return f;
    }
    const std::size_t n = f.dimension();
    const auto p = PolyJet<C>::linear(n, f.degree(), detail::pairing_matrix<C>(pairing, false));
    return apply_linear(detail::pairing_matrix<C>(pairing, true), compose(f, p, f.degree()));
}

/// Inverse of complexify. Throws std::domain_error when the result has an
/// imaginary part above tol, i.e. the input is not the complexification of
/// a real jet. tol = 0 demands exact symmetry.
template <class C>
PolyJet<C> realify(const PolyJet<C>& f, const RealPairing& pairing, double tol)
{
    pairing.validate();
    if (pairing.dimension != f.dimension()) {
        throw std::invalid_argument("realify: pairing dimension " + std::to_string(pairing.dimension) +
                                    " does not match jet dimension " + std::to_string(f.dimension()));
    }
    const std::size_t n = f.dimension();
    PolyJet<C> real = f;
    if (!pairing.trivial()) {
        const auto pinv = PolyJet<C>::linear(n, f.degree(), detail::pairing_matrix<C>(pairing, true));
        real = apply_linear(detail::pairing_matrix<C>(pairing, false), compose(f, pinv, f.degree()));
    }
    PolyJet<C> out(n, f.degree());
    std::string violation;
    real.for_each([&](std::size_t j, const MultiIndex& m, const C& c) {
        const double im = CoeffTraits<C>::imag_magnitude(c);
        const double scale = std::max(1.0, CoeffTraits<C>::magnitude(c));
        if (im > tol * scale && violation.empty()) {
            violation = "component " + std::to_string(j + 1) + " monomial " + m.to_string();
        }
        out.add(j, m, CoeffTraits<C>::real_part(c));
    });
    if (!violation.empty()) {
        throw std::domain_error("realify: conjugate symmetry violated at " + violation);
    }
    return out;
}

} // namespace embedflow
