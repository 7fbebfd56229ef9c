// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "embedflow/poly_jet.hpp"
#include "embedflow/resonance.hpp"
#include "embedflow/spectral.hpp"

namespace embedflow {

/// Raised when a nonresonant divisor is below the float-mode threshold.
class NearResonanceError : public std::runtime_error {
public:
    NearResonanceError(MonomialRef where, double divisor);
    const MonomialRef& where() const { return where_; }
    double divisor() const { return divisor_; }

private:
    MonomialRef where_;
    double divisor_;
};

inline constexpr double kNearResonanceThreshold = 1e-9;

struct DegreeDiagnostics {
    unsigned degree = 0;
    std::size_t unknowns = 0;
    std::size_t resonant = 0;
    /// Smallest / largest |lambda^m - lambda_j| over nonresonant unknowns.
    double min_divisor = std::numeric_limits<double>::infinity();
    double max_divisor = 0.0;
};

template <class C>
struct NormalFormResult {
    PolyJet<C> G;
    PolyJet<C> h;
    std::vector<DegreeDiagnostics> diagnostics;
};

/// Degree-r monomial fields y^m e_j ordered by j ascending and, within a
/// component, by reverse lex order. Both homological operators are lower
/// triangular in this order.
std::vector<MonomialRef> triangular_basis(std::size_t n, unsigned r);

namespace detail {

template <class C>
std::vector<C> linear_entries(const TriangularForm& a);

template <>
inline std::vector<Complex> linear_entries<Complex>(const TriangularForm& a)
{
    return a.matrix;
}

template <>
inline std::vector<GaussRational> linear_entries<GaussRational>(const TriangularForm& a)
{
    if (!a.exact) {
        throw std::invalid_argument("exact mode needs a linear part with entries in Q(i)");
    }
    return *a.exact;
}

/// (A y)^m e_j - y^m A e_j, homogeneous of degree |m|.
template <class C>
PolyJet<C> homological_image(const std::vector<C>& a, std::size_t n, std::size_t j, const MultiIndex& m)
{
    using T = CoeffTraits<C>;
    const unsigned r = m.degree();
    Poly<C> product = Poly<C>::constant(n, T::from_int(1));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i] == 0) {
            continue;
        }
        Poly<C> row(n);
        for (std::size_t s = 0; s < n; ++s) {
            row.add(MultiIndex::unit(n, s), a[i * n + s]);
        }
        for (unsigned e = 0; e < m[i]; ++e) {
            product = product.multiply(row, r);
        }
    }
    PolyJet<C> out(n, r);
    out.set_component(j, product);
    for (std::size_t i = 0; i < n; ++i) {
        out.add(i, m, -a[i * n + j]);
    }
    return out;
}

} // namespace detail

/// Solves h(Ay) - A h(y) = rhs - g for homogeneous rhs of degree k. g keeps
/// the resonant part, h is supported on nonresonant monomials only.
/// Returns (h_k, g_k).
template <class C>
std::pair<PolyJet<C>, PolyJet<C>> homological_solve(const TriangularForm& a, const PolyJet<C>& rhs, unsigned k,
                                                    DegreeDiagnostics* diag = nullptr)
{
    using T = CoeffTraits<C>;
    const std::size_t n = a.n;
    if (rhs.dimension() != n) {
        throw std::invalid_argument("homological_solve: dimension mismatch");
    }
    const std::vector<C> entries = detail::linear_entries<C>(a);
    const MapResonanceTest test(a.diagonal);
    PolyJet<C> residual = rhs.homogeneous(k).truncated(k);
    if (residual.term_count() != rhs.truncated(rhs.degree()).term_count()) {
        throw std::invalid_argument("homological_solve: rhs is not homogeneous of degree " + std::to_string(k));
    }
    PolyJet<C> h(n, k);
    PolyJet<C> g(n, k);
    DegreeDiagnostics local;
    local.degree = k;
    for (const auto& b : triangular_basis(n, k)) {
        ++local.unknowns;
        const C r = residual.coefficient(b.j, b.m);
        if (test.resonant(b.j, b.m)) {
            ++local.resonant;
            g.add(b.j, b.m, r);
            residual.add(b.j, b.m, -r);
            continue;
        }
        const PolyJet<C> image = detail::homological_image(entries, n, b.j, b.m);
        const C divisor = image.coefficient(b.j, b.m);
        const double size = T::magnitude(divisor);
        local.min_divisor = std::min(local.min_divisor, size);
        local.max_divisor = std::max(local.max_divisor, size);
        if (T::is_zero(divisor) || size < kNearResonanceThreshold) {
            throw NearResonanceError(b, size);
        }
        if (T::is_zero(r)) {
            continue;
        }
        const C coef = r / divisor;
        h.add(b.j, b.m, coef);
        residual -= image * coef;
    }
    if (diag) {
        *diag = local;
    }
    return {h, g};
}

/// Distinguished normal form of F(y) = A y + f(y) with A lower triangular.
/// f must be O(|y|^2).
template <class C>
NormalFormResult<C> distinguished_normal_form(const TriangularForm& a, const PolyJet<C>& f, unsigned degree)
{
    const std::size_t n = a.n;
    if (f.dimension() != n) {
        throw std::invalid_argument("normal form: jet dimension does not match the linear part");
    }
    if (!f.is_zero() && f.min_degree() < 2) {
        throw std::invalid_argument("normal form: nonlinear part has constant or linear terms");
    }
    const auto lin = PolyJet<C>::linear(n, degree, detail::linear_entries<C>(a));
    const auto id = PolyJet<C>::identity(n, degree);
    const PolyJet<C> fN = f.truncated(degree);
    NormalFormResult<C> out;
    out.h = PolyJet<C>(n, degree);
    PolyJet<C> g(n, degree);
    for (unsigned k = 2; k <= degree; ++k) {
        // F_k = [f(y + h) - h(Ay + g)]_k with h, g known below degree k.
        PolyJet<C> fk = compose(fN, id + out.h, k).homogeneous(k);
        if (!out.h.is_zero()) {
            fk -= compose(out.h, lin + g, k).homogeneous(k);
        }
        DegreeDiagnostics diag;
        auto [hk, gk] = homological_solve(a, fk.truncated(k), k, &diag);
        out.diagnostics.push_back(diag);
        out.h += hk.with_degree(degree);
        g += gk.with_degree(degree);
    }
    out.G = lin + g;
    return out;
}

/// F(y + h(y)) - (G(y) + h(G(y))) to degree N, with F = A y + f.
template <class C>
PolyJet<C> conjugacy_residual(const TriangularForm& a, const PolyJet<C>& f, const PolyJet<C>& G, const PolyJet<C>& h,
                              unsigned degree)
{
    const std::size_t n = a.n;
    const auto F = PolyJet<C>::linear(n, degree, detail::linear_entries<C>(a)) + f.truncated(degree);
    const auto id = PolyJet<C>::identity(n, degree);
    return compose(F, id + h.truncated(degree), degree) - (G.truncated(degree) + compose(h.truncated(degree), G.truncated(degree), degree));
}

} // namespace embedflow
