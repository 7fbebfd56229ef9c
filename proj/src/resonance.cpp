// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/resonance.hpp"

#include <algorithm>
#include <cmath>

namespace embedflow {

namespace {

template <class Ref>
bool contains(const std::vector<Ref>& refs, std::size_t j, const MultiIndex& m)
{
    return std::any_of(refs.begin(), refs.end(), [&](const Ref& r) { return r.j == j && r.m == m; });
}

} // namespace

bool ResonanceReport::is_map_resonant(std::size_t j, const MultiIndex& m) const
{
    return contains(map, j, m);
}

bool ResonanceReport::is_field_resonant(std::size_t j, const MultiIndex& m) const
{
    return contains(resonant, j, m);
}

std::optional<long> ResonanceReport::weak_witness(std::size_t j, const MultiIndex& m) const
{
    for (const auto& w : weak) {
        if (w.j == j && w.m == m) {
            return w.l;
        }
    }
    return std::nullopt;
}

MapResonanceTest::MapResonanceTest(std::vector<Number> lambda) : lambda_(std::move(lambda))
{
    const bool all_gauss = std::all_of(lambda_.begin(), lambda_.end(), [](const Number& x) { return x.gauss.has_value(); });
    const bool all_log = std::all_of(lambda_.begin(), lambda_.end(), [](const Number& x) { return x.exp_form.has_value(); });
    method_ = all_gauss ? "gauss" : all_log ? "log" : "float";
}

Complex MapResonanceTest::defect(std::size_t j, const MultiIndex& m) const
{
    Complex p{1.0, 0.0};
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        for (unsigned e = 0; e < m[i]; ++e) {
            p *= lambda_[i].value;
        }
    }
    return p - lambda_[j].value;
}

bool MapResonanceTest::resonant(std::size_t j, const MultiIndex& m) const
{
    if (method_ == "gauss") {
        GaussRational p(1);
        for (std::size_t i = 0; i < m.dimension(); ++i) {
            if (m[i] > 0) {
                p *= lambda_[i].gauss->pow(m[i]);
            }
        }
        return p == *lambda_[j].gauss;
    }
    if (method_ == "log") {
        ExactLog s;
        for (std::size_t i = 0; i < m.dimension(); ++i) {
            if (m[i] > 0) {
                s += *lambda_[i].exp_form * static_cast<long>(m[i]);
            }
        }
        s -= *lambda_[j].exp_form;
        return s.two_pi_i_multiple().has_value();
    }
    const double scale = std::max(1.0, std::abs(lambda_[j].value));
    return std::abs(defect(j, m)) <= kResonanceTolerance * scale;
}

ResonanceReport map_resonances(const std::vector<Number>& lambda, unsigned degree)
{
    const MapResonanceTest test(lambda);
    ResonanceReport out;
    out.max_degree = degree;
    out.method = test.method();
    const std::size_t n = lambda.size();
    for (unsigned d = 2; d <= degree; ++d) {
        const auto monomials = monomials_of_degree(n, d);
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& m : monomials) {
                if (test.resonant(j, m)) {
                    out.map.push_back({j, m});
                } else if (out.method == "float") {
                    const double scale = std::max(1.0, std::abs(lambda[j].value));
                    if (std::abs(test.defect(j, m)) <= 100.0 * kResonanceTolerance * scale) {
                        out.near.push_back({j, m});
                    }
                }
            }
        }
    }
    return out;
}

LogScalar field_defect(const std::vector<LogScalar>& mu, std::size_t j, const MultiIndex& m)
{
    LogScalar s;
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        if (m[i] > 0) {
            s += mu[i] * static_cast<long>(m[i]);
        }
    }
    return s - mu[j];
}

ResonanceReport field_resonances(const std::vector<LogScalar>& mu, unsigned degree)
{
    ResonanceReport out;
    out.max_degree = degree;
    const bool exact = std::all_of(mu.begin(), mu.end(), [](const LogScalar& x) { return x.is_exact(); });
    out.method = exact ? "log" : "float";
    const std::size_t n = mu.size();
    for (unsigned d = 2; d <= degree; ++d) {
        const auto monomials = monomials_of_degree(n, d);
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& m : monomials) {
                const LogScalar defect = field_defect(mu, j, m);
                if (defect.is_zero()) {
                    out.resonant.push_back({j, m});
                    out.map.push_back({j, m});
                } else if (auto l = defect.two_pi_i_multiple()) {
                    // witness convention: mu_j - <m, mu> = 2 pi i l
                    out.weak.push_back({j, m, -*l});
                    out.map.push_back({j, m});
                }
            }
        }
    }
    return out;
}

std::vector<Complex> operator_L_map_spectrum(const std::vector<Number>& lambda, unsigned r)
{
    const MapResonanceTest test(lambda);
    std::vector<Complex> out;
    const auto monomials = monomials_of_degree(lambda.size(), r);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
        for (const auto& m : monomials) {
            out.push_back(test.resonant(j, m) ? Complex{} : -test.defect(j, m));
        }
    }
    return out;
}

std::vector<LogScalar> operator_L_field_spectrum(const std::vector<LogScalar>& mu, unsigned r)
{
    std::vector<LogScalar> out;
    const auto monomials = monomials_of_degree(mu.size(), r);
    for (std::size_t j = 0; j < mu.size(); ++j) {
        for (const auto& m : monomials) {
            out.push_back(field_defect(mu, j, m));
        }
    }
    return out;
}

std::optional<unsigned> poincare_degree_bound(const std::vector<Number>& lambda)
{
    if (lambda.empty()) {
        return std::nullopt;
    }
    bool above = true;
    bool below = true;
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto& x : lambda) {
        const double a = std::log(std::abs(x.value));
        above = above && a > 0.0;
        below = below && a < 0.0;
        lo = std::min(lo, std::abs(a));
        hi = std::max(hi, std::abs(a));
    }
    if (!above && !below) {
        return std::nullopt;
    }
    return static_cast<unsigned>(std::ceil(hi / lo - 1e-12));
}

} // namespace embedflow
