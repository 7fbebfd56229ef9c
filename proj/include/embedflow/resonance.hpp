// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "embedflow/log_scalar.hpp"
#include "embedflow/multi_index.hpp"
#include "embedflow/number.hpp"

namespace embedflow {

/// Monomial x^m e_j (j is 0-based).
struct MonomialRef {
    std::size_t j = 0;
    MultiIndex m;
    friend bool operator==(const MonomialRef&, const MonomialRef&) = default;
};

struct WeakRef {
    std::size_t j = 0;
    MultiIndex m;
    long l = 0;
    friend bool operator==(const WeakRef&, const WeakRef&) = default;
};

struct ResonanceReport {
    unsigned min_degree = 2;
    unsigned max_degree = 2;
    /// lambda_j == lambda^m
    std::vector<MonomialRef> map;
    /// mu_j == <m, mu>
    std::vector<MonomialRef> resonant;
    /// mu_j - <m, mu> == 2 pi i l with l != 0
    std::vector<WeakRef> weak;
    /// Float mode only: pairs whose defect lies in (tol, 100 tol].
    std::vector<MonomialRef> near;
    /// "gauss", "log" or "float": how the map test was decided.
    std::string method;

    bool is_map_resonant(std::size_t j, const MultiIndex& m) const;
    bool is_field_resonant(std::size_t j, const MultiIndex& m) const;
    std::optional<long> weak_witness(std::size_t j, const MultiIndex& m) const;
};

/// Tolerance used when neither exact test is available.
inline constexpr double kResonanceTolerance = 1e-9;

/// Decides lambda^m == lambda_j, exactly whenever the inputs allow it.
class MapResonanceTest {
public:
    explicit MapResonanceTest(std::vector<Number> lambda);

    bool resonant(std::size_t j, const MultiIndex& m) const;
    /// lambda^m - lambda_j in floating point.
    Complex defect(std::size_t j, const MultiIndex& m) const;
    const std::string& method() const { return method_; }
    const std::vector<Number>& eigenvalues() const { return lambda_; }

private:
    std::vector<Number> lambda_;
    std::string method_;
};

ResonanceReport map_resonances(const std::vector<Number>& lambda, unsigned degree);
ResonanceReport field_resonances(const std::vector<LogScalar>& mu, unsigned degree);

/// <m, mu> - mu_j
LogScalar field_defect(const std::vector<LogScalar>& mu, std::size_t j, const MultiIndex& m);

/// {lambda_j - lambda^m : |m| = r}, j outer, m in lex order.
std::vector<Complex> operator_L_map_spectrum(const std::vector<Number>& lambda, unsigned r);
/// {<m, mu> - mu_j : |m| = r}, same order.
std::vector<LogScalar> operator_L_field_spectrum(const std::vector<LogScalar>& mu, unsigned r);

/// ceil(max |ln|lambda|| / min |ln|lambda||) when all moduli are on one side
/// of 1; beyond it no resonance can occur.
std::optional<unsigned> poincare_degree_bound(const std::vector<Number>& lambda);

} // namespace embedflow
