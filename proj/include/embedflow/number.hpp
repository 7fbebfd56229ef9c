// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <string>

#include "embedflow/log_scalar.hpp"
#include "embedflow/rational.hpp"

namespace embedflow {

using Complex = std::complex<double>;

/// A complex number with whatever exact descriptions are known for it.
///   gauss:     the value exactly, as an element of Q(i)
///   exp_form:  value == exp(*exp_form)
///   log_form:  value == *log_form (used for logarithm-valued entries)
/// The floating-point value is always present.
struct Number {
    std::complex<double> value{0.0, 0.0};
    std::optional<GaussRational> gauss;
    std::optional<ExactLog> exp_form;
    std::optional<ExactLog> log_form;

    static Number from_double(double v) { return from_complex({v, 0.0}); }
    static Number from_complex(std::complex<double> v);
    /// Also derives exp_form when the principal log is exactly representable.
    static Number from_gauss(const GaussRational& g);
    /// exp(e); gauss is filled in when the value is rational (e.g. exp(2 ln 2) = 4).
    static Number exp_of(const ExactLog& e);
    static Number log_value(const ExactLog& e);
    static Number log_value(const LogScalar& s);

    bool is_real() const;
    bool is_exact() const { return gauss || exp_form || log_form; }
    Number conj() const;

    /// Value as a LogScalar, exact when log_form is known.
    LogScalar as_log_scalar() const;
    /// Principal-branch logarithm, exact when possible.
    LogScalar log() const;

    std::string to_string() const;
};

/// Principal logarithm of a Gaussian rational when it is exactly an ExactLog:
/// real numbers, and complex numbers whose argument is a multiple of pi/4.
std::optional<ExactLog> exact_principal_log(const GaussRational& g);

} // namespace embedflow
