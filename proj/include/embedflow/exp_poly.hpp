// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "embedflow/log_scalar.hpp"
#include "embedflow/poly_jet.hpp"

namespace embedflow {

/// c * t^k * exp(a t)
struct ExpTerm {
    Complex c;
    unsigned k = 0;
    LogScalar a;
};

/// Finite sum of ExpTerms. Terms with equal (k, a) are merged; exact zero
/// coefficients are dropped.
class ExpPoly {
public:
    ExpPoly() = default;
    ExpPoly(Complex c) { add_term(c, 0, LogScalar()); } // NOLINT: implicit lift of constants
    static ExpPoly term(Complex c, unsigned k, const LogScalar& a);

    const std::vector<ExpTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Complex c, unsigned k, const LogScalar& a);

    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator-(const ExpPoly& a);
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(ExpPoly a, Complex s);
    friend bool operator==(const ExpPoly& a, const ExpPoly& b);

    Complex eval(double t) const;
    /// Integral over [0, 1].
    Complex unit_integral() const;
    /// t -> integral over [0, t].
    ExpPoly antiderivative() const;
    /// Sum of |c| over terms.
    double magnitude() const;

    std::string to_string() const;

private:
    std::vector<ExpTerm> terms_;
};

/// Integral of t^k e^{a t} over [0, 1]. Exact 0 when a is a nonzero multiple
/// of 2*pi*i and k == 0, exact 1/(k+1) when a == 0.
Complex unit_integral(unsigned k, const LogScalar& a);

template <>
struct CoeffTraits<ExpPoly> {
    static ExpPoly zero() { return {}; }
    static ExpPoly from_int(long v) { return ExpPoly(Complex(static_cast<double>(v), 0.0)); }
    static bool is_zero(const ExpPoly& c) { return c.is_zero(); }
    static double magnitude(const ExpPoly& c) { return c.magnitude(); }
};

/// Lift a complex jet to constant ExpPoly coefficients.
PolyJet<ExpPoly> lift(const PolyJet<Complex>& jet);
/// Evaluate every coefficient at time t.
PolyJet<Complex> evaluate(const PolyJet<ExpPoly>& jet, double t);

} // namespace embedflow
