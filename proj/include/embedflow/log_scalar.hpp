// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "embedflow/rational.hpp"

namespace embedflow {

/// Exact real number of the form c0 + sum_a c_a * ln(a), with rational c's and
/// integer atoms a >= 2. Atoms are primes whenever factorization succeeds, so
/// the representation is canonical for logs of rationals.
class LogReal {
public:
    LogReal() = default;
    explicit LogReal(Rational constant) : constant_(std::move(constant)) { constant_.canonicalize(); }

    /// ln(q) for a positive rational q.
    static LogReal log_of(const Rational& q);
    /// Parses e.g. "8", "2*ln(2)", "1/2*ln(5)-3", "ln2".
    static LogReal parse(std::string_view text);

    const Rational& constant() const { return constant_; }
    const std::map<std::uint64_t, Rational>& logs() const { return logs_; }

    bool is_zero() const { return sgn(constant_) == 0 && logs_.empty(); }
    bool is_rational() const { return logs_.empty(); }
    double to_double() const;

    LogReal& operator+=(const LogReal& o);
    LogReal& operator-=(const LogReal& o);
    LogReal& operator*=(const Rational& s);

    friend LogReal operator+(LogReal a, const LogReal& b) { return a += b; }
    friend LogReal operator-(LogReal a, const LogReal& b) { return a -= b; }
    friend LogReal operator-(LogReal a) { return a *= Rational(-1); }
    friend LogReal operator*(LogReal a, const Rational& s) { return a *= s; }
    friend bool operator==(const LogReal& a, const LogReal& b)
    {
        return a.constant_ == b.constant_ && a.logs_ == b.logs_;
    }

    std::string to_string() const;

private:
    void add_log(std::uint64_t atom, const Rational& coef);

    Rational constant_{0};
    std::map<std::uint64_t, Rational> logs_;
};

/// Exact complex number re + i*pi*im_pi.
struct ExactLog {
    LogReal re;
    Rational im_pi{0};

    bool is_zero() const { return re.is_zero() && sgn(im_pi) == 0; }
    std::complex<double> to_complex() const;
    ExactLog conj() const { return {re, -im_pi}; }

    /// l when this equals 2*pi*i*l exactly, otherwise nullopt.
    std::optional<long> two_pi_i_multiple() const;

    ExactLog& operator+=(const ExactLog& o);
    ExactLog& operator-=(const ExactLog& o);
    friend ExactLog operator+(ExactLog a, const ExactLog& b) { return a += b; }
    friend ExactLog operator-(ExactLog a, const ExactLog& b) { return a -= b; }
    friend ExactLog operator*(const ExactLog& a, long k);
    friend bool operator==(const ExactLog& a, const ExactLog& b)
    {
        return a.re == b.re && a.im_pi == b.im_pi;
    }

    std::string to_string() const;
};

/// A complex scalar that may carry an exact ExactLog form alongside its
/// floating-point value. Equality is exact when both sides are exact, and
/// tolerance based otherwise.
class LogScalar {
public:
    static constexpr double kTolerance = 1e-9;

    LogScalar() : exact_(ExactLog{}) {}
    explicit LogScalar(const ExactLog& e) : value_(e.to_complex()), exact_(e) {}
    explicit LogScalar(std::complex<double> v) : value_(v) {}

    static LogScalar zero() { return LogScalar(); }

    std::complex<double> value() const { return value_; }
    const std::optional<ExactLog>& exact() const { return exact_; }
    bool is_exact() const { return exact_.has_value(); }

    bool is_zero() const;
    /// l with value == 2*pi*i*l (l may be 0).
    std::optional<long> two_pi_i_multiple() const;
    /// exp(value * t); exact unit values when the exponent is an exact multiple of i*pi/2 and t == 1.
    std::complex<double> exp_at(double t) const;

    LogScalar& operator+=(const LogScalar& o);
    LogScalar& operator-=(const LogScalar& o);
    friend LogScalar operator+(LogScalar a, const LogScalar& b) { return a += b; }
    friend LogScalar operator-(LogScalar a, const LogScalar& b) { return a -= b; }
    friend LogScalar operator-(const LogScalar& a) { return LogScalar() - a; }
    friend LogScalar operator*(const LogScalar& a, long k);

    bool equals(const LogScalar& o) const;
    friend bool operator==(const LogScalar& a, const LogScalar& b) { return a.equals(b); }

    std::string to_string() const;

private:
    std::complex<double> value_{0.0, 0.0};
    std::optional<ExactLog> exact_;
};

} // namespace embedflow
