// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace embedflow {

using Rational = mpq_class;

/// Parses "3", "-2/5", "0.25" or "1.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);
bool is_integer(const Rational& q);

/// Element of Q(i), used for exact-mode coefficients.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(int v) : re_(v) {}
    GaussRational(long v) : re_(v) {}
    GaussRational(const Rational& re) : re_(re) { re_.canonicalize(); }
    GaussRational(const Rational& re, const Rational& im) : re_(re), im_(im)
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    /// |z|^2
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
    std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    GaussRational pow(unsigned e) const;

private:
    Rational re_{0};
    Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& z);
std::string to_string(const GaussRational& z);

} // namespace embedflow
