// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace embedflow {

namespace {

Rational parse_decimal(std::string_view text)
{
    // [sign] digits [. digits] [e|E [sign] digits]
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        digits += text[pos++];
        seen_digit = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos++];
            --scale;
            seen_digit = true;
        }
    }
    if (!seen_digit) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        std::string exponent;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exponent += text[pos++];
        }
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            exponent += text[pos++];
        }
        if (exponent.empty() || exponent == "+" || exponent == "-") {
            throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
        }
        scale += std::stol(exponent);
    }
    if (pos != text.size()) {
        throw std::invalid_argument("trailing characters in '" + std::string(text) + "'");
    }
    mpz_class numerator(digits.empty() ? std::string("0") : digits, 10);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational result = scale < 0 ? Rational(numerator, power) : Rational(numerator * power);
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty number");
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return parse_decimal(text);
    }
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (sgn(den) == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    Rational q = num / den;
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

double to_double(const Rational& q)
{
    return q.get_d();
}

bool is_integer(const Rational& q)
{
    return q.get_den() == 1;
}

GaussRational& GaussRational::operator+=(const GaussRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o)
{
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o)
{
    const Rational d = o.norm();
    if (sgn(d) == 0) {
        throw std::domain_error("division by zero in Q(i)");
    }
    Rational re = (re_ * o.re_ + im_ * o.im_) / d;
    Rational im = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational GaussRational::pow(unsigned e) const
{
    GaussRational result(1);
    GaussRational base = *this;
    while (e != 0) {
        if (e & 1U) {
            result *= base;
        }
        e >>= 1U;
        if (e != 0) {
            base *= base;
        }
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z)
{
    return os << to_string(z);
}

std::string to_string(const GaussRational& z)
{
    if (z.is_real()) {
        return to_string(z.re());
    }
    std::ostringstream os;
    os << to_string(z.re()) << (sgn(z.im()) < 0 ? "-" : "+") << to_string(Rational(abs(z.im()))) << "i";
    return os.str();
}

} // namespace embedflow
