// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/log_scalar.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace embedflow {

namespace {

// Trial division bound; a cofactor left above it is kept as its own atom.
constexpr std::uint64_t kTrialLimit = 1000000;

std::map<std::uint64_t, long> factor(const mpz_class& value)
{
    std::map<std::uint64_t, long> out;
    mpz_class n = value;
    for (std::uint64_t p = 2; p <= kTrialLimit; ++p) {
        if (n == 1) {
            break;
        }
        if (mpz_class(p) * p > n) {
            break;
        }
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            n /= p;
            ++out[p];
        }
    }
    if (n != 1) {
        if (!n.fits_ulong_p()) {
            throw std::domain_error("exact logarithm: cofactor too large (" + n.get_str() + ")");
        }
        ++out[n.get_ui()];
    }
    return out;
}

} // namespace

LogReal LogReal::log_of(const Rational& q)
{
    if (sgn(q) <= 0) {
        throw std::domain_error("log of non-positive rational " + q.get_str());
    }
    LogReal out;
    for (const auto& [p, e] : factor(q.get_num())) {
        out.add_log(p, Rational(e));
    }
    for (const auto& [p, e] : factor(q.get_den())) {
        out.add_log(p, Rational(-e));
    }
    return out;
}

void LogReal::add_log(std::uint64_t atom, const Rational& coef)
{
    if (atom < 2) {
        throw std::invalid_argument("log atom must be >= 2");
    }
    // Split composite atoms so that the representation stays canonical.
    const auto parts = factor(mpz_class(static_cast<unsigned long>(atom)));
    for (const auto& [p, e] : parts) {
        Rational& slot = logs_[p];
        slot += coef * e;
        slot.canonicalize();
        if (sgn(slot) == 0) {
            logs_.erase(p);
        }
    }
}

double LogReal::to_double() const
{
    double v = embedflow::to_double(constant_);
    for (const auto& [atom, c] : logs_) {
        v += embedflow::to_double(c) * std::log(static_cast<double>(atom));
    }
    return v;
}

LogReal& LogReal::operator+=(const LogReal& o)
{
    constant_ += o.constant_;
    for (const auto& [atom, c] : o.logs_) {
        Rational& slot = logs_[atom];
        slot += c;
        if (sgn(slot) == 0) {
            logs_.erase(atom);
        }
    }
    return *this;
}

LogReal& LogReal::operator-=(const LogReal& o)
{
    constant_ -= o.constant_;
    for (const auto& [atom, c] : o.logs_) {
        Rational& slot = logs_[atom];
        slot -= c;
        if (sgn(slot) == 0) {
            logs_.erase(atom);
        }
    }
    return *this;
}

LogReal& LogReal::operator*=(const Rational& s)
{
    if (sgn(s) == 0) {
        constant_ = 0;
        logs_.clear();
        return *this;
    }
    constant_ *= s;
    for (auto& [atom, c] : logs_) {
        c *= s;
    }
    return *this;
}

LogReal LogReal::parse(std::string_view text)
{
    // Grammar: term (('+'|'-') term)*, term := [coef ['*']] 'ln' ['('] int [')'] | coef
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty log expression");
    }
    LogReal out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
        }
        std::size_t end = pos;
        // Find the end of this term: next '+'/'-' not directly following 'e'/'E'.
        while (end < s.size()) {
            if ((s[end] == '+' || s[end] == '-') && end > pos && s[end - 1] != 'e' && s[end - 1] != 'E') {
                break;
            }
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end;
        if (term.empty()) {
            throw std::invalid_argument("malformed log expression '" + std::string(text) + "'");
        }
        const auto ln = term.find("ln");
        if (ln == std::string::npos) {
            Rational c = parse_rational(term);
            out.constant_ += negative ? Rational(-c) : c;
            continue;
        }
        std::string coef_text = term.substr(0, ln);
        if (!coef_text.empty() && coef_text.back() == '*') {
            coef_text.pop_back();
        }
        Rational coef = coef_text.empty() ? Rational(1) : parse_rational(coef_text);
        std::string arg = term.substr(ln + 2);
        if (!arg.empty() && arg.front() == '(') {
            if (arg.back() != ')') {
                throw std::invalid_argument("unbalanced parenthesis in '" + std::string(text) + "'");
            }
            arg = arg.substr(1, arg.size() - 2);
        }
        const Rational a = parse_rational(arg);
        if (negative) {
            coef = -coef;
        }
        out += log_of(a) * coef;
    }
    out.constant_.canonicalize();
    return out;
}

std::string LogReal::to_string() const
{
    std::ostringstream os;
    bool first = true;
    if (sgn(constant_) != 0 || logs_.empty()) {
        os << constant_.get_str();
        first = false;
    }
    for (const auto& [atom, c] : logs_) {
        if (!first) {
            os << (sgn(c) < 0 ? "-" : "+");
        } else if (sgn(c) < 0) {
            os << "-";
        }
        const Rational mag = abs(c);
        if (mag != 1) {
            os << mag.get_str() << "*";
        }
        os << "ln(" << atom << ")";
        first = false;
    }
    return os.str();
}

std::complex<double> ExactLog::to_complex() const
{
    return {re.to_double(), embedflow::to_double(im_pi) * std::numbers::pi};
}

std::optional<long> ExactLog::two_pi_i_multiple() const
{
    if (!re.is_zero()) {
        return std::nullopt;
    }
    Rational half = im_pi / 2;
    half.canonicalize();
    if (!is_integer(half) || !half.get_num().fits_slong_p()) {
        return std::nullopt;
    }
    return half.get_num().get_si();
}

ExactLog& ExactLog::operator+=(const ExactLog& o)
{
    re += o.re;
    im_pi += o.im_pi;
    return *this;
}

ExactLog& ExactLog::operator-=(const ExactLog& o)
{
    re -= o.re;
    im_pi -= o.im_pi;
    return *this;
}

ExactLog operator*(const ExactLog& a, long k)
{
    return {a.re * Rational(k), Rational(a.im_pi * k)};
}

std::string ExactLog::to_string() const
{
    if (sgn(im_pi) == 0) {
        return re.to_string();
    }
    std::ostringstream os;
    if (!re.is_zero()) {
        os << re.to_string() << (sgn(im_pi) < 0 ? "-" : "+");
    } else if (sgn(im_pi) < 0) {
        os << "-";
    }
    const Rational mag = abs(im_pi);
    if (mag != 1) {
        os << mag.get_str() << "*";
    }
    os << "i*pi";
    return os.str();
}

bool LogScalar::is_zero() const
{
    if (exact_) {
        return exact_->is_zero();
    }
    return std::abs(value_) <= kTolerance;
}

std::optional<long> LogScalar::two_pi_i_multiple() const
{
    if (exact_) {
        return exact_->two_pi_i_multiple();
    }
    const double l = value_.imag() / (2.0 * std::numbers::pi);
    const double rounded = std::round(l);
    const double scale = std::max(1.0, std::abs(value_));
    if (std::abs(value_.real()) <= kTolerance * scale && std::abs(l - rounded) * 2.0 * std::numbers::pi <= kTolerance * scale) {
        return static_cast<long>(rounded);
    }
    return std::nullopt;
}

std::complex<double> LogScalar::exp_at(double t) const
{
    if (exact_ && t == 1.0 && exact_->re.is_zero()) {
        // exp(i*pi*q) is an exact unit for q in Z/2.
        Rational twice = exact_->im_pi * 2;
        twice.canonicalize();
        if (is_integer(twice)) {
            const long r = mpz_class((twice.get_num() % 4) + 4).get_si() % 4;
            switch (r) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
            }
        }
    }
    if (exact_ && sgn(exact_->im_pi) == 0) {
        return {std::exp(value_.real() * t), 0.0};
    }
    return std::exp(value_ * t);
}

LogScalar& LogScalar::operator+=(const LogScalar& o)
{
    value_ += o.value_;
    if (exact_ && o.exact_) {
        *exact_ += *o.exact_;
        value_ = exact_->to_complex();
    } else {
        exact_.reset();
    }
    return *this;
}

LogScalar& LogScalar::operator-=(const LogScalar& o)
{
    value_ -= o.value_;
    if (exact_ && o.exact_) {
        *exact_ -= *o.exact_;
        value_ = exact_->to_complex();
    } else {
        exact_.reset();
    }
    return *this;
}

LogScalar operator*(const LogScalar& a, long k)
{
    if (a.exact_) {
        return LogScalar(*a.exact_ * k);
    }
    return LogScalar(a.value_ * static_cast<double>(k));
}

bool LogScalar::equals(const LogScalar& o) const
{
    if (exact_ && o.exact_) {
        return *exact_ == *o.exact_;
    }
    const double scale = std::max({1.0, std::abs(value_), std::abs(o.value_)});
    return std::abs(value_ - o.value_) <= kTolerance * scale;
}

std::string LogScalar::to_string() const
{
    if (exact_) {
        return exact_->to_string();
    }
    std::ostringstream os;
    os.precision(17);
    os << value_.real();
    if (value_.imag() != 0.0) {
        os << (value_.imag() < 0 ? "-" : "+") << std::abs(value_.imag()) << "i";
    }
    return os.str();
}

} // namespace embedflow
