// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/number.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace embedflow {

namespace {

// exp(i*pi*q) for q in Z/2, else nullopt.
std::optional<GaussRational> exact_unit(const Rational& q)
{
    Rational twice = q * 2;
    twice.canonicalize();
    if (!is_integer(twice)) {
        return std::nullopt;
    }
    mpz_class r = twice.get_num() % 4;
    if (r < 0) {
        r += 4;
    }
    switch (r.get_si()) {
    case 0: return GaussRational(1);
    case 1: return GaussRational(Rational(0), Rational(1));
    case 2: return GaussRational(-1);
    default: return GaussRational(Rational(0), Rational(-1));
    }
}

// exp(r) when r is a Z-combination of logs with no constant part.
std::optional<Rational> exact_exp(const LogReal& r)
{
    if (sgn(r.constant()) != 0) {
        return std::nullopt;
    }
    mpz_class num = 1;
    mpz_class den = 1;
    for (const auto& [atom, c] : r.logs()) {
        if (!is_integer(c) || !c.get_num().fits_slong_p()) {
            return std::nullopt;
        }
        const long e = c.get_num().get_si();
        if (std::abs(e) > 4096) {
            return std::nullopt;
        }
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(atom), static_cast<unsigned long>(std::abs(e)));
        (e >= 0 ? num : den) *= p;
    }
    Rational out(num, den);
    out.canonicalize();
    return out;
}

} // namespace

std::optional<ExactLog> exact_principal_log(const GaussRational& g)
{
    if (g.is_zero()) {
        return std::nullopt;
    }
    const Rational& a = g.re();
    const Rational& b = g.im();
    if (sgn(b) == 0) {
        if (sgn(a) > 0) {
            return ExactLog{LogReal::log_of(a), Rational(0)};
        }
        return ExactLog{LogReal::log_of(Rational(-a)), Rational(1)};
    }
    if (sgn(a) == 0) {
        return ExactLog{LogReal::log_of(abs(b)), Rational(sgn(b) > 0 ? 1 : -1, 2)};
    }
    if (abs(a) == abs(b)) {
        // arg is +-pi/4 or +-3pi/4; modulus^2 = 2a^2
        LogReal re = LogReal::log_of(Rational(2 * a * a)) * Rational(1, 2);
        Rational q(sgn(a) > 0 ? 1 : 3, 4);
        if (sgn(b) < 0) {
            q = -q;
        }
        return ExactLog{re, q};
    }
    return std::nullopt;
}

Number Number::from_complex(std::complex<double> v)
{
    Number n;
    n.value = v;
    return n;
}

Number Number::from_gauss(const GaussRational& g)
{
    Number n;
    n.value = g.to_complex();
    n.gauss = g;
    n.exp_form = exact_principal_log(g);
    return n;
}

Number Number::exp_of(const ExactLog& e)
{
    Number n;
    n.exp_form = e;
    const double modulus = std::exp(e.re.to_double());
    if (auto unit = exact_unit(e.im_pi)) {
        n.value = modulus * unit->to_complex();
    } else {
        n.value = std::polar(modulus, to_double(e.im_pi) * std::numbers::pi);
    }
    if (auto unit = exact_unit(e.im_pi)) {
        if (auto r = exact_exp(e.re)) {
            n.gauss = *unit * GaussRational(*r);
            n.value = n.gauss->to_complex();
        }
    }
    return n;
}

Number Number::log_value(const ExactLog& e)
{
    Number n;
    n.value = e.to_complex();
    n.log_form = e;
    if (e.re.is_rational() && sgn(e.im_pi) == 0) {
        n.gauss = GaussRational(e.re.constant());
    }
    return n;
}

Number Number::log_value(const LogScalar& s)
{
    if (s.exact()) {
        return log_value(*s.exact());
    }
    return from_complex(s.value());
}

bool Number::is_real() const
{
    if (gauss) {
        return gauss->is_real();
    }
    if (log_form) {
        return sgn(log_form->im_pi) == 0;
    }
    if (exp_form) {
        return is_integer(exp_form->im_pi);
    }
    return value.imag() == 0.0;
}

Number Number::conj() const
{
    Number n;
    n.value = std::conj(value);
    if (gauss) {
        n.gauss = gauss->conj();
    }
    if (exp_form) {
        n.exp_form = exp_form->conj();
    }
    if (log_form) {
        n.log_form = log_form->conj();
    }
    return n;
}

LogScalar Number::as_log_scalar() const
{
    if (log_form) {
        return LogScalar(*log_form);
    }
    return LogScalar(value);
}

LogScalar Number::log() const
{
    if (exp_form) {
        return LogScalar(*exp_form);
    }
    return LogScalar(std::log(value));
}

std::string Number::to_string() const
{
    if (gauss) {
        return embedflow::to_string(*gauss);
    }
    if (log_form) {
        return log_form->to_string();
    }
    if (exp_form) {
        return "exp(" + exp_form->to_string() + ")";
    }
    std::ostringstream os;
    os.precision(17);
    os << value.real();
    if (value.imag() != 0.0) {
        os << (value.imag() < 0 ? "-" : "+") << std::abs(value.imag()) << "i";
    }
    return os.str();
}

} // namespace embedflow
