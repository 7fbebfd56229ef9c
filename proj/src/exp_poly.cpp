// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/exp_poly.hpp"

#include <cmath>
#include <sstream>

namespace embedflow {

ExpPoly ExpPoly::term(Complex c, unsigned k, const LogScalar& a)
{
    ExpPoly p;
    p.add_term(c, k, a);
    return p;
}

void ExpPoly::add_term(Complex c, unsigned k, const LogScalar& a)
{
    if (c == Complex{}) {
        return;
    }
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (it->k == k && it->a.equals(a)) {
            it->c += c;
            if (it->c == Complex{}) {
                terms_.erase(it);
            }
            return;
        }
    }
    terms_.push_back({c, k, a});
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o)
{
    for (const auto& t : o.terms_) {
        add_term(t.c, t.k, t.a);
    }
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o)
{
    for (const auto& t : o.terms_) {
        add_term(-t.c, t.k, t.a);
    }
    return *this;
}

ExpPoly operator-(const ExpPoly& a)
{
    ExpPoly out = a;
    for (auto& t : out.terms_) {
        t.c = -t.c;
    }
    return out;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b)
{
    ExpPoly out;
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            out.add_term(x.c * y.c, x.k + y.k, x.a + y.a);
        }
    }
    return out;
}

ExpPoly operator*(ExpPoly a, Complex s)
{
    if (s == Complex{}) {
        return {};
    }
    for (auto& t : a.terms_) {
        t.c *= s;
    }
    return a;
}

bool operator==(const ExpPoly& a, const ExpPoly& b)
{
    if (a.terms_.size() != b.terms_.size()) {
        return false;
    }
    for (const auto& x : a.terms_) {
        bool found = false;
        for (const auto& y : b.terms_) {
            if (x.k == y.k && x.a.equals(y.a) && x.c == y.c) {
                found = true;
                break;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

Complex ExpPoly::eval(double t) const
{
    Complex sum{};
    for (const auto& term : terms_) {
        sum += term.c * std::pow(t, static_cast<double>(term.k)) * term.a.exp_at(t);
    }
    return sum;
}

Complex unit_integral(unsigned k, const LogScalar& a)
{
    if (a.is_zero()) {
        return {1.0 / (k + 1.0), 0.0};
    }
    const Complex v = a.value();
    if (a.two_pi_i_multiple()) {
        // e^a == 1: I_0 = 0, I_j = (1 - j I_{j-1}) / a
        Complex I{};
        for (unsigned j = 1; j <= k; ++j) {
            I = (1.0 - static_cast<double>(j) * I) / v;
        }
        return I;
    }
    const Complex ea = std::exp(v);
    if (std::abs(v) > k + 1.0) {
        Complex I = (ea - 1.0) / v;
        for (unsigned j = 1; j <= k; ++j) {
            I = (ea - static_cast<double>(j) * I) / v;
        }
        return I;
    }
    Complex sum{};
    if (v.real() >= 0.0) {
        // sum_n v^n / (n! (n+k+1))
        Complex power{1.0, 0.0};
        for (unsigned n = 0; n < 400; ++n) {
            const Complex term = power / (n + k + 1.0);
            sum += term;
            if (n > std::abs(v) && std::abs(term) <= 1e-18 * std::abs(sum)) {
                break;
            }
            power *= v / (n + 1.0);
        }
        return sum;
    }
    // e^v sum_n (-v)^n k! / (n+k+1)!
    Complex term{1.0 / (k + 1.0), 0.0};
    for (unsigned n = 0; n < 400; ++n) {
        sum += term;
        if (n > std::abs(v) && std::abs(term) <= 1e-18 * std::abs(sum)) {
            break;
        }
        term *= -v / (n + k + 2.0);
    }
    return ea * sum;
}

Complex ExpPoly::unit_integral() const
{
    Complex sum{};
    for (const auto& t : terms_) {
        sum += t.c * embedflow::unit_integral(t.k, t.a);
    }
    return sum;
}

ExpPoly ExpPoly::antiderivative() const
{
    ExpPoly out;
    for (const auto& t : terms_) {
        if (t.a.is_zero()) {
            out.add_term(t.c / (t.k + 1.0), t.k + 1, LogScalar());
            continue;
        }
        // e^{at} sum_j (-1)^{k-j} k!/(j! a^{k-j+1}) t^j - (-1)^k k!/a^{k+1}
        const Complex a = t.a.value();
        double kfact = 1.0;
        for (unsigned i = 2; i <= t.k; ++i) {
            kfact *= i;
        }
        double jfact = 1.0;
        for (unsigned j = 0; j <= t.k; ++j) {
            if (j > 0) {
                jfact *= j;
            }
            const double sign = ((t.k - j) % 2 == 0) ? 1.0 : -1.0;
            out.add_term(t.c * sign * kfact / (jfact * std::pow(a, static_cast<double>(t.k - j + 1))), j, t.a);
        }
        const double sign = (t.k % 2 == 0) ? 1.0 : -1.0;
        out.add_term(-t.c * sign * kfact / std::pow(a, static_cast<double>(t.k + 1)), 0, LogScalar());
    }
    return out;
}

double ExpPoly::magnitude() const
{
    double s = 0.0;
    for (const auto& t : terms_) {
        s += std::abs(t.c);
    }
    return s;
}

std::string ExpPoly::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << "(" << t.c.real() << (t.c.imag() < 0 ? "-" : "+") << std::abs(t.c.imag()) << "i)";
        if (t.k > 0) {
            os << "*t^" << t.k;
        }
        if (!t.a.is_zero()) {
            os << "*exp((" << t.a.to_string() << ")t)";
        }
    }
    return os.str();
}

PolyJet<ExpPoly> lift(const PolyJet<Complex>& jet)
{
    return jet.map_coefficients([](const Complex& c) { return ExpPoly(c); });
}

PolyJet<Complex> evaluate(const PolyJet<ExpPoly>& jet, double t)
{
    return jet.map_coefficients([t](const ExpPoly& p) { return p.eval(t); });
}

} // namespace embedflow
