// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "embedflow/resonance.hpp"
#include "oracles.hpp"
#include "random_germs.hpp"

using namespace embedflow;

namespace {

const double pi = std::numbers::pi;

std::vector<Number> gauss(std::initializer_list<long> values)
{
    std::vector<Number> out;
    for (long v : values) {
        out.push_back(Number::from_gauss(v));
    }
    return out;
}

LogScalar exact(const LogReal& re, const Rational& q = 0)
{
    return LogScalar(ExactLog{re, q});
}

std::size_t binom(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// brute force over Q(i): lambda^m == lambda_j
std::set<std::pair<std::size_t, std::vector<unsigned>>> brute_map(const std::vector<GaussRational>& lambda, unsigned N)
{
    std::set<std::pair<std::size_t, std::vector<unsigned>>> out;
    for (unsigned r = 2; r <= N; ++r) {
        for (const auto& m : monomials_of_degree(lambda.size(), r)) {
            GaussRational p(1);
            for (std::size_t i = 0; i < lambda.size(); ++i) {
                p *= lambda[i].pow(m[i]);
            }
            for (std::size_t j = 0; j < lambda.size(); ++j) {
                if (p == lambda[j]) {
                    out.insert({j, m.exponents()});
                }
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("map_resonances: worked cases")
{
    const auto r = map_resonances(gauss({4, 2}), 6);
    REQUIRE(r.map.size() == 1);
    CHECK(r.map[0] == MonomialRef{0, MultiIndex{0, 2}});
    CHECK(r.method == "gauss");

    for (unsigned N = 2; N <= 10; ++N) {
        CHECK(map_resonances(gauss({2}), N).map.empty());
    }
}

TEST_CASE("map_resonances agrees with brute force over Q(i)")
{
    std::mt19937 rng(8);
    const std::vector<GaussRational> pool{GaussRational(2), GaussRational(4), GaussRational(-2),
                                          GaussRational(Rational(1, 2)), GaussRational(0, 2), GaussRational(8),
                                          GaussRational(3)};
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
        std::vector<GaussRational> lambda;
        std::vector<Number> numbers;
        for (std::size_t i = 0; i < n; ++i) {
            lambda.push_back(pool[static_cast<std::size_t>(testgen::uniform(rng, 0, 6))]);
            numbers.push_back(Number::from_gauss(lambda.back()));
        }
        const auto report = map_resonances(numbers, 6);
        std::set<std::pair<std::size_t, std::vector<unsigned>>> got;
        for (const auto& ref : report.map) {
            got.insert({ref.j, ref.m.exponents()});
        }
        CHECK(got == brute_map(lambda, 6));
    }
}

TEST_CASE("field_resonances: worked cases")
{
    const std::vector<LogScalar> mu{exact(LogReal(8)), exact(LogReal(1), Rational(1, 4)),
                                    exact(LogReal(1), Rational(-1, 4))};
    const auto r = field_resonances(mu, 8);
    REQUIRE(r.resonant.size() == 1);
    CHECK(r.resonant[0] == MonomialRef{0, MultiIndex{0, 4, 4}});
    REQUIRE(r.weak.size() == 2);
    CHECK(r.weak_witness(0, MultiIndex{0, 8, 0}) == -1);
    CHECK(r.weak_witness(0, MultiIndex{0, 0, 8}) == 1);

    const LogReal l2 = LogReal::log_of(2);
    const std::vector<LogScalar> star{exact(l2 * Rational(2)), exact(l2, 1), exact(l2, -1)};
    const auto s = field_resonances(star, 2);
    CHECK(s.is_field_resonant(0, MultiIndex{0, 1, 1}));
    CHECK(s.weak_witness(0, MultiIndex{0, 2, 0}).has_value());
    CHECK(s.weak_witness(0, MultiIndex{0, 0, 2}).has_value());
    CHECK(s.weak.size() == 2);

    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<LogScalar> real;
        for (int i = 0; i < 3; ++i) {
            real.push_back(LogScalar(Complex(testgen::uniform_real(rng, -2, 2), 0.0)));
        }
        CHECK(field_resonances(real, 6).weak.empty());
    }
}

TEST_CASE("operator_L spectra: worked cases")
{
    const auto s = operator_L_map_spectrum(gauss({4, 2}), 2);
    const std::vector<Complex> expected{-12, -4, 0, -14, -6, -2};
    CHECK(oracle::multiset_distance(expected, s) == 0.0);

    const auto one = operator_L_map_spectrum(gauss({2}), 3);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Complex(-6.0, 0.0));

    const LogReal l2 = LogReal::log_of(2);
    const auto f = operator_L_field_spectrum({exact(l2 * Rational(2)), exact(l2)}, 2);
    bool zero = false;
    for (const auto& v : f) {
        zero = zero || v.is_zero();
        CHECK(v.value().imag() == 0.0);
    }
    CHECK(zero);

    const std::vector<LogScalar> mu{exact(LogReal(8)), exact(LogReal(1), Rational(1, 4)),
                                    exact(LogReal(1), Rational(-1, 4))};
    int witnesses = 0;
    for (const auto& v : operator_L_field_spectrum(mu, 8)) {
        if (auto l = v.two_pi_i_multiple(); l && std::abs(*l) == 1) {
            ++witnesses;
        }
    }
    CHECK(witnesses == 2);
}

TEST_CASE("spectra sizes and zero entries track the resonance reports")
{
    std::mt19937 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
        std::vector<Number> lambda;
        std::vector<LogScalar> mu;
        for (std::size_t i = 0; i < n; ++i) {
            const long w = testgen::uniform(rng, 1, 4);
            const Rational q(testgen::uniform(rng, -1, 1), 2);
            const ExactLog e{LogReal::log_of(2) * Rational(w), q};
            lambda.push_back(Number::exp_of(e));
            mu.push_back(LogScalar(e));
        }
        for (unsigned r = 2; r <= 5; ++r) {
            const auto sm = operator_L_map_spectrum(lambda, r);
            const auto sf = operator_L_field_spectrum(mu, r);
            CHECK(sm.size() == n * binom(r + n - 1, n - 1));
            CHECK(sf.size() == sm.size());
            const auto mr = map_resonances(lambda, r);
            const auto fr = field_resonances(mu, r);
            std::size_t map_here = 0;
            std::size_t field_here = 0;
            std::size_t weak_here = 0;
            for (const auto& x : mr.map) {
                map_here += x.m.degree() == r ? 1 : 0;
            }
            for (const auto& x : fr.resonant) {
                field_here += x.m.degree() == r ? 1 : 0;
            }
            for (const auto& x : fr.weak) {
                weak_here += x.m.degree() == r ? 1 : 0;
            }
            std::size_t zeros_map = 0;
            for (const auto& v : sm) {
                zeros_map += std::abs(v) <= 1e-9 * std::max(1.0, std::abs(v)) ? 1 : 0;
            }
            std::size_t zeros_field = 0;
            std::size_t two_pi = 0;
            for (const auto& v : sf) {
                if (auto l = v.two_pi_i_multiple()) {
                    (*l == 0 ? zeros_field : two_pi) += 1;
                }
            }
            CHECK(zeros_map == map_here);
            CHECK(zeros_field == field_here);
            CHECK(two_pi == weak_here);
        }
    }
}

TEST_CASE("map resonance splits into field and weak resonance for mu = log lambda")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = static_cast<std::size_t>(testgen::uniform(rng, 2, 3));
        std::vector<Number> lambda;
        std::vector<LogScalar> mu;
        for (std::size_t i = 0; i < n; ++i) {
            const ExactLog e{LogReal(Rational(testgen::uniform(rng, 1, 3))),
                             Rational(testgen::uniform(rng, -4, 4), testgen::uniform(rng, 1, 4))};
            lambda.push_back(Number::exp_of(e));
            mu.push_back(LogScalar(e));
        }
        const auto mr = map_resonances(lambda, 6);
        const auto fr = field_resonances(mu, 6);
        std::size_t both = 0;
        for (const auto& x : mr.map) {
            const bool field = fr.is_field_resonant(x.j, x.m);
            const auto weak = fr.weak_witness(x.j, x.m);
            CHECK(field != weak.has_value());
            if (weak) {
                const Complex d = field_defect(mu, x.j, x.m).value();
                CHECK(*weak == std::lround(-d.imag() / (2 * pi)));
                CHECK(*weak != 0);
            }
            ++both;
        }
        CHECK(both == fr.resonant.size() + fr.weak.size());
    }
}

TEST_CASE("poincare degree bound gives a complete report")
{
    const auto lambda = gauss({4, 2});
    const auto bound = poincare_degree_bound(lambda);
    REQUIRE(bound.has_value());
    CHECK(*bound == 2);
    CHECK(map_resonances(lambda, *bound).map.size() == map_resonances(lambda, 12).map.size());

    const std::vector<Number> mixed{Number::from_gauss(2), Number::from_gauss(GaussRational(Rational(1, 3)))};
    CHECK_FALSE(poincare_degree_bound(mixed).has_value());

    const std::vector<Number> rotating{Number::exp_of({LogReal(8), 0}), Number::exp_of({LogReal(1), Rational(1, 4)}),
                                    Number::exp_of({LogReal(1), Rational(-1, 4)})};
    REQUIRE(poincare_degree_bound(rotating) == 8u);
    CHECK(map_resonances(rotating, 8).map.size() == map_resonances(rotating, 11).map.size());
}

TEST_CASE("float inputs use the tolerance and flag near misses")
{
    const std::vector<Number> lambda{Number::from_double(4.0), Number::from_double(2.0 + 1e-8)};
    const auto r = map_resonances(lambda, 3);
    CHECK(r.method == "float");
    CHECK(r.map.empty());
    CHECK_FALSE(r.near.empty());
}
