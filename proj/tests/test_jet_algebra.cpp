// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "embedflow/complexify.hpp"
#include "embedflow/multi_index.hpp"
#include "embedflow/poly_jet.hpp"
#include "oracles.hpp"
#include "random_germs.hpp"

using namespace embedflow;

namespace {

using QJet = PolyJet<GaussRational>;

QJet random_exact_jet(std::mt19937& rng, std::size_t n, unsigned degree, unsigned min_degree)
{
    QJet f(n, degree);
    for (int k = 0; k < 6; ++k) {
        const auto r = static_cast<unsigned>(testgen::uniform(rng, min_degree, degree));
        const auto mons = monomials_of_degree(n, r);
        const auto& m = mons[static_cast<std::size_t>(testgen::uniform(rng, 0, static_cast<long>(mons.size()) - 1))];
        f.add(static_cast<std::size_t>(testgen::uniform(rng, 0, static_cast<long>(n) - 1)), m,
              GaussRational(Rational(testgen::uniform(rng, -5, 5), testgen::uniform(rng, 1, 3))));
    }
    return f;
}

PolyJet<Complex> random_float_jet(std::mt19937& rng, std::size_t n, unsigned degree, unsigned min_degree)
{
    PolyJet<Complex> f(n, degree);
    for (int k = 0; k < 6; ++k) {
        const auto r = static_cast<unsigned>(testgen::uniform(rng, min_degree, degree));
        const auto mons = monomials_of_degree(n, r);
        const auto& m = mons[static_cast<std::size_t>(testgen::uniform(rng, 0, static_cast<long>(mons.size()) - 1))];
        f.add(static_cast<std::size_t>(testgen::uniform(rng, 0, static_cast<long>(n) - 1)), m,
              Complex(testgen::uniform_real(rng, -1, 1), testgen::uniform_real(rng, -1, 1)));
    }
    return f;
}

} // namespace

TEST_CASE("compose: identity, scaling and a hand expansion")
{
    std::mt19937 rng(1);
    const QJet g = random_exact_jet(rng, 2, 4, 1);
    CHECK(compose(QJet::identity(2, 4), g, 4) == g);

    QJet f1(1, 2);
    f1.add(0, MultiIndex{2}, 1);
    QJet g1(1, 2);
    g1.add(0, MultiIndex{1}, 2);
    QJet expected1(1, 2);
    expected1.add(0, MultiIndex{2}, 4);
    CHECK(compose(f1, g1, 2) == expected1);

    QJet f(2, 4);
    f.add(0, {1, 0}, 1);
    f.add(0, {0, 2}, 1);
    f.add(1, {0, 1}, 1);
    QJet h(2, 4);
    h.add(0, {1, 0}, 1);
    h.add(1, {1, 1}, 1);
    QJet expected(2, 4);
    expected.add(0, {1, 0}, 1);
    expected.add(0, {2, 2}, 1);
    expected.add(1, {1, 1}, 1);
    CHECK(compose(f, h, 4) == expected);
}

TEST_CASE("compose matches brute substitution")
{
    std::mt19937 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
        const auto f = random_float_jet(rng, n, 5, 1);
        const auto g = random_float_jet(rng, n, 5, 1);
        const auto lib = oracle::from_jet(compose(f, g, 5));
        const auto brute = oracle::compose(oracle::from_jet(f), oracle::from_jet(g), 5);
        CHECK(oracle::max_diff(lib, brute) <= 1e-12);
    }
}

TEST_CASE("compose rejects bad shapes")
{
    QJet a(2, 3);
    QJet b(3, 3);
    CHECK_THROWS_AS(compose(a, b, 3), std::invalid_argument);
    QJet c(2, 3);
    c.add(0, MultiIndex(2), 1);
    CHECK_THROWS_AS(compose(a, c, 3), std::invalid_argument);
}

TEST_CASE("compose is associative and has the identity as unit")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 15; ++trial) {
        const auto n = static_cast<std::size_t>(testgen::uniform(rng, 1, 3));
        const unsigned N = static_cast<unsigned>(testgen::uniform(rng, 2, 5));
        const auto f = random_exact_jet(rng, n, N, 1);
        const auto g = random_exact_jet(rng, n, N, 1);
        const auto h = random_exact_jet(rng, n, N, 1);
        CHECK(compose(compose(f, g, N), h, N) == compose(f, compose(g, h, N), N));
        CHECK(compose(f, QJet::identity(n, N), N) == f.truncated(N));
        CHECK(compose(QJet::identity(n, N), f, N) == f.truncated(N));

        const auto ff = random_float_jet(rng, n, N, 1);
        const auto gf = random_float_jet(rng, n, N, 1);
        const auto hf = random_float_jet(rng, n, N, 1);
        CHECK((compose(compose(ff, gf, N), hf, N) - compose(ff, compose(gf, hf, N), N)).max_abs() <= 1e-12);
    }
}

TEST_CASE("jacobian_apply")
{
    QJet g(2, 4);
    g.add(0, {1, 1}, 1);
    CHECK(jacobian_apply(g, QJet::identity(2, 4), 4) == g * GaussRational(2));

    CHECK(jacobian_apply(QJet(2, 4), QJet::identity(2, 4), 4).is_zero());

    QJet g2(2, 4);
    g2.add(0, {0, 2}, 1);
    QJet w(2, 4);
    w.add(1, {1, 0}, 1);
    QJet expected(2, 4);
    expected.add(0, {1, 1}, 2);
    CHECK(jacobian_apply(g2, w, 4) == expected);
}

TEST_CASE("lex_compare orders by the first larger exponent")
{
    CHECK(lex_compare(MultiIndex{2, 0}, MultiIndex{1, 1}) == std::strong_ordering::less);
    CHECK(lex_compare(MultiIndex{1, 1}, MultiIndex{1, 1}) == std::strong_ordering::equal);
    auto slice = monomials_of_degree(2, 2);
    std::sort(slice.begin(), slice.end(), [](const auto& a, const auto& b) { return lex_compare(a, b) < 0; });
    CHECK(slice == std::vector<MultiIndex>{MultiIndex{2, 0}, MultiIndex{1, 1}, MultiIndex{0, 2}});
    CHECK_THROWS(lex_compare(MultiIndex{1, 0}, MultiIndex{1, 0, 0}));
}

TEST_CASE("lex_compare is a strict total order on every slice")
{
    for (std::size_t n = 1; n <= 4; ++n) {
        for (unsigned d = 0; d <= 5; ++d) {
            const auto slice = monomials_of_degree(n, d);
            CHECK(slice.size() == monomial_count(n, d));
            for (const auto& a : slice) {
                for (const auto& b : slice) {
                    const auto ab = lex_compare(a, b);
                    CHECK((ab == 0) == (a == b));
                    CHECK(lex_compare(b, a) == (0 <=> ab));
                    if (ab < 0) {
                        for (const auto& c : slice) {
                            if (lex_compare(b, c) < 0) {
                                CHECK(lex_compare(a, c) < 0);
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("complexify a rotation")
{
    const GaussRational alpha(Rational(3, 2));
    const GaussRational beta(Rational(-5, 7));
    QJet f(2, 3);
    f.add(0, {1, 0}, alpha);
    f.add(0, {0, 1}, beta);
    f.add(1, {1, 0}, -beta);
    f.add(1, {0, 1}, alpha);
    const RealPairing pair{2, 0};
    const GaussRational i(Rational(0), Rational(1));
    QJet expected(2, 3);
    expected.add(0, {1, 0}, alpha - i * beta);
    expected.add(1, {0, 1}, alpha + i * beta);
    CHECK(complexify(f, pair) == expected);
    CHECK(realify(expected, pair, 0.0) == f);
    CHECK(complexify(f, RealPairing::none(2)) == f);
    CHECK(realify(f, RealPairing::none(2), 0.0) == f);
}

TEST_CASE("realify and complexify are inverse")
{
    std::mt19937 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto n = static_cast<std::size_t>(testgen::uniform(rng, 2, 4));
        const std::size_t pairs = static_cast<std::size_t>(testgen::uniform(rng, 1, static_cast<long>(n / 2)));
        const RealPairing pairing{n, n - 2 * pairs};
        const QJet f = random_exact_jet(rng, n, 4, 1);
        const QJet z = complexify(f, pairing);
        CHECK(realify(z, pairing, 0.0) == f);
        CHECK(complexify(realify(z, pairing, 0.0), pairing) == z);
    }
}

TEST_CASE("realify rejects asymmetric jets")
{
    QJet z(2, 2);
    z.add(0, {1, 0}, 1);
    CHECK_THROWS_AS(realify(z, RealPairing{2, 0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(complexify(z, RealPairing{3, 1}), std::invalid_argument);
}
