// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embedflow/multi_index.hpp"
#include "embedflow/rational.hpp"

namespace embedflow {

using Complex = std::complex<double>;

// Coefficient ring hooks. Specialized for every coefficient type a jet may hold.
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Complex> {
    static Complex zero() { return {}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const Complex& c) { return c == Complex{}; }
    static double magnitude(const Complex& c) { return std::abs(c); }
    static Complex from_gauss(const GaussRational& g) { return g.to_complex(); }
    static Complex conj(const Complex& c) { return std::conj(c); }
    static double imag_magnitude(const Complex& c) { return std::abs(c.imag()); }
    static Complex real_part(const Complex& c) { return {c.real(), 0.0}; }
    static Complex to_complex(const Complex& c) { return c; }
};

template <>
struct CoeffTraits<GaussRational> {
    static GaussRational zero() { return {}; }
    static GaussRational from_int(long v) { return GaussRational(v); }
    static bool is_zero(const GaussRational& c) { return c.is_zero(); }
    static double magnitude(const GaussRational& c) { return std::abs(c.to_complex()); }
    static GaussRational from_gauss(const GaussRational& g) { return g; }
    static GaussRational conj(const GaussRational& c) { return c.conj(); }
    static double imag_magnitude(const GaussRational& c) { return std::abs(to_double(c.im())); }
    static GaussRational real_part(const GaussRational& c) { return GaussRational(c.re()); }
    static Complex to_complex(const GaussRational& c) { return c.to_complex(); }
};

/// Scalar polynomial in n variables: sparse map from exponent to coefficient.
template <class C>
class Poly {
public:
    using Traits = CoeffTraits<C>;
    using Map = std::map<MultiIndex, C, GradedLexLess>;

    Poly() = default;
    explicit Poly(std::size_t n) : n_(n) {}

    static Poly constant(std::size_t n, const C& c)
    {
        Poly p(n);
        p.add(MultiIndex(n), c);
        return p;
    }
    static Poly variable(std::size_t n, std::size_t i)
    {
        Poly p(n);
        p.add(MultiIndex::unit(n, i), Traits::from_int(1));
        return p;
    }

    std::size_t dimension() const { return n_; }
    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    C coefficient(const MultiIndex& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    void add(const MultiIndex& m, const C& c)
    {
        if (m.dimension() != n_) {
            throw std::invalid_argument("monomial dimension " + std::to_string(m.dimension()) +
                                        " does not match polynomial dimension " + std::to_string(n_));
        }
        if (Traits::is_zero(c)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) {
                terms_.erase(it);
            }
        }
    }
    void set(const MultiIndex& m, const C& c)
    {
        terms_.erase(m);
        add(m, c);
    }
    void erase(const MultiIndex& m) { terms_.erase(m); }

    unsigned min_degree() const { return terms_.empty() ? 0U : terms_.begin()->first.degree(); }
    unsigned max_degree() const { return terms_.empty() ? 0U : terms_.rbegin()->first.degree(); }

    Poly& operator+=(const Poly& o)
    {
        for (const auto& [m, c] : o.terms_) {
            add(m, c);
        }
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        for (const auto& [m, c] : o.terms_) {
            add(m, -c);
        }
        return *this;
    }
    Poly& operator*=(const C& s)
    {
        if (Traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second = it->second * s;
            if (Traits::is_zero(it->second)) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const C& s) { return a *= s; }

    /// Product truncated at total degree max_degree.
    Poly multiply(const Poly& o, unsigned max_degree) const
    {
        Poly out(n_);
        for (const auto& [ma, ca] : terms_) {
            const unsigned da = ma.degree();
            if (da > max_degree) {
                break;
            }
            for (const auto& [mb, cb] : o.terms_) {
                if (da + mb.degree() > max_degree) {
                    break;
                }
                out.add(ma + mb, ca * cb);
            }
        }
        return out;
    }

    Poly derivative(std::size_t var) const
    {
        Poly out(n_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) {
                continue;
            }
            MultiIndex d = m;
            d[var] -= 1;
            out.add(d, c * Traits::from_int(static_cast<long>(m[var])));
        }
        return out;
    }

    Poly truncated(unsigned max_degree) const
    {
        Poly out(n_);
        for (const auto& [m, c] : terms_) {
            if (m.degree() > max_degree) {
                break;
            }
            out.terms_.emplace_hint(out.terms_.end(), m, c);
        }
        return out;
    }

    Poly degree_range(unsigned lo, unsigned hi) const
    {
        Poly out(n_);
        for (const auto& [m, c] : terms_) {
            const unsigned d = m.degree();
            if (d < lo) {
                continue;
            }
            if (d > hi) {
                break;
            }
            out.terms_.emplace_hint(out.terms_.end(), m, c);
        }
        return out;
    }

private:
    std::size_t n_ = 0;
    Map terms_;
};

/// Vector-valued truncated polynomial map or field: n components in n
/// variables, every stored monomial of degree <= N, no stored zeros.
template <class C>
class PolyJet {
public:
    using Traits = CoeffTraits<C>;
    using Component = Poly<C>;

    PolyJet() = default;
    PolyJet(std::size_t n, unsigned degree) : degree_(degree), comps_(n, Component(n)) {}

    static PolyJet identity(std::size_t n, unsigned degree)
    {
        PolyJet out(n, degree);
        for (std::size_t i = 0; i < n; ++i) {
            out.add(i, MultiIndex::unit(n, i), Traits::from_int(1));
        }
        return out;
    }

    /// y -> M y for a row-major n x n coefficient matrix.
    static PolyJet linear(std::size_t n, unsigned degree, const std::vector<C>& matrix)
    {
        if (matrix.size() != n * n) {
            throw std::invalid_argument("linear jet: matrix size mismatch");
        }
        PolyJet out(n, degree);
        if (degree == 0) {
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out.add(i, MultiIndex::unit(n, j), matrix[i * n + j]);
            }
        }
        return out;
    }

    std::size_t dimension() const { return comps_.size(); }
    unsigned degree() const { return degree_; }
    const Component& component(std::size_t j) const { return comps_.at(j); }
    const std::vector<Component>& components() const { return comps_; }

    C coefficient(std::size_t j, const MultiIndex& m) const { return comps_.at(j).coefficient(m); }

    void add(std::size_t j, const MultiIndex& m, const C& c)
    {
        if (m.degree() > degree_) {
            return;
        }
        comps_.at(j).add(m, c);
    }
    void set(std::size_t j, const MultiIndex& m, const C& c)
    {
        if (m.degree() > degree_) {
            throw std::invalid_argument("monomial " + m.to_string() + " exceeds truncation degree " +
                                        std::to_string(degree_));
        }
        comps_.at(j).set(m, c);
    }
    void set_component(std::size_t j, Component p) { comps_.at(j) = p.truncated(degree_); }

    bool is_zero() const
    {
        return std::all_of(comps_.begin(), comps_.end(), [](const Component& p) { return p.empty(); });
    }
    std::size_t term_count() const
    {
        std::size_t k = 0;
        for (const auto& p : comps_) {
            k += p.size();
        }
        return k;
    }

    /// Lowest degree among stored monomials (0 when empty).
    unsigned min_degree() const
    {
        unsigned d = degree_ + 1;
        for (const auto& p : comps_) {
            if (!p.empty()) {
                d = std::min(d, p.min_degree());
            }
        }
        return d > degree_ ? 0U : d;
    }

    PolyJet truncated(unsigned degree) const
    {
        PolyJet out(dimension(), degree);
        for (std::size_t j = 0; j < dimension(); ++j) {
            out.comps_[j] = comps_[j].truncated(degree);
        }
        return out;
    }
    PolyJet degree_range(unsigned lo, unsigned hi) const
    {
        PolyJet out(dimension(), degree_);
        for (std::size_t j = 0; j < dimension(); ++j) {
            out.comps_[j] = comps_[j].degree_range(lo, hi);
        }
        return out;
    }
    PolyJet homogeneous(unsigned k) const { return degree_range(k, k); }
    /// Same terms, new truncation degree (terms above it are dropped).
    PolyJet with_degree(unsigned degree) const
    {
        PolyJet out = truncated(degree);
        return out;
    }

    PolyJet& operator+=(const PolyJet& o)
    {
        check_same_shape(o);
        for (std::size_t j = 0; j < dimension(); ++j) {
            comps_[j] += o.comps_[j].truncated(degree_);
        }
        return *this;
    }
    PolyJet& operator-=(const PolyJet& o)
    {
        check_same_shape(o);
        for (std::size_t j = 0; j < dimension(); ++j) {
            comps_[j] -= o.comps_[j].truncated(degree_);
        }
        return *this;
    }
    PolyJet& operator*=(const C& s)
    {
        for (auto& p : comps_) {
            p *= s;
        }
        return *this;
    }
    friend PolyJet operator+(PolyJet a, const PolyJet& b) { return a += b; }
    friend PolyJet operator-(PolyJet a, const PolyJet& b) { return a -= b; }
    friend PolyJet operator*(PolyJet a, const C& s) { return a *= s; }

    template <class F>
    auto map_coefficients(F&& f) const
    {
        using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
        PolyJet<D> out(dimension(), degree_);
        for (std::size_t j = 0; j < dimension(); ++j) {
            for (const auto& [m, c] : comps_[j].terms()) {
                out.add(j, m, f(c));
            }
        }
        return out;
    }

    /// Visit every (component, monomial, coefficient).
    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t j = 0; j < dimension(); ++j) {
            for (const auto& [m, c] : comps_[j].terms()) {
                f(j, m, c);
            }
        }
    }

    /// Max coefficient magnitude.
    double max_abs() const
    {
        double r = 0.0;
        for_each([&](std::size_t, const MultiIndex&, const C& c) { r = std::max(r, Traits::magnitude(c)); });
        return r;
    }

    /// Drops coefficients of magnitude <= tol.
    PolyJet pruned(double tol) const
    {
        PolyJet out(dimension(), degree_);
        for_each([&](std::size_t j, const MultiIndex& m, const C& c) {
            if (Traits::magnitude(c) > tol) {
                out.add(j, m, c);
            }
        });
        return out;
    }

    friend bool operator==(const PolyJet& a, const PolyJet& b)
    {
        if (a.dimension() != b.dimension()) {
            return false;
        }
        for (std::size_t j = 0; j < a.dimension(); ++j) {
            const auto& ta = a.comps_[j].terms();
            const auto& tb = b.comps_[j].terms();
            if (ta.size() != tb.size()) {
                return false;
            }
            for (auto ia = ta.begin(), ib = tb.begin(); ia != ta.end(); ++ia, ++ib) {
                if (!(ia->first == ib->first) || !(ia->second == ib->second)) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    void check_same_shape(const PolyJet& o) const
    {
        if (o.dimension() != dimension()) {
            throw std::invalid_argument("jet dimension mismatch: " + std::to_string(dimension()) + " vs " +
                                        std::to_string(o.dimension()));
        }
    }

    unsigned degree_ = 0;
    std::vector<Component> comps_;
};

namespace detail {

/// Products of powers of the components of G, memoized per exponent.
template <class C>
class PowerCache {
public:
    PowerCache(const PolyJet<C>& g, unsigned degree) : g_(g), degree_(degree) {}

    const Poly<C>& product(const MultiIndex& m)
    {
        auto it = memo_.find(m);
        if (it != memo_.end()) {
            return it->second;
        }
        const std::size_t n = m.dimension();
        Poly<C> value(n);
        if (m.degree() == 0) {
            value = Poly<C>::constant(n, CoeffTraits<C>::from_int(1));
        } else if (m.degree() <= degree_) {
            std::size_t last = n;
            while (last-- > 0 && m[last] == 0) {
            }
            MultiIndex prev = m;
            prev[last] -= 1;
            const Poly<C>& base = product(prev);
            value = base.multiply(g_.component(last).truncated(degree_), degree_);
        }
        return memo_.emplace(m, std::move(value)).first->second;
    }

private:
    const PolyJet<C>& g_;
    unsigned degree_;
    std::unordered_map<MultiIndex, Poly<C>> memo_;
};

} // namespace detail

/// Jet of F o G truncated at degree N. G must have zero constant term.
template <class C>
PolyJet<C> compose(const PolyJet<C>& f, const PolyJet<C>& g, unsigned degree)
{
    if (f.dimension() != g.dimension()) {
        throw std::invalid_argument("compose: dimension mismatch (" + std::to_string(f.dimension()) + " vs " +
                                    std::to_string(g.dimension()) + ")");
    }
    const std::size_t n = g.dimension();
    const MultiIndex zero(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!CoeffTraits<C>::is_zero(g.coefficient(i, zero))) {
            throw std::invalid_argument("compose: inner jet has a nonzero constant term in component " +
                                        std::to_string(i + 1));
        }
    }
    detail::PowerCache<C> cache(g, degree);
    PolyJet<C> out(n, degree);
    for (std::size_t i = 0; i < n; ++i) {
        Poly<C> acc(n);
        for (const auto& [m, c] : f.component(i).terms()) {
            if (m.degree() > degree) {
                break;
            }
            acc += cache.product(m) * c;
        }
        out.set_component(i, std::move(acc));
    }
    return out;
}

/// Jet of Dg(y) w(y) truncated at degree N.
template <class C>
PolyJet<C> jacobian_apply(const PolyJet<C>& g, const PolyJet<C>& w, unsigned degree)
{
    if (g.dimension() != w.dimension()) {
        throw std::invalid_argument("jacobian_apply: dimension mismatch");
    }
    const std::size_t n = g.dimension();
    PolyJet<C> out(n, degree);
    for (std::size_t i = 0; i < n; ++i) {
        Poly<C> acc(n);
        for (std::size_t s = 0; s < n; ++s) {
            const Poly<C> d = g.component(i).derivative(s);
            if (d.empty() || w.component(s).empty()) {
                continue;
            }
            acc += d.multiply(w.component(s), degree);
        }
        out.set_component(i, std::move(acc));
    }
    return out;
}

/// (M F)_i = sum_j M_ij F_j for a row-major n x n matrix M.
template <class C>
PolyJet<C> apply_linear(const std::vector<C>& matrix, const PolyJet<C>& f)
{
    const std::size_t n = f.dimension();
    if (matrix.size() != n * n) {
        throw std::invalid_argument("apply_linear: matrix size mismatch");
    }
    PolyJet<C> out(n, f.degree());
    for (std::size_t i = 0; i < n; ++i) {
        Poly<C> acc(n);
        for (std::size_t j = 0; j < n; ++j) {
            const C& a = matrix[i * n + j];
            if (CoeffTraits<C>::is_zero(a) || f.component(j).empty()) {
                continue;
            }
            acc += f.component(j) * a;
        }
        out.set_component(i, std::move(acc));
    }
    return out;
}

/// Inverse of the near-identity map y -> y + h(y), as a jet of degree N.
template <class C>
PolyJet<C> invert_near_identity(const PolyJet<C>& h, unsigned degree)
{
    const std::size_t n = h.dimension();
    if (h.min_degree() < 2 && !h.is_zero()) {
        throw std::invalid_argument("invert_near_identity: h must be O(|y|^2)");
    }
    // psi = x - h(psi); each pass fixes one more degree.
    PolyJet<C> psi = PolyJet<C>::identity(n, degree);
    for (unsigned pass = 1; pass < degree; ++pass) {
        psi = PolyJet<C>::identity(n, degree) - compose(h, psi, degree);
    }
    return psi;
}

} // namespace embedflow
