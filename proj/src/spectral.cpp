// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "embedflow/resonance.hpp"

namespace embedflow {

namespace {

constexpr double kUnitModulusTolerance = 1e-9;

// Truncated power series in a nilpotent shift s (s^len == 0).
template <class T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b)
{
    const std::size_t len = a.size();
    std::vector<T> out(len, T(0));
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = 0; i + j < len; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// log(1 + u) for u with u[0] == 0.
template <class T>
std::vector<T> series_log1p(const std::vector<T>& u)
{
    const std::size_t len = u.size();
    std::vector<T> out(len, T(0));
    std::vector<T> power = u;
    for (std::size_t k = 1; k < len; ++k) {
        const T coef = T(k % 2 == 1 ? 1 : -1) / T(static_cast<long>(k));
        for (std::size_t d = 0; d < len; ++d) {
            out[d] += coef * power[d];
        }
        power = series_mul(power, u);
    }
    return out;
}

// exp(u) for u with u[0] == 0.
std::vector<Complex> series_exp_nilpotent(const std::vector<Complex>& u)
{
    const std::size_t len = u.size();
    std::vector<Complex> out(len, Complex{});
    out[0] = 1.0;
    std::vector<Complex> power(len, Complex{});
    power[0] = 1.0;
    double fact = 1.0;
    for (std::size_t k = 1; k < len; ++k) {
        power = series_mul(power, u);
        fact *= static_cast<double>(k);
        for (std::size_t d = 0; d < len; ++d) {
            out[d] += power[d] / fact;
        }
    }
    return out;
}

bool is_negative_real(const Block& b)
{
    return b.kind == Block::Kind::real && b.diagonal().is_real() && b.diagonal().value.real() < 0.0;
}

bool same_number(const Number& a, const Number& b)
{
    if (a.gauss && b.gauss) {
        return *a.gauss == *b.gauss;
    }
    if (a.exp_form && b.exp_form) {
        return *a.exp_form == *b.exp_form;
    }
    const double scale = std::max({1.0, std::abs(a.value), std::abs(b.value)});
    return std::abs(a.value - b.value) <= kUnitModulusTolerance * scale;
}

bool same_block(const Block& a, const Block& b)
{
    if (a.kind != b.kind || a.cells != b.cells) {
        return false;
    }
    for (std::size_t d = 0; d < a.cells; ++d) {
        if (!same_number(a.entry(d), b.entry(d))) {
            return false;
        }
    }
    return true;
}

bool is_zero_number(const Number& x)
{
    if (x.gauss) {
        return x.gauss->is_zero();
    }
    if (x.exp_form) {
        return false;
    }
    return x.value == Complex{};
}

// Im part reduced into (-1, 1] (units of pi).
ExactLog principal(ExactLog e)
{
    mpz_class shift;
    // q - 2*floor((q + 1) / 2) lies in [-1, 1); move -1 to +1.
    Rational h = (e.im_pi + 1) / 2;
    mpz_fdiv_q(shift.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    e.im_pi -= Rational(2 * shift);
    e.im_pi.canonicalize();
    if (e.im_pi == -1) {
        e.im_pi = 1;
    }
    return e;
}

Number diagonal_log(const Block& b, long branch_shift)
{
    const Number& c = b.diagonal();
    const double two_pi = 2.0 * std::numbers::pi;
    if (c.exp_form) {
        ExactLog e = principal(*c.exp_form);
        e.im_pi += Rational(2 * branch_shift);
        e.im_pi.canonicalize();
        return Number::log_value(e);
    }
    Complex v = std::log(c.value);
    if (b.kind == Block::Kind::complex && c.value.imag() == 0.0) {
        v = Complex(std::log(std::abs(c.value)), std::numbers::pi);
    }
    v += Complex(0.0, two_pi * static_cast<double>(branch_shift));
    return Number::from_complex(v);
}

Block log_block(const Block& b, long branch_shift)
{
    Block out;
    out.kind = b.kind;
    out.origin = b.origin;
    out.cells = b.cells;
    out.toeplitz.push_back(diagonal_log(b, branch_shift));
    if (b.cells == 1) {
        return out;
    }
    bool exact = true;
    for (std::size_t d = 0; d < b.cells; ++d) {
        exact = exact && b.entry(d).gauss.has_value();
    }
    if (exact) {
        const GaussRational c = *b.diagonal().gauss;
        std::vector<GaussRational> u(b.cells, GaussRational(0));
        for (std::size_t d = 1; d < b.cells; ++d) {
            u[d] = *b.entry(d).gauss / c;
        }
        const auto l = series_log1p(u);
        for (std::size_t d = 1; d < b.cells; ++d) {
            out.toeplitz.push_back(Number::from_gauss(l[d]));
        }
    } else {
        const Complex c = b.diagonal().value;
        std::vector<Complex> u(b.cells, Complex{});
        for (std::size_t d = 1; d < b.cells; ++d) {
            u[d] = b.entry(d).value / c;
        }
        const auto l = series_log1p(u);
        for (std::size_t d = 1; d < b.cells; ++d) {
            out.toeplitz.push_back(Number::from_complex(l[d]));
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> RealPairing::pairs() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = real_count; i + 1 < dimension; i += 2) {
        out.emplace_back(i, i + 1);
    }
    return out;
}

void RealPairing::validate() const
{
    if (real_count > dimension || (dimension - real_count) % 2 != 0) {
        throw std::invalid_argument("pairing inconsistent with dimension: " + std::to_string(real_count) +
                                    " real coordinates out of " + std::to_string(dimension));
    }
}

BranchChoice BranchChoice::parse(std::string_view text)
{
    BranchChoice out;
    std::string s;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') {
            s += ch;
        }
    }
    if (s.empty() || s == "none") {
        return out;
    }
    std::stringstream parts(s);
    std::string part;
    while (std::getline(parts, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("branch: expected k=... or l=..., got '" + part + "'");
        }
        const std::string key = part.substr(0, eq);
        std::vector<long>* target = nullptr;
        if (key == "k") {
            target = &out.k;
        } else if (key == "l") {
            target = &out.l;
        } else {
            throw std::invalid_argument("branch: unknown key '" + key + "'");
        }
        std::stringstream values(part.substr(eq + 1));
        std::string v;
        while (std::getline(values, v, '/')) {
            try {
                std::size_t used = 0;
                target->push_back(std::stol(v, &used));
                if (used != v.size()) {
                    throw std::invalid_argument(v);
                }
            } catch (const std::exception&) {
                throw std::invalid_argument("branch: bad integer '" + v + "'");
            }
        }
    }
    return out;
}

std::string BranchChoice::to_string() const
{
    auto join = [](const std::vector<long>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? "/" : "") + std::to_string(v[i]);
        }
        return s;
    };
    std::string out;
    if (!k.empty()) {
        out += "k=" + join(k);
    }
    if (!l.empty()) {
        out += (out.empty() ? "" : ",") + std::string("l=") + join(l);
    }
    return out.empty() ? std::string("none") : out;
}

bool TriangularForm::diagonal_only() const
{
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (matrix[i * n + j] != Complex{}) {
                return false;
            }
        }
    }
    return true;
}

bool is_hyperbolic(const BlockMatrix& a)
{
    for (const auto& b : a.blocks) {
        const Number& c = b.diagonal();
        if (c.gauss) {
            if (c.gauss->norm() == 1) {
                return false;
            }
        } else if (c.exp_form) {
            if (c.exp_form->re.is_zero()) {
                return false;
            }
        } else if (std::abs(std::abs(c.value) - 1.0) <= kUnitModulusTolerance) {
            return false;
        }
    }
    return true;
}

RealLogCertificate has_real_log(const BlockMatrix& a)
{
    RealLogCertificate cert;
    for (const auto& b : a.blocks) {
        if (is_zero_number(b.diagonal())) {
            throw std::domain_error("singular matrix has no logarithm");
        }
    }
    std::vector<bool> used(a.blocks.size(), false);
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        if (used[i] || !is_negative_real(a.blocks[i])) {
            continue;
        }
        used[i] = true;
        bool matched = false;
        for (std::size_t j = i + 1; j < a.blocks.size(); ++j) {
            if (!used[j] && is_negative_real(a.blocks[j]) && same_block(a.blocks[i], a.blocks[j])) {
                used[j] = true;
                cert.pairs.emplace_back(i, j);
                matched = true;
                break;
            }
        }
        if (!matched) {
            cert.unpaired.push_back(i);
        }
    }
    cert.exists = cert.unpaired.empty();
    return cert;
}

CanonicalForm canonicalize(const BlockMatrix& a)
{
    const RealLogCertificate cert = has_real_log(a);
    const auto offsets = a.offsets();
    std::vector<long> partner(a.blocks.size(), -1);
    std::vector<bool> second(a.blocks.size(), false);
    for (const auto& [i, j] : cert.pairs) {
        partner[i] = static_cast<long>(j);
        second[j] = true;
    }
    CanonicalForm out;
    // Real blocks keep their relative order.
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        const Block& b = a.blocks[i];
        if (b.kind != Block::Kind::real || partner[i] >= 0 || second[i]) {
            continue;
        }
        out.matrix.blocks.push_back(b);
        for (std::size_t c = 0; c < b.cells; ++c) {
            out.to_original.push_back(offsets[i] + c);
        }
    }
    const std::size_t real_count = out.to_original.size();
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        const Block& b = a.blocks[i];
        if (b.kind == Block::Kind::complex) {
            out.rotations.push_back(out.matrix.blocks.size());
            out.matrix.blocks.push_back(b);
            for (std::size_t c = 0; c < 2 * b.cells; ++c) {
                out.to_original.push_back(offsets[i] + c);
            }
        } else if (partner[i] >= 0) {
            const auto j = static_cast<std::size_t>(partner[i]);
            Block merged;
            merged.kind = Block::Kind::complex;
            merged.origin = Block::Origin::negative_pair;
            merged.cells = b.cells;
            merged.toeplitz = b.toeplitz;
            out.negative_pairs.push_back(out.matrix.blocks.size());
            out.matrix.blocks.push_back(merged);
            for (std::size_t c = 0; c < b.cells; ++c) {
                out.to_original.push_back(offsets[i] + c);
                out.to_original.push_back(offsets[j] + c);
            }
        }
    }
    out.pairing = {out.to_original.size(), real_count};
    return out;
}

RealLog real_log(const BlockMatrix& a, const BranchChoice& branch)
{
    const RealLogCertificate cert = has_real_log(a);
    if (!cert.exists) {
        throw std::domain_error("no real logarithm: negative eigenvalue Jordan block without an identical partner");
    }
    RealLog out;
    out.canonical = canonicalize(a);
    const auto& neg = out.canonical.negative_pairs;
    const auto& rot = out.canonical.rotations;
    if ((!branch.k.empty() && branch.k.size() != neg.size()) || (!branch.l.empty() && branch.l.size() != rot.size())) {
        throw std::invalid_argument("branch lists have the wrong length: expected " + std::to_string(neg.size()) +
                                    " k value(s) and " + std::to_string(rot.size()) + " l value(s)");
    }
    out.branch.k = branch.k.empty() ? std::vector<long>(neg.size(), 0) : branch.k;
    out.branch.l = branch.l.empty() ? std::vector<long>(rot.size(), 0) : branch.l;
    for (std::size_t i = 0; i < out.canonical.matrix.blocks.size(); ++i) {
        long shift = 0;
        if (auto it = std::find(neg.begin(), neg.end(), i); it != neg.end()) {
            shift = out.branch.k[static_cast<std::size_t>(it - neg.begin())];
        } else if (auto it2 = std::find(rot.begin(), rot.end(), i); it2 != rot.end()) {
            shift = out.branch.l[static_cast<std::size_t>(it2 - rot.begin())];
        }
        out.log.blocks.push_back(log_block(out.canonical.matrix.blocks[i], shift));
    }
    return out;
}

std::vector<double> block_exp_dense(const BlockMatrix& b)
{
    BlockMatrix e;
    for (const auto& blk : b.blocks) {
        std::vector<Complex> u(blk.cells, Complex{});
        for (std::size_t d = 1; d < blk.cells; ++d) {
            u[d] = blk.entry(d).value;
        }
        const auto series = series_exp_nilpotent(u);
        const Complex scale = std::exp(blk.diagonal().value);
        Block out;
        out.kind = blk.kind;
        out.origin = blk.origin;
        out.cells = blk.cells;
        for (std::size_t d = 0; d < blk.cells; ++d) {
            out.toeplitz.push_back(Number::from_complex(scale * series[d]));
        }
        e.blocks.push_back(out);
    }
    return e.to_dense();
}

std::vector<double> to_canonical_dense(const std::vector<double>& dense, const std::vector<std::size_t>& to_original)
{
    const std::size_t n = to_original.size();
    if (dense.size() != n * n) {
        throw std::invalid_argument("to_canonical_dense: size mismatch");
    }
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n + j] = dense[to_original[i] * n + to_original[j]];
        }
    }
    return out;
}

TriangularForm triangular_form(const BlockMatrix& canonical)
{
    TriangularForm out;
    out.n = canonical.dimension();
    out.matrix.assign(out.n * out.n, Complex{});
    out.diagonal.resize(out.n);
    bool exact = true;
    for (const auto& b : canonical.blocks) {
        for (std::size_t d = 0; d < b.cells; ++d) {
            exact = exact && b.entry(d).gauss.has_value();
        }
    }
    std::vector<GaussRational> ex(exact ? out.n * out.n : 0);
    std::size_t real_count = 0;
    bool seen_complex = false;
    std::size_t o = 0;
    for (const auto& b : canonical.blocks) {
        if (b.kind == Block::Kind::real) {
            if (seen_complex) {
                throw std::invalid_argument("triangular_form: real blocks must precede complex blocks");
            }
            real_count += b.cells;
            for (std::size_t r = 0; r < b.cells; ++r) {
                for (std::size_t c = 0; c <= r; ++c) {
                    const Number x = b.entry(r - c);
                    out.matrix[(o + r) * out.n + o + c] = x.value;
                    if (exact) {
                        ex[(o + r) * out.n + o + c] = *x.gauss;
                    }
                }
                out.diagonal[o + r] = b.diagonal();
            }
        } else {
            seen_complex = true;
            for (std::size_t r = 0; r < b.cells; ++r) {
                for (std::size_t c = 0; c <= r; ++c) {
                    const Number x = b.entry(r - c);
                    const std::size_t zr = o + 2 * r;
                    const std::size_t zc = o + 2 * c;
                    out.matrix[zr * out.n + zc] = std::conj(x.value);
                    out.matrix[(zr + 1) * out.n + zc + 1] = x.value;
                    if (exact) {
                        ex[zr * out.n + zc] = x.gauss->conj();
                        ex[(zr + 1) * out.n + zc + 1] = *x.gauss;
                    }
                }
                out.diagonal[o + 2 * r] = b.diagonal().conj();
                out.diagonal[o + 2 * r + 1] = b.diagonal();
            }
        }
        o += b.order();
    }
    if (exact) {
        out.exact = std::move(ex);
    }
    out.pairing = {out.n, real_count};
    return out;
}

std::vector<LogScalar> field_eigenvalues(const TriangularForm& b)
{
    std::vector<LogScalar> mu;
    for (const auto& d : b.diagonal) {
        mu.push_back(d.as_log_scalar());
    }
    return mu;
}

std::optional<BranchChoice> weakly_nonresonant_branch(const BlockMatrix& a, unsigned degree, long bound)
{
    if (!has_real_log(a).exists) {
        return std::nullopt;
    }
    const CanonicalForm canon = canonicalize(a);
    const std::size_t nk = canon.negative_pairs.size();
    const std::size_t nl = canon.rotations.size();
    const std::size_t dims = nk + nl;
    std::vector<std::vector<long>> candidates;
    std::vector<long> current(dims, -bound);
    while (true) {
        candidates.push_back(current);
        std::size_t pos = 0;
        while (pos < dims && current[pos] == bound) {
            current[pos] = -bound;
            ++pos;
        }
        if (pos == dims) {
            break;
        }
        ++current[pos];
    }
    auto l1 = [](const std::vector<long>& v) {
        long s = 0;
        for (long x : v) {
            s += std::abs(x);
        }
        return s;
    };
    std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) {
        const long lx = l1(x);
        const long ly = l1(y);
        return lx != ly ? lx < ly : x < y;
    });
    for (const auto& cand : candidates) {
        BranchChoice choice;
        choice.k.assign(cand.begin(), cand.begin() + static_cast<long>(nk));
        choice.l.assign(cand.begin() + static_cast<long>(nk), cand.end());
        const RealLog log = real_log(a, choice);
        const auto mu = field_eigenvalues(triangular_form(log.log));
        if (field_resonances(mu, degree).weak.empty()) {
            return log.branch;
        }
    }
    return std::nullopt;
}

} // namespace embedflow
