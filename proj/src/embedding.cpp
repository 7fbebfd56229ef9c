// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "embedflow/normal_form.hpp"

namespace embedflow {

namespace {

std::vector<Complex> nilpotent_part(const TriangularForm& b)
{
    std::vector<Complex> nil = b.matrix;
    for (std::size_t i = 0; i < b.n; ++i) {
        nil[i * b.n + i] = Complex{};
    }
    return nil;
}

std::vector<Complex> matmul(const std::vector<Complex>& x, const std::vector<Complex>& y, std::size_t n)
{
    std::vector<Complex> out(n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (x[i * n + k] == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out[i * n + j] += x[i * n + k] * y[k * n + j];
            }
        }
    }
    return out;
}

// Degree-r part of e^{-sB} X(e^{sB} y), X homogeneous of degree r.
PolyJet<ExpPoly> conjugated(const std::vector<ExpPoly>& plus, const std::vector<ExpPoly>& minus,
                            const PolyJet<ExpPoly>& x, unsigned r)
{
    const std::size_t n = x.dimension();
    const auto lin = PolyJet<ExpPoly>::linear(n, r, plus);
    return apply_linear(minus, compose(x, lin, r));
}

PolyJet<Complex> unit_integrals(const PolyJet<ExpPoly>& jet)
{
    return jet.map_coefficients([](const ExpPoly& p) { return p.unit_integral(); });
}

PolyJet<ExpPoly> antiderivatives(const PolyJet<ExpPoly>& jet)
{
    return jet.map_coefficients([](const ExpPoly& p) { return p.antiderivative(); });
}

std::vector<Complex> evaluate_matrix(const std::vector<ExpPoly>& m, double t)
{
    std::vector<Complex> out;
    out.reserve(m.size());
    for (const auto& e : m) {
        out.push_back(e.eval(t));
    }
    return out;
}

// Degree-by-degree construction of phi(t, y) for a field whose nonlinear part
// is fixed one degree at a time.
class FlowRecursion {
public:
    FlowRecursion(const TriangularForm& b, unsigned degree)
        : b_(b), degree_(degree), plus_(exp_matrix(b, 1)), minus_(exp_matrix(b, -1)), x_(b.n, degree)
    {
        phi_ = PolyJet<ExpPoly>::linear(b.n, degree, plus_);
    }

    // e^{-sB} P_r(s, y) and its integral over [0, 1].
    std::pair<PolyJet<ExpPoly>, PolyJet<Complex>> forcing(unsigned r) const
    {
        PolyJet<ExpPoly> q(b_.n, r);
        if (!x_.is_zero()) {
            const auto p = compose(lift(x_.truncated(r - 1)), phi_.truncated(r), r).homogeneous(r);
            q = apply_linear(minus_, p);
        }
        return {q, unit_integrals(q)};
    }

    void advance(unsigned r, const PolyJet<Complex>& xr, const PolyJet<ExpPoly>& q)
    {
        PolyJet<ExpPoly> integrand = q;
        if (!xr.is_zero()) {
            integrand += conjugated(plus_, minus_, lift(xr.truncated(r)), r);
        }
        const auto phir = apply_linear(plus_, antiderivatives(integrand));
        phi_ += phir.with_degree(degree_);
        x_ += xr.with_degree(degree_);
    }

    const std::vector<ExpPoly>& plus() const { return plus_; }
    const std::vector<ExpPoly>& minus() const { return minus_; }
    const PolyJet<ExpPoly>& phi() const { return phi_; }
    const PolyJet<Complex>& field() const { return x_; }

private:
    const TriangularForm& b_;
    unsigned degree_;
    std::vector<ExpPoly> plus_;
    std::vector<ExpPoly> minus_;
    PolyJet<ExpPoly> phi_;
    PolyJet<Complex> x_;
};

std::size_t find_basis(const std::vector<TrBasisEntry>& basis, std::size_t j, const MultiIndex& m)
{
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].j == j && basis[i].m == m) {
            return i;
        }
    }
    return basis.size();
}

std::vector<Complex> dense_shuffled_solve(const TrMatrix& tr, const std::vector<Complex>& rhs, unsigned seed)
{
    const std::size_t s = tr.size();
    std::vector<std::size_t> perm(s);
    for (std::size_t i = 0; i < s; ++i) {
        perm[i] = i;
    }
    std::mt19937 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXcd m(s, s);
    Eigen::VectorXcd v(s);
    for (std::size_t a = 0; a < s; ++a) {
        v(static_cast<Eigen::Index>(a)) = rhs[perm[a]];
        for (std::size_t c = 0; c < s; ++c) {
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) = tr.at(perm[a], perm[c]);
        }
    }
    const Eigen::VectorXcd x = m.partialPivLu().solve(v);
    std::vector<Complex> out(s);
    for (std::size_t a = 0; a < s; ++a) {
        out[perm[a]] = x(static_cast<Eigen::Index>(a));
    }
    return out;
}

} // namespace

PolyJet<Complex> FieldGerm::full() const
{
    return PolyJet<Complex>::linear(B.n, v.degree(), B.matrix) + v;
}

std::vector<ExpPoly> exp_matrix(const TriangularForm& b, int sign)
{
    const std::size_t n = b.n;
    const auto nil = nilpotent_part(b);
    std::vector<ExpPoly> out(n * n);
    std::vector<Complex> power(n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        power[i * n + i] = 1.0;
    }
    double fact = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        if (k > 0) {
            power = matmul(power, nil, n);
            fact *= k;
        }
        const double scale = (sign < 0 && k % 2 == 1 ? -1.0 : 1.0) / fact;
        for (std::size_t i = 0; i < n; ++i) {
            const LogScalar mu = b.diagonal[i].as_log_scalar() * static_cast<long>(sign);
            for (std::size_t j = 0; j <= i; ++j) {
                if (power[i * n + j] != Complex{}) {
                    out[i * n + j].add_term(power[i * n + j] * scale, k, mu);
                }
            }
        }
    }
    return out;
}

PolyJet<Complex> embedding_residual(const PolyJet<Complex>& G, const FieldGerm& x)
{
    if (G.dimension() != x.dimension()) {
        throw std::invalid_argument("embedding_residual: dimension mismatch");
    }
    const unsigned degree = std::min(G.degree(), x.degree());
    const auto full = x.full().truncated(degree);
    return compose(full, G.truncated(degree), degree) - jacobian_apply(G.truncated(degree), full, degree);
}

std::vector<TrBasisEntry> embedding_basis(const TriangularForm& b, unsigned r, bool include_weak)
{
    const auto mu = field_eigenvalues(b);
    std::vector<TrBasisEntry> out;
    for (const auto& ref : triangular_basis(b.n, r)) {
        const LogScalar d = field_defect(mu, ref.j, ref.m);
        if (d.is_zero()) {
            out.push_back({ref.j, ref.m, false, 0});
        } else if (auto l = d.two_pi_i_multiple(); l && include_weak) {
            out.push_back({ref.j, ref.m, true, -*l});
        }
    }
    return out;
}

TrMatrix Tr_matrix(const TriangularForm& b, unsigned r, const std::vector<TrBasisEntry>& basis)
{
    TrMatrix tr;
    tr.basis = basis;
    const std::size_t s = basis.size();
    tr.matrix.assign(s * s, Complex{});
    const auto plus = exp_matrix(b, 1);
    const auto minus = exp_matrix(b, -1);
    for (std::size_t p = 0; p < s; ++p) {
        PolyJet<ExpPoly> x(b.n, r);
        x.add(basis[p].j, basis[p].m, ExpPoly(Complex(1.0, 0.0)));
        const auto image = unit_integrals(conjugated(plus, minus, x, r));
        image.for_each([&](std::size_t j, const MultiIndex& m, const Complex& c) {
            const std::size_t q = find_basis(basis, j, m);
            if (q == s) {
                tr.outside = std::max(tr.outside, std::abs(c));
            } else {
                tr.matrix[q * s + p] = c;
            }
        });
    }
    return tr;
}

EmbeddingResult solve_embedding(const PolyJet<Complex>& g, const TriangularForm& b, unsigned degree,
                                const EmbeddingOptions& options)
{
    const std::size_t n = b.n;
    if (g.dimension() != n) {
        throw std::invalid_argument("solve_embedding: dimension mismatch");
    }
    if (!g.is_zero() && g.min_degree() < 2) {
        throw std::invalid_argument("solve_embedding: g must be O(|y|^2)");
    }
    // A = e^B on the diagonal decides which monomials G may contain.
    std::vector<Number> lambda;
    for (const auto& mu : b.diagonal) {
        lambda.push_back(mu.log_form ? Number::exp_of(*mu.log_form) : Number::from_complex(std::exp(mu.value)));
    }
    const MapResonanceTest test(lambda);
    g.for_each([&](std::size_t j, const MultiIndex& m, const Complex&) {
        if (m.degree() <= degree && !test.resonant(j, m)) {
            throw std::invalid_argument("solve_embedding: G is not in normal form (nonresonant monomial " +
                                        m.to_string() + " in component " + std::to_string(j + 1) + ")");
        }
    });

    EmbeddingResult result;
    FlowRecursion flow(b, degree);
    const auto inverse_at_one = evaluate_matrix(flow.minus(), 1.0);
    for (unsigned r = 2; r <= degree; ++r) {
        auto [q, q_integral] = flow.forcing(r);
        const PolyJet<Complex> rhs = apply_linear(inverse_at_one, g.homogeneous(r).truncated(r)) - q_integral;
        const auto basis = embedding_basis(b, r);
        result.basis_sizes.push_back(basis.size());
        const TrMatrix tr = Tr_matrix(b, r, basis);
        const double scale = std::max(1.0, rhs.max_abs());
        const double tol = options.tol * scale;

        // Demands outside the resonant+weak span cannot be met by any field.
        Obstruction obstruction;
        obstruction.degree = r;
        std::vector<Complex> target(basis.size(), Complex{});
        rhs.for_each([&](std::size_t j, const MultiIndex& m, const Complex& c) {
            const std::size_t idx = find_basis(basis, j, m);
            if (idx < basis.size()) {
                target[idx] = c;
            } else if (std::abs(c) > tol) {
                obstruction.blocked.push_back({j, m, 0, c});
            }
        });
        if (!obstruction.blocked.empty()) {
            obstruction.cause = "right-hand side has nonresonant components; G is not a normal form of e^B";
            result.obstruction = obstruction;
            return result;
        }

        std::vector<Complex> x(basis.size(), Complex{});
        if (options.dense_shuffled) {
            for (const auto& e : basis) {
                if (e.weak) {
                    throw std::invalid_argument("dense_shuffled solve needs a weakly nonresonant B");
                }
            }
            x = dense_shuffled_solve(tr, target, options.shuffle_seed + r);
        } else {
            for (std::size_t row = 0; row < basis.size(); ++row) {
                Complex rest = target[row];
                for (std::size_t col = 0; col < row; ++col) {
                    rest -= tr.at(row, col) * x[col];
                }
                const Complex diag = tr.at(row, row);
                if (diag == Complex{}) {
                    if (std::abs(rest) > tol) {
                        obstruction.blocked.push_back({basis[row].j, basis[row].m, basis[row].l, rest});
                    }
                    continue;
                }
                x[row] = rest / diag;
            }
        }
        if (!obstruction.blocked.empty()) {
            std::ostringstream os;
            os << "weakly resonant demand outside the range of T^" << r
               << " for this logarithm branch (no field with resonant+weak support)";
            obstruction.cause = os.str();
            result.obstruction = obstruction;
            return result;
        }
        PolyJet<Complex> xr(n, r);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            xr.add(basis[i].j, basis[i].m, x[i]);
        }
        flow.advance(r, xr, q);
    }
    result.field = FieldGerm{b, flow.field()};
    return result;
}

PolyJet<ExpPoly> flow_jet(const FieldGerm& x, unsigned degree)
{
    const auto mu = field_eigenvalues(x.B);
    x.v.for_each([&](std::size_t j, const MultiIndex& m, const Complex&) {
        const LogScalar d = field_defect(mu, j, m);
        if (!d.is_zero() && !d.two_pi_i_multiple()) {
            throw std::invalid_argument("flow_jet: monomial " + m.to_string() + " in component " + std::to_string(j + 1) +
                                        " is neither resonant nor weakly resonant");
        }
        if (m.degree() < 2) {
            throw std::invalid_argument("flow_jet: v must be O(|y|^2)");
        }
    });
    FlowRecursion flow(x.B, degree);
    for (unsigned r = 2; r <= degree; ++r) {
        auto [q, unused] = flow.forcing(r);
        flow.advance(r, x.v.homogeneous(r).truncated(r), q);
    }
    return flow.phi();
}

PolyJet<Complex> numeric_time_one(const FieldGerm& x, unsigned degree, double step)
{
    const std::size_t n = x.dimension();
    const auto field = x.full().truncated(degree);
    auto rhs = [&](const PolyJet<Complex>& phi) { return compose(field, phi, degree); };
    PolyJet<Complex> phi = PolyJet<Complex>::identity(n, degree);
    const auto steps = static_cast<long>(std::llround(1.0 / step));
    const double h = 1.0 / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
        const auto k1 = rhs(phi);
        const auto k2 = rhs(phi + k1 * Complex(h / 2));
        const auto k3 = rhs(phi + k2 * Complex(h / 2));
        const auto k4 = rhs(phi + k3 * Complex(h));
        phi += (k1 + k2 * Complex(2.0) + k3 * Complex(2.0) + k4) * Complex(h / 6.0);
    }
    return phi;
}

TimeOneReport time_one_check(const FieldGerm& x, const PolyJet<Complex>& G)
{
    const unsigned degree = std::min(G.degree(), x.degree());
    TimeOneReport report;
    const auto phi1 = evaluate(flow_jet(x, degree), 1.0);
    report.exp_poly = (phi1 - G.truncated(degree)).max_abs();
    report.ode = (numeric_time_one(x, degree) - G.truncated(degree)).max_abs();
    return report;
}

double group_property_residual(const FieldGerm& x, double s, double t)
{
    const unsigned degree = x.degree();
    const auto phi = flow_jet(x, degree);
    const auto ps = evaluate(phi, s);
    const auto pt = evaluate(phi, t);
    const auto pst = evaluate(phi, s + t);
    return (compose(ps, pt, degree) - pst).max_abs();
}

PolyJet<Complex> appendix_identity_check(const BlockMatrix& b, const PolyJet<Complex>& g)
{
    if (!b.is_diagonal()) {
        throw std::invalid_argument("appendix_identity_check: B must be diagonal");
    }
    std::vector<LogScalar> mu;
    for (const auto& blk : b.blocks) {
        for (std::size_t c = 0; c < blk.cells; ++c) {
            mu.push_back(blk.diagonal().as_log_scalar());
        }
    }
    if (mu.size() != g.dimension()) {
        throw std::invalid_argument("appendix_identity_check: dimension mismatch");
    }
    PolyJet<Complex> out(g.dimension(), g.degree());
    g.for_each([&](std::size_t s, const MultiIndex& m, const Complex& c) {
        // D(y^m e_s) B y - B y^m e_s = (<m, mu> - mu_s) y^m e_s
        const LogScalar factor = field_defect(mu, s, m);
        if (!factor.is_zero()) {
            out.add(s, m, c * factor.value());
        }
    });
    return out;
}

} // namespace embedflow
