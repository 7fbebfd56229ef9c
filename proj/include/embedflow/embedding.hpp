// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "embedflow/block_matrix.hpp"
#include "embedflow/exp_poly.hpp"
#include "embedflow/poly_jet.hpp"
#include "embedflow/resonance.hpp"
#include "embedflow/spectral.hpp"

namespace embedflow {

/// Vector field B y + v(y) in complex coordinates; B lower triangular.
struct FieldGerm {
    TriangularForm B;
    PolyJet<Complex> v;

    std::size_t dimension() const { return B.n; }
    unsigned degree() const { return v.degree(); }
    /// B y + v(y) as a single jet.
    PolyJet<Complex> full() const;
};

/// e^{sign t B} with ExpPoly entries, row-major.
std::vector<ExpPoly> exp_matrix(const TriangularForm& b, int sign);

/// X(G(y)) - DG(y) X(y) to degree N. G is the full map (linear part included).
PolyJet<Complex> embedding_residual(const PolyJet<Complex>& G, const FieldGerm& x);

struct TrBasisEntry {
    std::size_t j = 0;
    MultiIndex m;
    bool weak = false;
    long l = 0;
};

struct TrMatrix {
    std::vector<TrBasisEntry> basis;
    /// Row-major: entry (q, p) is the coefficient of basis[q] in T(basis[p]).
    std::vector<Complex> matrix;
    /// Largest coefficient of T(basis[p]) outside the basis (zero in theory).
    double outside = 0.0;

    std::size_t size() const { return basis.size(); }
    Complex at(std::size_t q, std::size_t p) const { return matrix[q * basis.size() + p]; }
};

/// Resonant (and, when include_weak, weakly resonant) degree-r monomial
/// fields of B, in triangular order.
std::vector<TrBasisEntry> embedding_basis(const TriangularForm& b, unsigned r, bool include_weak = true);

/// Matrix of X -> int_0^1 e^{-sB} X(e^{sB} y) ds on the given basis.
TrMatrix Tr_matrix(const TriangularForm& b, unsigned r, const std::vector<TrBasisEntry>& basis);

struct BlockedMonomial {
    std::size_t j = 0;
    MultiIndex m;
    long l = 0;
    /// Part of the right-hand side that T^r cannot reach.
    Complex demand;
};

struct Obstruction {
    unsigned degree = 0;
    std::vector<BlockedMonomial> blocked;
    std::string cause;
};

struct EmbeddingOptions {
    /// Demands below tol * max(1, |rhs|) count as zero.
    double tol = 1e-9;
    /// Solve every degree with a dense LU on a shuffled basis (resonant
    /// bases only). Used to cross-check the triangular solve.
    bool dense_shuffled = false;
    unsigned shuffle_seed = 1;
};

struct EmbeddingResult {
    std::optional<FieldGerm> field;
    std::optional<Obstruction> obstruction;
    /// Per degree: size of the resonant+weak basis.
    std::vector<std::size_t> basis_sizes;
};

/// Embedding field of G(y) = A y + g(y), A = e^B, g resonant. g is the
/// nonlinear part only, in the same complex coordinates as b.
EmbeddingResult solve_embedding(const PolyJet<Complex>& g, const TriangularForm& b, unsigned degree,
                                const EmbeddingOptions& options = {});

/// phi(t, y) to degree N. Throws when v has a monomial that is neither
/// resonant nor weakly resonant for B.
PolyJet<ExpPoly> flow_jet(const FieldGerm& x, unsigned degree);

/// Time-one map by numeric RK4 integration of the jet ODE d/dt Phi = X(Phi).
PolyJet<Complex> numeric_time_one(const FieldGerm& x, unsigned degree, double step = 1e-3);

struct TimeOneReport {
    double exp_poly = 0.0;
    double ode = 0.0;
    double max() const { return exp_poly > ode ? exp_poly : ode; }
};

/// max-norm of jet(phi_1) - G, by the ExpPoly flow and by the ODE oracle.
TimeOneReport time_one_check(const FieldGerm& x, const PolyJet<Complex>& G);

/// max-norm of jet(phi_s o phi_t) - jet(phi_{s+t}).
double group_property_residual(const FieldGerm& x, double s, double t);

/// D g(y) B y - B g(y) for diagonal B; exactly zero on resonant g.
PolyJet<Complex> appendix_identity_check(const BlockMatrix& b, const PolyJet<Complex>& g);

} // namespace embedflow
