// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "embedflow/block_matrix.hpp"
#include "embedflow/multi_index.hpp"
#include "embedflow/poly_jet.hpp"
#include "embedflow/rational.hpp"
#include "embedflow/spectral.hpp"

namespace embedflow {

enum class CoefficientMode { float_mode, exact };

std::string to_string(CoefficientMode mode);
/// Accepts "float" and "exact".
CoefficientMode parse_mode(const std::string& text);

/// Germ specification file.
///
///   HEADER
///   dimension 3
///   degree 8
///   mode float
///   LINEAR
///   expjordan 8 1            # eigenvalue e^8, one cell
///   logrotation 1 -1/4 1     # cell e^{1 - i pi/4}
///   NONLINEAR
///   1 0 4 4 7/10             # j m_1 .. m_n re [im], j 1-based
///   OPTIONS
///   branch auto
///   coordinates complex
///
/// Linear records: "jordan v size", "expjordan r size" (eigenvalue e^r, r a
/// log expression such as 2*ln(2)), "rotation alpha beta cells",
/// "logrotation r q cells" (cell e^{r + i q pi}), or a single
/// "dense a_11 a_12 ... a_nn". Blank lines and '#' comments are ignored.
struct LinearRecord {
    enum class Kind { jordan, expjordan, rotation, logrotation, dense };
    Kind kind = Kind::jordan;
    /// Numeric fields in canonical text.
    std::vector<std::string> values;
    std::size_t size = 1;

    std::size_t order() const;
    Block block() const;
    std::string to_string() const;
};

struct NonlinearRecord {
    std::size_t j = 0;
    MultiIndex m;
    GaussRational c;
};

struct GermFile {
    std::string name;
    std::size_t dimension = 0;
    unsigned degree = 0;
    CoefficientMode mode = CoefficientMode::exact;
    std::vector<LinearRecord> linear;
    /// Sorted by component, then graded lex order; no zero coefficients.
    std::vector<NonlinearRecord> nonlinear;
    /// Absent means "auto": search for a weakly nonresonant branch.
    std::optional<BranchChoice> branch;
    /// Nonlinear coefficients are given in (z, conj z) coordinates.
    bool complex_coordinates = false;

    /// Linear part as blocks. A dense record that is not block structured is
    /// accepted for n = 2 through the planar loader.
    BlockMatrix linear_part() const;
    /// True when the linear part is a dense record needing a change of basis.
    bool linear_needs_basis_change() const;
    template <class C>
    PolyJet<C> nonlinear_jet() const;
    /// Same germ truncated (or extended) to a new degree.
    GermFile with_degree(unsigned n) const;
};

template <>
PolyJet<GaussRational> GermFile::nonlinear_jet<GaussRational>() const;
template <>
PolyJet<Complex> GermFile::nonlinear_jet<Complex>() const;

class GermParseError : public std::runtime_error {
public:
    GermParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Throws GermParseError with the offending line number.
GermFile parse_germ(std::istream& in, const std::string& name = "<input>");
GermFile parse_germ_text(const std::string& text, const std::string& name = "<input>");
GermFile load_germ(const std::string& path);

/// Canonical text: fixed section and key order, sorted records, single spaces.
std::string serialize(const GermFile& germ);

} // namespace embedflow
