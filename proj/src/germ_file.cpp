// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/germ_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "embedflow/classify.hpp"
#include "embedflow/log_scalar.hpp"

namespace embedflow {

namespace {

enum class Section { none, header, linear, nonlinear, options };

std::vector<std::string> split_words(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) {
        out.push_back(w);
    }
    return out;
}

std::string join(const std::vector<std::string>& words)
{
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) {
            out += ' ';
        }
        out += w;
    }
    return out;
}

unsigned long parse_count(const std::string& text, const std::string& what)
{
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw std::invalid_argument(what + " must be a nonnegative integer, got '" + text + "'");
    }
    return std::stoul(text);
}

std::string canonical_rational(const std::string& text)
{
    return to_string(parse_rational(text));
}

std::string canonical_log(const std::string& text)
{
    return LogReal::parse(text).to_string();
}

LinearRecord parse_linear(const std::vector<std::string>& w)
{
    LinearRecord r;
    const std::string& kind = w.front();
    auto expect = [&](std::size_t count) {
        if (w.size() != count + 1) {
            throw std::invalid_argument(kind + " takes " + std::to_string(count) + " fields, got " +
                                        std::to_string(w.size() - 1));
        }
    };
    if (kind == "jordan") {
        expect(2);
        r.kind = LinearRecord::Kind::jordan;
        r.values = {canonical_rational(w[1])};
        r.size = parse_count(w[2], "block size");
    } else if (kind == "expjordan") {
        expect(2);
        r.kind = LinearRecord::Kind::expjordan;
        r.values = {canonical_log(w[1])};
        r.size = parse_count(w[2], "block size");
    } else if (kind == "rotation") {
        expect(3);
        r.kind = LinearRecord::Kind::rotation;
        r.values = {canonical_rational(w[1]), canonical_rational(w[2])};
        if (parse_rational(w[2]) == 0) {
            throw std::invalid_argument("rotation needs beta != 0");
        }
        r.size = parse_count(w[3], "cell count");
    } else if (kind == "logrotation") {
        expect(3);
        r.kind = LinearRecord::Kind::logrotation;
        r.values = {canonical_log(w[1]), canonical_rational(w[2])};
        if (is_integer(parse_rational(w[2]))) {
            throw std::invalid_argument("logrotation needs a non-integer q (cell must not be real)");
        }
        r.size = parse_count(w[3], "cell count");
    } else if (kind == "dense") {
        r.kind = LinearRecord::Kind::dense;
        for (std::size_t i = 1; i < w.size(); ++i) {
            r.values.push_back(canonical_rational(w[i]));
        }
        r.size = 0;
        std::size_t n = 0;
        while (n * n < r.values.size()) {
            ++n;
        }
        if (n == 0 || n * n != r.values.size()) {
            throw std::invalid_argument("dense needs n*n entries, got " + std::to_string(r.values.size()));
        }
        r.size = n;
    } else {
        throw std::invalid_argument("unknown linear record '" + kind +
                                    "' (expected jordan, expjordan, rotation, logrotation or dense)");
    }
    if (r.size == 0) {
        throw std::invalid_argument("block size must be positive");
    }
    return r;
}

} // namespace

std::string to_string(CoefficientMode mode)
{
    return mode == CoefficientMode::exact ? "exact" : "float";
}

CoefficientMode parse_mode(const std::string& text)
{
    if (text == "exact") {
        return CoefficientMode::exact;
    }
    if (text == "float") {
        return CoefficientMode::float_mode;
    }
    throw std::invalid_argument("mode must be float or exact, got '" + text + "'");
}

std::size_t LinearRecord::order() const
{
    switch (kind) {
    case Kind::jordan:
    case Kind::expjordan:
    case Kind::dense:
        return size;
    case Kind::rotation:
    case Kind::logrotation:
        return 2 * size;
    }
    return 0;
}

Block LinearRecord::block() const
{
    switch (kind) {
    case Kind::jordan:
        return Block::jordan(Number::from_gauss(GaussRational(parse_rational(values[0]))), size);
    case Kind::expjordan:
        return Block::jordan(Number::exp_of({LogReal::parse(values[0]), Rational(0)}), size);
    case Kind::rotation:
        return Block::rotation(Number::from_gauss({parse_rational(values[0]), parse_rational(values[1])}), size);
    case Kind::logrotation:
        return Block::rotation(Number::exp_of({LogReal::parse(values[0]), parse_rational(values[1])}), size);
    case Kind::dense:
        break;
    }
    throw std::logic_error("dense records have no single block");
}

std::string LinearRecord::to_string() const
{
    static const char* names[] = {"jordan", "expjordan", "rotation", "logrotation", "dense"};
    std::vector<std::string> w{names[static_cast<int>(kind)]};
    w.insert(w.end(), values.begin(), values.end());
    if (kind != Kind::dense) {
        w.push_back(std::to_string(size));
    }
    return join(w);
}

bool GermFile::linear_needs_basis_change() const
{
    if (linear.size() != 1 || linear.front().kind != LinearRecord::Kind::dense) {
        return false;
    }
    std::vector<Rational> dense;
    for (const auto& v : linear.front().values) {
        dense.push_back(parse_rational(v));
    }
    try {
        block_matrix_from_dense(dimension, dense);
        return false;
    } catch (const std::invalid_argument&) {
        return true;
    }
}

BlockMatrix GermFile::linear_part() const
{
    if (linear.size() == 1 && linear.front().kind == LinearRecord::Kind::dense) {
        std::vector<Rational> dense;
        for (const auto& v : linear.front().values) {
            dense.push_back(parse_rational(v));
        }
        try {
            return block_matrix_from_dense(dimension, dense);
        } catch (const std::invalid_argument&) {
            if (dimension != 2) {
                throw;
            }
        }
        std::vector<double> d;
        for (const auto& q : dense) {
            d.push_back(to_double(q));
        }
        return planar_block_form(d);
    }
    BlockMatrix out;
    for (const auto& r : linear) {
        out.blocks.push_back(r.block());
    }
    return out;
}

template <>
PolyJet<GaussRational> GermFile::nonlinear_jet<GaussRational>() const
{
    PolyJet<GaussRational> out(dimension, degree);
    for (const auto& r : nonlinear) {
        out.add(r.j, r.m, r.c);
    }
    return out;
}

template <>
PolyJet<Complex> GermFile::nonlinear_jet<Complex>() const
{
    PolyJet<Complex> out(dimension, degree);
    for (const auto& r : nonlinear) {
        out.add(r.j, r.m, r.c.to_complex());
    }
    return out;
}

GermFile GermFile::with_degree(unsigned n) const
{
    GermFile out = *this;
    out.degree = n;
    std::erase_if(out.nonlinear, [n](const NonlinearRecord& r) { return r.m.degree() > n; });
    return out;
}

GermParseError::GermParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

GermFile parse_germ(std::istream& in, const std::string& name)
{
    GermFile g;
    g.name = name;
    Section section = Section::none;
    bool have_dimension = false;
    bool have_degree = false;
    bool have_mode = false;
    std::size_t linear_line = 0;
    struct Pending {
        std::size_t line;
        std::vector<std::string> words;
    };
    std::vector<Pending> pending;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        const auto w = split_words(raw);
        if (w.empty()) {
            continue;
        }
        if (w.size() == 1 && (w[0] == "HEADER" || w[0] == "LINEAR" || w[0] == "NONLINEAR" || w[0] == "OPTIONS")) {
            section = w[0] == "HEADER"      ? Section::header
                      : w[0] == "LINEAR"    ? Section::linear
                      : w[0] == "NONLINEAR" ? Section::nonlinear
                                            : Section::options;
            if (section == Section::linear) {
                linear_line = lineno;
            }
            continue;
        }
        try {
            switch (section) {
            case Section::none:
                throw std::invalid_argument("record '" + join(w) + "' before any section header");
            case Section::header:
                if (w.size() != 2) {
                    throw std::invalid_argument("header record '" + join(w) + "' must be 'key value'");
                }
                if (w[0] == "dimension") {
                    g.dimension = parse_count(w[1], "dimension");
                    if (g.dimension == 0) {
                        throw std::invalid_argument("dimension must be positive");
                    }
                    have_dimension = true;
                } else if (w[0] == "degree") {
                    g.degree = static_cast<unsigned>(parse_count(w[1], "degree"));
                    if (g.degree < 1) {
                        throw std::invalid_argument("degree must be at least 1");
                    }
                    have_degree = true;
                } else if (w[0] == "mode") {
                    g.mode = parse_mode(w[1]);
                    have_mode = true;
                } else {
                    throw std::invalid_argument("unknown header key '" + w[0] + "'");
                }
                break;
            case Section::linear:
                g.linear.push_back(parse_linear(w));
                break;
            case Section::nonlinear:
                pending.push_back({lineno, w});
                break;
            case Section::options:
                if (w.size() != 2) {
                    throw std::invalid_argument("option record '" + join(w) + "' must be 'key value'");
                }
                if (w[0] == "branch") {
                    if (w[1] == "auto") {
                        g.branch.reset();
                    } else {
                        g.branch = BranchChoice::parse(w[1]);
                    }
                } else if (w[0] == "coordinates") {
                    if (w[1] != "real" && w[1] != "complex") {
                        throw std::invalid_argument("coordinates must be real or complex, got '" + w[1] + "'");
                    }
                    g.complex_coordinates = w[1] == "complex";
                } else {
                    throw std::invalid_argument("unknown option '" + w[0] + "'");
                }
                break;
            }
        } catch (const GermParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw GermParseError(lineno, e.what());
        }
    }
    if (!have_dimension || !have_degree) {
        throw GermParseError(lineno, std::string("HEADER needs ") + (have_dimension ? "degree" : "dimension"));
    }
    if (!have_mode) {
        g.mode = CoefficientMode::exact;
    }
    std::size_t order = 0;
    for (const auto& r : g.linear) {
        if (r.kind == LinearRecord::Kind::dense && g.linear.size() != 1) {
            throw GermParseError(linear_line, "a dense record must be the only LINEAR record");
        }
        order += r.order();
    }
    if (g.linear.empty() || order != g.dimension) {
        throw GermParseError(linear_line, "LINEAR blocks have total order " + std::to_string(order) +
                                              ", expected dimension " + std::to_string(g.dimension));
    }
    for (const auto& p : pending) {
        const auto& w = p.words;
        const std::string record = "NONLINEAR record '" + join(w) + "'";
        const std::size_t n = g.dimension;
        if (w.size() != n + 2 && w.size() != n + 3) {
            throw GermParseError(p.line, record + ": expected j, " + std::to_string(n) +
                                             " exponents and re [im], got " + std::to_string(w.size()) + " fields");
        }
        try {
            NonlinearRecord r;
            const auto j = parse_count(w[0], "component");
            if (j < 1 || j > n) {
                throw std::invalid_argument("component " + w[0] + " out of range 1.." + std::to_string(n));
            }
            r.j = j - 1;
            std::vector<unsigned> exps;
            for (std::size_t i = 0; i < n; ++i) {
                exps.push_back(static_cast<unsigned>(parse_count(w[1 + i], "exponent")));
            }
            r.m = MultiIndex(exps);
            if (r.m.degree() < 2 || r.m.degree() > g.degree) {
                throw std::invalid_argument("monomial degree " + std::to_string(r.m.degree()) + " outside [2, " +
                                            std::to_string(g.degree) + "]");
            }
            const Rational re = parse_rational(w[n + 1]);
            const Rational im = w.size() == n + 3 ? parse_rational(w[n + 2]) : Rational(0);
            if (!g.complex_coordinates && sgn(im) != 0) {
                throw std::invalid_argument("imaginary coefficient in real coordinates");
            }
            r.c = GaussRational(re, im);
            const bool duplicate = std::any_of(g.nonlinear.begin(), g.nonlinear.end(), [&](const NonlinearRecord& o) {
                return o.j == r.j && o.m == r.m;
            });
            if (duplicate) {
                throw std::invalid_argument("duplicate monomial");
            }
            if (!r.c.is_zero()) {
                g.nonlinear.push_back(r);
            }
        } catch (const std::exception& e) {
            throw GermParseError(p.line, record + ": " + e.what());
        }
    }
    std::sort(g.nonlinear.begin(), g.nonlinear.end(), [](const NonlinearRecord& a, const NonlinearRecord& b) {
        if (a.j != b.j) {
            return a.j < b.j;
        }
        return GradedLexLess{}(a.m, b.m);
    });
    return g;
}

GermFile parse_germ_text(const std::string& text, const std::string& name)
{
    std::istringstream is(text);
    return parse_germ(is, name);
}

GermFile load_germ(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open germ file '" + path + "'");
    }
    return parse_germ(in, path);
}

std::string serialize(const GermFile& g)
{
    std::ostringstream os;
    os << "HEADER\n";
    os << "dimension " << g.dimension << "\n";
    os << "degree " << g.degree << "\n";
    os << "mode " << to_string(g.mode) << "\n";
    os << "LINEAR\n";
    for (const auto& r : g.linear) {
        os << r.to_string() << "\n";
    }
    os << "NONLINEAR\n";
    for (const auto& r : g.nonlinear) {
        os << r.j + 1;
        for (std::size_t i = 0; i < r.m.dimension(); ++i) {
            os << ' ' << r.m[i];
        }
        os << ' ' << to_string(r.c.re());
        if (sgn(r.c.im()) != 0) {
            os << ' ' << to_string(r.c.im());
        }
        os << "\n";
    }
    os << "OPTIONS\n";
    os << "branch " << (g.branch ? g.branch->to_string() : std::string("auto")) << "\n";
    os << "coordinates " << (g.complex_coordinates ? "complex" : "real") << "\n";
    return os.str();
}

} // namespace embedflow
