// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#include "embedflow/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "embedflow/classify.hpp"
#include "embedflow/complexify.hpp"
#include "embedflow/embedding.hpp"
#include "embedflow/normal_form.hpp"
#include "embedflow/resonance.hpp"

#ifndef EMBEDFLOW_FIXTURE_DIR_DEFAULT
#define EMBEDFLOW_FIXTURE_DIR_DEFAULT "fixtures"
#endif

namespace embedflow {

namespace {

constexpr double kDefaultTol = 1e-9;
constexpr double kOdeTol = 1e-6;
constexpr double kRealifyTol = 1e-8;
constexpr double kExpCheckTol = 1e-10;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(Complex c)
{
    if (c.imag() == 0.0) {
        return fmt(c.real());
    }
    if (c.real() == 0.0) {
        return fmt(c.imag()) + "i";
    }
    return fmt(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt(std::abs(c.imag())) + "i";
}

std::string short_fmt(Complex c)
{
    std::ostringstream os;
    os.precision(10);
    if (c.imag() == 0.0) {
        os << c.real();
    } else {
        os << "(" << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i)";
    }
    return os.str();
}

std::string matrix_text(const std::vector<double>& m, std::size_t n)
{
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            out += "; ";
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += fmt(m[i * n + j]);
        }
    }
    return out;
}

// Canonical coordinate c sits at original coordinate to_original[c].
struct Coordinates {
    std::vector<std::size_t> to_original;
    std::vector<std::size_t> to_canonical;

    explicit Coordinates(std::vector<std::size_t> perm) : to_original(std::move(perm)), to_canonical(to_original.size())
    {
        for (std::size_t c = 0; c < to_original.size(); ++c) {
            to_canonical[to_original[c]] = c;
        }
    }
    bool identity() const
    {
        for (std::size_t c = 0; c < to_original.size(); ++c) {
            if (to_original[c] != c) {
                return false;
            }
        }
        return true;
    }
    MultiIndex original(const MultiIndex& m) const
    {
        MultiIndex out(m.dimension());
        for (std::size_t c = 0; c < m.dimension(); ++c) {
            out[to_original[c]] = m[c];
        }
        return out;
    }
    MultiIndex canonical(const MultiIndex& m) const
    {
        MultiIndex out(m.dimension());
        for (std::size_t c = 0; c < m.dimension(); ++c) {
            out[c] = m[to_original[c]];
        }
        return out;
    }
    std::vector<double> dense_to_original(const std::vector<double>& canon) const
    {
        const std::size_t n = to_original.size();
        std::vector<double> out(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out[to_original[i] * n + to_original[j]] = canon[i * n + j];
            }
        }
        return out;
    }
};

template <class C>
PolyJet<C> permute_to_canonical(const PolyJet<C>& f, const Coordinates& co)
{
    PolyJet<C> out(f.dimension(), f.degree());
    f.for_each([&](std::size_t j, const MultiIndex& m, const C& c) { out.add(co.to_canonical[j], co.canonical(m), c); });
    return out;
}

template <class C>
PolyJet<C> permute_to_original(const PolyJet<C>& f, const Coordinates& co)
{
    PolyJet<C> out(f.dimension(), f.degree());
    f.for_each([&](std::size_t j, const MultiIndex& m, const C& c) { out.add(co.to_original[j], co.original(m), c); });
    return out;
}

std::string label(const Coordinates& co, std::size_t j, const MultiIndex& m)
{
    return "j=" + std::to_string(co.to_original[j] + 1) + " m=" + co.original(m).to_string();
}

struct Prepared {
    GermFile germ;
    unsigned degree = 0;
    BlockMatrix A;
    bool hyperbolic = false;
    CanonicalForm canon;
    Coordinates coords{{}};
    TriangularForm triA;
    CoefficientMode mode = CoefficientMode::exact;
};

Prepared prepare(const GermFile& input, const RunOptions& opt, Report& rep)
{
    Prepared p;
    p.germ = opt.degree ? input.with_degree(*opt.degree) : input;
    if (opt.mode) {
        p.germ.mode = *opt.mode;
    }
    p.degree = p.germ.degree;
    rep.put("germ", p.germ.name);
    rep.put("dimension", p.germ.dimension);
    rep.put("degree", p.degree);
    if (p.germ.linear_needs_basis_change() && !p.germ.nonlinear.empty()) {
        throw PreconditionError("dense linear part is not block structured; nonlinear terms would need a change of basis");
    }
    p.A = p.germ.linear_part();
    rep.text("linear part: " + p.A.describe());
    p.hyperbolic = is_hyperbolic(p.A);
    rep.put("hyperbolic", p.hyperbolic);
    p.canon = canonicalize(p.A);
    p.coords = Coordinates(p.canon.to_original);
    if (p.germ.complex_coordinates && !p.coords.identity()) {
        throw PreconditionError("complex coordinates need the linear part listed in canonical order "
                                "(real blocks first, then rotation and paired negative blocks)");
    }
    p.triA = triangular_form(p.canon.matrix);
    p.mode = p.germ.mode;
    if (p.mode == CoefficientMode::exact && !p.triA.exact) {
        rep.text("note: exact arithmetic needs a linear part over Q(i); using float coefficients");
        p.mode = CoefficientMode::float_mode;
    }
    rep.put("mode", to_string(p.mode));
    return p;
}

void require_hyperbolic(const Prepared& p)
{
    if (!p.hyperbolic) {
        throw PreconditionError("linear part is not hyperbolic (an eigenvalue has modulus 1)");
    }
}

template <class C>
PolyJet<C> canonical_jet(const Prepared& p)
{
    PolyJet<C> f = permute_to_canonical(p.germ.nonlinear_jet<C>(), p.coords);
    return p.germ.complex_coordinates ? f : complexify(f, p.canon.pairing);
}

template <class C>
PolyJet<Complex> as_complex(const PolyJet<C>& f)
{
    return f.map_coefficients([](const C& c) { return CoeffTraits<C>::to_complex(c); });
}

struct NormalFormSummary {
    PolyJet<Complex> G;
    PolyJet<Complex> h;
    double residual = 0.0;
    std::size_t residual_terms = 0;
    bool g_resonant_only = true;
    bool h_nonresonant_only = true;
    std::vector<DegreeDiagnostics> diagnostics;
};

template <class C>
NormalFormSummary normalize(const Prepared& p)
{
    const PolyJet<C> f = canonical_jet<C>(p);
    NormalFormResult<C> nf;
    try {
        nf = distinguished_normal_form(p.triA, f, p.degree);
    } catch (const NearResonanceError& e) {
        throw PreconditionError(e.what());
    }
    const PolyJet<C> res = conjugacy_residual(p.triA, f, nf.G, nf.h, p.degree);
    NormalFormSummary out;
    out.G = as_complex(nf.G);
    out.h = as_complex(nf.h);
    out.residual = res.max_abs();
    out.residual_terms = res.term_count();
    out.diagnostics = nf.diagnostics;
    const MapResonanceTest test(p.triA.diagonal);
    nf.G.degree_range(2, p.degree).for_each([&](std::size_t j, const MultiIndex& m, const C&) {
        out.g_resonant_only = out.g_resonant_only && test.resonant(j, m);
    });
    nf.h.for_each([&](std::size_t j, const MultiIndex& m, const C&) {
        out.h_nonresonant_only = out.h_nonresonant_only && !test.resonant(j, m);
    });
    return out;
}

NormalFormSummary normalize(const Prepared& p)
{
    return p.mode == CoefficientMode::exact ? normalize<GaussRational>(p) : normalize<Complex>(p);
}

void emit_jet(Report& rep, const std::string& key, const std::string& title, const PolyJet<Complex>& f,
              const Coordinates& co)
{
    rep.put(key + ".count", f.term_count());
    std::size_t i = 0;
    f.for_each([&](std::size_t j, const MultiIndex& m, const Complex& c) {
        ++i;
        rep.put(key + "." + std::to_string(i), label(co, j, m) + " c=" + fmt(c));
        rep.text("  " + title + " x^" + co.original(m).to_string() + " e_" + std::to_string(co.to_original[j] + 1) +
                 " : " + short_fmt(c));
    });
}

void emit_refs(Report& rep, const std::string& key, const std::vector<MonomialRef>& refs, const Coordinates& co)
{
    rep.put(key + ".count", refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
        rep.put(key + "." + std::to_string(i + 1), label(co, refs[i].j, refs[i].m));
    }
}

void emit_weak(Report& rep, const std::string& key, const std::vector<WeakRef>& refs, const Coordinates& co)
{
    rep.put(key + ".count", refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) {
        rep.put(key + "." + std::to_string(i + 1), label(co, refs[i].j, refs[i].m) + " l=" + std::to_string(refs[i].l));
    }
}

struct BranchResolution {
    BranchChoice choice;
    std::string source;
};

BranchResolution resolve_branch(const Prepared& p, const RunOptions& opt)
{
    std::optional<BranchChoice> given = p.germ.branch;
    std::string source = "file";
    if (opt.branch) {
        source = "option";
        if (*opt.branch == "auto") {
            given.reset();
        } else {
            try {
                given = BranchChoice::parse(*opt.branch);
            } catch (const std::exception& e) {
                throw UsageError(std::string("--branch: ") + e.what());
            }
        }
    }
    if (given) {
        return {*given, source};
    }
    if (auto found = weakly_nonresonant_branch(p.A, p.degree)) {
        return {*found, "search"};
    }
    return {BranchChoice{}, "principal (no weakly nonresonant branch in the search window)"};
}

RealLog checked_log(const Prepared& p, const BranchChoice& branch)
{
    RealLog lg;
    try {
        lg = real_log(p.A, branch);
    } catch (const std::invalid_argument& e) {
        throw PreconditionError(e.what());
    }
    const auto lhs = block_exp_dense(lg.log);
    const auto rhs = lg.canonical.matrix.to_dense();
    double err = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        err = std::max(err, std::abs(lhs[i] - rhs[i]));
        scale = std::max(scale, std::abs(rhs[i]));
    }
    if (err > kExpCheckTol * scale) {
        throw PreconditionError("exp(B) differs from A by " + fmt(err));
    }
    return lg;
}

void emit_log(Report& rep, const Prepared& p, const RealLog& lg, const BranchResolution& br)
{
    rep.put("branch", lg.branch.to_string());
    rep.put("branch.source", br.source);
    rep.text("logarithm branch " + lg.branch.to_string() + " (" + br.source + ")");
    rep.put("log.matrix", matrix_text(p.coords.dense_to_original(lg.log.to_dense()), p.germ.dimension));
    rep.text("B = " + lg.log.describe());
}

void emit_eigenvalues(Report& rep, const std::string& key, const std::vector<std::string>& values, const Coordinates& co)
{
    for (std::size_t c = 0; c < values.size(); ++c) {
        rep.put(key + "." + std::to_string(co.to_original[c] + 1), values[c]);
    }
}

RunResult analyze_impl(const GermFile& germ, const RunOptions& opt)
{
    RunResult out;
    Report& rep = out.report;
    rep.put("command", "analyze");
    const Prepared p = prepare(germ, opt, rep);
    std::vector<std::string> lambda_text;
    for (const auto& x : p.triA.diagonal) {
        lambda_text.push_back(x.to_string());
    }
    emit_eigenvalues(rep, "lambda", lambda_text, p.coords);
    if (!p.hyperbolic) {
        rep.text("not hyperbolic: an eigenvalue has modulus 1");
        out.exit_code = kExitPrecondition;
        return out;
    }
    const auto cert = has_real_log(p.A);
    rep.put("real_log", cert.exists);
    rep.text(cert.exists ? "real logarithm exists" : "no real logarithm: unpaired negative eigenvalue block");
    const auto map = map_resonances(p.triA.diagonal, p.degree);
    rep.put("resonance.method", map.method);
    emit_refs(rep, "resonance.map", map.map, p.coords);
    rep.text("map resonances up to degree " + std::to_string(p.degree) + ": " + std::to_string(map.map.size()) +
             " (" + map.method + ")");
    for (const auto& r : map.map) {
        rep.text("  lambda_" + std::to_string(p.coords.to_original[r.j] + 1) + " = lambda^" +
                 p.coords.original(r.m).to_string());
    }
    if (!map.near.empty()) {
        rep.text("warning: " + std::to_string(map.near.size()) +
                 " near resonance(s) within 100x the float tolerance");
        emit_refs(rep, "resonance.near", map.near, p.coords);
    }
    if (auto bound = poincare_degree_bound(p.triA.diagonal)) {
        rep.put("poincare.degree_bound", *bound);
    }
    if (!cert.exists) {
        return out;
    }
    const auto search = weakly_nonresonant_branch(p.A, p.degree);
    rep.put("branch.search", search ? search->to_string() : std::string("none"));
    const BranchResolution br = resolve_branch(p, opt);
    const RealLog lg = checked_log(p, br.choice);
    emit_log(rep, p, lg, br);
    const auto triB = triangular_form(lg.log);
    const auto mu = field_eigenvalues(triB);
    std::vector<std::string> mu_text;
    for (const auto& x : mu) {
        mu_text.push_back(x.to_string());
    }
    emit_eigenvalues(rep, "mu", mu_text, p.coords);
    const auto field = field_resonances(mu, p.degree);
    emit_refs(rep, "resonance.field", field.resonant, p.coords);
    emit_weak(rep, "resonance.weak", field.weak, p.coords);
    rep.text("field resonances: " + std::to_string(field.resonant.size()) +
             ", weak resonances: " + std::to_string(field.weak.size()));
    for (const auto& w : field.weak) {
        rep.text("  weak " + label(p.coords, w.j, w.m) + " l=" + std::to_string(w.l));
    }
    return out;
}

RunResult normal_form_impl(const GermFile& germ, const RunOptions& opt)
{
    RunResult out;
    Report& rep = out.report;
    rep.put("command", "normal-form");
    const Prepared p = prepare(germ, opt, rep);
    require_hyperbolic(p);
    const auto nf = normalize(p);
    rep.text("normal form (resonant terms):");
    emit_jet(rep, "normal_form.g", "g", nf.G.degree_range(2, p.degree), p.coords);
    rep.put("normal_form.h.count", nf.h.term_count());
    rep.put("normal_form.residual", nf.residual);
    rep.put("normal_form.residual_terms", nf.residual_terms);
    rep.put("normal_form.g_resonant_only", nf.g_resonant_only);
    rep.put("normal_form.h_nonresonant_only", nf.h_nonresonant_only);
    double min_div = INFINITY;
    for (const auto& d : nf.diagnostics) {
        min_div = std::min(min_div, d.min_divisor);
    }
    if (std::isfinite(min_div)) {
        rep.put("normal_form.min_divisor", min_div);
    }
    rep.text("conjugacy residual " + fmt(nf.residual) + " (" + std::to_string(nf.residual_terms) + " terms)");
    return out;
}

double group_residual(const FieldGerm& x)
{
    double worst = 0.0;
    for (double s : {0.25, 0.5, 1.0}) {
        for (double t : {0.25, 0.5, 1.0}) {
            worst = std::max(worst, group_property_residual(x, s, t));
        }
    }
    return worst;
}

RunResult embed_impl(const GermFile& germ, const RunOptions& opt, bool verify)
{
    RunResult out;
    Report& rep = out.report;
    rep.put("command", verify ? "verify" : "embed");
    const auto start = std::chrono::steady_clock::now();
    const Prepared p = prepare(germ, opt, rep);
    require_hyperbolic(p);
    const auto cert = has_real_log(p.A);
    if (!cert.exists) {
        throw PreconditionError("no real logarithm: negative eigenvalue Jordan block without an identical partner");
    }
    const auto nf = normalize(p);
    const PolyJet<Complex> g = nf.G.degree_range(2, p.degree);
    rep.text("normal form (resonant terms):");
    emit_jet(rep, "normal_form.g", "g", g, p.coords);
    rep.put("normal_form.residual", nf.residual);

    const BranchResolution br = resolve_branch(p, opt);
    const RealLog lg = checked_log(p, br.choice);
    emit_log(rep, p, lg, br);
    const TriangularForm triB = triangular_form(lg.log);
    const auto field_report = field_resonances(field_eigenvalues(triB), p.degree);
    emit_weak(rep, "resonance.weak", field_report.weak, p.coords);

    EmbeddingOptions eo;
    eo.tol = opt.tol.value_or(kDefaultTol);
    const EmbeddingResult er = solve_embedding(g, triB, p.degree, eo);
    if (er.obstruction) {
        const Obstruction& ob = *er.obstruction;
        rep.put("status", "obstruction");
        rep.put("obstruction.degree", ob.degree);
        rep.put("obstruction.count", ob.blocked.size());
        rep.text("obstruction at degree " + std::to_string(ob.degree) + ": " + ob.cause);
        for (std::size_t i = 0; i < ob.blocked.size(); ++i) {
            const auto& b = ob.blocked[i];
            rep.put("obstruction." + std::to_string(i + 1),
                    label(p.coords, b.j, b.m) + " l=" + std::to_string(b.l) + " demand=" + fmt(b.demand));
            rep.text("  blocked " + label(p.coords, b.j, b.m) + " l=" + std::to_string(b.l) +
                     " demand " + short_fmt(b.demand));
        }
        rep.text("no embedding field with resonant and weakly resonant support exists for this branch");
        out.exit_code = kExitObstruction;
        rep.put("time.seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        return out;
    }
    const FieldGerm& x = *er.field;
    rep.put("status", "field");
    rep.text("embedding field (complex coordinates):");
    emit_jet(rep, "field.complex", "v", x.v, p.coords);
    bool resonant_support = true;
    const auto mu = field_eigenvalues(triB);
    x.v.for_each([&](std::size_t j, const MultiIndex& m, const Complex&) {
        resonant_support = resonant_support && field_defect(mu, j, m).is_zero();
    });
    rep.put("field.resonant_support", resonant_support);
    try {
        const auto real = permute_to_original(realify(x.full(), p.canon.pairing, kRealifyTol), p.coords);
        std::vector<std::size_t> identity(p.germ.dimension);
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        const Coordinates id(identity);
        rep.text("embedding field (real coordinates, linear part included):");
        emit_jet(rep, "field.real", "X", real.pruned(1e-12), id);
    } catch (const std::domain_error& e) {
        rep.put("field.real", "unavailable");
        rep.text(std::string("note: ") + e.what());
    }

    const PolyJet<Complex> G = PolyJet<Complex>::linear(p.germ.dimension, p.degree, p.triA.matrix) + g;
    const TimeOneReport t1 = time_one_check(x, G);
    const double group = group_residual(x);
    const double embed_res = embedding_residual(G, x).max_abs();
    const double scale = std::max(1.0, G.max_abs());
    rep.put("residual.time_one.exp_poly", t1.exp_poly);
    rep.put("residual.time_one.ode", t1.ode);
    rep.put("residual.group", group);
    rep.put("residual.embedding_equation", embed_res);
    rep.put("residual.scale", scale);
    rep.text("time-one residual: flow " + fmt(t1.exp_poly) + ", ode " + fmt(t1.ode) + "; group property " + fmt(group));
    rep.put("time.seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (verify) {
        const double tol = opt.tol.value_or(kDefaultTol);
        const bool ok = t1.exp_poly <= tol * scale && t1.ode <= kOdeTol * scale && group <= tol * scale;
        rep.put("verify.passed", ok);
        rep.text(ok ? "verification passed" : "verification FAILED");
        out.exit_code = ok ? kExitOk : kExitVerifyFailed;
    }
    return out;
}

RunResult classify_impl(const GermFile& germ, const RunOptions& opt)
{
    RunResult out;
    Report& rep = out.report;
    rep.put("command", "classify2d");
    const GermFile g = opt.degree ? germ.with_degree(*opt.degree) : germ;
    rep.put("germ", g.name);
    if (g.dimension != 2) {
        throw PreconditionError("classify2d needs dimension 2, got " + std::to_string(g.dimension));
    }
    const BlockMatrix a = g.linear_part();
    rep.text("linear part: " + a.describe());
    if (!is_hyperbolic(a)) {
        throw PreconditionError("linear part is not hyperbolic (an eigenvalue has modulus 1)");
    }
    const PlanarVerdict v = classify_2d(a);
    rep.put("classify.embeddable", v.embeddable);
    rep.put("classify.reason", to_string(v.reason));
    rep.text(std::string(v.embeddable ? "embeddable" : "not embeddable") + " (" + to_string(v.reason) + ")");
    if (v.embeddable) {
        rep.put("classify.family", v.family);
        rep.put("classify.log", matrix_text(v.log, 2));
        rep.put("classify.weakly_nonresonant", v.weakly_nonresonant);
        rep.text("B = ln " + v.family + " = [" + matrix_text(v.log, 2) + "]");
    }
    out.exit_code = v.embeddable ? kExitOk : kExitObstruction;
    return out;
}

} // namespace

void Report::put(const std::string& key, const std::string& value)
{
    for (auto& e : entries_) {
        if (e.first == key) {
            e.second = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void Report::put(const std::string& key, double value)
{
    put(key, fmt(value));
}

std::optional<std::string> Report::get(const std::string& key) const
{
    for (const auto& e : entries_) {
        if (e.first == key) {
            return e.second;
        }
    }
    return std::nullopt;
}

std::string Report::render() const
{
    std::string out;
    for (const auto& l : lines_) {
        out += l + "\n";
    }
    out += std::string(kStructuredMarker) + "\n";
    for (const auto& [k, v] : entries_) {
        out += k + "=" + v + "\n";
    }
    return out;
}

std::map<std::string, std::string> parse_structured(const std::string& text)
{
    std::map<std::string, std::string> out;
    std::istringstream is(text);
    std::string line;
    bool inside = false;
    while (std::getline(is, line)) {
        if (line == Report::kStructuredMarker) {
            inside = true;
            continue;
        }
        if (!inside) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            out[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    return out;
}

RunResult cmd_analyze(const GermFile& germ, const RunOptions& options)
{
    return analyze_impl(germ, options);
}

RunResult cmd_normal_form(const GermFile& germ, const RunOptions& options)
{
    return normal_form_impl(germ, options);
}

RunResult cmd_embed(const GermFile& germ, const RunOptions& options)
{
    return embed_impl(germ, options, false);
}

RunResult cmd_verify(const GermFile& germ, const RunOptions& options)
{
    return embed_impl(germ, options, true);
}

RunResult cmd_classify2d(const GermFile& germ, const RunOptions& options)
{
    return classify_impl(germ, options);
}

RunResult run_command(const std::string& verb, const GermFile& germ, const RunOptions& options)
{
    auto failure = [&](int code, const std::string& message) {
        RunResult r;
        r.exit_code = code;
        r.report.text("error: " + message);
        r.report.put("command", verb);
        r.report.put("status", "error");
        r.report.put("error", message);
        return r;
    };
    try {
        if (verb == "analyze") {
            return cmd_analyze(germ, options);
        }
        if (verb == "normal-form") {
            return cmd_normal_form(germ, options);
        }
        if (verb == "embed") {
            return cmd_embed(germ, options);
        }
        if (verb == "verify") {
            return cmd_verify(germ, options);
        }
        if (verb == "classify2d") {
            return cmd_classify2d(germ, options);
        }
        return failure(kExitParse, "unknown command '" + verb + "'");
    } catch (const GermParseError& e) {
        return failure(kExitParse, e.what());
    } catch (const UsageError& e) {
        return failure(kExitParse, e.what());
    } catch (const std::exception& e) {
        return failure(kExitPrecondition, e.what());
    }
}

std::string fixture_path(const std::string& name)
{
    const char* env = std::getenv("EMBEDFLOW_FIXTURE_DIR");
    const std::string dir = env && *env ? env : EMBEDFLOW_FIXTURE_DIR_DEFAULT;
    return dir + "/" + name + ".germ";
}

} // namespace embedflow
