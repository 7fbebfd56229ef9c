// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "embedflow/germ_file.hpp"

namespace embedflow {

/// Process exit codes of the command line driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitObstruction = 2,
    kExitPrecondition = 3,
    kExitParse = 4,
};

/// Raised for inputs that parse but violate a precondition (non-hyperbolic,
/// no real logarithm, near resonance).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Human-readable lines followed by a key=value section.
class Report {
public:
    static constexpr const char* kStructuredMarker = "--- structured ---";

    void text(const std::string& line) { lines_.push_back(line); }
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, const char* value) { put(key, std::string(value)); }
    void put(const std::string& key, bool value) { put(key, std::string(value ? "true" : "false")); }
    void put(const std::string& key, double value);
    void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }
    void put(const std::string& key, int value) { put(key, std::to_string(value)); }
    void put(const std::string& key, long value) { put(key, std::to_string(value)); }
    void put(const std::string& key, unsigned value) { put(key, std::to_string(value)); }

    std::optional<std::string> get(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    std::string render() const;

private:
    std::vector<std::string> lines_;
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Parses the key=value section of rendered report text.
std::map<std::string, std::string> parse_structured(const std::string& text);

/// Command line overrides of file settings.
struct RunOptions {
    std::optional<unsigned> degree;
    /// Embedding demand tolerance and verification tolerance.
    std::optional<double> tol;
    /// "auto" or a branch list as accepted by BranchChoice::parse.
    std::optional<std::string> branch;
    std::optional<CoefficientMode> mode;
};

struct RunResult {
    int exit_code = kExitOk;
    Report report;
};

RunResult cmd_analyze(const GermFile& germ, const RunOptions& options = {});
RunResult cmd_normal_form(const GermFile& germ, const RunOptions& options = {});
RunResult cmd_embed(const GermFile& germ, const RunOptions& options = {});
/// cmd_embed plus tolerance checks on both time-one residuals and the group
/// property; exit code 1 when a check fails.
RunResult cmd_verify(const GermFile& germ, const RunOptions& options = {});
RunResult cmd_classify2d(const GermFile& germ, const RunOptions& options = {});

/// Dispatches on the verb and maps exceptions to exit codes.
RunResult run_command(const std::string& verb, const GermFile& germ, const RunOptions& options = {});

/// Path of fixtures/<name>.germ. EMBEDFLOW_FIXTURE_DIR overrides the
/// directory configured at build time.
std::string fixture_path(const std::string& name);

} // namespace embedflow
