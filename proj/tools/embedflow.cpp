// Copyright 2026 The embedflow Authors
// SPDX-License-Identifier: Apache-2.0

// embedflow command line driver.
//
//   embedflow analyze germ.txt
//   embedflow embed --fixture paper-2.3-blocked
//   embedflow verify - < germ.txt

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "embedflow/germ_file.hpp"
#include "embedflow/pipeline.hpp"

using namespace embedflow;

int main(int argc, char** argv)
{
    CLI::App app{"Embedding flows for polynomial jets of hyperbolic diffeomorphism germs"};
    std::string verb;
    std::string file;
    std::string fixture;
    std::optional<unsigned> degree;
    std::optional<double> tol;
    std::optional<std::string> branch;
    std::optional<std::string> mode;

    app.add_option("command", verb, "analyze | normal-form | embed | verify | classify2d")
        ->required()
        ->check(CLI::IsMember({"analyze", "normal-form", "embed", "verify", "classify2d"}));
    app.add_option("file", file, "germ file, '-' for stdin");
    app.add_option("--fixture", fixture, "built-in germ from the fixtures directory");
    app.add_option("--degree", degree, "truncation degree N")->check(CLI::Range(1U, 64U));
    app.add_option("--tol", tol, "embedding and verification tolerance")->check(CLI::PositiveNumber);
    app.add_option("--branch", branch, "logarithm branch, e.g. k=0,l=1 or auto");
    app.add_option("--mode", mode, "coefficient mode")->check(CLI::IsMember({"float", "exact"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    if (file.empty() == fixture.empty()) {
        std::cerr << "error: give exactly one of a germ file or --fixture NAME\n";
        return kExitParse;
    }

    GermFile germ;
    try {
        if (!fixture.empty()) {
            germ = load_germ(fixture_path(fixture));
            germ.name = fixture;
        } else if (file == "-") {
            germ = parse_germ(std::cin, "<stdin>");
        } else {
            germ = load_germ(file);
        }
    } catch (const std::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }

    RunOptions options;
    options.degree = degree;
    options.tol = tol;
    options.branch = branch;
    if (mode) {
        options.mode = parse_mode(*mode);
    }

    const RunResult result = run_command(verb, germ, options);
    std::cout << result.report.render();
    return result.exit_code;
}
