#pragma once

#include "invconn/cli/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace invconn {

enum ExitCode : int { kExitMatch = 0, kExitMismatch = 1, kExitUsage = 2, kExitInternal = 3 };

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::string list_text() {
    std::ostringstream os;
    for (const auto& e : example_catalogue()) os << std::left << std::setw(32) << e.name << e.citation << "\n";
    return os.str();
}

// Report for an already built example; the exit code follows the verdicts.
inline int emit_report(const ExampleCase& ex, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    try {
        validate_checks(cfg.checks);
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        rep = run_checks(ex, cfg);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string body = cfg.format == "structured" ? report_structured(rep) : report_text(rep);
    if (cfg.output.empty()) {
        out << body;
    } else {
        std::ofstream f(cfg.output, std::ios::binary);
        if (!f) {
            err << "cannot write " << cfg.output << "\n";
            return kExitInternal;
        }
        f << body;
    }
    return rep.all_match() ? kExitMatch : kExitMismatch;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"invariant connections on trivial principal bundles", "invconn"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string checks;

    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("example", cfg.example, "example name (see `list`)")->required();
        sub->add_option("--checks", checks, "comma separated subset of " + [] {
            std::string all;
            for (const auto& k : check_names()) all += (all.empty() ? "" : ",") + k;
            return all;
        }());
        sub->add_option("--samples", cfg.samples, "seeded samples per check")->check(CLI::PositiveNumber);
        sub->add_option("--tangent-draws", cfg.tangent_draws, "tangent draws per transporter")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "base seed");
        sub->add_option("--tol", cfg.tol, "residual tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--fd-step", cfg.fd_step, "central difference step")->check(CLI::PositiveNumber);
        sub->add_option("--n", cfg.n, "matrix size for bruhat_gl_n")->check(CLI::Range(2, 4));
        sub->add_option("--output", cfg.output, "write the report to this path");
        sub->add_option("--format", cfg.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    };
    CLI::App* verify = app.add_subcommand("verify", "run the verification checks of an example");
    CLI::App* solve = app.add_subcommand("solve", "run the Wang and trivial-bundle solvers");
    CLI::App* probe = app.add_subcommand("probe", "run the nonexistence / uniqueness probe");
    CLI::App* list = app.add_subcommand("list", "print the example catalogue");
    for (CLI::App* s : {verify, solve, probe}) add_run_flags(s);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitMatch;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    if (*list) {
        out << list_text();
        return kExitMatch;
    }
    cfg.command = *verify ? "verify" : *solve ? "solve" : "probe";
    cfg.checks = split_list(checks);
    try {
        validate_checks(cfg.checks);  // before the example is built
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    ExampleCase ex;
    try {
        ExampleOptions opt;
        opt.n = cfg.n;
        opt.fd_step = cfg.fd_step;
        ex = build_example(cfg.example, opt);
    } catch (const NotFound& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    if (ex.name != "bruhat_gl_n") cfg.n = 0;
    return emit_report(ex, cfg, out, err);
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

} // namespace invconn
