#pragma once

#include "invconn/cli/run.hpp"

#include <iomanip>
#include <json.hpp>

namespace invconn {

constexpr int kSchemaVersion = 1;
inline const char* toolkit_version() { return "0.1.0"; }

// Field order is fixed; no timing so identical configs give identical bytes.
inline nlohmann::ordered_json report_json(const RunReport& r) {
    using nlohmann::ordered_json;
    const RunConfig& c = r.config;
    ordered_json config;
    config["example"] = c.example;
    config["checks"] = c.checks;
    config["samples"] = c.samples;
    config["tangent_draws"] = c.tangent_draws;
    config["seed"] = c.seed;
    config["tol"] = c.tol;
    config["fd_step"] = c.fd_step;
    if (c.example == "bruhat_gl_n") config["n"] = c.n;

    ordered_json checks = ordered_json::array();
    for (const auto& k : r.checks) {
        ordered_json j;
        j["name"] = k.name;
        j["verdict"] = k.verdict();
        j["expected"] = k.applicable() ? k.expected : "none";
        j["max_residual"] = k.max_residual;
        j["samples"] = k.samples;
        j["failures"] = k.failures;
        j["note"] = k.note;
        checks.push_back(std::move(j));
    }

    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = c.command;
    doc["example"] = c.example;
    doc["config"] = std::move(config);
    doc["checks"] = std::move(checks);
    doc["provenance"] = ordered_json{{"seed", c.seed}, {"fd_step", c.fd_step}, {"tol", c.tol}};
    doc["toolkit_version"] = toolkit_version();
    return doc;
}

inline std::string report_structured(const RunReport& r) { return report_json(r).dump(2) + "\n"; }

inline std::string report_text(const RunReport& r) {
    std::ostringstream os;
    os << r.config.command << " " << r.config.example << "  seed " << r.config.seed << "  samples " << r.config.samples
       << "  tol " << r.config.tol << "\n";
    for (const auto& k : r.checks) {
        os << "  " << std::left << std::setw(11) << k.name << std::setw(28) << k.verdict() << " max residual "
           << std::scientific << std::setprecision(3) << k.max_residual << std::defaultfloat << "  (" << k.samples
           << " samples)";
        if (!k.failures.empty()) {
            os << "  failing ids";
            for (long f : k.failures) os << " " << f;
        }
        os << "\n";
        if (!k.note.empty()) os << "             " << k.note << "\n";
    }
    os << (r.all_match() ? "all verdicts as expected" : "verdict mismatch") << "  (" << std::fixed << std::setprecision(2)
       << r.wall_seconds << " s, invconn " << toolkit_version() << ")\n";
    return os.str();
}

} // namespace invconn
