#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "sq7/twistor.hpp"

namespace sq7 {

struct Config {
    double tolerance = 1e-9;
    int samples = 100;
    std::uint64_t seed = 42;
    int nmax = 10;
    int gamma_max = 4;
};

struct Report {
    std::string claim_id;
    std::string status;  // pass | fail | error
    double residual = 0;
    double tolerance = 0;
    std::string witness;
    double runtime_ms = 0;
};

struct Claim {
    std::string id;
    std::string suite;
    std::function<Report(const Config&)> fn;
};

const std::vector<Claim>& claim_registry();
std::vector<std::string> suite_names();

// Runs every claim of the suite ("all" for the union) in parallel; reports
// come back sorted by claim id.
std::vector<Report> run_suite(const std::string& suite, const Config& cfg);

// Machine-readable output: config echo, claim array, summary counts.  Wall
// times are intentionally excluded so reruns with one seed are byte-identical.
nlohmann::ordered_json reports_to_json(const std::string& suite, const Config& cfg,
                                       const std::vector<Report>& reports);
std::string reports_to_text(const std::string& suite, const Config& cfg,
                            const std::vector<Report>& reports);

// key=value config file overrides.
Config load_config_file(const std::string& path, Config base);

std::string spectrum_csv(int n_max);

}  // namespace sq7
