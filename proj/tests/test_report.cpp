#include <doctest.h>

#include <cstdio>
#include <set>
#include <fstream>

#include "sq7/report.hpp"

using namespace sq7;

TEST_CASE("config file parsing") {
    std::string path = "sq7_test_config.txt";
    {
        std::ofstream out(path);
        out << "# comment\n";
        out << "tolerance = 1e-8\n";
        out << "samples=25\n";
        out << "seed = 7\n";
    }
    Config cfg = load_config_file(path, Config{});
    CHECK(cfg.tolerance == doctest::Approx(1e-8));
    CHECK(cfg.samples == 25);
    CHECK(cfg.seed == 7);
    CHECK(cfg.nmax == 10);
    std::remove(path.c_str());
    {
        std::ofstream out(path);
        out << "bogus = 1\n";
    }
    CHECK_THROWS(load_config_file(path, Config{}));
    std::remove(path.c_str());
    CHECK_THROWS(load_config_file("does_not_exist.cfg", Config{}));
}

TEST_CASE("unknown suite raises a usage error") {
    Config cfg;
    CHECK_THROWS_AS(run_suite("bogus", cfg), std::invalid_argument);
}

TEST_CASE("claim ids are unique and suites are covered") {
    std::set<std::string> ids;
    for (const Claim& c : claim_registry()) {
        CHECK(ids.insert(c.id).second);
        auto names = suite_names();
        CHECK(std::find(names.begin(), names.end(), c.suite) != names.end());
    }
}

TEST_CASE("deterministic JSON for a fixed seed") {
    Config cfg;
    cfg.samples = 10;
    auto r1 = run_suite("cli", cfg);
    auto r2 = run_suite("cli", cfg);
    std::string a = reports_to_json("cli", cfg, r1).dump();
    std::string b = reports_to_json("cli", cfg, r2).dump();
    CHECK(a == b);
    for (const auto& r : r1) CHECK(r.status == "pass");
}

TEST_CASE("spectrum csv shape") {
    std::string csv = spectrum_csv(4);
    CHECK(csv.rfind("case,n,k,gamma_eigenvalue,in_kernel\n", 0) == 0);
    // 4 cases * sum_{n<=4}(n+1) = 4 * 15 rows + header.
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 4 * 15);
}
