#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sq7/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"squashed7: verification harness for the squashed S^7 geometry engine"};

    std::string suite = "all";
    std::string format = "text";
    std::string config_path;
    std::string spectrum_out;
    std::string case_name;
    sq7::Config cfg;

    app.add_option("--suite", suite, "structure | planes | orbits | deform | twistor | cli | all")
        ->default_val("all");
    app.add_option("--case", case_name, "restrict the spectrum dump to one orbit case");
    app.add_option("--tolerance", cfg.tolerance, "default residual tolerance")->default_val(1e-9);
    app.add_option("--samples", cfg.samples, "sample count for randomized checks")
        ->default_val(100);
    app.add_option("--seed", cfg.seed, "RNG seed")->default_val(42);
    app.add_option("--nmax", cfg.nmax, "Peter-Weyl truncation")->default_val(10);
    app.add_option("--gamma-max", cfg.gamma_max, "Fourier box radius")->default_val(4);
    app.add_option("--format", format, "text | json")->default_val("text");
    app.add_option("--config", config_path, "key=value config file overriding defaults");
    app.add_option("--spectrum-out", spectrum_out, "write the Gamma spectrum CSV to this path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) cfg = sq7::load_config_file(config_path, cfg);

        if (!spectrum_out.empty()) {
            std::ofstream out(spectrum_out);
            if (!out) throw std::runtime_error("cannot write " + spectrum_out);
            if (case_name.empty()) {
                out << sq7::spectrum_csv(cfg.nmax);
            } else {
                std::ostringstream os;
                os << "case,n,k,gamma_eigenvalue,in_kernel\n";
                bool found = false;
                for (sq7::OrbitCase c : sq7::all_orbit_cases())
                    if (sq7::to_string(c) == case_name) {
                        found = true;
                        for (const auto& r : sq7::spectrum_rows(c, cfg.nmax))
                            os << sq7::to_string(r.tag) << "," << r.n << "," << r.k << ","
                               << r.eigenvalue << "," << (r.in_kernel ? 1 : 0) << "\n";
                    }
                if (!found) throw std::runtime_error("unknown case: " + case_name);
                out << os.str();
            }
        }

        auto names = sq7::suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end()) {
            std::cerr << "unknown suite: " << suite << "\n";
            return 2;
        }

        std::vector<sq7::Report> reports = sq7::run_suite(suite, cfg);
        if (format == "json") {
            std::cout << sq7::reports_to_json(suite, cfg, reports).dump(2) << "\n";
        } else {
            std::cout << sq7::reports_to_text(suite, cfg, reports);
        }
        for (const auto& r : reports)
            if (r.status != "pass") return 1;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
