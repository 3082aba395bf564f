// Experiment runner CLI. Everything goes through the kronlab C API; flags are
// translated into configuration overrides on top of an optional config file.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kronlab.h"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CLI::ValidationError("--config", "cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void append(std::string& cfg, const std::string& key, const std::string& value) {
    cfg += key + " = " + value + "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kronlab: quantized Kronecker flows and almost periodic fields at desk scale"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run one experiment and write CSV/JSON/SVG artifacts");
    std::string experiment;
    run->add_option("experiment", experiment,
                    "count | tauber-compare | assumptions | ergodic | time-average | kms | "
                    "skms | witten | nullspace | classical-demo")
        ->required();
    std::string config_path, system_desc, out_dir;
    std::string e_grid, beta_grid, sigma_grid, t_grid, m_grid;
    long long count = -1, seed = -1, modes = -1, boson_cutoff = -1;
    run->add_option("--config", config_path, "config file (key=value lines, [section] headers)");
    run->add_option("--system", system_desc,
                    "system descriptor, e.g. powerlaw:A=1,alpha=1.5 | primelog | dispersion:m=3.1");
    run->add_option("--count", count, "materialized frequency prefix length");
    run->add_option("--E", e_grid, "energy grid, comma separated");
    run->add_option("--beta", beta_grid, "inverse temperature grid");
    run->add_option("--sigma", sigma_grid, "sigma grid");
    run->add_option("--t", t_grid, "time grid");
    run->add_option("--M", m_grid, "averaging window grid");
    run->add_option("--modes", modes, "oscillator mode count");
    run->add_option("--boson-cutoff", boson_cutoff, "per-mode boson occupancy cutoff");
    run->add_option("--seed", seed, "random seed (default 0)");
    run->add_option("--out", out_dir, "output directory (default: out)");
    bool quiet = false;
    run->add_flag("-q,--quiet", quiet, "suppress the summary JSON on stdout");

    auto* axioms = app.add_subcommand("axioms", "print the axiom report for a system");
    std::string ax_system = "powerlaw:A=1,alpha=1";
    long long ax_count = 16;
    axioms->add_option("--system", ax_system, "system descriptor");
    axioms->add_option("--count", ax_count, "prefix length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (axioms->parsed()) {
        kron_system* sys = nullptr;
        kron_status st = kron_system_create(ax_system.c_str(), static_cast<int>(ax_count), &sys);
        if (st != KRON_OK) {
            std::fprintf(stderr, "error: %s (%s)\n", kron_last_error(), kron_status_name(st));
            return 1;
        }
        char* report = nullptr;
        st = kron_system_axiom_report(sys, &report);
        if (st == KRON_OK && report) std::printf("%s\n", report);
        kron_string_free(report);
        kron_system_free(sys);
        return st == KRON_OK ? 0 : 1;
    }

    std::string cfg;
    try {
        if (!config_path.empty()) cfg = read_file(config_path) + "\n";
    } catch (const CLI::Error& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    append(cfg, "run.experiment", experiment);
    if (!system_desc.empty()) append(cfg, "system.descriptor", system_desc);
    if (count >= 0) append(cfg, "system.count", std::to_string(count));
    if (!e_grid.empty()) append(cfg, "grid.E", e_grid);
    if (!beta_grid.empty()) append(cfg, "grid.beta", beta_grid);
    if (!sigma_grid.empty()) append(cfg, "grid.sigma", sigma_grid);
    if (!t_grid.empty()) append(cfg, "grid.t", t_grid);
    if (!m_grid.empty()) append(cfg, "grid.M", m_grid);
    if (modes >= 0) append(cfg, "run.modes", std::to_string(modes));
    if (boson_cutoff >= 0) append(cfg, "run.boson_cutoff", std::to_string(boson_cutoff));
    if (seed >= 0) append(cfg, "run.seed", std::to_string(seed));
    if (!out_dir.empty()) append(cfg, "run.out", out_dir);

    char* summary = nullptr;
    int exit_code = 1;
    const kron_status st =
        kron_run_experiment(cfg.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &summary,
                            &exit_code);
    if (st != KRON_OK) {
        std::fprintf(stderr, "error: %s (%s)\n", kron_last_error(), kron_status_name(st));
        kron_string_free(summary);
        return 1;
    }
    if (!quiet && summary) std::printf("%s", summary);
    kron_string_free(summary);
    return exit_code;
}
