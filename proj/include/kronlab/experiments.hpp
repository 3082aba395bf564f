#ifndef KRONLAB_EXPERIMENTS_HPP
#define KRONLAB_EXPERIMENTS_HPP

#include <string>

#include "kronlab/io.hpp"

namespace kron {

struct ExperimentResult {
    bool pass = false;
    int exit_code = 1;        // 0 all-pass, 2 check failure, 1 usage/config error
    std::string summary_json; // {experiment, config_echo, results, pass}
};

// Experiment names: count, tauber-compare, assumptions, ergodic,
// time-average, kms, skms, witten, nullspace, classical-demo.
// Artifacts (CSV/JSON/SVG) are written under out_dir; identical config and
// seed give byte-identical CSV and JSON.
ExperimentResult run_experiment(const Config& cfg, const std::string& out_dir);

} // namespace kron

#endif
