#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdbs {

/// Raised for malformed or inconsistent experiment configs; the CLI maps it
/// to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed experiment description (plain key = value text, # comments).
struct ExperimentConfig {
    std::string study = "convergence";  // convergence | rho_sweep | quasi | debug
    std::string domain = "rectangle";   // fixture name or file:PATH
    std::string function = "sinexp";
    std::array<int, 2> n{3, 3};
    std::vector<double> ps{2.0};        // norm list; infinity for sup
    std::vector<double> levels;         // isotropic h levels (convergence)
    std::string knots = "uniform";      // uniform | jitter
    std::string knots1, knots2;         // per-direction override, may also be
                                        // "explicit:t0,t1,..." (single-grid studies)
    double jitter = 0.0;
    std::vector<double> rhos;           // rho_sweep
    double h2 = 0.1;                    // rho_sweep fine spacing
    bool baseline = false;              // rho_sweep: add best-approximation rows
    int max_dim = 2000;
    double h = 0.1;                     // single-grid studies
    double epsilon = -1;                // <= 0: automatic min(h1,h2)/8
    unsigned long long seed = 1;
    int jobs = 1;
    bool debug_figures = false;
    int select_i1 = INT_UNSET, select_i2 = INT_UNSET;
    std::string out = "out";

    static constexpr int INT_UNSET = -1000000;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Ensure names resolve and the study has the inputs it needs.
void validate(const ExperimentConfig& cfg);

std::string to_text(const ExperimentConfig& cfg);

}  // namespace cdbs
