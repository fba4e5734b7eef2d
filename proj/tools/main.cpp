// Experiment front end: parse a config, run the study, write CSV and PGM
// artifacts. Exit codes: 0 success, 2 config error, 3 numerical failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "cdbs/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Diversified condensed B-spline approximation experiments"};

    std::string config_path;
    std::string out;
    double epsilon = 0;
    long long seed = -1;
    int jobs = 0;
    bool debug_figures = false;

    app.add_option("--config", config_path, "Experiment config file (key = value lines)")
        ->required()
        ->envname("CDBS_CONFIG");
    app.add_option("--out", out, "Output directory (overrides the config)")->envname("CDBS_OUT");
    app.add_option("--epsilon", epsilon, "Raster resolution override")->envname("CDBS_EPSILON");
    app.add_option("--seed", seed, "Seed override")->envname("CDBS_SEED");
    app.add_option("--jobs", jobs, "Parallel study rows")->envname("CDBS_JOBS");
    app.add_flag("--debug-figures", debug_figures, "Also write PGM debug overlays")
        ->envname("CDBS_DEBUG_FIGURES");

    CLI11_PARSE(app, argc, argv);

    cdbs::ExperimentConfig cfg;
    try {
        cfg = cdbs::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return cdbs::kExitConfigError;
    }
    if (!out.empty()) cfg.out = out;
    if (epsilon > 0) cfg.epsilon = epsilon;
    if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
    if (jobs > 0) cfg.jobs = jobs;
    if (debug_figures) cfg.debug_figures = true;

    return cdbs::run_experiment(cfg, std::cout);
}
