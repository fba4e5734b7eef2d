#pragma once

#include <iosfwd>

#include "cdbs/config.hpp"
#include "cdbs/diversify.hpp"
#include "cdbs/study.hpp"

namespace cdbs {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

/// Execute the experiment described by the config: builds the domain and
/// spline spaces, runs the requested study, and writes results.csv, plot
/// data, coefficient dumps and optional debug PGM figures under cfg.out.
/// Returns one of the exit codes above; failures are logged to `log`.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Debug overlays for one tensor index: domain mask, support components,
/// strip extensions, condensed supports, local neighbourhoods and H* boxes,
/// written as PGM images under outdir.
void render_debug(const DiversifiedSpace& ds, Index2 selected, const std::string& outdir);

/// Resolve a config domain reference (fixture name or file:PATH).
GraphDomain resolve_domain(const std::string& ref);

}  // namespace cdbs
