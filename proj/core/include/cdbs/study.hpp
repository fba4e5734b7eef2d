#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cdbs/diversify.hpp"
#include "cdbs/norms.hpp"
#include "cdbs/quasi.hpp"
#include "cdbs/testfn.hpp"

namespace cdbs {

/// Per-direction knot grid recipe.
struct KnotSpec {
    enum class Kind { Uniform, Jitter, Explicit };
    Kind kind = Kind::Uniform;
    double h = 0.1;
    double jitter = 0.0;  // fraction of h, Jitter only
    unsigned long long seed = 0;
    std::vector<double> knots;  // Explicit only

    static KnotSpec uniform(double h) { return {Kind::Uniform, h, 0.0, 0, {}}; }
    static KnotSpec jittered(double h, double jitter, unsigned long long seed) {
        return {Kind::Jitter, h, jitter, seed, {}};
    }
};

KnotWindow make_window(const KnotSpec& spec, double lo, double hi, int order);

/// Space + diversified machinery for one grid over a domain; eps <= 0 picks
/// the default min(h1, h2)/8 from the realized spacings.
DiversifiedSpace build_space(const GraphDomain& dom, const KnotSpec& k1, const KnotSpec& k2,
                             std::array<int, 2> n, double eps);

struct StudyRow {
    std::string study;
    std::string domain;
    int n1 = 0, n2 = 0;
    double h1 = 0, h2 = 0;  // realized max spacings
    double rho = 1;
    double p = 2;  // infinity() for the sup norm
    double error = 0;       // E = ||f - Qf||_p
    double bound = 0;       // B = h1^n1 |d1f| + h2^n2 |d2f|
    double ratio = 0;       // E / B
    std::optional<double> order_est;
    double seconds = 0;
};

struct StudyReport {
    std::vector<StudyRow> rows;

    double max_ratio() const;
    double min_ratio() const;
};

/// CSV schema: study,domain,n1,n2,h1,h2,rho,p,E,B,ratio,order_est,seconds
/// with `inf` for the sup norm and an empty order_est where undefined.
/// Setting the environment variable CDBS_FIXED_SECONDS writes 0 in the
/// seconds column so reruns are byte-identical.
void write_csv(std::ostream& os, const StudyReport& report);
StudyReport parse_csv(std::istream& is);

/// One grid refinement level (both directions).
struct GridLevel {
    KnotSpec k1, k2;
};

/// Quasi-interpolation error across a grid sequence; one row per
/// (level, p). order_est compares successive levels of the same p under
/// nominal halving.
StudyReport convergence_study(const std::string& domain_name, const GraphDomain& dom,
                              const TestFunction& f, std::array<int, 2> n,
                              const std::vector<GridLevel>& levels, const std::vector<double>& ps,
                              double eps = -1, int jobs = 1);

/// Error ratio E/B for fixed fine h2 and h1 = rho * h2; one row per rho.
StudyReport aspect_ratio_sweep(const std::string& domain_name, const GraphDomain& dom,
                               const TestFunction& f, std::array<int, 2> n,
                               const std::vector<double>& rhos, const KnotSpec& k2, double p,
                               double eps = -1, int jobs = 1);

/// Run fn(0..count-1) on up to `jobs` threads; results must be stored by
/// index so the reduction order stays deterministic.
void parallel_rows(int count, int jobs, const std::function<void(int)>& fn);

enum class BaselineBasis { Standard, Diversified };

struct BaselineOptions {
    double ridge = 1e-12;
    int max_dim = 2000;
    BaselineBasis basis = BaselineBasis::Standard;
};

/// Discrete least-squares best approximation of f on the eps-raster from
/// the (non-diversified, non-condensed) tensor spline space restricted to
/// the domain; returns the L2 raster norm of the residual. Normal equations
/// with a tiny ridge; switches to a sparse factorization for large bases.
double baseline_best_approx(const DiversifiedSpace& ds, const Field& f,
                            const BaselineOptions& opts = {});

}  // namespace cdbs
