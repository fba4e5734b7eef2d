#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdbs/experiment.hpp"

using namespace cdbs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("cdbs_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("keys, lists and comments") {
        ExperimentConfig cfg = parse_config_text(
            "# demo\nstudy = convergence\ndomain = u_domain\nfunction = sinexp\n"
            "n1 = 3\nn2 = 2\np = inf,2\nlevels = 0.1, 0.05\nseed = 9\n");
        CHECK(cfg.study == "convergence");
        CHECK(cfg.n[1] == 2);
        REQUIRE(cfg.ps.size() == 2);
        CHECK(std::isinf(cfg.ps[0]));
        CHECK(cfg.levels.size() == 2);
        CHECK(cfg.seed == 9);
        CHECK_NOTHROW(validate(cfg));
    }
    SUBCASE("unknown keys and bad values fail") {
        CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("n1 = three\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("just a line\n"), ConfigError);
    }
    SUBCASE("validation rejects inconsistent studies") {
        ExperimentConfig cfg;
        cfg.study = "convergence";
        cfg.levels.clear();
        CHECK_THROWS_AS(validate(cfg), ConfigError);
        cfg.study = "nope";
        CHECK_THROWS_AS(validate(cfg), ConfigError);
        cfg = ExperimentConfig{};
        cfg.domain = "unknown_domain";
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("round trip through text") {
        ExperimentConfig cfg;
        cfg.study = "rho_sweep";
        cfg.domain = "u_domain";
        cfg.rhos = {1, 4, 16};
        cfg.h2 = 0.025;
        cfg.baseline = true;
        ExperimentConfig back = parse_config_text(to_text(cfg));
        CHECK(back.study == cfg.study);
        CHECK(back.rhos == cfg.rhos);
        CHECK(back.baseline == cfg.baseline);
        CHECK(back.h2 == cfg.h2);
    }
}

TEST_CASE("shipped configs parse and validate") {
#ifdef CDBS_SOURCE_DIR
    for (const auto& name :
         {"u_domain_convergence", "u_domain_rho_sweep", "u_domain_jitter", "lshape_quasi",
          "spike_failure", "fig1_debug", "splitexp_contrast"}) {
        ExperimentConfig cfg =
            load_config(std::string(CDBS_SOURCE_DIR) + "/configs/" + name + ".txt");
        CHECK_NOTHROW(validate(cfg));
    }
#endif
}

TEST_CASE("experiment runner") {
    SUBCASE("convergence run writes csv that recovers the sweep") {
        TempDir tmp("conv");
        ExperimentConfig cfg;
        cfg.study = "convergence";
        cfg.domain = "rectangle";
        cfg.function = "sinexp";
        cfg.n = {2, 2};
        cfg.ps = {2.0};
        cfg.levels = {0.2, 0.1};
        cfg.out = (tmp.path / "out").string();
        std::ostringstream log;
        CHECK(run_experiment(cfg, log) == kExitOk);

        std::ifstream csv(tmp.path / "out" / "results.csv");
        REQUIRE(csv.good());
        StudyReport rep = parse_csv(csv);
        REQUIRE(rep.rows.size() == 2);
        CHECK(rep.rows[0].h1 == doctest::Approx(0.2));
        CHECK(rep.rows[1].h1 == doctest::Approx(0.1));
        CHECK(rep.rows[1].error < rep.rows[0].error);
        CHECK(fs::exists(tmp.path / "out" / "plot_convergence_p2.dat"));
        CHECK(fs::exists(tmp.path / "out" / "repro.sh"));
    }
    SUBCASE("config errors exit with code 2") {
        ExperimentConfig cfg;
        cfg.domain = "missing_fixture";
        std::ostringstream log;
        CHECK(run_experiment(cfg, log) == kExitConfigError);
    }
    SUBCASE("numerical failures exit with code 3") {
        ExperimentConfig cfg;
        cfg.study = "quasi";
        cfg.domain = "spike";
        cfg.function = "sinexp";
        cfg.h = 1.3;  // beyond the overlap parameter of the spike fixture
        cfg.levels = {1.3};
        std::ostringstream log;
        TempDir tmp("spike");
        cfg.out = (tmp.path / "out").string();
        CHECK(run_experiment(cfg, log) == kExitNumericError);
        CHECK(log.str().find("H* not found") != std::string::npos);
    }
    SUBCASE("quasi study dumps coefficients and debug figures") {
        TempDir tmp("quasi");
        ExperimentConfig cfg;
        cfg.study = "quasi";
        cfg.domain = "lshape";
        cfg.function = "expsum";
        cfg.n = {2, 2};
        cfg.ps = {2.0};
        cfg.h = 0.15;
        cfg.debug_figures = true;
        cfg.out = (tmp.path / "out").string();
        std::ostringstream log;
        CHECK(run_experiment(cfg, log) == kExitOk);
        CHECK(fs::exists(tmp.path / "out" / "coefficients.txt"));
        CHECK(fs::exists(tmp.path / "out" / "debug_domain.pgm"));
        std::string coeffs = slurp(tmp.path / "out" / "coefficients.txt");
        CHECK(coeffs.find(' ') != std::string::npos);
    }
    SUBCASE("explicit knot lists drive a single-grid study") {
        TempDir tmp("explicit");
        ExperimentConfig cfg;
        cfg.study = "quasi";
        cfg.domain = "rectangle";
        cfg.function = "expsum";
        cfg.n = {2, 2};
        cfg.ps = {2.0};
        cfg.h = 0.25;
        cfg.knots1 = "explicit:-1,-0.75,-0.5,-0.25,0,0.2,0.45,0.8,1.1,1.3,1.6,1.85,2.1,2.4,2.7,3";
        cfg.out = (tmp.path / "out").string();
        std::ostringstream log;
        CHECK(run_experiment(cfg, log) == kExitOk);
        std::ifstream csv(tmp.path / "out" / "results.csv");
        StudyReport rep = parse_csv(csv);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].h1 == doctest::Approx(0.35));  // realized spacing of the list
        CHECK(rep.rows[0].error < 0.5);
        CHECK(rep.rows[0].ratio < 1.0);

        ExperimentConfig bad = cfg;
        bad.study = "convergence";
        bad.levels = {0.25};
        CHECK_THROWS_AS(validate(bad), ConfigError);
    }
    SUBCASE("reruns with one config and seed are byte-identical") {
        TempDir tmp("det");
        setenv("CDBS_FIXED_SECONDS", "1", 1);
        ExperimentConfig cfg;
        cfg.study = "convergence";
        cfg.domain = "lshape";
        cfg.function = "sinexp";
        cfg.n = {2, 2};
        cfg.ps = {kInf};
        cfg.levels = {0.2};
        cfg.knots = "jitter";
        cfg.jitter = 0.3;
        cfg.seed = 4;
        std::ostringstream log;
        cfg.out = (tmp.path / "a").string();
        CHECK(run_experiment(cfg, log) == kExitOk);
        cfg.out = (tmp.path / "b").string();
        CHECK(run_experiment(cfg, log) == kExitOk);
        unsetenv("CDBS_FIXED_SECONDS");
        CHECK(slurp(tmp.path / "a" / "results.csv") == slurp(tmp.path / "b" / "results.csv"));
        CHECK(!slurp(tmp.path / "a" / "results.csv").empty());
    }
}
