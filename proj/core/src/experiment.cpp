#include "cdbs/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <ostream>
#include <sstream>

#include "cdbs/fixtures.hpp"
#include "cdbs/norms.hpp"

namespace cdbs {

namespace fs = std::filesystem;

GraphDomain resolve_domain(const std::string& ref) {
    if (ref.rfind("file:", 0) == 0) return load_domain_spec(ref.substr(5));
    return fixture_domain(ref);
}

namespace {

std::string p_tag(double p) {
    if (std::isinf(p)) return "inf";
    std::ostringstream os;
    os << p;
    return os.str();
}

void write_plot_data(const StudyReport& rep, const std::string& outdir) {
    // One (x, y) series per (study, p): h vs E for convergence, rho vs ratio
    // for sweeps.
    std::map<std::string, std::ostringstream> series;
    for (const auto& r : rep.rows) {
        std::string key = r.study + "_p" + p_tag(r.p);
        auto& os = series[key];
        os.precision(17);
        if (r.study == "convergence")
            os << std::max(r.h1, r.h2) << " " << r.error << "\n";
        else
            os << r.rho << " " << r.ratio << "\n";
    }
    for (auto& [key, os] : series) {
        std::ofstream f(outdir + "/plot_" + key + ".dat");
        f << os.str();
    }
}

void report_hypothesis(std::ostream& log, const GraphDomain& dom, const DiversifiedSpace& ds) {
    Vec2 h = ds.space().spacing();
    bool ok = ds.space().grid_hypothesis(dom.h0());
    log << "grid h = (" << h.x << ", " << h.y << "), h0 = " << dom.h0() << ", bound h0/(n+1) = "
        << dom.h0() / (ds.space().max_order() + 1) << (ok ? ": satisfied" : ": VIOLATED") << "\n";
}

void dump_coefficients(const DiversifiedSpace& ds, const std::vector<double>& coeffs,
                       const std::string& path) {
    std::ofstream os(path);
    os.precision(17);
    for (size_t j = 0; j < ds.splines().size(); ++j) {
        const CdBSpline& s = ds.splines()[j];
        os << s.j.i.i1 << " " << s.j.i.i2 << " " << s.j.gamma << " " << coeffs[j] << "\n";
    }
}

Index2 pick_debug_index(const DiversifiedSpace& ds, const ExperimentConfig& cfg) {
    if (cfg.select_i1 != ExperimentConfig::INT_UNSET &&
        cfg.select_i2 != ExperimentConfig::INT_UNSET)
        return {cfg.select_i1, cfg.select_i2};
    for (const auto& g : ds.groups())
        if (g.comps.size() > 1) return g.i;
    return ds.groups()[ds.groups().size() / 2].i;
}

KnotSpec knot_spec_for(const ExperimentConfig& cfg, double h, int direction) {
    const std::string& per = direction == 0 ? cfg.knots1 : cfg.knots2;
    std::string kind = per.empty() ? cfg.knots : per;
    if (kind.rfind("explicit:", 0) == 0) {
        KnotSpec spec;
        spec.kind = KnotSpec::Kind::Explicit;
        std::stringstream ss(kind.substr(9));
        std::string tok;
        while (std::getline(ss, tok, ',')) spec.knots.push_back(std::stod(tok));
        return spec;
    }
    if (kind == "jitter") return KnotSpec::jittered(h, cfg.jitter, cfg.seed * 2 + direction);
    return KnotSpec::uniform(h);
}

int run_impl(const ExperimentConfig& cfg, std::ostream& log) {
    validate(cfg);
    GraphDomain dom = resolve_domain(cfg.domain);
    TestFunction tf = test_function(cfg.function);
    fs::create_directories(cfg.out);

    // Reproduction bundle: the effective config and the command to rerun it.
    {
        std::ofstream c(cfg.out + "/config.txt");
        c << to_text(cfg);
        std::ofstream r(cfg.out + "/repro.sh");
        r << "#!/bin/sh\n# regenerate this output directory\ncdbs-cli --config config.txt --out .\n";
    }

    StudyReport report;

    if (cfg.study == "convergence") {
        std::vector<GridLevel> levels;
        for (double h : cfg.levels)
            levels.push_back({knot_spec_for(cfg, h, 0), knot_spec_for(cfg, h, 1)});
        report = convergence_study(cfg.domain, dom, tf, cfg.n, levels, cfg.ps, cfg.epsilon,
                                   cfg.jobs);
    } else if (cfg.study == "rho_sweep") {
        double p = cfg.ps.front();
        KnotSpec k2 = knot_spec_for(cfg, cfg.h2, 1);
        report = aspect_ratio_sweep(cfg.domain, dom, tf, cfg.n, cfg.rhos, k2, p, cfg.epsilon,
                                    cfg.jobs);
        if (cfg.baseline) {
            std::vector<StudyRow> brows(cfg.rhos.size());
            parallel_rows(static_cast<int>(cfg.rhos.size()), cfg.jobs, [&](int ri) {
                double rho = cfg.rhos[static_cast<size_t>(ri)];
                KnotSpec k1 = k2;
                k1.h = rho * k2.h;
                k1.seed = k2.seed + 1;
                DiversifiedSpace ds = build_space(dom, k1, k2, cfg.n, cfg.epsilon);
                BaselineOptions opts;
                opts.max_dim = cfg.max_dim;
                double ebest = baseline_best_approx(ds, tf.f, opts);
                StudyRow row = report.rows[static_cast<size_t>(ri)];
                row.study = "baseline";
                row.error = ebest;
                row.p = 2.0;
                row.ratio = row.bound > 0 ? ebest / row.bound : 0.0;
                row.order_est.reset();
                brows[static_cast<size_t>(ri)] = std::move(row);
            });
            for (auto& r : brows) report.rows.push_back(std::move(r));
        }
        log << "rho sweep ratio spread: max/min = "
            << report.max_ratio() / std::max(report.min_ratio(), 1e-300) << "\n";
    } else if (cfg.study == "quasi") {
        KnotSpec k1 = knot_spec_for(cfg, cfg.h, 0), k2 = knot_spec_for(cfg, cfg.h, 1);
        DiversifiedSpace ds = build_space(dom, k1, k2, cfg.n, cfg.epsilon);
        report_hypothesis(log, dom, ds);
        QuasiOperator op(ds);
        QuasiInterpolantResult q = quasi_interpolate(op, tf.f);
        dump_coefficients(ds, q.coeffs, cfg.out + "/coefficients.txt");
        for (double p : cfg.ps) {
            StudyRow row;
            row.study = "quasi";
            row.domain = cfg.domain;
            row.n1 = cfg.n[0];
            row.n2 = cfg.n[1];
            row.h1 = ds.space().spacing().x;
            row.h2 = ds.space().spacing().y;
            row.rho = std::max(row.h1, row.h2) / std::min(row.h1, row.h2);
            row.p = p;
            row.error = lp_norm(
                [&](Vec2 x) { return tf.f(x) - ds.eval_combination(q.coeffs, x); }, ds.raster(), p);
            double d1 = lp_norm([&](Vec2 x) { return tf.d1(x, cfg.n[0]); }, ds.raster(), p);
            double d2 = lp_norm([&](Vec2 x) { return tf.d2(x, cfg.n[1]); }, ds.raster(), p);
            row.bound = std::pow(row.h1, cfg.n[0]) * d1 + std::pow(row.h2, cfg.n[1]) * d2;
            row.ratio = row.bound > 0 ? row.error / row.bound : 0.0;
            report.rows.push_back(std::move(row));
        }
        if (cfg.debug_figures) render_debug(ds, pick_debug_index(ds, cfg), cfg.out);
    } else if (cfg.study == "debug") {
        KnotSpec k1 = knot_spec_for(cfg, cfg.h, 0), k2 = knot_spec_for(cfg, cfg.h, 1);
        DiversifiedSpace ds = build_space(dom, k1, k2, cfg.n, cfg.epsilon);
        report_hypothesis(log, dom, ds);
        render_debug(ds, pick_debug_index(ds, cfg), cfg.out);
    }

    if (cfg.debug_figures && cfg.study != "quasi" && cfg.study != "debug") {
        double h = cfg.study == "convergence" ? cfg.levels.front() : cfg.h2;
        DiversifiedSpace ds =
            build_space(dom, knot_spec_for(cfg, h, 0), knot_spec_for(cfg, h, 1), cfg.n, cfg.epsilon);
        render_debug(ds, pick_debug_index(ds, cfg), cfg.out);
    }

    if (!report.rows.empty()) {
        // Grid-width hypothesis status per distinct grid, from realized spacings.
        double bound = dom.h0() / (std::max(cfg.n[0], cfg.n[1]) + 1);
        std::set<std::pair<double, double>> seen;
        for (const auto& r : report.rows) {
            if (!seen.insert({r.h1, r.h2}).second) continue;
            log << "grid h = (" << r.h1 << ", " << r.h2 << "), bound h0/(n+1) = " << bound
                << (std::max(r.h1, r.h2) <= bound + 1e-12 ? ": satisfied" : ": VIOLATED") << "\n";
        }
        std::ofstream csv(cfg.out + "/results.csv");
        write_csv(csv, report);
        write_plot_data(report, cfg.out);
    }
    log << "wrote " << cfg.out << "\n";
    return kExitOk;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    try {
        return run_impl(cfg, log);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        log << "numerical failure: " << e.what() << "\n";
        return kExitNumericError;
    }
}

void render_debug(const DiversifiedSpace& ds, Index2 selected, const std::string& outdir) {
    const BitmapRegion& raster = ds.raster();
    double eps = ds.eps();
    long w = raster.ub() - raster.ua() + 1;
    long h = raster.vb() - raster.va() + 1;
    auto base = [&]() {
        PgmImage img = PgmImage::blank(raster.ua(), raster.va(), w, h, 0);
        raster.for_each_cell([&](Cell c) {
            long px = c.u - img.u0;
            long py = img.height - 1 - (c.v - img.v0);
            img.pixels[static_cast<size_t>(py) * static_cast<size_t>(img.width) +
                       static_cast<size_t>(px)] = 70;
        });
        return img;
    };

    base().write(outdir + "/debug_domain.pgm");

    int gid = -1;
    for (size_t g = 0; g < ds.groups().size(); ++g)
        if (ds.groups()[g].i == selected) gid = static_cast<int>(g);
    if (gid < 0) return;
    const auto& group = ds.groups()[static_cast<size_t>(gid)];
    std::string tag = "_i" + std::to_string(selected.i1) + "_" + std::to_string(selected.i2);

    {  // Diversified support components of B_i.
        PgmImage img = base();
        img.paint_box(ds.space().support(selected), eps, 40);
        uint8_t shade = 130;
        for (const auto& comp : group.comps) {
            img.paint(comp, shade);
            shade = static_cast<uint8_t>(shade + 40);
        }
        img.write(outdir + "/debug_supports" + tag + ".pgm");
    }

    {  // Strip extensions and their components around each copy.
        PgmImage img = base();
        const KnotWindow& t1 = ds.space().t(0);
        const KnotWindow& t2 = ds.space().t(1);
        Box strip1{{-kInf, t2.knot(selected.i2)}, {kInf, t2.knot(selected.i2 + t2.order())}};
        Box strip2{{t1.knot(selected.i1), -kInf}, {t1.knot(selected.i1 + t1.order()), kInf}};
        for (const auto& m : raster.components(strip1)) img.paint(m, 110);
        for (const auto& m : raster.components(strip2)) img.paint(m, 150);
        for (const auto& comp : group.comps) img.paint(comp, 220);
        img.write(outdir + "/debug_strips" + tag + ".pgm");
    }

    {  // Condensed supports.
        PgmImage img = base();
        uint8_t shade = 170;
        for (int c = 0; c < static_cast<int>(group.comps.size()); ++c) {
            const CdBSpline& s = ds.splines()[static_cast<size_t>(group.first_spline + c)];
            img.paint_box(s.support, eps, shade);
            shade = static_cast<uint8_t>(shade + 40);
        }
        img.write(outdir + "/debug_cdb" + tag + ".pgm");
    }

    {  // Local neighbourhoods and H* boxes.
        PgmImage img = base();
        for (int c = 0; c < static_cast<int>(group.comps.size()); ++c) {
            int j = group.first_spline + c;
            LocalBoxes boxes = find_hstar(ds, j);
            img.paint(boxes.splus, 120);
            img.paint_box(boxes.hstar, eps, 255);
        }
        img.write(outdir + "/debug_hstar" + tag + ".pgm");
    }
}

}  // namespace cdbs
