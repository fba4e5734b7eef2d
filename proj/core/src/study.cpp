#include "cdbs/study.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace cdbs {

KnotWindow make_window(const KnotSpec& spec, double lo, double hi, int order) {
    int pad = order + 2;
    switch (spec.kind) {
        case KnotSpec::Kind::Uniform:
            return uniform_window(spec.h, lo, hi, order, pad);
        case KnotSpec::Kind::Jitter:
            return jittered_window(spec.h, lo, hi, order, pad, spec.jitter, spec.seed);
        case KnotSpec::Kind::Explicit:
            return explicit_window(spec.knots, order);
    }
    throw std::logic_error("make_window: bad kind");
}

DiversifiedSpace build_space(const GraphDomain& dom, const KnotSpec& k1, const KnotSpec& k2,
                             std::array<int, 2> n, double eps) {
    const Box& bb = dom.bounding_box();
    TensorSpace space(make_window(k1, bb.lo.x, bb.hi.x, n[0]),
                      make_window(k2, bb.lo.y, bb.hi.y, n[1]), bb);
    if (eps <= 0) eps = std::min(space.spacing().x, space.spacing().y) / 8.0;
    return DiversifiedSpace(std::move(space), dom, eps);
}

double StudyReport::max_ratio() const {
    double m = 0;
    for (const auto& r : rows) m = std::max(m, r.ratio);
    return m;
}

double StudyReport::min_ratio() const {
    double m = kInf;
    for (const auto& r : rows) m = std::min(m, r.ratio);
    return m;
}

namespace {

bool fixed_seconds() { return std::getenv("CDBS_FIXED_SECONDS") != nullptr; }

void write_double(std::ostream& os, double v) {
    if (std::isinf(v))
        os << (v > 0 ? "inf" : "-inf");
    else
        os << v;
}

struct RowTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// E = ||f - Qf||_p and B = h1^n1 ||d1^n1 f||_p + h2^n2 ||d2^n2 f||_p on the
// shared raster.
void error_and_bound(const DiversifiedSpace& ds, const QuasiOperator& op, const TestFunction& f,
                     double p, double& error, double& bound) {
    QuasiInterpolantResult q = quasi_interpolate(op, f.f);
    error = lp_norm(
        [&](Vec2 x) { return f.f(x) - ds.eval_combination(q.coeffs, x); }, ds.raster(), p);
    int n1 = ds.space().order(0), n2 = ds.space().order(1);
    Vec2 h = ds.space().spacing();
    double d1 = lp_norm([&](Vec2 x) { return f.d1(x, n1); }, ds.raster(), p);
    double d2 = lp_norm([&](Vec2 x) { return f.d2(x, n2); }, ds.raster(), p);
    bound = std::pow(h.x, n1) * d1 + std::pow(h.y, n2) * d2;
}

}  // namespace

void write_csv(std::ostream& os, const StudyReport& report) {
    os.precision(17);
    os << "study,domain,n1,n2,h1,h2,rho,p,E,B,ratio,order_est,seconds\n";
    for (const auto& r : report.rows) {
        os << r.study << "," << r.domain << "," << r.n1 << "," << r.n2 << "," << r.h1 << ","
           << r.h2 << "," << r.rho << ",";
        write_double(os, r.p);
        os << ",";
        write_double(os, r.error);
        os << ",";
        write_double(os, r.bound);
        os << ",";
        write_double(os, r.ratio);
        os << ",";
        if (r.order_est) write_double(os, *r.order_est);
        os << "," << (fixed_seconds() ? 0.0 : r.seconds) << "\n";
    }
}

StudyReport parse_csv(std::istream& is) {
    StudyReport rep;
    std::string line;
    if (!std::getline(is, line)) return rep;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
        while (cols.size() < 13) cols.emplace_back();
        auto num = [](const std::string& s) -> double {
            if (s == "inf") return kInf;
            if (s == "-inf") return -kInf;
            return std::stod(s);
        };
        StudyRow r;
        r.study = cols[0];
        r.domain = cols[1];
        r.n1 = std::stoi(cols[2]);
        r.n2 = std::stoi(cols[3]);
        r.h1 = num(cols[4]);
        r.h2 = num(cols[5]);
        r.rho = num(cols[6]);
        r.p = num(cols[7]);
        r.error = num(cols[8]);
        r.bound = num(cols[9]);
        r.ratio = num(cols[10]);
        if (!cols[11].empty()) r.order_est = num(cols[11]);
        r.seconds = num(cols[12]);
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

void parallel_rows(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int r = 0; r < count; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mtx;
    auto worker = [&]() {
        for (;;) {
            int r = next.fetch_add(1);
            if (r >= count) return;
            try {
                fn(r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mtx);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

StudyReport convergence_study(const std::string& domain_name, const GraphDomain& dom,
                              const TestFunction& f, std::array<int, 2> n,
                              const std::vector<GridLevel>& levels, const std::vector<double>& ps,
                              double eps, int jobs) {
    int nl = static_cast<int>(levels.size());
    std::vector<std::vector<StudyRow>> per_level(static_cast<size_t>(nl));
    parallel_rows(nl, jobs, [&](int li) {
        RowTimer timer;
        const GridLevel& level = levels[static_cast<size_t>(li)];
        DiversifiedSpace ds = build_space(dom, level.k1, level.k2, n, eps);
        QuasiOperator op(ds);
        for (double p : ps) {
            StudyRow row;
            row.study = "convergence";
            row.domain = domain_name;
            row.n1 = n[0];
            row.n2 = n[1];
            row.h1 = ds.space().spacing().x;
            row.h2 = ds.space().spacing().y;
            row.rho = std::max(row.h1, row.h2) / std::min(row.h1, row.h2);
            row.p = p;
            error_and_bound(ds, op, f, p, row.error, row.bound);
            row.ratio = row.bound > 0 ? row.error / row.bound : 0.0;
            row.seconds = timer.seconds();
            per_level[static_cast<size_t>(li)].push_back(std::move(row));
        }
    });
    StudyReport rep;
    std::unordered_map<double, double> prev_error;
    for (auto& rows : per_level) {
        for (auto& row : rows) {
            auto it = prev_error.find(row.p);
            if (it != prev_error.end() && row.error > 0)
                row.order_est = std::log2(it->second / row.error);
            prev_error[row.p] = row.error;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

StudyReport aspect_ratio_sweep(const std::string& domain_name, const GraphDomain& dom,
                               const TestFunction& f, std::array<int, 2> n,
                               const std::vector<double>& rhos, const KnotSpec& k2, double p,
                               double eps, int jobs) {
    StudyReport rep;
    rep.rows.resize(rhos.size());
    parallel_rows(static_cast<int>(rhos.size()), jobs, [&](int ri) {
        RowTimer timer;
        double rho = rhos[static_cast<size_t>(ri)];
        KnotSpec k1 = k2;
        k1.h = rho * k2.h;
        k1.seed = k2.seed + 1;
        DiversifiedSpace ds = build_space(dom, k1, k2, n, eps);
        QuasiOperator op(ds);
        StudyRow row;
        row.study = "rho_sweep";
        row.domain = domain_name;
        row.n1 = n[0];
        row.n2 = n[1];
        row.h1 = ds.space().spacing().x;
        row.h2 = ds.space().spacing().y;
        row.rho = rho;
        row.p = p;
        error_and_bound(ds, op, f, p, row.error, row.bound);
        row.ratio = row.bound > 0 ? row.error / row.bound : 0.0;
        row.seconds = timer.seconds();
        rep.rows[static_cast<size_t>(ri)] = std::move(row);
    });
    return rep;
}

namespace {

// Column ids for the standard tensor basis over the active index ranges.
struct StandardBasis {
    std::array<int, 2> r1, r2;
    int count2 = 0;
    int dim() const { return (r1[1] - r1[0] + 1) * (r2[1] - r2[0] + 1); }
    int col(Index2 i) const { return (i.i1 - r1[0]) * count2 + (i.i2 - r2[0]); }
};

}  // namespace

double baseline_best_approx(const DiversifiedSpace& ds, const Field& f,
                            const BaselineOptions& opts) {
    const TensorSpace& space = ds.space();
    int n1 = space.order(0), n2 = space.order(1);
    double eps = ds.eps();

    StandardBasis sb{space.active_range1(), space.active_range2(), 0};
    sb.count2 = sb.r2[1] - sb.r2[0] + 1;
    bool diversified = opts.basis == BaselineBasis::Diversified;
    int dim = diversified ? static_cast<int>(ds.splines().size()) : sb.dim();
    if (dim > opts.max_dim)
        throw std::runtime_error("baseline: dimension cap exceeded (" + std::to_string(dim) +
                                 " > " + std::to_string(opts.max_dim) + ")");

    // Accumulate normal equations over all marked raster cells.
    std::unordered_map<long long, double> ata;
    Eigen::VectorXd atf = Eigen::VectorXd::Zero(dim);
    std::vector<int> cols;
    std::vector<double> vals;
    ds.raster().for_each_cell([&](Cell c) {
        Vec2 x = cell_center(c, eps);
        cols.clear();
        vals.clear();
        if (diversified) {
            const CellComponent* cc = ds.locate_cell(x);
            if (!cc) return;
            for (int j : cc->relevant) {
                double v = ds.eval(j, x);
                if (v != 0.0) {
                    cols.push_back(j);
                    vals.push_back(v);
                }
            }
        } else {
            Index2 k = space.locate(x);
            for (int i1 = k.i1 - n1; i1 <= k.i1 - 1; ++i1) {
                if (i1 < sb.r1[0] || i1 > sb.r1[1]) continue;
                double b1 = eval_bspline(space.t(0), i1, x.x);
                if (b1 == 0.0) continue;
                for (int i2 = k.i2 - n2; i2 <= k.i2 - 1; ++i2) {
                    if (i2 < sb.r2[0] || i2 > sb.r2[1]) continue;
                    double b2 = eval_bspline(space.t(1), i2, x.y);
                    if (b2 == 0.0) continue;
                    cols.push_back(sb.col({i1, i2}));
                    vals.push_back(b1 * b2);
                }
            }
        }
        double fx = f(x);
        for (size_t a = 0; a < cols.size(); ++a) {
            atf(cols[a]) += vals[a] * fx;
            for (size_t b = 0; b <= a; ++b) {
                int r = std::max(cols[a], cols[b]);
                int cidx = std::min(cols[a], cols[b]);
                ata[static_cast<long long>(r) * dim + cidx] += vals[a] * vals[b];
            }
        }
    });

    double max_diag = 1.0;
    for (int d = 0; d < dim; ++d) {
        auto it = ata.find(static_cast<long long>(d) * dim + d);
        if (it != ata.end()) max_diag = std::max(max_diag, it->second);
    }
    double lambda = opts.ridge * max_diag;

    Eigen::VectorXd coef(dim);
    if (dim <= 1500) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
        for (const auto& [key, v] : ata) {
            int r = static_cast<int>(key / dim);
            int c = static_cast<int>(key % dim);
            A(r, c) = v;
            A(c, r) = v;
        }
        A.diagonal().array() += lambda;
        coef = A.ldlt().solve(atf);
    } else {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(ata.size() * 2 + static_cast<size_t>(dim));
        for (const auto& [key, v] : ata) {
            int r = static_cast<int>(key / dim);
            int c = static_cast<int>(key % dim);
            trips.emplace_back(r, c, v);
            if (r != c) trips.emplace_back(c, r, v);
        }
        for (int d = 0; d < dim; ++d) trips.emplace_back(d, d, lambda);
        Eigen::SparseMatrix<double> A(dim, dim);
        A.setFromTriplets(trips.begin(), trips.end());
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("baseline: sparse factorization failed");
        coef = solver.solve(atf);
    }

    // Residual in the discrete L2 raster norm.
    double total = 0.0;
    ds.raster().for_each_cell([&](Cell c) {
        Vec2 x = cell_center(c, eps);
        double s = 0.0;
        if (diversified) {
            const CellComponent* cc = ds.locate_cell(x);
            if (cc)
                for (int j : cc->relevant) s += coef(j) * ds.eval(j, x);
        } else {
            Index2 k = space.locate(x);
            for (int i1 = k.i1 - n1; i1 <= k.i1 - 1; ++i1) {
                if (i1 < sb.r1[0] || i1 > sb.r1[1]) continue;
                double b1 = eval_bspline(space.t(0), i1, x.x);
                if (b1 == 0.0) continue;
                for (int i2 = k.i2 - n2; i2 <= k.i2 - 1; ++i2) {
                    if (i2 < sb.r2[0] || i2 > sb.r2[1]) continue;
                    double b2 = eval_bspline(space.t(1), i2, x.y);
                    s += coef(sb.col({i1, i2})) * b1 * b2;
                }
            }
        }
        double r = s - f(x);
        total += r * r * eps * eps;
    });
    return std::sqrt(total);
}

}  // namespace cdbs
