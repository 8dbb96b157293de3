#include "naqs/neldermead.hpp"

#include "naqs/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace naqs {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Evaluator {
    Evaluator(const Objective& f_, int budget_) : f(f_), budget(budget_) {}

    const Objective& f;
    int budget;
    int used = 0;
    std::vector<double> trace;
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    bool aborted = false;
    std::string diagnostic;

    bool exhausted() const { return used >= budget || aborted; }

    double eval(const std::vector<double>& x) {
        const double v = f(x);
        ++used;
        trace.push_back(v);
        if (!std::isfinite(v)) {
            aborted = true;
            diagnostic = "objective returned a non-finite value at evaluation " +
                         std::to_string(used);
            return v;
        }
        if (v < best_f) {
            best_f = v;
            best_x = x;
        }
        return v;
    }
};

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts[i].size(); ++j) {
            d = std::max(d, std::abs(pts[i][j] - pts[0][j]));
        }
    }
    return d;
}

void sort_simplex(std::vector<std::vector<double>>& pts, std::vector<double>& fs) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    std::vector<std::vector<double>> p2(pts.size());
    std::vector<double> f2(fs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        p2[i] = std::move(pts[order[i]]);
        f2[i] = fs[order[i]];
    }
    pts = std::move(p2);
    fs = std::move(f2);
}

} // namespace

MinimizeResult minimize(const Objective& f, const std::vector<double>& x0,
                        const MinimizeOptions& opts) {
    if (x0.empty()) {
        throw ContractError("minimize needs at least one dimension");
    }
    if (opts.max_evals < 1) {
        throw ContractError("max_evals must be >= 1");
    }
    const std::size_t n = x0.size();
    Evaluator ev(f, opts.max_evals);
    ev.best_x = x0; // reported even if the first evaluation aborts
    ev.eval(x0);

    double step = opts.initial_step;
    bool tolerance_stop = false;
    while (!ev.exhausted()) {
        // axis simplex around the best point so far
        std::vector<std::vector<double>> pts{ev.best_x};
        std::vector<double> fs{ev.best_f};
        for (std::size_t i = 0; i < n && !ev.exhausted(); ++i) {
            auto p = ev.best_x;
            p[i] += step;
            const double v = ev.eval(p);
            pts.push_back(std::move(p));
            fs.push_back(v);
        }
        if (pts.size() < n + 1) break; // budget ran out mid-construction

        const double best_before_round = ev.best_f;
        tolerance_stop = false;
        while (!ev.exhausted()) {
            sort_simplex(pts, fs);
            if (simplex_diameter(pts) < opts.x_tol || std::abs(fs.back() - fs.front()) < opts.f_tol) {
                tolerance_stop = true;
                break;
            }
            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
            }
            for (double& c : centroid) c /= static_cast<double>(n);

            auto& worst = pts.back();
            std::vector<double> xr(n);
            for (std::size_t j = 0; j < n; ++j) {
                xr[j] = centroid[j] + kReflect * (centroid[j] - worst[j]);
            }
            const double fr = ev.eval(xr);
            if (ev.aborted) break;

            if (fr < fs.front()) {
                if (!ev.exhausted()) {
                    std::vector<double> xe(n);
                    for (std::size_t j = 0; j < n; ++j) {
                        xe[j] = centroid[j] + kExpand * (centroid[j] - worst[j]);
                    }
                    const double fe = ev.eval(xe);
                    if (ev.aborted) break;
                    if (fe < fr) {
                        worst = std::move(xe);
                        fs.back() = fe;
                        continue;
                    }
                }
                worst = std::move(xr);
                fs.back() = fr;
            } else if (fr < fs[n - 1]) {
                worst = std::move(xr);
                fs.back() = fr;
            } else {
                if (ev.exhausted()) break;
                std::vector<double> xc(n);
                const auto& toward = (fr < fs.back()) ? xr : worst;
                for (std::size_t j = 0; j < n; ++j) {
                    xc[j] = centroid[j] + kContract * (toward[j] - centroid[j]);
                }
                const double fc = ev.eval(xc);
                if (ev.aborted) break;
                if (fc < std::min(fr, fs.back())) {
                    worst = std::move(xc);
                    fs.back() = fc;
                } else {
                    for (std::size_t i = 1; i < pts.size() && !ev.exhausted(); ++i) {
                        for (std::size_t j = 0; j < n; ++j) {
                            pts[i][j] = pts[0][j] + kShrink * (pts[i][j] - pts[0][j]);
                        }
                        fs[i] = ev.eval(pts[i]);
                        if (ev.aborted) break;
                    }
                }
            }
        }
        if (ev.aborted) break;
        if (ev.best_f >= best_before_round) break; // restart brought no improvement
        step *= 0.5;
    }

    MinimizeResult result;
    result.best_params = ev.best_x;
    result.best_energy = ev.best_f;
    result.trace = std::move(ev.trace);
    result.iterations = ev.used;
    result.diagnostic = ev.diagnostic;
    result.converged = !ev.aborted && tolerance_stop && ev.used < opts.max_evals;
    return result;
}

} // namespace naqs
