#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace naqs {

/// Options for the derivative-free minimizer. All termination thresholds
/// and the simplex construction are deterministic functions of these
/// fields, so identical inputs give bit-identical traces.
struct MinimizeOptions {
    int max_evals = 500;
    double x_tol = 1e-8;        // stop when the simplex diameter drops below
    double f_tol = 1e-10;       // or the f-spread across the simplex does
    double initial_step = 1.0;  // axis step of the first simplex
    std::uint64_t seed = 0;     // carried for interface parity; unused here
};

struct MinimizeResult {
    std::vector<double> best_params;
    double best_energy = 0.0;
    std::vector<double> trace;  // objective value of every evaluation in order
    bool converged = false;     // true when a tolerance (not the budget) stopped the run
    int iterations = 0;         // total objective evaluations
    std::string diagnostic;     // non-empty when the run aborted (non-finite objective)
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Nelder-Mead with the standard coefficients (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). When the simplex collapses below the
/// tolerances with budget remaining, it is rebuilt around the best point
/// with the axis step halved; the run stops when a rebuilt simplex brings
/// no improvement. Returns the best point ever evaluated. A non-finite
/// objective value aborts the run with a diagnostic.
MinimizeResult minimize(const Objective& f, const std::vector<double>& x0,
                        const MinimizeOptions& opts);

} // namespace naqs
