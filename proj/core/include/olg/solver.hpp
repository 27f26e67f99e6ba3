#ifndef OLG_SOLVER_HPP
#define OLG_SOLVER_HPP

#include <stdexcept>
#include <vector>

#include "olg/core.hpp"
#include "olg/tails.hpp"

namespace olg::solver {

class no_equilibrium_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// One backward solve: boundary parameter, the full ten-period price
// vector (rescaled so p0 = 1 when feasible), return rates r_0..r_8,
// per-equation relative residuals and the population standard deviation
// of r_0..r_6. Infeasible candidates keep the raw solved prices for
// inspection; rates and the deviation are only filled when feasible.
struct EquilibriumCandidate {
    double a3 = 0.0;
    std::vector<double> prices;
    std::vector<double> rates;
    bool feasible = false;
    std::vector<double> residuals;
    double rate_stddev = 0.0;
};

// Maximal contiguous feasible a3 range, endpoints refined by bisection.
struct FeasibleInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SweepResult {
    std::vector<EquilibriumCandidate> candidates;  // ordered by a3
    std::vector<FeasibleInterval> intervals;
};

// Solves the six market-clearing equations of periods 2..7 backward from
// the tail boundary block: the period-7 equation is affine in p5, the
// period-6 one in p4, and so on down to p0. econ supplies gamma_0..4,
// theta and phi; the tail supplies theta_tau and alpha_tau.
EquilibriumCandidate backward_solve(const EconomySpec& econ, const tails::FullLifespanTail& tail,
                                    const tails::BoundaryPrices& boundary);

// Evaluates backward_solve over the a3 grid spanning the admissible
// interval. Candidates are keyed by a3 and reported in grid order
// regardless of evaluation order; `jobs` > 1 splits the grid across
// threads.
SweepResult sweep(const EconomySpec& econ, const tails::FullLifespanTail& tail, double grid_step,
                  int jobs = 1);

// Minimum rate_stddev among feasible candidates; ties broken by smaller
// |a3|, then smaller a3. Throws no_equilibrium_error when no candidate is
// feasible.
const EquilibriumCandidate& select_min_variance(const std::vector<EquilibriumCandidate>& candidates);

}  // namespace olg::solver

#endif
