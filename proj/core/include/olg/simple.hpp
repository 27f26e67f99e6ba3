#ifndef OLG_SIMPLE_HPP
#define OLG_SIMPLE_HPP

#include <stdexcept>
#include <vector>

namespace olg::simple {

// Raised by equilibrium_path when r1 exceeds the monetary-equilibrium
// range (0, alpha] and the forward recursion leaves phi's range.
class infeasible_rate_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Two-period square-root-utility economy with endowment (e, 0). The
// growth series extends past its stored range by repeating the last
// entry.
struct SimpleEconomy {
    std::vector<double> alpha;
    double endow = 1.0;

    void validate() const;
    double alpha_at(int t) const;
    double alpha_min() const;
    double alpha_max() const;
};

double phi(double r);          // r / (1 + r)
double phi_inverse(double y);  // y / (1 - y) on (0, 1)
double psi(double r);          // (r + sqrt(r^2 + 4r)) / 2, inverse of r -> r phi(r)

// f_1 o ... o f_depth(seed) with f_t(r) = psi(alpha_t phi(r)).
double backward_rate(const SimpleEconomy& econ, int depth, double seed);

// Backward iteration deepened until successive first-period rates differ
// by less than `tol` or `max_depth` is reached; reports the achieved
// delta.
struct ConvergedRate {
    double rate = 0.0;
    int depth = 0;
    double delta = 0.0;
};
ConvergedRate optimal_first_rate(const SimpleEconomy& econ, double seed, double tol = 1e-12,
                                 int max_depth = 0);

// Forward recursion r_0 = alpha_0 phi(r1), r_{t+1} = phi^{-1}(r_t phi(r_t)
// / alpha_t); returns r_0..r_horizon. Throws infeasible_rate_error when
// the recursion argument reaches 1.
std::vector<double> equilibrium_path(double r1, const SimpleEconomy& econ, int horizon);

// Stationary-economy derivative of the first-period optimal rate with
// respect to alpha_t: (1 + alpha) / (2 + alpha)^t, t >= 1.
double sensitivity(double alpha, int t);

// Seed thresholds bracketing the monotone-convergence regions: below
// lower_seed_bound the depth-indexed iterates are non-decreasing, above
// upper_seed_bound non-increasing.
double lower_seed_bound(double alpha_min);
double upper_seed_bound(double alpha_max);  // psi(alpha_max)

}  // namespace olg::simple

#endif
