#ifndef OLG_TAILS_HPP
#define OLG_TAILS_HPP

#include <array>
#include <vector>

#include "olg/core.hpp"

namespace olg::tails {

// Full-lifespan tail: three-period log-utility households with common
// endowment (e, e, e), per-period demographic growth alpha_tau and
// preference weight theta_tau. The closed-form characterization of its
// Pareto-optimal equilibria requires min{alpha_tau, theta_tau} > 1; the
// country pipeline may still instantiate tails outside that region (the
// backward algorithm can be attempted regardless), so construction only
// requires positivity and the hypothesis is queryable.
struct FullLifespanTail {
    double alpha_tau = 1.0;
    double theta_tau = 1.0;

    void validate() const;
    bool characterization_hypothesis() const { return alpha_tau > 1.0 && theta_tau > 1.0; }
};

// Minimum-lifespan tail: a bridging generation with endowment
// (e_y, e_y, e_o) and weight profile (theta, theta, 1 - 2 theta),
// followed by one-period-good generations.
struct MinLifespanTail {
    double e_young = 1.0;
    double e_old = 0.5;
    double theta = 0.25;

    void validate() const;
};

// Tail price block (p6..p9 in the country pipeline indexing) for a given
// boundary parameter a3.
struct BoundaryPrices {
    double a3 = 0.0;
    std::array<double, 4> prices{};
};

// Negative root of alpha l^2 + (1+alpha)(1+theta) l + theta with
// |lambda3| < 1/alpha; evaluated in the cancellation-free form.
double lambda3(double alpha, double theta);
double lambda4(double alpha, double theta);

// Upper endpoint 1 / (alpha_tau |lambda3|) of the admissible a3 interval.
double a3_upper_bound(const FullLifespanTail& tail);

struct EigenPair {
    double value = 0.0;
    std::array<double, 4> vector{};
};

// Closed-form eigenstructure of the tail price recurrence: eigenvalues
// theta, 1/alpha, lambda3, lambda4 with Vandermonde eigenvectors
// (1, l, l^2, l^3).
std::array<EigenPair, 4> omega_eigen(double alpha, double theta);

// Companion-style recurrence matrix, built explicitly for residual
// verification of the closed-form roots.
std::array<std::array<double, 4>, 4> omega_matrix(double alpha, double theta);

// Pareto-optimal price block of the stationary tail for a3 in
// (-1, 1/(alpha|lambda3|)); first entry is exactly 1.
BoundaryPrices boundary_prices(const FullLifespanTail& tail, double a3);

// Price sequence generated by the modal combination a1 theta^t + a2
// alpha^{-t} + a3 lambda3^t over `horizon` periods.
std::vector<double> tail_price_sequence(const FullLifespanTail& tail,
                                        const std::array<double, 3>& a, int horizon);

enum class TailVerdict { equilibrium, not_equilibrium };

// Checks that the modal combination (a1, a2, a3), a1 >= 0 and a1 + a2 +
// a3 = 1, generates a strictly positive sequence satisfying the
// recurrence over the probe horizon.
TailVerdict tail_equilibrium_check(const FullLifespanTail& tail, const std::array<double, 3>& a);

// Bridging price f(p0) = 2 (1 - 2 theta) ||p0|| e_y / (e_y + (4 theta -
// 1) e_o); downstream tail prices stay constant at this value.
double min_lifespan_boundary(const MinLifespanTail& tail, const std::array<double, 2>& p0);

// Sufficient condition 1 + theta + alpha < theta^2 alpha^2 for the tail
// to be prone to savings.
bool prone_to_savings_tail(const FullLifespanTail& tail);

// Threshold l(phi, alpha~, gamma) above which theta makes the relabeled
// period prone to savings; gamma + (1+theta) phi < alpha~ theta^2 iff
// theta > l.
double theta_lower_bound(double phi, double alpha_tilde, double gamma);

// The inequality gamma_{2t} + (1+theta) phi < alpha~_t theta^2 per
// relabeled period.
std::vector<bool> prone_to_savings_economy(const EconomySpec& econ,
                                           const std::vector<double>& alpha_tilde);

// Real savings per capita of a tail generation block at the given price
// block, in units of the tail endowment.
double real_savings_per_capita(const FullLifespanTail& tail, const std::array<double, 4>& block);

}  // namespace olg::tails

#endif
