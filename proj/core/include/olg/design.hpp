#ifndef OLG_DESIGN_HPP
#define OLG_DESIGN_HPP

#include <array>
#include <vector>

#include "olg/core.hpp"
#include "olg/solver.hpp"
#include "olg/tails.hpp"

namespace olg::design {

// Per-generation slice of the pay-as-you-go design. sigma_paper is the
// signed raw first-period rate s1/e_t, negative when the young pay in;
// contribution_paid = max(0, -sigma_paper) is the conventional positive
// contribution rate. replacement is the old-age benefit s3 relative to
// e_t, a derived reporting quantity without a canonical three-period
// definition.
struct GenerationDesign {
    std::array<double, 3> savings{};  // goods units per capita
    double sigma_paper = 0.0;
    double contribution_paid = 0.0;
    double replacement = 0.0;
};

struct PaygoDesign {
    std::vector<GenerationDesign> generations;      // t = 0..7
    std::vector<std::array<double, 3>> endowments;  // per-capita profile per generation
    std::vector<double> balance_residuals;          // periods 2..7, relative
};

// Savings vector of a generation facing rates (r_t, r_{t+1}) with
// endowment (endow, endow, phi endow): Walrasian demand minus endowment.
std::array<double, 3> savings_vector(double r_t, double r_next, double theta, double phi,
                                     double endow);

// Signed first-period contribution rate
// sigma = ((r_{t+1} + phi) / (r_t r_{t+1}) - theta (1 + theta)) /
// (1 + theta + theta^2); equals savings_vector(...)[0] / endow.
double contribution_rate(double r_t, double r_next, double theta, double phi);

// Assembles the t = 0..7 design along a feasible equilibrium: modeled
// generations use (theta, phi, endow[t]); the two tail generations use
// (theta_tau, full-endowment profile, endow[6..7]). `sizes` are the eight
// household counts H_0..H_7; endow levels must grow consistently with the
// gamma series used in the solve for the balance to clear.
PaygoDesign build_design(const solver::EquilibriumCandidate& candidate, const EconomySpec& econ,
                         const tails::FullLifespanTail& tail, const std::vector<double>& sizes,
                         const std::vector<double>& endow);

// Mass-consistent endowment levels for the country pipeline: e_0 anchors
// the series and H_t e_t then grows by gamma_0..gamma_4, gamma_4 and
// alpha_tau between consecutive periods.
std::vector<double> consistent_endowments(const EconomySpec& econ,
                                          const tails::FullLifespanTail& tail,
                                          const std::vector<double>& sizes, double e0);

// Tail-extended household counts H_6 = alpha_5 H_5 (alpha_5 = alpha_4)
// and H_7 = alpha_tau H_6.
std::vector<double> extend_sizes(const std::vector<double>& sizes, double alpha4,
                                 double alpha_tau);

// Per-period aggregate transfer sums H_{t-2} s3 + H_{t-1} s2 + H_t s1 for
// periods 2..7, relative to the period aggregate endowment. Periods 0 and
// 1 are excluded: they involve the initial money holders.
std::vector<double> balance_check(const PaygoDesign& design, const std::vector<double>& sizes);

enum class CassVerdict { optimal_side, suboptimal_side };

// Finite-horizon reading of the Cass-criterion rule: suboptimal-side iff
// some r_n < alpha_min for n >= 1 within the horizon. partial_sums holds
// the running sums of 1 / (H_t p_t) with p_0 = 1, p_{t+1} = p_t / r_t.
// The verdict is a heuristic; the rule is exact only for the two-period
// stationary-bounds setting.
struct CassDiagnostic {
    CassVerdict verdict = CassVerdict::optimal_side;
    std::vector<double> partial_sums;
};

CassDiagnostic cass_diagnostic(const std::vector<double>& rates, const std::vector<double>& sizes,
                               double alpha_min);

}  // namespace olg::design

#endif
