#include "olg/design.hpp"

#include <cmath>
#include <stdexcept>

namespace olg::design {

std::array<double, 3> savings_vector(double r_t, double r_next, double theta, double phi,
                                     double endow) {
    if (!(r_t > 0.0 && r_next > 0.0))
        throw std::domain_error("savings_vector: rates must be positive");
    if (!(endow > 0.0)) throw std::domain_error("savings_vector: endowment must be positive");
    // Prices consistent with the two rates (scale drops out of demand).
    const std::array<double, 3> prices{r_t * r_next, r_next, 1.0};
    const std::array<double, 3> endowment{endow, endow, phi * endow};
    const auto x = log_demand(prices, endowment, theta);
    return {x[0] - endowment[0], x[1] - endowment[1], x[2] - endowment[2]};
}

double contribution_rate(double r_t, double r_next, double theta, double phi) {
    if (!(r_t > 0.0 && r_next > 0.0))
        throw std::domain_error("contribution_rate: rates must be positive");
    const double total = 1.0 + theta + theta * theta;
    return ((r_next + phi) / (r_t * r_next) - theta * (1.0 + theta)) / total;
}

std::vector<double> extend_sizes(const std::vector<double>& sizes, double alpha4,
                                 double alpha_tau) {
    if (sizes.size() != 6) throw std::invalid_argument("extend_sizes: expected H_0..H_5");
    std::vector<double> out = sizes;
    out.push_back(alpha4 * out[5]);
    out.push_back(alpha_tau * out[6]);
    return out;
}

std::vector<double> consistent_endowments(const EconomySpec& econ,
                                          const tails::FullLifespanTail& tail,
                                          const std::vector<double>& sizes, double e0) {
    econ.validate();
    if (econ.gamma.size() != 5)
        throw std::invalid_argument("consistent_endowments: expected gamma_0..gamma_4");
    if (sizes.size() != 8) throw std::invalid_argument("consistent_endowments: expected H_0..H_7");
    if (!(e0 > 0.0)) throw std::domain_error("consistent_endowments: e0 must be positive");
    std::vector<double> growth = econ.gamma;
    growth.push_back(econ.gamma[4]);   // mass growth into the first tail generation
    growth.push_back(tail.alpha_tau);  // and within the tail
    std::vector<double> endow{e0};
    double mass = sizes[0] * e0;
    for (std::size_t t = 0; t < growth.size(); ++t) {
        mass *= growth[t];
        endow.push_back(mass / sizes[t + 1]);
    }
    return endow;
}

PaygoDesign build_design(const solver::EquilibriumCandidate& candidate, const EconomySpec& econ,
                         const tails::FullLifespanTail& tail, const std::vector<double>& sizes,
                         const std::vector<double>& endow) {
    if (!candidate.feasible)
        throw std::invalid_argument("build_design: candidate must be feasible");
    if (candidate.prices.size() != 10)
        throw std::invalid_argument("build_design: expected a ten-period candidate");
    if (sizes.size() != 8 || endow.size() != 8)
        throw std::invalid_argument("build_design: expected eight generations of sizes/endowments");
    econ.validate();
    tail.validate();

    PaygoDesign out;
    const auto& p = candidate.prices;
    for (int t = 0; t < 8; ++t) {
        const bool tail_gen = t >= 6;
        const double theta = tail_gen ? tail.theta_tau : econ.theta;
        const double phi = tail_gen ? 1.0 : econ.phi;
        const double e = endow[static_cast<std::size_t>(t)];
        const std::array<double, 3> profile{e, e, phi * e};
        const std::array<double, 3> prices{p[t], p[t + 1], p[t + 2]};
        const auto x = log_demand(prices, profile, theta);
        GenerationDesign g;
        g.savings = {x[0] - profile[0], x[1] - profile[1], x[2] - profile[2]};
        g.sigma_paper = g.savings[0] / e;
        g.contribution_paid = std::max(0.0, -g.sigma_paper);
        g.replacement = g.savings[2] / e;
        out.generations.push_back(g);
        out.endowments.push_back(profile);
    }
    out.balance_residuals = balance_check(out, sizes);
    return out;
}

std::vector<double> balance_check(const PaygoDesign& design, const std::vector<double>& sizes) {
    if (design.generations.size() != design.endowments.size())
        throw std::invalid_argument("balance_check: malformed design");
    if (sizes.size() < design.generations.size())
        throw std::invalid_argument("balance_check: sizes must cover all generations");
    const int n = static_cast<int>(design.generations.size());
    std::vector<double> residuals;
    for (int period = 2; period < n; ++period) {
        const double transfer = sizes[period - 2] * design.generations[period - 2].savings[2] +
                                sizes[period - 1] * design.generations[period - 1].savings[1] +
                                sizes[period] * design.generations[period].savings[0];
        const double supply = sizes[period - 2] * design.endowments[period - 2][2] +
                              sizes[period - 1] * design.endowments[period - 1][1] +
                              sizes[period] * design.endowments[period][0];
        residuals.push_back(std::fabs(transfer) / supply);
    }
    return residuals;
}

CassDiagnostic cass_diagnostic(const std::vector<double>& rates, const std::vector<double>& sizes,
                               double alpha_min) {
    if (rates.empty()) throw std::invalid_argument("cass_diagnostic: empty rate series");
    if (!(alpha_min > 0.0)) throw std::domain_error("cass_diagnostic: alpha_min must be positive");
    CassDiagnostic out;
    for (std::size_t n = 1; n < rates.size(); ++n) {
        if (rates[n] < alpha_min) {
            out.verdict = CassVerdict::suboptimal_side;
            break;
        }
    }
    double price = 1.0, sum = 0.0;
    const std::size_t count = std::min(sizes.size(), rates.size() + 1);
    for (std::size_t t = 0; t < count; ++t) {
        if (!(sizes[t] > 0.0)) throw std::domain_error("cass_diagnostic: sizes must be positive");
        sum += 1.0 / (sizes[t] * price);
        out.partial_sums.push_back(sum);
        if (t < rates.size()) price /= rates[t];
    }
    return out;
}

}  // namespace olg::design
