#include "olg/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace olg {

NumericConfig& numeric_config() {
    static NumericConfig cfg;
    return cfg;
}

PriceSeq::PriceSeq(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("PriceSeq: empty sequence");
    for (std::size_t t = 0; t < values_.size(); ++t) {
        if (!(values_[t] > 0.0))
            throw std::domain_error("PriceSeq: non-positive price at index " + std::to_string(t));
    }
}

PriceSeq PriceSeq::normalized(std::vector<double> values) {
    PriceSeq p(std::move(values));
    const double front = p.values_[0];
    for (double& v : p.values_) v /= front;
    p.values_[0] = 1.0;
    p.normalized_ = true;
    return p;
}

double PriceSeq::return_rate(std::size_t t) const {
    if (t + 1 >= values_.size()) throw std::out_of_range("PriceSeq::return_rate: index past end");
    return values_[t] / values_[t + 1];
}

std::vector<double> PriceSeq::return_rates() const {
    std::vector<double> r(values_.size() - 1);
    for (std::size_t t = 0; t + 1 < values_.size(); ++t) r[t] = values_[t] / values_[t + 1];
    return r;
}

void EconomySpec::validate() const {
    if (gamma.empty()) throw std::invalid_argument("EconomySpec: empty gamma series");
    for (double g : gamma)
        if (!(g > 0.0)) throw std::invalid_argument("EconomySpec: gamma entries must be positive");
    if (!(theta >= 1.0)) throw std::invalid_argument("EconomySpec: theta must be >= 1");
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("EconomySpec: phi must lie in [0,1]");
    if (horizon < 1) throw std::invalid_argument("EconomySpec: horizon must be >= 1");
    if (!alpha.empty() && alpha.size() != gamma.size())
        throw std::invalid_argument("EconomySpec: alpha series must align with gamma");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument("EconomySpec: alpha entries must be positive");
}

void GenerationProfile::validate() const {
    if (!(size > 0.0)) throw std::invalid_argument("GenerationProfile: size must be positive");
    bool any = false;
    for (double e : endowment) {
        if (e < 0.0) throw std::invalid_argument("GenerationProfile: negative endowment");
        any = any || e > 0.0;
    }
    if (!any) throw std::invalid_argument("GenerationProfile: endowment must be nonzero");
}

std::array<double, 3> log_demand(const std::array<double, 3>& prices,
                                 const std::array<double, 3>& endowment, double theta) {
    for (double p : prices)
        if (!(p > 0.0)) throw std::domain_error("log_demand: non-positive price");
    const double wealth =
        prices[0] * endowment[0] + prices[1] * endowment[1] + prices[2] * endowment[2];
    if (!(wealth > 0.0)) throw std::invalid_argument("log_demand: endowment has zero present value");
    const double total = 1.0 + theta + theta * theta;
    return {wealth / (total * prices[0]), theta * wealth / (total * prices[1]),
            theta * theta * wealth / (total * prices[2])};
}

double excess_demand(int period, const PriceSeq& prices,
                     const std::vector<GenerationProfile>& generations) {
    const int n = static_cast<int>(generations.size());
    const int first = std::max(0, period - 2);
    const int last = std::min(period, n - 1);
    if (period < 0 || first > last)
        throw std::out_of_range("excess_demand: period outside modeled window");
    double z = 0.0;
    for (int i = first; i <= last; ++i) {
        if (static_cast<std::size_t>(i) + 2 >= prices.size())
            throw std::out_of_range("excess_demand: prices do not cover generation " +
                                    std::to_string(i));
        const auto& g = generations[i];
        const std::array<double, 3> block{prices[i], prices[i + 1], prices[i + 2]};
        const auto x = log_demand(block, g.endowment, g.theta);
        const int stage = period - i;  // 0 = young, 1 = middle, 2 = old
        z += g.size * (x[stage] - g.endowment[stage]);
    }
    return z;
}

double relabeled_block_savings(const std::array<double, 4>& block, double theta, double gamma,
                               double alpha, double phi_even, double phi_odd) {
    for (double p : block)
        if (!(p > 0.0)) throw std::domain_error("relabeled_block_savings: non-positive price");
    const double norm = block[0] + block[1];
    const double total = 1.0 + theta + theta * theta;
    // First-half households (endowment (1, 1, phi_even, 0) per unit of e_{2t}):
    // p~_t . (e~_t - x~_t) = ||p~_t|| - (1+theta) * wealth / total.
    const double wealth_even = block[0] + block[1] + phi_even * block[2];
    const double even = norm - (1.0 + theta) * wealth_even / total;
    // Second-half households: alpha heads per first-half head, each holding
    // gamma/alpha units, so their aggregate carries the factor gamma.
    const double wealth_odd = block[1] + block[2] + phi_odd * block[3];
    const double odd = gamma * (block[1] - wealth_odd / total);
    return (even + odd) / (norm * (1.0 + alpha));
}

double real_savings_per_capita(int t, const PriceSeq& prices, const EconomySpec& econ) {
    econ.validate();
    if (t < 0 || static_cast<std::size_t>(2 * t) >= econ.gamma.size())
        throw std::out_of_range("real_savings_per_capita: relabeled index outside horizon");
    if (static_cast<std::size_t>(2 * t) + 3 >= prices.size())
        throw std::out_of_range("real_savings_per_capita: prices do not cover block");
    const std::array<double, 4> block{prices[2 * t], prices[2 * t + 1], prices[2 * t + 2],
                                      prices[2 * t + 3]};
    return relabeled_block_savings(block, econ.theta, econ.gamma[2 * t], econ.alpha_at(2 * t),
                                   econ.phi, econ.phi);
}

std::vector<double> relabel_growth(const std::vector<double>& alpha) {
    if (alpha.size() < 3) throw std::out_of_range("relabel_growth: need at least three entries");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::domain_error("relabel_growth: non-positive growth factor");
    std::vector<double> out;
    for (std::size_t t = 0; 2 * t + 2 < alpha.size(); ++t) {
        out.push_back(alpha[2 * t] * alpha[2 * t + 1] * (1.0 + alpha[2 * t + 2]) /
                      (1.0 + alpha[2 * t]));
    }
    return out;
}

}  // namespace olg
