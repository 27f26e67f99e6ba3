#ifndef OLG_CORE_HPP
#define OLG_CORE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "olg/numeric.hpp"

namespace olg {

// Strictly positive price sequence indexed from period 0, in numeraire
// units per commodity-period. A normalized sequence has values[0] == 1
// exactly.
class PriceSeq {
  public:
    explicit PriceSeq(std::vector<double> values);

    // Rescales so that the first entry is exactly 1 and marks the result
    // normalized.
    static PriceSeq normalized(std::vector<double> values);

    double operator[](std::size_t t) const { return values_[t]; }
    std::size_t size() const { return values_.size(); }
    bool is_normalized() const { return normalized_; }
    const std::vector<double>& values() const { return values_; }

    // Gross return rate r_t = p_t / p_{t+1}.
    double return_rate(std::size_t t) const;
    std::vector<double> return_rates() const;

  private:
    std::vector<double> values_;
    bool normalized_ = false;
};

// Lifespan-3 weighted-log economy: growth factors of the aggregate
// endowment, preference weight, old-age endowment share and the count of
// modeled (non-tail) generations. `alpha` holds the demographic factors
// aligned with `gamma`; when a spec is synthetic and only gamma is known,
// alpha defaults to gamma (unit productivity growth). It enters only the
// per-capita normalization of real savings and the relabeling helpers.
struct EconomySpec {
    std::vector<double> gamma;
    double theta = 1.0;
    double phi = 0.0;
    int horizon = 1;
    std::vector<double> alpha;

    // Throws std::invalid_argument when an invariant fails.
    void validate() const;

    double alpha_at(std::size_t t) const { return alpha.empty() ? gamma.at(t) : alpha.at(t); }
};

// Internally homogeneous generation: household count, per-capita 3-period
// endowment and preference weight.
struct GenerationProfile {
    double size = 1.0;
    std::array<double, 3> endowment{};
    double theta = 1.0;

    void validate() const;
};

// Walrasian demand of the log-utility household with weights (1, theta,
// theta^2): c_i = wealth * w_i / (W * p_i), wealth = p . e, W = 1 + theta
// + theta^2. Budget p . (c - e) = 0 holds to machine precision and the
// map is homogeneous of degree zero in prices.
std::array<double, 3> log_demand(const std::array<double, 3>& prices,
                                 const std::array<double, 3>& endowment, double theta);

// Aggregate excess demand in `period` over the generations alive there.
// generations[i] is born in period i and lives three periods; its demand
// needs prices p_i..p_{i+2}.
double excess_demand(int period, const PriceSeq& prices,
                     const std::vector<GenerationProfile>& generations);

// Real savings per capita of the relabeled generation block t (original
// generations 2t and 2t+1), evaluated at the price block
// (p_{2t}, .., p_{2t+3}) and measured in units of the first-half
// endowment e_{2t}. Homogeneous of degree zero in the price block.
double real_savings_per_capita(int t, const PriceSeq& prices, const EconomySpec& econ);

// Same quantity on an explicit 4-price block with explicit parameters;
// `gamma` is the aggregate growth factor between the two halves and
// `alpha` the demographic one. phi_even/phi_odd are the old-age endowment
// shares of the two half-generations.
double relabeled_block_savings(const std::array<double, 4>& block, double theta, double gamma,
                               double alpha, double phi_even, double phi_odd);

// Two-period growth factors of the relabeled economy:
// a~_t = a_{2t} a_{2t+1} (1 + a_{2t+2}) / (1 + a_{2t}).
std::vector<double> relabel_growth(const std::vector<double>& alpha);

}  // namespace olg

#endif
