#ifndef OLG_NUMERIC_HPP
#define OLG_NUMERIC_HPP

namespace olg {

// Global numeric policy. All monetary/market-clearing comparisons use
// rel_tol; feasibility of a price is strict positivity above price_floor.
struct NumericConfig {
    double rel_tol = 1e-10;      // relative tolerance for clearing residuals
    double price_floor = 1e-12;  // strict-positivity threshold
    double pole_guard = 1e-9;    // minimum |1 + a3| in boundary normalization
    int probe_horizon = 200;     // tail positivity probe length
};

NumericConfig& numeric_config();

}  // namespace olg

#endif
