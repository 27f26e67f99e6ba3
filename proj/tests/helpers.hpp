#ifndef OLG_TEST_HELPERS_HPP
#define OLG_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "olg/core.hpp"
#include "olg/data.hpp"
#include "olg/tails.hpp"

namespace testutil {

inline std::mt19937& rng() {
    static std::mt19937 gen(20250810u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double log_uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
    return std::exp(d(rng()));
}

inline olg::EconomySpec country_econ(const std::string& name, double theta = 2.82,
                                     double phi = 0.2) {
    olg::EconomySpec econ;
    econ.gamma = olg::data::canonical_gamma(name);
    econ.alpha = olg::data::canonical_alpha(name);
    econ.theta = theta;
    econ.phi = phi;
    econ.horizon = 6;
    return econ;
}

inline olg::tails::FullLifespanTail country_tail(const std::string& name,
                                                 double theta_tau = 2.82) {
    olg::tails::FullLifespanTail tail;
    tail.alpha_tau = olg::data::canonical_gamma(name).at(4);
    tail.theta_tau = theta_tau;
    return tail;
}

}  // namespace testutil

#endif
