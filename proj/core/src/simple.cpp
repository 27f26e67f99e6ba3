#include "olg/simple.hpp"

#include <algorithm>
#include <cmath>

namespace olg::simple {

void SimpleEconomy::validate() const {
    if (alpha.empty()) throw std::invalid_argument("SimpleEconomy: empty growth series");
    for (double a : alpha)
        if (!(a > 0.0)) throw std::invalid_argument("SimpleEconomy: growth factors must be positive");
    if (!(endow > 0.0)) throw std::invalid_argument("SimpleEconomy: endowment must be positive");
}

double SimpleEconomy::alpha_at(int t) const {
    if (t < 0) throw std::out_of_range("SimpleEconomy::alpha_at: negative period");
    const std::size_t i = static_cast<std::size_t>(t);
    return i < alpha.size() ? alpha[i] : alpha.back();
}

double SimpleEconomy::alpha_min() const { return *std::min_element(alpha.begin(), alpha.end()); }
double SimpleEconomy::alpha_max() const { return *std::max_element(alpha.begin(), alpha.end()); }

double phi(double r) {
    if (!(r > 0.0)) throw std::domain_error("phi: argument must be positive");
    return r / (1.0 + r);
}

double phi_inverse(double y) {
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("phi_inverse: argument must lie in (0,1)");
    return y / (1.0 - y);
}

double psi(double r) {
    if (!(r > 0.0)) throw std::domain_error("psi: argument must be positive");
    return (r + std::sqrt(r * (r + 4.0))) / 2.0;
}

double backward_rate(const SimpleEconomy& econ, int depth, double seed) {
    econ.validate();
    if (depth < 1) throw std::invalid_argument("backward_rate: depth must be >= 1");
    if (!(seed > 0.0)) throw std::domain_error("backward_rate: seed must be positive");
    double r = seed;
    for (int t = depth; t >= 1; --t) r = psi(econ.alpha_at(t) * phi(r));
    return r;
}

ConvergedRate optimal_first_rate(const SimpleEconomy& econ, double seed, double tol,
                                 int max_depth) {
    econ.validate();
    if (max_depth <= 0) max_depth = 10 * static_cast<int>(econ.alpha.size());
    max_depth = std::max(max_depth, 2);
    ConvergedRate out;
    double prev = backward_rate(econ, 1, seed);
    for (int depth = 2; depth <= max_depth; ++depth) {
        const double cur = backward_rate(econ, depth, seed);
        out = {cur, depth, std::fabs(cur - prev)};
        if (out.delta < tol) return out;
        prev = cur;
    }
    return out;
}

std::vector<double> equilibrium_path(double r1, const SimpleEconomy& econ, int horizon) {
    econ.validate();
    if (!(r1 > 0.0)) throw std::domain_error("equilibrium_path: r1 must be positive");
    if (horizon < 1) throw std::invalid_argument("equilibrium_path: horizon must be >= 1");
    std::vector<double> r;
    r.reserve(static_cast<std::size_t>(horizon) + 1);
    r.push_back(econ.alpha_at(0) * phi(r1));
    r.push_back(r1);
    for (int t = 1; t < horizon; ++t) {
        const double y = r[static_cast<std::size_t>(t)] * phi(r[static_cast<std::size_t>(t)]) /
                         econ.alpha_at(t);
        if (y >= 1.0)
            throw infeasible_rate_error(
                "equilibrium_path: r1 exceeds the monetary-equilibrium range (0, alpha]");
        r.push_back(phi_inverse(y));
    }
    return r;
}

double sensitivity(double alpha, int t) {
    if (!(alpha > 0.0)) throw std::domain_error("sensitivity: alpha must be positive");
    if (t < 1) throw std::out_of_range("sensitivity: horizon index must be >= 1");
    return (1.0 + alpha) / std::pow(2.0 + alpha, t);
}

double lower_seed_bound(double alpha_min) {
    if (!(alpha_min > 0.0)) throw std::domain_error("lower_seed_bound: alpha_min must be positive");
    // Largest L <= 1 with (alpha/2) (1 + sqrt(1 + 8/(alpha L))) / 2 >= 1;
    // the left side decreases in L, and equality gives
    // L = 8 / (alpha ((4/alpha - 1)^2 - 1)).
    const double v = 4.0 / alpha_min - 1.0;
    if (v <= 1.0) return 1.0;  // alpha_min >= 2: every L <= 1 qualifies
    return std::min(1.0, 8.0 / (alpha_min * (v * v - 1.0)));
}

double upper_seed_bound(double alpha_max) { return psi(alpha_max); }

}  // namespace olg::simple
