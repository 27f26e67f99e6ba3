#include "olg/tails.hpp"

#include <cmath>
#include <stdexcept>

namespace olg::tails {

void FullLifespanTail::validate() const {
    if (!(alpha_tau > 0.0) || !(theta_tau > 0.0))
        throw std::invalid_argument("FullLifespanTail: parameters must be positive");
}

void MinLifespanTail::validate() const {
    if (!(e_old > 0.0 && e_old < e_young))
        throw std::invalid_argument("MinLifespanTail: requires 0 < e_old < e_young");
    if (!(theta > 0.0 && theta < 0.5))
        throw std::invalid_argument("MinLifespanTail: theta must lie in (0, 1/2)");
}

namespace {

double discriminant_root(double alpha, double theta) {
    const double b = (1.0 + alpha) * (1.0 + theta);
    return std::sqrt(b * b - 4.0 * theta * alpha);
}

}  // namespace

double lambda3(double alpha, double theta) {
    if (!(alpha > 0.0) || !(theta > 0.0)) throw std::domain_error("lambda3: parameters must be positive");
    const double b = (1.0 + alpha) * (1.0 + theta);
    // (-b + sqrt(b^2 - 4 theta alpha)) / (2 alpha) without cancellation.
    return -2.0 * theta / (b + discriminant_root(alpha, theta));
}

double lambda4(double alpha, double theta) {
    if (!(alpha > 0.0) || !(theta > 0.0)) throw std::domain_error("lambda4: parameters must be positive");
    const double b = (1.0 + alpha) * (1.0 + theta);
    return (-b - discriminant_root(alpha, theta)) / (2.0 * alpha);
}

double a3_upper_bound(const FullLifespanTail& tail) {
    tail.validate();
    return 1.0 / (tail.alpha_tau * std::fabs(lambda3(tail.alpha_tau, tail.theta_tau)));
}

std::array<EigenPair, 4> omega_eigen(double alpha, double theta) {
    const std::array<double, 4> roots{theta, 1.0 / alpha, lambda3(alpha, theta),
                                      lambda4(alpha, theta)};
    std::array<EigenPair, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
        const double l = roots[i];
        out[i] = {l, {1.0, l, l * l, l * l * l}};
    }
    return out;
}

std::array<std::array<double, 4>, 4> omega_matrix(double alpha, double theta) {
    const double a2 = alpha * alpha;
    const double delta = (1.0 + alpha + a2) * (1.0 + theta + theta * theta) - a2 - alpha * theta -
                         theta * theta;
    return {{{0.0, 1.0, 0.0, 0.0},
             {0.0, 0.0, 1.0, 0.0},
             {0.0, 0.0, 0.0, 1.0},
             {-theta * theta / a2, -theta * (theta + alpha) / a2, delta / a2,
              -alpha * (theta + alpha) / a2}}};
}

BoundaryPrices boundary_prices(const FullLifespanTail& tail, double a3) {
    tail.validate();
    const auto& cfg = numeric_config();
    if (std::fabs(1.0 + a3) < cfg.pole_guard)
        throw std::domain_error("boundary_prices: a3 too close to the pole at -1");
    if (!(a3 > -1.0 && a3 < a3_upper_bound(tail)))
        throw std::domain_error("boundary_prices: a3 outside the admissible interval");
    const double l3 = lambda3(tail.alpha_tau, tail.theta_tau);
    BoundaryPrices out;
    out.a3 = a3;
    double mode_a = 1.0, mode_l = 1.0;
    for (std::size_t t = 0; t < 4; ++t) {
        out.prices[t] = (mode_a + a3 * mode_l) / (1.0 + a3);
        mode_a /= tail.alpha_tau;
        mode_l *= l3;
    }
    out.prices[0] = 1.0;
    return out;
}

std::vector<double> tail_price_sequence(const FullLifespanTail& tail,
                                        const std::array<double, 3>& a, int horizon) {
    tail.validate();
    if (horizon < 1) throw std::invalid_argument("tail_price_sequence: horizon must be >= 1");
    const double l3 = lambda3(tail.alpha_tau, tail.theta_tau);
    std::vector<double> p(static_cast<std::size_t>(horizon));
    double m1 = 1.0, m2 = 1.0, m3 = 1.0;
    for (int t = 0; t < horizon; ++t) {
        p[static_cast<std::size_t>(t)] = a[0] * m1 + a[1] * m2 + a[2] * m3;
        m1 *= tail.theta_tau;
        m2 /= tail.alpha_tau;
        m3 *= l3;
    }
    return p;
}

TailVerdict tail_equilibrium_check(const FullLifespanTail& tail, const std::array<double, 3>& a) {
    tail.validate();
    if (a[0] < 0.0)
        throw std::invalid_argument("tail_equilibrium_check: a1 must be non-negative");
    if (std::fabs(a[0] + a[1] + a[2] - 1.0) > 1e-12)
        throw std::invalid_argument("tail_equilibrium_check: coefficients must sum to 1");
    const auto& cfg = numeric_config();
    const auto p = tail_price_sequence(tail, a, cfg.probe_horizon);
    for (double v : p)
        if (!(v > cfg.price_floor)) return TailVerdict::not_equilibrium;
    // Verify the four-term recurrence the modal combination must satisfy.
    const double alpha = tail.alpha_tau, theta = tail.theta_tau;
    const double a2 = alpha * alpha;
    const double delta = (1.0 + alpha + a2) * (1.0 + theta + theta * theta) - a2 - alpha * theta -
                         theta * theta;
    for (std::size_t t = 0; t + 4 < p.size(); ++t) {
        const double next = (-theta * theta * p[t] - theta * (theta + alpha) * p[t + 1] +
                             delta * p[t + 2] - alpha * (theta + alpha) * p[t + 3]) /
                            a2;
        if (std::fabs(next - p[t + 4]) > cfg.rel_tol * std::max(1.0, std::fabs(p[t + 4])))
            return TailVerdict::not_equilibrium;
    }
    return TailVerdict::equilibrium;
}

double min_lifespan_boundary(const MinLifespanTail& tail, const std::array<double, 2>& p0) {
    tail.validate();
    if (!(p0[0] > 0.0 && p0[1] > 0.0))
        throw std::domain_error("min_lifespan_boundary: prices must be positive");
    const double denom = tail.e_young + (4.0 * tail.theta - 1.0) * tail.e_old;
    if (!(denom > 0.0))
        throw std::invalid_argument("min_lifespan_boundary: degenerate bridging denominator");
    return 2.0 * (1.0 - 2.0 * tail.theta) * (p0[0] + p0[1]) * tail.e_young / denom;
}

bool prone_to_savings_tail(const FullLifespanTail& tail) {
    tail.validate();
    const double lhs = 1.0 + tail.theta_tau + tail.alpha_tau;
    const double rhs = tail.theta_tau * tail.theta_tau * tail.alpha_tau * tail.alpha_tau;
    return lhs < rhs;
}

double theta_lower_bound(double phi, double alpha_tilde, double gamma) {
    if (!(alpha_tilde > 0.0)) throw std::domain_error("theta_lower_bound: alpha_tilde must be positive");
    if (phi < 0.0 || !(gamma > 0.0))
        throw std::domain_error("theta_lower_bound: arguments must be non-negative/positive");
    return (phi + std::sqrt(phi * phi + 4.0 * alpha_tilde * (gamma + phi))) / (2.0 * alpha_tilde);
}

std::vector<bool> prone_to_savings_economy(const EconomySpec& econ,
                                           const std::vector<double>& alpha_tilde) {
    econ.validate();
    std::vector<bool> out;
    out.reserve(alpha_tilde.size());
    for (std::size_t t = 0; t < alpha_tilde.size(); ++t) {
        if (2 * t >= econ.gamma.size())
            throw std::out_of_range("prone_to_savings_economy: series length mismatch");
        const double lhs = econ.gamma[2 * t] + (1.0 + econ.theta) * econ.phi;
        out.push_back(lhs < alpha_tilde[t] * econ.theta * econ.theta);
    }
    return out;
}

double real_savings_per_capita(const FullLifespanTail& tail, const std::array<double, 4>& block) {
    tail.validate();
    return relabeled_block_savings(block, tail.theta_tau, tail.alpha_tau, tail.alpha_tau, 1.0, 1.0);
}

}  // namespace olg::tails
