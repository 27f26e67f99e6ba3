#include "olg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace olg::solver {

namespace {

struct System {
    std::vector<double> gamma;  // gamma_0..gamma_4
    double theta;
    double theta_tau;
    double phi;
    double alpha_tau;
    double weight_sum;       // 1 + theta + theta^2
    double weight_sum_tail;  // 1 + theta_tau + theta_tau^2
};

System make_system(const EconomySpec& econ, const tails::FullLifespanTail& tail) {
    econ.validate();
    tail.validate();
    if (econ.gamma.size() != 5)
        throw std::invalid_argument("backward_solve: the pipeline models five growth factors");
    System s;
    s.gamma = econ.gamma;
    s.theta = econ.theta;
    s.theta_tau = tail.theta_tau;
    s.phi = econ.phi;
    s.alpha_tau = tail.alpha_tau;
    s.weight_sum = 1.0 + s.theta + s.theta * s.theta;
    s.weight_sum_tail = 1.0 + s.theta_tau + s.theta_tau * s.theta_tau;
    return s;
}

// Left-hand side of the period-t clearing equation, per capita of the
// oldest generation alive in t.
double equation_lhs(const System& s, const std::vector<double>& p, int t) {
    const double th = s.theta;
    if (t <= 5) {
        const double g0 = s.gamma[static_cast<std::size_t>(t - 2)];
        const double g1 = s.gamma[static_cast<std::size_t>(t - 1)];
        return th * th * (p[t - 2] + p[t - 1] + s.phi * p[t]) / (s.weight_sum * p[t]) +
               g0 * th * (p[t - 1] + p[t] + s.phi * p[t + 1]) / (s.weight_sum * p[t]) +
               g0 * g1 * (p[t] + p[t + 1] + s.phi * p[t + 2]) / (s.weight_sum * p[t]);
    }
    const double g4 = s.gamma[4];
    if (t == 6) {
        return th * th * (p[4] + p[5] + s.phi * p[6]) / (s.weight_sum * p[6]) +
               g4 * th * (p[5] + p[6] + s.phi * p[7]) / (s.weight_sum * p[6]) +
               g4 * g4 * (p[6] + p[7] + p[8]) / (s.weight_sum_tail * p[6]);
    }
    return th * th * (p[5] + p[6] + s.phi * p[7]) / (s.weight_sum * p[7]) +
           g4 * s.theta_tau * (p[6] + p[7] + p[8]) / (s.weight_sum_tail * p[7]) +
           g4 * s.alpha_tau * (p[7] + p[8] + p[9]) / (s.weight_sum_tail * p[7]);
}

double equation_rhs(const System& s, int t) {
    if (t <= 5) {
        const double g0 = s.gamma[static_cast<std::size_t>(t - 2)];
        const double g1 = s.gamma[static_cast<std::size_t>(t - 1)];
        return s.phi + g0 + g0 * g1;
    }
    const double g4 = s.gamma[4];
    if (t == 6) return s.phi + g4 + g4 * g4;
    return s.phi + (1.0 + s.alpha_tau) * g4;
}

}  // namespace

EquilibriumCandidate backward_solve(const EconomySpec& econ, const tails::FullLifespanTail& tail,
                                    const tails::BoundaryPrices& boundary) {
    const System s = make_system(econ, tail);
    const double theta_sq = s.theta * s.theta;
    if (!(theta_sq > 0.0)) throw std::domain_error("backward_solve: singular backward step");

    EquilibriumCandidate cand;
    cand.a3 = boundary.a3;
    std::vector<double> p(10, 0.0);
    for (std::size_t i = 0; i < 4; ++i) p[6 + i] = boundary.prices[i];

    // Each equation, cleared of its denominator, is affine in the earliest
    // price: theta^2 (p_{t-2} + p_{t-1} + phi p_t) = W p_t (rhs - rest).
    for (int t = 7; t >= 2; --t) {
        const double rest = equation_lhs(s, p, t) -
                            theta_sq * (p[t - 2] + p[t - 1] + s.phi * p[t]) / (s.weight_sum * p[t]);
        p[t - 2] = (equation_rhs(s, t) - rest) * s.weight_sum * p[t] / theta_sq - p[t - 1] -
                   s.phi * p[t];
    }

    const auto& cfg = numeric_config();
    cand.feasible = std::all_of(p.begin(), p.end(),
                                [&](double v) { return v > cfg.price_floor; });
    cand.residuals.reserve(6);
    if (cand.feasible) {
        for (int t = 2; t <= 7; ++t) {
            const double rhs = equation_rhs(s, t);
            cand.residuals.push_back(std::fabs(equation_lhs(s, p, t) - rhs) / std::fabs(rhs));
        }
        cand.feasible = std::all_of(cand.residuals.begin(), cand.residuals.end(),
                                    [&](double r) { return r < cfg.rel_tol; });
    }
    if (cand.feasible) {
        const double front = p[0];
        for (double& v : p) v /= front;
        p[0] = 1.0;
        cand.rates.reserve(9);
        for (std::size_t t = 0; t + 1 < p.size(); ++t) cand.rates.push_back(p[t] / p[t + 1]);
        double mean = 0.0;
        for (std::size_t t = 0; t < 7; ++t) mean += cand.rates[t];
        mean /= 7.0;
        double var = 0.0;
        for (std::size_t t = 0; t < 7; ++t) var += (cand.rates[t] - mean) * (cand.rates[t] - mean);
        cand.rate_stddev = std::sqrt(var / 7.0);
    }
    cand.prices = std::move(p);
    return cand;
}

namespace {

bool feasible_at(const EconomySpec& econ, const tails::FullLifespanTail& tail, double a3) {
    return backward_solve(econ, tail, tails::boundary_prices(tail, a3)).feasible;
}

// Refines the feasibility boundary between a feasible and an infeasible
// abscissa down to width 1e-6, returning the feasible-side estimate.
double refine_edge(const EconomySpec& econ, const tails::FullLifespanTail& tail, double feasible,
                   double infeasible) {
    for (int i = 0; i < 60 && std::fabs(infeasible - feasible) > 1e-6; ++i) {
        const double mid = 0.5 * (feasible + infeasible);
        (feasible_at(econ, tail, mid) ? feasible : infeasible) = mid;
    }
    return feasible;
}

}  // namespace

SweepResult sweep(const EconomySpec& econ, const tails::FullLifespanTail& tail, double grid_step,
                  int jobs) {
    if (!(grid_step > 0.0)) throw std::invalid_argument("sweep: grid_step must be positive");
    (void)make_system(econ, tail);  // validate before any worker thread starts
    const double margin = 1e-6;
    const double lo = -1.0 + margin;
    const double hi = tails::a3_upper_bound(tail) - margin;
    if (hi <= lo) throw std::invalid_argument("sweep: empty admissible interval");
    const std::size_t n = static_cast<std::size_t>((hi - lo) / grid_step) + 1;

    SweepResult out;
    out.candidates.resize(n);
    auto run_block = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double a3 = std::min(lo + static_cast<double>(i) * grid_step, hi);
            out.candidates[i] = backward_solve(econ, tail, tails::boundary_prices(tail, a3));
        }
    };
    jobs = std::max(1, jobs);
    if (jobs == 1 || n < 64) {
        run_block(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + static_cast<std::size_t>(jobs) - 1) /
                                  static_cast<std::size_t>(jobs);
        for (std::size_t b = 0; b < n; b += chunk)
            pool.emplace_back(run_block, b, std::min(b + chunk, n));
        for (auto& th : pool) th.join();
    }

    // Contiguous feasible runs, edges refined against the neighbouring
    // infeasible grid point (or clamped at the admissible interval ends).
    for (std::size_t i = 0; i < n;) {
        if (!out.candidates[i].feasible) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && out.candidates[j + 1].feasible) ++j;
        FeasibleInterval iv;
        iv.lo = (i == 0) ? out.candidates[i].a3
                         : refine_edge(econ, tail, out.candidates[i].a3, out.candidates[i - 1].a3);
        iv.hi = (j + 1 == n)
                    ? out.candidates[j].a3
                    : refine_edge(econ, tail, out.candidates[j].a3, out.candidates[j + 1].a3);
        out.intervals.push_back(iv);
        i = j + 1;
    }
    return out;
}

const EquilibriumCandidate& select_min_variance(
    const std::vector<EquilibriumCandidate>& candidates) {
    const EquilibriumCandidate* best = nullptr;
    for (const auto& c : candidates) {
        if (!c.feasible) continue;
        if (best == nullptr) {
            best = &c;
            continue;
        }
        if (c.rate_stddev < best->rate_stddev ||
            (c.rate_stddev == best->rate_stddev &&
             (std::fabs(c.a3) < std::fabs(best->a3) ||
              (std::fabs(c.a3) == std::fabs(best->a3) && c.a3 < best->a3))))
            best = &c;
    }
    if (best == nullptr) throw no_equilibrium_error("select_min_variance: no feasible candidate");
    return *best;
}

}  // namespace olg::solver
