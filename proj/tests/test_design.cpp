#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "olg/design.hpp"

using namespace olg;
using namespace olg::design;
using testutil::country_econ;
using testutil::country_tail;

namespace {

// Closed form of the savings vector in the two return rates, the second
// component carrying the theta factor on the wealth term.
std::array<double, 3> savings_closed_form(double r, double rn, double theta, double phi,
                                          double e) {
    const double w = 1 + theta + theta * theta;
    return {e / w * ((rn + phi) / (r * rn) - theta * (1 + theta)),
            e / w * (theta * (r * rn + phi) / rn - (1 + theta * theta)),
            e / w * (theta * theta * rn * (1 + r) - phi * (1 + theta))};
}

struct Pipeline {
    EconomySpec econ;
    tails::FullLifespanTail tail;
    solver::EquilibriumCandidate best;
    std::vector<double> sizes;
    std::vector<double> endow;
};

Pipeline solved_country(const std::string& name) {
    Pipeline p{country_econ(name), country_tail(name), {}, {}, {}};
    const auto res = solver::sweep(p.econ, p.tail, 1e-3);
    p.best = solver::select_min_variance(res.candidates);
    p.sizes = extend_sizes(data::canonical_cohorts(name), p.econ.alpha.at(4), p.tail.alpha_tau);
    p.endow = consistent_endowments(p.econ, p.tail, p.sizes,
                                    data::canonical_endowments(name).at(0));
    return p;
}

}  // namespace

TEST_CASE("savings vector") {
    SUBCASE("worked symmetric case") {
        const auto s = savings_vector(1.0, 1.0, 1.0, 0.0, 3.0);
        CHECK(s[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(s[1] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(s[2] == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("two routes agree: demand difference vs closed form") {
        for (int i = 0; i < 200; ++i) {
            const double r = testutil::log_uniform(0.1, 10);
            const double rn = testutil::log_uniform(0.1, 10);
            const double theta = testutil::uniform(1.0, 4.0);
            const double phi = testutil::uniform(0.0, 1.0);
            const double e = testutil::log_uniform(0.5, 1e4);
            const auto s = savings_vector(r, rn, theta, phi, e);
            const auto c = savings_closed_form(r, rn, theta, phi, e);
            for (int k = 0; k < 3; ++k) CHECK(s[k] == doctest::Approx(c[k]).epsilon(1e-12));
            // Lifetime budget at supporting prices.
            const double budget = r * rn * s[0] + rn * s[1] + s[2];
            CHECK(std::fabs(budget) < 1e-12 * e * r * rn);
        }
    }
    SUBCASE("stationary golden-rule-like case has zero present value") {
        const double g = 1.4;
        const auto s = savings_vector(g, g, 2.0, 0.3, 5.0);
        CHECK(std::fabs(g * g * s[0] + g * s[1] + s[2]) < 1e-12 * 5.0 * g * g);
    }
}

TEST_CASE("contribution rate") {
    SUBCASE("worked value: the young receive") {
        CHECK(contribution_rate(1.0, 1.0, 1.0, 0.0) == doctest::Approx(-1.0 / 3).epsilon(1e-14));
    }
    SUBCASE("limit for large rates") {
        const double theta = 2.82;
        const double limit = -theta * (1 + theta) / (1 + theta + theta * theta);
        CHECK(contribution_rate(1e8, 1e8, theta, 0.2) == doctest::Approx(limit).epsilon(1e-7));
    }
    SUBCASE("identity with the first savings component") {
        for (int i = 0; i < 100; ++i) {
            const double r = testutil::log_uniform(0.2, 5);
            const double rn = testutil::log_uniform(0.2, 5);
            const double theta = testutil::uniform(1.0, 4.0);
            const double phi = testutil::uniform(0.0, 1.0);
            const double e = testutil::log_uniform(1, 100);
            CHECK(contribution_rate(r, rn, theta, phi) * e ==
                  doctest::Approx(savings_vector(r, rn, theta, phi, e)[0]).epsilon(1e-12));
        }
    }
}

TEST_CASE("design along the solved reference country") {
    const auto p = solved_country("brazil");
    const auto design = build_design(p.best, p.econ, p.tail, p.sizes, p.endow);
    REQUIRE(design.generations.size() == 8);

    SUBCASE("per-period balance clears") {
        REQUIRE(design.balance_residuals.size() == 6);
        for (double r : design.balance_residuals) CHECK(r < 1e-9);
    }
    SUBCASE("sign conventions and reported rates") {
        for (std::size_t t = 0; t < 8; ++t) {
            const auto& g = design.generations[t];
            const double e = p.endow[t];
            CHECK(g.sigma_paper == doctest::Approx(g.savings[0] / e).epsilon(1e-12));
            CHECK(g.contribution_paid == doctest::Approx(std::max(0.0, -g.sigma_paper)));
            CHECK(g.replacement == doctest::Approx(g.savings[2] / e).epsilon(1e-12));
        }
    }
    SUBCASE("household budgets clear at the equilibrium prices") {
        const auto& prices = p.best.prices;
        for (std::size_t t = 0; t < 8; ++t) {
            const auto& s = design.generations[t].savings;
            const double wealth = prices[t] * p.endow[t];
            const double budget = prices[t] * s[0] + prices[t + 1] * s[1] + prices[t + 2] * s[2];
            CHECK(std::fabs(budget) < 1e-12 * std::max(1.0, wealth));
        }
    }
    SUBCASE("perturbing one savings entry breaks the balance") {
        auto broken = design;
        broken.generations[3].savings[0] *= 1.01;
        const auto residuals = balance_check(broken, p.sizes);
        CHECK(residuals[1] > 1e-6);
    }
}

TEST_CASE("autarky design balances exactly") {
    // At rates (1/theta, 1/theta) with a full old-age endowment the
    // supporting prices are proportional to the utility weights and
    // demand equals endowment.
    const double theta = 2.2;
    const auto s = savings_vector(1 / theta, 1 / theta, theta, 1.0, 7.0);
    for (double v : s) CHECK(std::fabs(v) < 1e-12);

    PaygoDesign d;
    for (int t = 0; t < 4; ++t) {
        d.generations.push_back({{0.0, 0.0, 0.0}, 0.0, 0.0, 0.0});
        d.endowments.push_back({1.0, 1.0, 1.0});
    }
    const auto residuals = balance_check(d, {1, 1, 1, 1});
    for (double r : residuals) CHECK(r == 0.0);
}

TEST_CASE("finite-horizon optimality diagnostic") {
    SUBCASE("rates at the growth bound stay on the optimal side") {
        const auto d = cass_diagnostic({2, 2, 2, 2, 2}, {1, 2, 4, 8, 16, 32}, 2.0);
        CHECK(d.verdict == CassVerdict::optimal_side);
        REQUIRE(d.partial_sums.size() == 6);
        // H_t p_t is constant here, so increments are constant as well.
        const double inc1 = d.partial_sums[1] - d.partial_sums[0];
        const double inc5 = d.partial_sums[5] - d.partial_sums[4];
        CHECK(inc1 == doctest::Approx(inc5).epsilon(1e-12));
    }
    SUBCASE("a dip below the growth bound flips the verdict") {
        const auto d = cass_diagnostic({2, 1, 2, 2}, {1, 2, 4, 8, 16}, 2.0);
        CHECK(d.verdict == CassVerdict::suboptimal_side);
    }
    SUBCASE("the initial rate is excluded from the rule") {
        const auto d = cass_diagnostic({0.5, 2, 2, 2}, {1, 2, 4, 8, 16}, 2.0);
        CHECK(d.verdict == CassVerdict::optimal_side);
    }
    SUBCASE("flat boundary rates from an admissible tail block") {
        const auto tail = country_tail("brazil");
        const auto b = tails::boundary_prices(tail, 0.0);
        std::vector<double> rates;
        for (int t = 0; t < 3; ++t) rates.push_back(b.prices[t] / b.prices[t + 1]);
        std::vector<double> sizes{1, 1.14, 1.14 * 1.14, 1.14 * 1.14 * 1.14};
        const auto d = cass_diagnostic(rates, sizes, tail.alpha_tau);
        CHECK(d.verdict == CassVerdict::optimal_side);
    }
    SUBCASE("geometric price growth makes the partial sums settle") {
        // Theta-mode prices with constant population: increments shrink
        // geometrically.
        const double theta = 2.82;
        std::vector<double> rates(20, 1.0 / theta);
        std::vector<double> sizes(21, 1.0);
        const auto d = cass_diagnostic(rates, sizes, 0.1);
        const auto& s = d.partial_sums;
        const double tail_inc = s[20] - s[19];
        const double early_inc = s[1] - s[0];
        CHECK(tail_inc < 1e-7 * early_inc);
    }
}

TEST_CASE("diagnostics across all five solved countries") {
    for (const auto& name : data::canonical_countries()) {
        const auto p = solved_country(name);
        const auto design = build_design(p.best, p.econ, p.tail, p.sizes, p.endow);
        for (double r : design.balance_residuals) CHECK(r < 1e-9);
    }
}
