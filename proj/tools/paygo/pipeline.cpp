#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "olg/data.hpp"
#include "olg/design.hpp"
#include "olg/simple.hpp"
#include "olg/solver.hpp"
#include "olg/tails.hpp"
#include "svg.hpp"

namespace paygo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

bool wants(const RunConfig& cfg, const std::string& fmt) { return cfg.formats.count(fmt) > 0; }

olg::tails::FullLifespanTail make_tail(const RunConfig& cfg, const CountryInputs& in) {
    olg::tails::FullLifespanTail tail;
    tail.alpha_tau = cfg.alpha_tau.value_or(in.gamma.at(4));
    tail.theta_tau = cfg.theta_tau;
    return tail;
}

olg::EconomySpec make_econ(const RunConfig& cfg, const CountryInputs& in) {
    olg::EconomySpec econ;
    econ.gamma = in.gamma;
    econ.alpha = in.alpha;
    econ.theta = cfg.theta;
    econ.phi = cfg.phi;
    econ.horizon = 6;
    econ.validate();
    return econ;
}

// alpha~_0, alpha~_1 by relabeling, alpha~_2 = alpha_4^2 (the tail keeps
// the last demographic factor).
std::vector<double> pipeline_alpha_tilde(const std::vector<double>& alpha) {
    std::vector<double> ext = alpha;
    ext.push_back(alpha.back());
    ext.push_back(alpha.back());
    return olg::relabel_growth(ext);  // three entries for a five-entry input
}

}  // namespace

void RunConfig::validate() const {
    if (!(theta >= 1.0)) throw std::invalid_argument("theta must be >= 1");
    if (!(theta_tau >= 1.0)) throw std::invalid_argument("theta_tau must be >= 1");
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("phi must lie in [0,1]");
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid-step must be positive");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    if (path != "canonical" && path != "raw")
        throw std::invalid_argument("path must be 'canonical' or 'raw'");
    for (const auto& f : formats)
        if (f != "csv" && f != "json" && f != "svg")
            throw std::invalid_argument("format must be csv, json or svg");
    if (!gamma.empty() && gamma.size() != 5)
        throw std::invalid_argument("an explicit gamma series must have five entries");
    if (alpha_tau && !(*alpha_tau > 0.0)) throw std::invalid_argument("alpha-tau must be positive");
}

std::vector<std::string> load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    std::vector<std::string> unknown;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string val = strip(line.substr(eq + 1));
        try {
            if (key == "country") cfg.country = val;
            else if (key == "theta") cfg.theta = std::stod(val);
            else if (key == "theta-tau") cfg.theta_tau = std::stod(val);
            else if (key == "phi") cfg.phi = std::stod(val);
            else if (key == "alpha-tau") cfg.alpha_tau = std::stod(val);
            else if (key == "grid-step") cfg.grid_step = std::stod(val);
            else if (key == "jobs") cfg.jobs = std::stoi(val);
            else if (key == "out") cfg.out_dir = val;
            else if (key == "data") cfg.data_path = val;
            else if (key == "path") cfg.path = val;
            else if (key == "format") {
                cfg.formats.clear();
                std::stringstream ss(val);
                std::string f;
                while (std::getline(ss, f, ',')) cfg.formats.insert(strip(f));
            } else {
                unknown.push_back(key);
            }
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": malformed value for " + key);
        }
    }
    return unknown;
}

std::vector<CountryInputs> resolve_inputs(const RunConfig& cfg) {
    cfg.validate();
    std::vector<CountryInputs> out;
    if (!cfg.gamma.empty()) {
        CountryInputs in;
        in.name = cfg.country.empty() ? "custom" : cfg.country;
        in.gamma = cfg.gamma;
        in.alpha = cfg.gamma;  // unit productivity growth
        in.sizes = {1.0};
        for (int t = 0; t < 5; ++t) in.sizes.push_back(in.sizes.back() * in.alpha[t]);
        in.e0 = 1.0;
        return {in};
    }

    const auto series = cfg.data_path.empty() ? olg::data::bundled_series()
                                              : olg::data::ingest_file(cfg.data_path);
    for (const auto& cs : series) {
        if (!cfg.country.empty() && cs.name != cfg.country) continue;
        CountryInputs in;
        in.name = cs.name;
        in.sizes = cs.cohort_sizes;
        in.e0 = cs.endowments.at(0);
        if (cfg.path == "canonical") {
            in.gamma = olg::data::canonical_gamma(cs.name);
            in.alpha = olg::data::canonical_alpha(cs.name);
        } else {
            in.gamma = cs.gamma;
            in.alpha = cs.alpha;
        }
        if (in.gamma.size() != 5)
            throw olg::data::ingest_error(cs.name + ": pipeline expects gamma_0..gamma_4");
        out.push_back(std::move(in));
    }
    if (out.empty())
        throw olg::data::ingest_error(cfg.country.empty() ? "no countries in input"
                                                          : "unknown country: " + cfg.country);
    return out;
}

int cmd_series(const RunConfig& cfg) {
    cfg.validate();
    const auto series = cfg.data_path.empty() ? olg::data::bundled_series()
                                              : olg::data::ingest_file(cfg.data_path);
    if (!cfg.country.empty() &&
        std::none_of(series.begin(), series.end(),
                     [&](const auto& cs) { return cs.name == cfg.country; }))
        throw olg::data::ingest_error("unknown country: " + cfg.country);
    std::string t1 = "country,t,H_millions,gdp_pc\n";
    std::string t2 = "country,t,alpha,beta\n";
    std::string t3 = "country,t,gamma\n";
    std::string diff = "country,series,t,raw,canonical,abs_diff\n";
    bool any_canonical = false;
    json j;
    for (const auto& cs : series) {
        if (!cfg.country.empty() && cs.name != cfg.country) continue;
        for (std::size_t t = 0; t < cs.cohort_sizes.size(); ++t) {
            t1 += cs.name + "," + std::to_string(t) + "," + num(cs.cohort_sizes[t]) + "," +
                  (t < cs.endowments.size() ? num(cs.endowments[t]) : "") + "\n";
        }
        for (std::size_t t = 0; t < cs.alpha.size(); ++t) {
            t2 += cs.name + "," + std::to_string(t) + "," + num(cs.alpha[t]) + "," +
                  num(cs.beta[t]) + "\n";
            t3 += cs.name + "," + std::to_string(t) + "," + num(cs.gamma[t]) + "\n";
        }
        const auto& known = olg::data::canonical_countries();
        if (std::find(known.begin(), known.end(), cs.name) != known.end()) {
            any_canonical = true;
            const auto ca = olg::data::canonical_alpha(cs.name);
            const auto cb = olg::data::canonical_beta(cs.name);
            const auto cg = olg::data::canonical_gamma(cs.name);
            for (std::size_t t = 0; t < cs.alpha.size() && t < ca.size(); ++t)
                diff += cs.name + ",alpha," + std::to_string(t) + "," + num(cs.alpha[t]) + "," +
                        num(ca[t]) + "," + num(std::fabs(cs.alpha[t] - ca[t])) + "\n";
            for (std::size_t t = 0; t < cs.beta.size() && t < cb.size(); ++t)
                diff += cs.name + ",beta," + std::to_string(t) + "," + num(cs.beta[t]) + "," +
                        num(cb[t]) + "," + num(std::fabs(cs.beta[t] - cb[t])) + "\n";
            for (std::size_t t = 0; t < cs.gamma.size() && t < cg.size(); ++t)
                diff += cs.name + ",gamma," + std::to_string(t) + "," + num(cs.gamma[t]) + "," +
                        num(cg[t]) + "," + num(std::fabs(cs.gamma[t] - cg[t])) + "\n";
        }
        j[cs.name] = {{"H", cs.cohort_sizes}, {"e", cs.endowments},    {"alpha", cs.alpha},
                      {"beta", cs.beta},      {"gamma", cs.gamma}};
    }
    if (wants(cfg, "csv")) {
        write_file(cfg, "table1.csv", t1);
        write_file(cfg, "table2.csv", t2);
        write_file(cfg, "table3.csv", t3);
        if (any_canonical) write_file(cfg, "series_diff.csv", diff);
    }
    if (wants(cfg, "json")) write_file(cfg, "series.json", j.dump(2));
    std::cout << "series: wrote tables for " << j.size() << " countries to " << cfg.out_dir
              << "\n";
    return exit_ok;
}

int cmd_bounds(const RunConfig& cfg) {
    const auto inputs = resolve_inputs(cfg);
    std::string csv = "country,t,alpha_tilde,gamma,theta_lower_bound\n";
    json j;
    for (const auto& in : inputs) {
        const auto at = pipeline_alpha_tilde(in.alpha);
        json col = json::array();
        for (std::size_t t = 0; t < 3; ++t) {
            const double g = in.gamma.at(2 * t);
            const double b = olg::tails::theta_lower_bound(cfg.phi, at[t], g);
            csv += in.name + "," + std::to_string(t) + "," + num(at[t]) + "," + num(g) + "," +
                   num(b) + "\n";
            col.push_back(b);
        }
        j[in.name] = col;
    }
    if (wants(cfg, "csv")) write_file(cfg, "bounds.csv", csv);
    if (wants(cfg, "json")) write_file(cfg, "bounds.json", j.dump(2));
    std::cout << "bounds: wrote theta lower bounds (phi=" << cfg.phi << ") for " << j.size()
              << " countries\n";
    return exit_ok;
}

int cmd_tail(const RunConfig& cfg) {
    const auto inputs = resolve_inputs(cfg);
    std::string csv = "country,alpha_tau,theta_tau,lambda3,a3_lo,a3_hi,prone_to_savings\n";
    std::string fig = "country,a3,t,rate\n";
    json j;
    const int horizon = 21;
    for (const auto& in : inputs) {
        const auto tail = make_tail(cfg, in);
        const double l3 = olg::tails::lambda3(tail.alpha_tau, tail.theta_tau);
        const double hi = olg::tails::a3_upper_bound(tail);
        csv += in.name + "," + num(tail.alpha_tau) + "," + num(tail.theta_tau) + "," + num(l3) +
               ",-1," + num(hi) + "," + (olg::tails::prone_to_savings_tail(tail) ? "1" : "0") +
               "\n";
        std::vector<SvgSeries> chart;
        std::vector<double> samples{0.0};  // the flat alpha-mode series
        for (int k = 1; k <= 9; ++k)
            samples.push_back(-1.0 + static_cast<double>(k) * (hi + 1.0) / 10.0);
        std::sort(samples.begin(), samples.end());
        for (const double a3 : samples) {
            const std::array<double, 3> modes{0.0, 1.0 / (1.0 + a3), a3 / (1.0 + a3)};
            const auto p = olg::tails::tail_price_sequence(tail, modes, horizon);
            SvgSeries s;
            s.label = "a3=" + num(a3).substr(0, 7);
            for (int t = 0; t + 1 < horizon; ++t) {
                const double rate = p[static_cast<std::size_t>(t)] /
                                    p[static_cast<std::size_t>(t) + 1];
                fig += in.name + "," + num(a3) + "," + std::to_string(t) + "," + num(rate) + "\n";
                s.x.push_back(t);
                s.y.push_back(rate);
            }
            chart.push_back(std::move(s));
        }
        j[in.name] = {{"lambda3", l3},
                      {"a3_interval", {-1.0, hi}},
                      {"prone_to_savings", olg::tails::prone_to_savings_tail(tail)}};
        if (wants(cfg, "svg"))
            write_file(cfg, "fig2_" + in.name + ".svg",
                       render_line_chart("tail return rates: " + in.name, chart));
    }
    if (wants(cfg, "csv")) {
        write_file(cfg, "tail.csv", csv);
        write_file(cfg, "fig2.csv", fig);
    }
    if (wants(cfg, "json")) write_file(cfg, "tail.json", j.dump(2));
    std::cout << "tail: wrote tail characterization for " << j.size() << " countries\n";
    return exit_ok;
}

namespace {

std::string sweep_csv(const olg::solver::SweepResult& res) {
    std::string csv = "a3,feasible,r0,r1,r2,r3,r4,r5,r6,r7,r8,stddev,max_residual\n";
    for (const auto& c : res.candidates) {
        csv += num(c.a3);
        csv += c.feasible ? ",1" : ",0";
        if (c.feasible) {
            for (double r : c.rates) csv += "," + num(r);
            csv += "," + num(c.rate_stddev) + "," +
                   num(*std::max_element(c.residuals.begin(), c.residuals.end()));
        } else {
            csv += ",,,,,,,,,,,";
        }
        csv += "\n";
    }
    return csv;
}

}  // namespace

int cmd_sweep(const RunConfig& cfg) {
    const auto inputs = resolve_inputs(cfg);
    json j;
    for (const auto& in : inputs) {
        const auto tail = make_tail(cfg, in);
        const auto econ = make_econ(cfg, in);
        const auto res = olg::solver::sweep(econ, tail, cfg.grid_step, cfg.jobs);

        std::string intervals = "lo,hi\n";
        json jiv = json::array();
        for (const auto& iv : res.intervals) {
            intervals += num(iv.lo) + "," + num(iv.hi) + "\n";
            jiv.push_back({iv.lo, iv.hi});
        }
        json sel;
        std::string fig = "a3,t,rate,selected\n";
        std::size_t feasible_count = 0;
        for (const auto& c : res.candidates) feasible_count += c.feasible ? 1 : 0;
        if (feasible_count > 0) {
            const auto& best = olg::solver::select_min_variance(res.candidates);
            sel = {{"a3", best.a3},
                   {"rate_stddev", best.rate_stddev},
                   {"max_residual",
                    *std::max_element(best.residuals.begin(), best.residuals.end())}};
            // Figure series: a thin sample of feasible candidates plus the
            // minimum-variance one.
            const std::size_t stride = std::max<std::size_t>(1, feasible_count / 12);
            std::size_t seen = 0;
            std::vector<SvgSeries> chart;
            for (const auto& c : res.candidates) {
                if (!c.feasible) continue;
                const bool pick = (seen % stride == 0) || c.a3 == best.a3;
                ++seen;
                if (!pick) continue;
                SvgSeries s;
                s.label = "a3=" + num(c.a3).substr(0, 8);
                for (std::size_t t = 0; t < c.rates.size(); ++t) {
                    fig += num(c.a3) + "," + std::to_string(t) + "," + num(c.rates[t]) + "," +
                           (c.a3 == best.a3 ? "1" : "0") + "\n";
                    s.x.push_back(static_cast<double>(t));
                    s.y.push_back(c.rates[t]);
                }
                chart.push_back(std::move(s));
            }
            if (wants(cfg, "svg"))
                write_file(cfg, "fig3_" + in.name + ".svg",
                           render_line_chart("return rates by a3: " + in.name, chart));
            std::cout << "sweep " << in.name << ": " << res.intervals.size()
                      << " feasible interval(s), min-variance a3=" << num(best.a3) << "\n";
        } else {
            std::cout << "sweep " << in.name << ": empty feasible set\n";
        }
        if (wants(cfg, "csv")) {
            write_file(cfg, "sweep_" + in.name + ".csv", sweep_csv(res));
            write_file(cfg, "intervals_" + in.name + ".csv", intervals);
            write_file(cfg, "fig3_" + in.name + ".csv", fig);
        }
        j[in.name] = {{"intervals", jiv}, {"selected", sel}};
    }
    if (wants(cfg, "json")) write_file(cfg, "sweep.json", j.dump(2));
    return exit_ok;
}

int cmd_design(const RunConfig& cfg) {
    const auto inputs = resolve_inputs(cfg);
    json j;
    std::string fig = "country,t,rate,gamma\n";
    std::vector<SvgSeries> chart;
    for (const auto& in : inputs) {
        const auto tail = make_tail(cfg, in);
        const auto econ = make_econ(cfg, in);
        const auto res = olg::solver::sweep(econ, tail, cfg.grid_step, cfg.jobs);
        const olg::solver::EquilibriumCandidate* best = nullptr;
        try {
            best = &olg::solver::select_min_variance(res.candidates);
        } catch (const olg::solver::no_equilibrium_error&) {
            std::cerr << "design " << in.name << ": no feasible equilibrium\n";
            return exit_no_equilibrium;
        }

        const auto sizes = olg::design::extend_sizes(in.sizes, in.alpha.at(4), tail.alpha_tau);
        const auto endow = olg::design::consistent_endowments(econ, tail, sizes, in.e0);
        const auto design = olg::design::build_design(*best, econ, tail, sizes, endow);

        std::string csv = "generation,s1,s2,s3,sigma_paper,contribution_paid,replacement\n";
        for (std::size_t t = 0; t < design.generations.size(); ++t) {
            const auto& g = design.generations[t];
            csv += std::to_string(t) + "," + num(g.savings[0]) + "," + num(g.savings[1]) + "," +
                   num(g.savings[2]) + "," + num(g.sigma_paper) + "," + num(g.contribution_paid) +
                   "," + num(g.replacement) + "\n";
        }
        std::string bal = "period,balance_residual\n";
        for (std::size_t k = 0; k < design.balance_residuals.size(); ++k)
            bal += std::to_string(k + 2) + "," + num(design.balance_residuals[k]) + "\n";

        // Finite-horizon optimality diagnostic over the solved window plus
        // the analytic tail limit rate.
        std::vector<double> rates = best->rates;
        std::vector<double> dsizes = sizes;
        for (int k = 0; k < 12; ++k) {
            rates.push_back(tail.alpha_tau);
            dsizes.push_back(dsizes.back() * tail.alpha_tau);
        }
        double alpha_min = tail.alpha_tau;
        for (double a : in.alpha) alpha_min = std::min(alpha_min, a);
        const auto cass = olg::design::cass_diagnostic(rates, dsizes, alpha_min);

        SvgSeries sr, sg;
        sr.label = in.name + " r_t";
        sg.label = in.name + " gamma_t";
        for (std::size_t t = 0; t < best->rates.size(); ++t) {
            const double g = t < 5 ? in.gamma[t] : in.gamma[4];
            fig += in.name + "," + std::to_string(t) + "," + num(best->rates[t]) + "," + num(g) +
                   "\n";
            sr.x.push_back(static_cast<double>(t));
            sr.y.push_back(best->rates[t]);
            sg.x.push_back(static_cast<double>(t));
            sg.y.push_back(g);
        }
        chart.push_back(sr);
        chart.push_back(sg);

        if (wants(cfg, "csv")) {
            write_file(cfg, "design_" + in.name + ".csv", csv);
            write_file(cfg, "balance_" + in.name + ".csv", bal);
        }
        j[in.name] = {
            {"a3", best->a3},
            {"rate_stddev", best->rate_stddev},
            {"cass_verdict", cass.verdict == olg::design::CassVerdict::optimal_side
                                 ? "optimal-side"
                                 : "suboptimal-side"},
            {"max_balance_residual",
             *std::max_element(design.balance_residuals.begin(), design.balance_residuals.end())}};
        std::cout << "design " << in.name << ": a3=" << num(best->a3)
                  << " max balance residual=" << num(j[in.name]["max_balance_residual"].get<double>())
                  << "\n";
    }
    if (wants(cfg, "csv")) write_file(cfg, "fig4.csv", fig);
    if (wants(cfg, "svg"))
        write_file(cfg, "fig4.svg", render_line_chart("minimum-variance rates vs gamma", chart));
    if (wants(cfg, "json")) write_file(cfg, "design.json", j.dump(2));
    return exit_ok;
}

int cmd_simple(const RunConfig& cfg) {
    cfg.validate();
    std::string trace = "alpha,seed,depth,rate,delta\n";
    std::string sens = "alpha,t,formula,finite_difference,rel_error\n";
    json j;
    const std::vector<double> alphas{0.5, 1.0, 2.0};
    const std::vector<double> seeds{0.1, 1.0, 10.0};
    for (double a : alphas) {
        olg::simple::SimpleEconomy econ;
        econ.alpha = {a};
        for (double seed : seeds) {
            const auto conv = olg::simple::optimal_first_rate(econ, seed, 1e-12, 80);
            trace += num(a) + "," + num(seed) + "," + std::to_string(conv.depth) + "," +
                     num(conv.rate) + "," + num(conv.delta) + "\n";
        }
        for (int t = 1; t <= 6; ++t) {
            const double formula = olg::simple::sensitivity(a, t);
            // Central difference of the backward iteration in alpha_t.
            const double h = 1e-6 * a;
            const int depth = 80 + t;
            auto perturbed = [&](double bump) {
                olg::simple::SimpleEconomy pe;
                pe.alpha.assign(static_cast<std::size_t>(depth) + 1, a);
                pe.alpha[static_cast<std::size_t>(t)] = a + bump;
                return olg::simple::backward_rate(pe, depth, a);
            };
            const double fd = (perturbed(h) - perturbed(-h)) / (2.0 * h);
            sens += num(a) + "," + std::to_string(t) + "," + num(formula) + "," + num(fd) + "," +
                    num(std::fabs(fd - formula) / formula) + "\n";
        }
        j[num(a)] = {{"limit", a}};
    }
    if (wants(cfg, "csv")) {
        write_file(cfg, "simple_trace.csv", trace);
        write_file(cfg, "simple_sensitivity.csv", sens);
    }
    if (wants(cfg, "json")) write_file(cfg, "simple.json", j.dump(2));
    std::cout << "simple: wrote convergence trace and sensitivity table\n";
    return exit_ok;
}

}  // namespace paygo
