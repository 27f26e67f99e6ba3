#include "olg/data.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace olg::data {

namespace {

// name -> { H_t, e_t } rows. Keeping published values in code lets the
// canonical path run without touching the filesystem.
struct Table1 {
    std::vector<double> H;
    std::vector<double> e;
};

const std::map<std::string, Table1>& table1() {
    static const std::map<std::string, Table1> t{
        {"brazil", {{20, 36, 56, 65, 57, 47}, {2603, 6472, 6817, 9435}}},
        {"china", {{180, 291, 439, 406, 318, 190}, {241, 436, 2237, 10573}}},
        {"india", {{122, 193, 320, 455, 484, 427}, {313, 394, 756, 1806}}},
        // The 29469 entry reads the source's "29.469" as a thousands
        // separator; magnitude continuity with the neighbouring values.
        {"italy", {{15, 16, 17, 14, 12, 9}, {9731, 21901, 32609, 29469}}},
        {"us", {{48, 71, 83, 91, 97, 95}, {18899, 30930, 48379, 59194}}},
    };
    return t;
}

struct Table23 {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
};

const std::map<std::string, Table23>& table23() {
    static const std::map<std::string, Table23> t{
        {"brazil",
         {{1.78, 1.58, 1.16, 0.87, 0.82}, {2.49, 1.05, 1.38}, {4.42, 1.67, 1.61, 1.21, 1.14}}},
        {"china",
         {{1.62, 1.51, 0.92, 0.78, 0.60}, {1.81, 5.13, 4.73}, {2.93, 7.75, 4.37, 3.71, 2.82}}},
        {"india",
         {{1.58, 1.66, 1.42, 1.06, 0.88}, {1.26, 1.92, 2.39}, {1.99, 3.18, 3.39, 2.54, 2.10}}},
        {"italy",
         {{1.07, 1.09, 0.80, 0.87, 0.79}, {2.25, 1.49, 0.90}, {2.41, 1.62, 0.72, 0.78, 0.71}}},
        {"us",
         {{1.49, 1.17, 1.10, 1.06, 0.98}, {1.64, 1.56, 1.22}, {2.44, 1.83, 1.34, 1.29, 1.20}}},
    };
    return t;
}

const Table23& lookup23(const std::string& country) {
    const auto it = table23().find(country);
    if (it == table23().end()) throw ingest_error("unknown country: " + country);
    return it->second;
}

std::string trim(const std::string& s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return {b, e};
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ingest_error(where + "malformed number '" + s + "'");
    }
    if (pos != s.size()) throw ingest_error(where + "malformed number '" + s + "'");
    return v;
}

int parse_period(const std::string& s, const std::string& where) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ingest_error(where + "malformed period '" + s + "'");
    }
    if (pos != s.size()) throw ingest_error(where + "malformed period '" + s + "'");
    return v;
}

}  // namespace

void derive_series(CountrySeries& cs) {
    if (cs.cohort_sizes.size() < 2) throw ingest_error(cs.name + ": need at least two cohorts");
    if (cs.endowments.size() < 2) throw ingest_error(cs.name + ": need at least two endowments");
    cs.alpha.clear();
    cs.beta.clear();
    cs.gamma.clear();
    for (std::size_t t = 0; t + 1 < cs.cohort_sizes.size(); ++t)
        cs.alpha.push_back(cs.cohort_sizes[t + 1] / cs.cohort_sizes[t]);
    for (std::size_t t = 0; t + 1 < cs.endowments.size(); ++t)
        cs.beta.push_back(cs.endowments[t + 1] / cs.endowments[t]);
    // GDP per capita forecast keeps the last observed growth rate.
    while (cs.beta.size() < cs.alpha.size()) cs.beta.push_back(cs.beta.back());
    for (std::size_t t = 0; t < cs.alpha.size(); ++t) cs.gamma.push_back(cs.alpha[t] * cs.beta[t]);
}

std::vector<CountrySeries> ingest(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ingest_error("empty input");
    ++line_no;
    if (trim(lower(line)) != "country,t,h_millions,gdp_pc")
        throw ingest_error("line 1: expected header country,t,H_millions,gdp_pc");

    struct Raw {
        std::map<int, double> H;
        std::map<int, double> e;
    };
    std::vector<std::string> order;
    std::map<std::string, Raw> rows;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string at = "line " + std::to_string(line_no) + ": ";
        if (trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string country, t_str, h_str, e_str, extra;
        if (!std::getline(ss, country, ',') || !std::getline(ss, t_str, ',') ||
            !std::getline(ss, h_str, ','))
            throw ingest_error(at + "malformed row");
        std::getline(ss, e_str, ',');
        if (std::getline(ss, extra, ',')) throw ingest_error(at + "too many fields");
        country = lower(trim(country));
        if (country.empty()) throw ingest_error(at + "empty country");
        const int t = parse_period(trim(t_str), at);
        const double H = parse_number(trim(h_str), at);
        if (t < 0) throw ingest_error(at + "negative period");
        if (!(H > 0.0)) throw ingest_error(at + "non-positive cohort size");
        if (rows.find(country) == rows.end()) order.push_back(country);
        auto& raw = rows[country];
        if (!raw.H.emplace(t, H).second) throw ingest_error(at + "duplicate period");
        e_str = trim(e_str);
        if (!e_str.empty() && e_str != "-") {
            const double e = parse_number(e_str, at);
            if (!(e > 0.0)) throw ingest_error(at + "non-positive endowment");
            raw.e.emplace(t, e);
        }
    }

    std::vector<CountrySeries> out;
    for (const auto& name : order) {
        const auto& raw = rows[name];
        CountrySeries cs;
        cs.name = name;
        for (int t = 0; t < static_cast<int>(raw.H.size()); ++t) {
            const auto it = raw.H.find(t);
            if (it == raw.H.end()) throw ingest_error(name + ": gap in cohort periods at t=" +
                                                      std::to_string(t));
            cs.cohort_sizes.push_back(it->second);
        }
        for (int t = 0; t < static_cast<int>(raw.e.size()); ++t) {
            const auto it = raw.e.find(t);
            if (it == raw.e.end())
                throw ingest_error(name + ": gap in endowment periods at t=" + std::to_string(t));
            cs.endowments.push_back(it->second);
        }
        derive_series(cs);
        out.push_back(std::move(cs));
    }
    return out;
}

std::vector<CountrySeries> ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ingest_error("cannot open " + path);
    return ingest(in);
}

std::string to_csv(const std::vector<CountrySeries>& series) {
    std::string out = "country,t,H_millions,gdp_pc\n";
    char buf[128];
    for (const auto& cs : series) {
        for (std::size_t t = 0; t < cs.cohort_sizes.size(); ++t) {
            if (t < cs.endowments.size())
                std::snprintf(buf, sizeof buf, "%s,%zu,%.12g,%.12g\n", cs.name.c_str(), t,
                              cs.cohort_sizes[t], cs.endowments[t]);
            else
                std::snprintf(buf, sizeof buf, "%s,%zu,%.12g,\n", cs.name.c_str(), t,
                              cs.cohort_sizes[t]);
            out += buf;
        }
    }
    return out;
}

std::string to_json(const std::vector<CountrySeries>& series) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& cs : series) {
        j.push_back({{"country", cs.name},
                     {"H", cs.cohort_sizes},
                     {"e", cs.endowments},
                     {"alpha", cs.alpha},
                     {"beta", cs.beta},
                     {"gamma", cs.gamma}});
    }
    return j.dump(2);
}

const std::vector<std::string>& canonical_countries() {
    static const std::vector<std::string> c{"brazil", "china", "india", "italy", "us"};
    return c;
}

std::vector<double> canonical_cohorts(const std::string& country) {
    const auto it = table1().find(country);
    if (it == table1().end()) throw ingest_error("unknown country: " + country);
    return it->second.H;
}

std::vector<double> canonical_endowments(const std::string& country) {
    const auto it = table1().find(country);
    if (it == table1().end()) throw ingest_error("unknown country: " + country);
    return it->second.e;
}

std::vector<double> canonical_alpha(const std::string& country) { return lookup23(country).alpha; }
std::vector<double> canonical_beta(const std::string& country) { return lookup23(country).beta; }
std::vector<double> canonical_gamma(const std::string& country) { return lookup23(country).gamma; }

std::vector<CountrySeries> bundled_series() {
    std::vector<CountrySeries> out;
    for (const auto& name : canonical_countries()) {
        CountrySeries cs;
        cs.name = name;
        cs.cohort_sizes = canonical_cohorts(name);
        cs.endowments = canonical_endowments(name);
        derive_series(cs);
        out.push_back(std::move(cs));
    }
    return out;
}

}  // namespace olg::data
