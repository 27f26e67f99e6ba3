#ifndef OLG_DATA_HPP
#define OLG_DATA_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace olg::data {

class ingest_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raw cohort sizes (millions) and per-capita endowments (constant-2015
// currency units) of one country, with the derived growth series. The
// endowment series may stop before the cohort series; beta is extended by
// repeating its last observed value.
struct CountrySeries {
    std::string name;
    std::vector<double> cohort_sizes;  // H_t
    std::vector<double> endowments;    // e_t, possibly shorter than H
    std::vector<double> alpha;         // H_{t+1} / H_t
    std::vector<double> beta;          // e_{t+1} / e_t, extended by its last value
    std::vector<double> gamma;         // alpha_t beta_t
};

// Parses `country,t,H_millions,gdp_pc` rows (gdp_pc may be empty or "-"
// for the forecast periods) and derives the growth series per country.
// Countries are returned in order of first appearance.
std::vector<CountrySeries> ingest(std::istream& in);
std::vector<CountrySeries> ingest_file(const std::string& path);

// Fills alpha/beta/gamma from the raw series.
void derive_series(CountrySeries& cs);

// Round-trip serialization of the raw table in the ingestion format, and
// a JSON export of the derived series.
std::string to_csv(const std::vector<CountrySeries>& series);
std::string to_json(const std::vector<CountrySeries>& series);

// Published tables, served verbatim for bit-stable runs.
const std::vector<std::string>& canonical_countries();
std::vector<double> canonical_cohorts(const std::string& country);     // H_0..H_5
std::vector<double> canonical_endowments(const std::string& country);  // e_0..e_3
std::vector<double> canonical_alpha(const std::string& country);       // alpha_0..alpha_4
std::vector<double> canonical_beta(const std::string& country);        // beta_0..beta_2
std::vector<double> canonical_gamma(const std::string& country);       // gamma_0..gamma_4

// The bundled raw table as a CountrySeries list (same content as the
// repository data file).
std::vector<CountrySeries> bundled_series();

}  // namespace olg::data

#endif
