#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boat/csv.hpp"
#include "boat/error.hpp"
#include "boat/money.hpp"
#include "boat/schema.hpp"

namespace boat {

// Seeded SPARCS-shaped data generator. Output matches the default
// ingest schema header exactly; a ledger records, per stratum and year,
// exactly what was emitted so tests can reconcile pipeline output
// against ground truth.

struct Stratum {
  std::string county;
  std::string facility;
  std::string age_group;
  std::string diagnosis;
  std::string procedure;
  std::vector<std::int64_t> yearly_counts;  // parallel to profile years
  double cost_log_mean = 0.0;   // log of cents
  double cost_log_sigma = 1.0;  // > 0
};

struct CohortProfile {
  std::vector<std::int64_t> years;
  std::vector<Stratum> strata;
  std::uint64_t seed = 0;
  double dirty_row_rate = 0.0;  // in [0, 0.2]
};

struct GenerationLedger {
  // (stratum index, year) -> emitted valid rows and their exact cost sum
  std::map<std::pair<std::size_t, std::int64_t>, std::pair<std::int64_t, Money>> per_cell;
  std::int64_t valid_rows = 0;
  std::int64_t corrupted_rows = 0;

  std::int64_t total_rows() const { return valid_rows + corrupted_rows; }
};

inline void validate_profile(const CohortProfile& profile) {
  if (profile.years.empty()) throw Error("profile-validation", "profile has no years");
  if (profile.dirty_row_rate < 0.0 || profile.dirty_row_rate > 0.2)
    throw Error("profile-validation", "dirty_row_rate must be in [0, 0.2]");
  for (const auto& s : profile.strata) {
    if (s.yearly_counts.size() != profile.years.size())
      throw Error("profile-validation",
                  "stratum '" + s.facility + "' has " + std::to_string(s.yearly_counts.size()) +
                      " counts for " + std::to_string(profile.years.size()) + " years");
    for (auto c : s.yearly_counts)
      if (c < 0) throw Error("profile-validation", "negative case count");
    if (s.cost_log_sigma <= 0.0) throw Error("profile-validation", "cost_log_sigma must be > 0");
  }
}

namespace detail {

// Deterministic uniform in [0,1) and Box-Muller normal, hand-rolled so
// the byte stream does not depend on the standard library's
// distribution algorithms.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double normal(std::mt19937_64& rng, double mean, double sigma) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  double z = std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  return mean + sigma * z;
}

}  // namespace detail

inline GenerationLedger generate(const CohortProfile& profile, std::ostream& out) {
  validate_profile(profile);
  std::mt19937_64 rng(profile.seed);
  GenerationLedger ledger;

  write_csv_row(out, {"Discharge Year", "Hospital County", "Facility Name", "Age Group",
                      "CCS Diagnosis Description", "CCS Procedure Description", "Total Costs"});

  for (std::size_t si = 0; si < profile.strata.size(); ++si) {
    const auto& s = profile.strata[si];
    for (std::size_t yi = 0; yi < profile.years.size(); ++yi) {
      auto year = profile.years[yi];
      auto& cell = ledger.per_cell[{si, year}];
      for (std::int64_t i = 0; i < s.yearly_counts[yi]; ++i) {
        double draw = detail::normal(rng, s.cost_log_mean, s.cost_log_sigma);
        Money cost = static_cast<Money>(std::llround(std::exp(draw)));
        if (cost < 0) cost = 0;
        bool corrupt = profile.dirty_row_rate > 0.0 && detail::uniform01(rng) < profile.dirty_row_rate;
        std::string year_text = std::to_string(year);
        std::string cost_text = format_money(cost);
        if (corrupt) {
          switch (rng() % 3) {
            case 0: cost_text = "N/A"; break;          // non-numeric cost
            case 1: year_text.clear(); break;          // blank year
            case 2: cost_text = "-" + cost_text; break;  // negative cost
          }
          ++ledger.corrupted_rows;
        } else {
          ++cell.first;
          cell.second += cost;
          ++ledger.valid_rows;
        }
        write_csv_row(out, {year_text, s.county, s.facility, s.age_group, s.diagnosis,
                            s.procedure, cost_text});
      }
    }
  }
  return ledger;
}

// ---------------------------------------------------------------------------
// Profile file format: top-level `key = value` lines plus one [stratum]
// section per stratum. Lists are space separated.

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline CohortProfile load_profile(const std::string& document) {
  CohortProfile profile;
  Stratum* current = nullptr;
  std::stringstream in(document);
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string& msg) {
    throw Error("profile-validation", msg + " at line " + std::to_string(line_no));
  };
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = std::string(detail::trim(raw));
    if (line.empty() || line[0] == '#') continue;
    if (line == "[stratum]") {
      profile.strata.emplace_back();
      current = &profile.strata.back();
      continue;
    }
    if (line.front() == '[') fail("unknown section '" + line + "'");
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    auto key = std::string(detail::trim(line.substr(0, eq)));
    auto value = std::string(detail::trim(line.substr(eq + 1)));
    try {
      if (!current) {
        if (key == "seed") profile.seed = std::stoull(value);
        else if (key == "dirty_row_rate") profile.dirty_row_rate = std::stod(value);
        else if (key == "years") {
          for (const auto& t : detail::split_ws(value)) profile.years.push_back(std::stoll(t));
        } else {
          fail("unknown key '" + key + "'");
        }
      } else {
        if (key == "county") current->county = value;
        else if (key == "facility") current->facility = value;
        else if (key == "age_group") current->age_group = value;
        else if (key == "diagnosis") current->diagnosis = value;
        else if (key == "procedure") current->procedure = value;
        else if (key == "counts") {
          for (const auto& t : detail::split_ws(value)) current->yearly_counts.push_back(std::stoll(t));
        } else if (key == "cost_log_mean") {
          current->cost_log_mean = std::stod(value);
        } else if (key == "cost_log_sigma") {
          current->cost_log_sigma = std::stod(value);
        } else {
          fail("unknown key '" + key + "'");
        }
      }
    } catch (const std::invalid_argument&) {
      fail("bad number '" + value + "'");
    } catch (const std::out_of_range&) {
      fail("number out of range '" + value + "'");
    }
  }
  validate_profile(profile);
  return profile;
}

// Bundled profile shaped like the SPARCS analyses: a hip replacement
// cohort whose cost distribution puts the sub-$30,000 fraction near 0.88
// with a mean in the low $20,000s, a mood-disorder county panel with
// distinct growth rates, and a handful of filler strata.
inline const char* paper_like_profile_text() {
  return R"(seed = 20170924
dirty_row_rate = 0
years = 2009 2010 2011 2012 2013 2014

[stratum]
county = Westchester
facility = General Hospital A
age_group = 50 to 69
diagnosis = OSTEOARTHRITIS
procedure = HIP REPLACEMENT, TOTAL AND PARTIAL
counts = 700 720 750 800 830 900
cost_log_mean = 14.60
cost_log_sigma = 0.27

[stratum]
county = Kings
facility = General Hospital B
age_group = 70 or Older
diagnosis = OSTEOARTHRITIS
procedure = HIP REPLACEMENT, TOTAL AND PARTIAL
counts = 500 520 540 560 600 640
cost_log_mean = 14.58
cost_log_sigma = 0.27

[stratum]
county = Westchester
facility = New York Presbyterian
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 520 540 580 620 680 738
cost_log_mean = 13.6
cost_log_sigma = 0.5

[stratum]
county = Westchester
facility = Westchester Medical Center
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 300 330 360 400 440 480
cost_log_mean = 13.5
cost_log_sigma = 0.5

[stratum]
county = Kings
facility = General Hospital B
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 420 430 450 470 500 520
cost_log_mean = 13.4
cost_log_sigma = 0.5

[stratum]
county = Bronx
facility = General Hospital C
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 380 390 400 410 430 450
cost_log_mean = 13.4
cost_log_sigma = 0.5

[stratum]
county = Queens
facility = General Hospital D
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 250 260 280 300 330 360
cost_log_mean = 13.3
cost_log_sigma = 0.5

[stratum]
county = New York
facility = General Hospital E
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 200 210 220 240 260 280
cost_log_mean = 13.3
cost_log_sigma = 0.5

[stratum]
county = Erie
facility = General Hospital F
age_group = 0 to 17
diagnosis = MOOD DISORDERS
procedure = NO PROC
counts = 150 150 160 170 180 190
cost_log_mean = 13.2
cost_log_sigma = 0.5

[stratum]
county = Kings
facility = General Hospital B
age_group = 0 to 17
diagnosis = LIVEBORN
procedure = NO PROC
counts = 900 910 920 930 940 950
cost_log_mean = 13.8
cost_log_sigma = 0.6

[stratum]
county = Queens
facility = General Hospital D
age_group = 0 to 17
diagnosis = PNEUMONIA
procedure = NO PROC
counts = 300 300 310 310 320 320
cost_log_mean = 13.5
cost_log_sigma = 0.5

[stratum]
county = Bronx
facility = General Hospital C
age_group = 0 to 17
diagnosis = ASTHMA
procedure = NO PROC
counts = 280 285 290 300 310 315
cost_log_mean = 13.2
cost_log_sigma = 0.5
)";
}

inline CohortProfile paper_like_profile() { return load_profile(paper_like_profile_text()); }

}  // namespace boat
