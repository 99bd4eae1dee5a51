// boat: command-line front end for the SPARCS discharge analytics
// pipeline. Subcommands reproduce each analysis from a CSV extract or a
// previously ingested snapshot.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boat/analytics.hpp"
#include "boat/engine.hpp"
#include "boat/error.hpp"
#include "boat/ingest.hpp"
#include "boat/report.hpp"
#include "boat/schema.hpp"
#include "boat/snapshot.hpp"
#include "boat/synth.hpp"

namespace fs = std::filesystem;

namespace {

// data errors exit 2, validation errors exit 1
int exit_code_for(const boat::Error& e) {
  const auto& c = e.code();
  if (c == "header-mismatch" || c == "empty-cohort" || c == "empty-column" || c == "empty-result" ||
      c == "snapshot-corrupt")
    return 2;
  return 1;
}

std::string load_text_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw boat::Error("io-error", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

boat::ColumnSchema resolve_schema(const std::string& schema_flag) {
  if (!schema_flag.empty()) return boat::load_schema(load_text_file(schema_flag));
  if (const char* env = std::getenv("BOAT_SCHEMA"); env && *env)
    return boat::load_schema(load_text_file(env));
  return boat::default_schema();
}

void write_parse_report(const boat::ParseReport& report, const fs::path& out_dir) {
  nlohmann::ordered_json j;
  j["rows_read"] = report.rows_read;
  j["rows_ok"] = report.rows_ok;
  j["rows_quarantined"] = report.rows_quarantined;
  j["errors_by_field"] = report.errors_by_field;
  j["first_errors"] = nlohmann::ordered_json::array();
  for (const auto& e : report.first_errors)
    j["first_errors"].push_back({{"line", e.line}, {"field", e.field}, {"raw_value", e.raw_value}});
  std::ofstream out(out_dir / "parse_report.json");
  if (!out) throw boat::Error("io-error", "cannot write parse report");
  out << j.dump(2) << '\n';
}

boat::Frame load_input(const std::string& input, const std::string& schema_flag,
                       const fs::path& out_dir) {
  if (boat::is_snapshot_dir(input)) return boat::read_snapshot(input);
  auto schema = resolve_schema(schema_flag);
  std::ifstream in(input, std::ios::binary);
  if (!in) throw boat::Error("io-error", "cannot open " + input);
  auto [frame, report] = boat::parse_stream(schema, in);
  write_parse_report(report, out_dir);
  return frame;
}

// flag grammar: "field=value", "field in v1|v2", "field between a,b";
// money values are dollars and convert to cents at this boundary.
boat::FilterClause parse_filter_flag(const boat::Frame& frame, const std::string& flag) {
  auto make_num = [&frame](const std::string& field, const std::string& raw) -> std::int64_t {
    const auto& col = frame.column(field);
    if (col.type() == boat::ColumnType::Money) return boat::parse_money(raw);
    auto v = boat::detail::parse_int(raw);
    if (!v) throw boat::Error("bad-filter", "expected a number in filter on '" + field + "'");
    return *v;
  };

  auto between_pos = flag.find(" between ");
  if (between_pos != std::string::npos) {
    auto field = std::string(boat::detail::trim(flag.substr(0, between_pos)));
    auto rest = flag.substr(between_pos + 9);
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw boat::Error("bad-filter", "between needs 'a,b' bounds: " + flag);
    if (frame.column(field).type() == boat::ColumnType::Text)
      throw boat::Error("predicate-type", "'" + field + "' is a text column");
    return boat::FilterClause::between(field,
                                       make_num(field, std::string(boat::detail::trim(rest.substr(0, comma)))),
                                       make_num(field, std::string(boat::detail::trim(rest.substr(comma + 1)))));
  }
  auto in_pos = flag.find(" in ");
  if (in_pos != std::string::npos) {
    auto field = std::string(boat::detail::trim(flag.substr(0, in_pos)));
    auto rest = flag.substr(in_pos + 4);
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, '|')) parts.push_back(std::string(boat::detail::trim(part)));
    if (frame.column(field).type() == boat::ColumnType::Text)
      return boat::FilterClause::one_of(field, std::move(parts));
    std::vector<std::int64_t> nums;
    for (const auto& p : parts) nums.push_back(make_num(field, p));
    return boat::FilterClause::one_of_num(field, std::move(nums));
  }
  auto eq = flag.find('=');
  if (eq == std::string::npos)
    throw boat::Error("bad-filter", "cannot parse filter '" + flag + "'");
  auto field = std::string(boat::detail::trim(flag.substr(0, eq)));
  auto value = std::string(boat::detail::trim(flag.substr(eq + 1)));
  if (frame.column(field).type() == boat::ColumnType::Text)
    return boat::FilterClause::eq(field, value);
  return boat::FilterClause::eq_num(field, make_num(field, value));
}

boat::Predicate parse_filters(const boat::Frame& frame, const std::vector<std::string>& flags) {
  boat::Predicate pred;
  for (const auto& f : flags) pred.push_back(parse_filter_flag(frame, f));
  return pred;
}

std::vector<std::int64_t> parse_years(const std::string& flag) {
  std::vector<std::int64_t> years;
  auto colon = flag.find(':');
  if (colon != std::string::npos) {
    auto lo = boat::detail::parse_int(flag.substr(0, colon));
    auto hi = boat::detail::parse_int(flag.substr(colon + 1));
    if (!lo || !hi || *lo > *hi) throw boat::Error("bad-flag", "bad year range '" + flag + "'");
    for (auto y = *lo; y <= *hi; ++y) years.push_back(y);
    return years;
  }
  std::stringstream ss(flag);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto y = boat::detail::parse_int(part);
    if (!y) throw boat::Error("bad-flag", "bad year '" + part + "'");
    years.push_back(*y);
  }
  return years;
}

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// The document itself stays timestamp-free so identical runs are
// byte-identical; the timestamp goes to a sidecar.
void write_document(const boat::PlotDocument& doc, const fs::path& out_dir, const std::string& name,
                    bool also_csv) {
  fs::create_directories(out_dir);
  {
    std::ofstream out(out_dir / (name + ".json"));
    if (!out) throw boat::Error("io-error", "cannot write " + name + ".json");
    out << boat::serialize_document(doc);
  }
  {
    std::ofstream out(out_dir / (name + ".json.meta"));
    out << "generated_at=" << now_iso8601() << '\n';
  }
  if (also_csv) {
    std::ofstream out(out_dir / (name + ".csv"));
    if (!out) throw boat::Error("io-error", "cannot write " + name + ".csv");
    out << boat::document_to_csv(doc);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"boat: open health discharge data analytics"};
  app.require_subcommand(1);

  std::string input, schema_flag, out_dir;
  std::vector<std::string> filter_flags;
  bool also_csv = false;

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    if (needs_input)
      cmd->add_option("--input", input, "CSV file or snapshot directory")->required();
    cmd->add_option("--schema", schema_flag, "schema file (default: bundled SPARCS schema)");
    cmd->add_option("--out", out_dir, "output directory")->required();
  };

  auto* ingest_cmd = app.add_subcommand("ingest", "parse a CSV into a columnar snapshot");
  add_common(ingest_cmd);

  auto* describe_cmd = app.add_subcommand("describe", "descriptive statistics for a field");
  add_common(describe_cmd);
  std::string field;
  describe_cmd->add_option("--field", field, "column to describe")->required();
  describe_cmd->add_option("--filter", filter_flags, "row filter, repeatable");

  auto* top_cmd = app.add_subcommand("top-costs", "cross-year total-cost ranking by group");
  add_common(top_cmd);
  std::string group_field, years_flag;
  std::size_t top_k = 10, skip_top = 0;
  top_cmd->add_option("--group", group_field, "grouping column")->required();
  top_cmd->add_option("--filter", filter_flags, "row filter, repeatable");
  top_cmd->add_option("--years", years_flag, "year pair, e.g. 2009,2014")->required();
  top_cmd->add_option("--top", top_k, "number of labels to keep");
  top_cmd->add_option("--skip-top", skip_top, "leading labels to drop before taking --top");
  top_cmd->add_flag("--csv", also_csv, "also write a flat CSV of the document");

  auto* trend_cmd = app.add_subcommand("trend", "per-group metric trend across years");
  add_common(trend_cmd);
  std::string metric_flag = "count";
  trend_cmd->add_option("--group", group_field, "grouping column")->required();
  trend_cmd->add_option("--filter", filter_flags, "row filter, repeatable");
  trend_cmd->add_option("--metric", metric_flag, "count|sum|mean")
      ->check(CLI::IsMember({"count", "sum", "mean"}));
  trend_cmd->add_option("--years", years_flag, "year range, e.g. 2009:2014")->required();
  trend_cmd->add_option("--top", top_k, "number of groups to keep");
  trend_cmd->add_flag("--csv", also_csv, "also write a flat CSV of the document");

  auto* cap_cmd = app.add_subcommand("cap", "cost distribution against a cap threshold");
  add_common(cap_cmd);
  std::string threshold_flag, hist_lo_flag = "0", hist_width_flag = "2500";
  std::size_t hist_bins = 60;
  cap_cmd->add_option("--filter", filter_flags, "row filter, repeatable");
  cap_cmd->add_option("--threshold", threshold_flag, "cap threshold in dollars")->required();
  cap_cmd->add_option("--hist-lo", hist_lo_flag, "histogram origin in dollars");
  cap_cmd->add_option("--hist-width", hist_width_flag, "histogram bin width in dollars");
  cap_cmd->add_option("--hist-bins", hist_bins, "number of bins");
  cap_cmd->add_flag("--csv", also_csv, "also write a flat CSV of the document");

  auto* synth_cmd = app.add_subcommand("synth", "generate seeded synthetic SPARCS-like data");
  std::string profile_flag;
  std::optional<std::uint64_t> seed_flag;
  synth_cmd->add_option("--profile", profile_flag, "profile file (default: bundled)");
  synth_cmd->add_option("--seed", seed_flag, "override the profile seed");
  synth_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    fs::create_directories(out_dir);

    if (*synth_cmd) {
      auto profile = profile_flag.empty() ? boat::paper_like_profile()
                                          : boat::load_profile(load_text_file(profile_flag));
      if (seed_flag) profile.seed = *seed_flag;
      std::ofstream csv(fs::path(out_dir) / "data.csv", std::ios::binary);
      if (!csv) throw boat::Error("io-error", "cannot write data.csv");
      auto ledger = boat::generate(profile, csv);
      nlohmann::ordered_json j;
      j["valid_rows"] = ledger.valid_rows;
      j["corrupted_rows"] = ledger.corrupted_rows;
      j["cells"] = nlohmann::ordered_json::array();
      for (const auto& [key, cell] : ledger.per_cell)
        j["cells"].push_back({{"stratum", key.first},
                              {"year", key.second},
                              {"rows", cell.first},
                              {"cost_sum_cents", cell.second}});
      std::ofstream lj(fs::path(out_dir) / "ledger.json");
      lj << j.dump(2) << '\n';
      return 0;
    }

    if (*ingest_cmd) {
      auto schema = resolve_schema(schema_flag);
      std::ifstream in(input, std::ios::binary);
      if (!in) throw boat::Error("io-error", "cannot open " + input);
      auto [frame, report] = boat::parse_stream(schema, in);
      write_parse_report(report, out_dir);
      boat::write_snapshot(frame, out_dir);
      std::cerr << "ingested " << report.rows_ok << " rows, quarantined " << report.rows_quarantined
                << '\n';
      return 0;
    }

    boat::Frame frame = load_input(input, schema_flag, out_dir);
    boat::Predicate pred = parse_filters(frame, filter_flags);
    std::vector<std::string> filter_desc;
    for (const auto& c : pred) filter_desc.push_back(c.describe());

    if (*describe_cmd) {
      auto sliced = boat::filter(frame, pred);
      auto stats = boat::describe(sliced.column(field));
      bool money = sliced.column(field).type() == boat::ColumnType::Money;
      nlohmann::ordered_json j;
      j["field"] = field;
      j["filters"] = filter_desc;
      j["n"] = stats.n;
      j["sum"] = boat::int128_to_string(stats.sum);
      if (money && stats.mean_cents) j["mean_dollars"] = boat::format_money(*stats.mean_cents);
      else if (stats.mean) j["mean"] = *stats.mean;
      if (stats.std_sample) j["std_sample"] = money ? *stats.std_sample / 100.0 : *stats.std_sample;
      if (stats.min) j["min"] = money ? boat::format_money(*stats.min) : std::to_string(*stats.min);
      if (stats.max) j["max"] = money ? boat::format_money(*stats.max) : std::to_string(*stats.max);
      if (stats.median) j["median"] = money ? boat::format_money(*stats.median) : std::to_string(*stats.median);
      std::ofstream out(fs::path(out_dir) / "describe.json");
      out << j.dump(2) << '\n';
      return 0;
    }

    if (*top_cmd) {
      auto years = parse_years(years_flag);
      if (years.size() != 2) throw boat::Error("bad-flag", "top-costs needs exactly two years");
      auto table = boat::cost_comparison(frame, pred, group_field, {years[0], years[1]}, top_k, skip_top);
      auto doc = boat::emit_bar(table);
      doc.source_rows = static_cast<std::int64_t>(frame.row_count());
      doc.filters = filter_desc;
      write_document(doc, out_dir, "top_costs", also_csv);
      return 0;
    }

    if (*trend_cmd) {
      auto years = parse_years(years_flag);
      boat::TrendMetric metric = metric_flag == "count" ? boat::TrendMetric::Count
                               : metric_flag == "sum"   ? boat::TrendMetric::SumCost
                                                        : boat::TrendMetric::MeanCost;
      auto series = boat::trend_by_group(frame, pred, group_field, metric, years, top_k);
      if (series.empty()) throw boat::Error("empty-cohort", "no groups match " + boat::describe_predicate(pred));
      std::string label = metric_flag == "count" ? "cases"
                        : metric_flag == "sum"   ? "total costs"
                                                 : "mean cost per case";
      auto doc = boat::emit_lines(series, metric_flag != "count", label + " by " + group_field);
      doc.source_rows = static_cast<std::int64_t>(frame.row_count());
      doc.filters = filter_desc;
      write_document(doc, out_dir, "trend", also_csv);
      return 0;
    }

    if (*cap_cmd) {
      auto report = boat::cap_analysis(frame, pred, boat::parse_money(threshold_flag),
                                       boat::parse_money(hist_lo_flag),
                                       boat::parse_money(hist_width_flag), hist_bins);
      auto doc = boat::emit_histogram(report);
      doc.source_rows = static_cast<std::int64_t>(frame.row_count());
      doc.filters = filter_desc;
      write_document(doc, out_dir, "cap", also_csv);
      return 0;
    }

    throw boat::Error("bad-flag", "no subcommand selected");
  } catch (const boat::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
