#include <doctest.h>

#include <sstream>

#include "boat/ingest.hpp"
#include "boat/schema.hpp"

using namespace boat;

namespace {

const char* kFixture =
    "Discharge Year,Hospital County,Facility Name,Age Group,CCS Diagnosis Description,"
    "CCS Procedure Description,Total Costs\n"
    "2009,Bronx,Hospital A,0 to 17,MOOD DISORDERS,NO PROC,\"$1,200.50\"\n"
    "2014,Kings,Hospital B,0 to 17,LIVEBORN,NO PROC,300.00\n"
    "2014,Bronx,Hospital A,18 to 29,PNEUMONIA,NO PROC,450\n"
    "2009,Queens,Hospital C,70 or Older,MOOD DISORDERS,NO PROC,99.99\n";

std::pair<Frame, ParseReport> parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(default_schema(), in);
}

}  // namespace

TEST_CASE("schema: bundled default binds all seven roles") {
  auto schema = default_schema();
  for (const char* role : kRequiredRoles) CHECK(schema.field_for_role(role) != nullptr);
  CHECK(schema.fields.size() == 7);
}

TEST_CASE("schema: missing role is named in the error") {
  std::string doc = "[field]\nname = Discharge Year\ntype = year\nrole = year\n";
  CHECK_THROWS_WITH_AS(load_schema(doc), doctest::Contains("missing-role"), Error);
}

TEST_CASE("schema: duplicate field names rejected") {
  std::string doc = default_schema_text();
  doc += "\n[field]\nname = Total Costs\ntype = money\n";
  CHECK_THROWS_WITH_AS(load_schema(doc), doctest::Contains("duplicate-field"), Error);
}

TEST_CASE("schema: syntax errors carry the line") {
  CHECK_THROWS_WITH_AS(load_schema("[field]\nwhat\n"), doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(load_schema("[weird]\n"), doctest::Contains("schema-syntax"), Error);
}

TEST_CASE("parse_stream: clean fixture") {
  auto [frame, report] = parse_text(kFixture);
  CHECK(report.rows_read == 4);
  CHECK(report.rows_ok == 4);
  CHECK(report.rows_quarantined == 0);
  CHECK(frame.row_count() == 4);
  CHECK(frame.column("Total Costs").as_int(0) == 120050);
  CHECK(frame.column("Total Costs").as_int(3) == 9999);
  CHECK(frame.column("CCS Diagnosis Description").as_text(1) == "LIVEBORN");
  CHECK(frame.role_column("cost") == "Total Costs");
}

TEST_CASE("parse_stream: bad cost quarantines the row") {
  std::string text = kFixture;
  text += "2014,Bronx,Hospital A,0 to 17,ASTHMA,NO PROC,abc\n";
  auto [frame, report] = parse_text(text);
  CHECK(report.rows_read == 5);
  CHECK(report.rows_ok == 4);
  CHECK(report.rows_quarantined == 1);
  CHECK(report.errors_by_field.at("Total Costs") == 1);
  CHECK(frame.row_count() == 4);
  REQUIRE(report.first_errors.size() == 1);
  CHECK(report.first_errors[0].field == "Total Costs");
  CHECK(report.first_errors[0].raw_value == "abc");
  CHECK(report.first_errors[0].line == 6);
}

TEST_CASE("parse_stream: a row can have several bad fields") {
  std::string text = kFixture;
  text += ",Bronx,Hospital A,0 to 17,ASTHMA,NO PROC,-5\n";
  auto [frame, report] = parse_text(text);
  CHECK(report.rows_quarantined == 1);
  CHECK(report.errors_by_field.at("Discharge Year") == 1);
  CHECK(report.errors_by_field.at("Total Costs") == 1);
  std::size_t total = 0;
  for (const auto& [_, n] : report.errors_by_field) total += n;
  CHECK(total >= report.rows_quarantined);
}

TEST_CASE("parse_stream: year outside [1990, 2100] is rejected") {
  std::string text = kFixture;
  text += "1850,Bronx,Hospital A,0 to 17,ASTHMA,NO PROC,5\n";
  auto [frame, report] = parse_text(text);
  CHECK(report.rows_quarantined == 1);
  CHECK(report.errors_by_field.at("Discharge Year") == 1);
}

TEST_CASE("parse_stream: missing header column is fatal") {
  std::istringstream in("Discharge Year,Hospital County\n2009,Bronx\n");
  CHECK_THROWS_WITH_AS(parse_stream(default_schema(), in), doctest::Contains("header-mismatch"), Error);
}

TEST_CASE("parse_stream: header aliases are honored") {
  std::string text = kFixture;
  auto pos = text.find("Discharge Year");
  text.replace(pos, 14, "Discharge Yr");
  auto [frame, report] = parse_text(text);
  CHECK(report.rows_ok == 4);
  // column keeps its canonical schema name
  CHECK(frame.has_column("Discharge Year"));
}

TEST_CASE("parse_stream: extra columns pass through as text") {
  std::string text =
      "Discharge Year,Hospital County,Facility Name,Age Group,CCS Diagnosis Description,"
      "CCS Procedure Description,Total Costs,Length of Stay\n"
      "2009,Bronx,Hospital A,0 to 17,MOOD DISORDERS,NO PROC,10.00,120 +\n";
  auto [frame, report] = parse_text(text);
  CHECK(report.rows_ok == 1);
  CHECK(frame.column("Length of Stay").as_text(0) == "120 +");
  CHECK(frame.column("Length of Stay").type() == ColumnType::Text);
}

TEST_CASE("parse_stream: empty input after header") {
  auto [frame, report] = parse_text(
      "Discharge Year,Hospital County,Facility Name,Age Group,CCS Diagnosis Description,"
      "CCS Procedure Description,Total Costs\n");
  CHECK(report.rows_read == 0);
  CHECK(report.rows_ok + report.rows_quarantined == report.rows_read);
  CHECK(frame.row_count() == 0);
}

TEST_CASE("parse_stream: nullable county accepts blanks as null") {
  std::string text = kFixture;
  text += "2014,,Hospital Z,0 to 17,ASTHMA,NO PROC,5.00\n";
  auto [frame, report] = parse_text(text);
  CHECK(report.rows_ok == 5);
  CHECK(frame.column("Hospital County").is_null(4));
}

TEST_CASE("parse_stream: accepted rows keep input order") {
  auto [frame, report] = parse_text(kFixture);
  const auto& county = frame.column("Hospital County");
  CHECK(county.as_text(0) == "Bronx");
  CHECK(county.as_text(1) == "Kings");
  CHECK(county.as_text(2) == "Bronx");
  CHECK(county.as_text(3) == "Queens");
}
