#include <catch2/catch_amalgamated.hpp>

#include "dualips/io/csv.hpp"
#include "dualips/io/json_io.hpp"

using namespace dualips;

TEST_CASE("doubles survive the 17-significant-digit round trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789012345678, 2.0, 0.30000000000000004}) {
    std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("csv writer pins the dialect") {
  CsvWriter w({"a", "b"});
  w.cell(1.5).cell("x");
  w.end_row();
  w.cell(2LL).cell("y");
  w.end_row();
  CHECK(w.str() == "a,b\n1.5,x\n2,y\n");
}

TEST_CASE("event log CSV round trip is bit-exact") {
  TorusLattice lat = TorusLattice::line(8);
  ProcessParams p;
  p.lambda = 1.0;
  p.delta = 0.5;
  p.lambda_xor = 0.3;
  RatedFamily f = build_2cp_family(p, lat);
  EventLog log = sample_event_log(f, 3.0, 44, 2);
  REQUIRE(log.size() > 0);
  std::string csv = event_log_to_csv(log, f);
  EventLog back = event_log_from_csv(csv, f, 3.0);
  REQUIRE(back.size() == log.size());
  for (std::size_t k = 0; k < log.size(); ++k) {
    CHECK(back.events[k].instance == log.events[k].instance);
    CHECK(back.events[k].time == log.events[k].time);
    CHECK(back.events[k].seq == log.events[k].seq);
  }
  CHECK(event_log_to_csv(back, f) == csv);
}

TEST_CASE("monoid JSON round trip and validation errors") {
  Json good = {{"label", "xor"}, {"size", 2}, {"op_table", {{0, 1}, {1, 0}}}, {"neutral", 0}};
  FiniteMonoid m = monoid_from_json(good);
  CHECK(m.size() == 2);
  CHECK(m.op(1, 1) == 0);

  Json bad = {{"label", "broken"}, {"op_table", {{0, 1}, {0, 1}}}, {"neutral", 0}};
  CHECK_THROWS_WITH(monoid_from_json(bad), Catch::Matchers::ContainsSubstring("NeutralViolated"));
}

TEST_CASE("witness JSON accepts built-in labels and inline monoids") {
  Json j = {{"label", "user_psi_add"},
            {"S", "T_or"},
            {"R", "T_or"},
            {"T", "B01"},
            {"psi", {{0, 0}, {0, 1}}}};
  LoadedWitness lw = witness_from_json(j);
  REQUIRE(lw.result.has_value());
  CHECK(lw.result->label == "user_psi_add");

  Json inline_mon = {{"label", "user_psi1"},
                     {"S", {{"label", "or"}, {"op_table", {{0, 1}, {1, 1}}}, {"neutral", 0}}},
                     {"R", "T_or"},
                     {"T", "T_or"},
                     {"psi", {{0, 0}, {0, 1}}}};
  LoadedWitness lw2 = witness_from_json(inline_mon);
  CHECK(lw2.result.has_value());

  Json constant = {{"S", "U"}, {"R", "U"}, {"T", "M"},
                   {"psi", {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}}};
  LoadedWitness lw3 = witness_from_json(constant);
  REQUIRE(!lw3.result.has_value());
  CHECK(lw3.result.error().condition == 1);
}

TEST_CASE("process JSON") {
  Json j = {{"process", "2cp"},
            {"dim", 1},
            {"lengths", {16}},
            {"rates",
             {{"lambda", 1.0}, {"delta", 0.5}, {"lambda_or", 0.25}, {"delta_xor", 0.75}}}};
  ProcessSpec spec = process_from_json(j);
  CHECK(spec.kind == ProcessKind::TwoCP);
  REQUIRE(spec.lengths == std::vector<int>{16});
  CHECK(spec.params.lambda == 1.0);
  CHECK(spec.params.delta_xor == 0.75);
  CHECK(spec.params.lambda_xor == 0.0);

  Json square = {{"process", "cp"}, {"dim", 2}, {"lengths", {8}}, {"rates", {{"lambda", 2.0}}}};
  ProcessSpec sq = process_from_json(square);
  CHECK(sq.lengths == std::vector<int>{8, 8});

  Json bad = {{"process", "vm"}, {"lengths", {8}}, {"rates", Json::object()}};
  CHECK_THROWS(process_from_json(bad));
}

TEST_CASE("manifest records command, config, seed and version") {
  Json cfg = {{"L", 16}, {"T", 5.0}};
  std::string m = make_manifest("scan", cfg, 7, true);
  Json back = Json::parse(m);
  CHECK(back["command"] == "scan");
  CHECK(back["seed"] == 7);
  CHECK(back["config"]["L"] == 16);
  CHECK(back["evidence_only"] == true);
  CHECK(back.contains("version"));
}
