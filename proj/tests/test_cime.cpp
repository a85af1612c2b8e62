#include <doctest.h>

#include "sld/cime.hpp"

#include "fixtures.hpp"

using namespace sld;

TEST_CASE("record fields land in the right slots") {
  ModelStore s = parse_cime(fixtures::kSingleBusFixture);
  REQUIRE(s.records.size() == 7);

  auto recs = s.substation_records("ALPHA");
  REQUIRE(recs.size() == 7);

  const Record& bus = recs[1];
  CHECK(bus.kind == EntityKind::Bus);
  CHECK(bus.id == 11);
  CHECK(bus.name == "MAIN BUS");  // single-quoted name keeps its space
  CHECK(bus.volts == std::vector<double>{110});
  CHECK(bus.nodes == std::vector<long long>{101});
  CHECK(bus.st == "ALPHA");
  CHECK(!bus.closed.has_value());

  const Record& breaker = recs[2];
  CHECK(breaker.kind == EntityKind::Breaker);
  CHECK(breaker.nodes == std::vector<long long>{102, 103});
  REQUIRE(breaker.closed.has_value());
  CHECK(*breaker.closed);

  const Record& line = recs[5];
  CHECK(line.kind == EntityKind::ACLine);
  CHECK(line.nodes == std::vector<long long>{103});  // NULL far terminal dropped
}

TEST_CASE("substation record owns itself") {
  ModelStore s = parse_cime(fixtures::kSingleBusFixture);
  CHECK(s.records[0].kind == EntityKind::Substation);
  CHECK(s.records[0].st == "ALPHA");
  CHECK(s.substation_names() == std::vector<std::string>{"ALPHA"});
}

TEST_CASE("header fields may come in any order") {
  ModelStore s = parse_cime(
      "<Bus>\n"
      "@ st node name volt id\n"
      "# STN 9 B1 110 4\n"
      "</Bus>\n");
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].id == 4);
  CHECK(s.records[0].name == "B1");
  CHECK(s.records[0].volts == std::vector<double>{110});
  CHECK(s.records[0].nodes == std::vector<long long>{9});
  CHECK(s.records[0].st == "STN");
}

TEST_CASE("open and closed switch points") {
  ModelStore s = parse_cime(
      "<Disconnector>\n"
      "@ id name volt node_i node_j point st\n"
      "# 1 D1 110 1 2 0 STN\n"
      "# 2 D2 110 3 4 1 STN\n"
      "</Disconnector>\n");
  REQUIRE(s.records.size() == 2);
  CHECK(*s.records[0].closed == false);
  CHECK(*s.records[1].closed == true);
}

TEST_CASE("three winding transformer carries three voltages and nodes") {
  ModelStore s = parse_cime(
      "<Transformer3W>\n"
      "@ id name volt_i volt_j volt_k node_i node_j node_k st\n"
      "# 7 T3 500 220 35 1 2 3 STN\n"
      "</Transformer3W>\n");
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].volts == std::vector<double>{500, 220, 35});
  CHECK(s.records[0].nodes == std::vector<long long>{1, 2, 3});
}

TEST_CASE("quoted name must end before whitespace") {
  CHECK_THROWS_AS(parse_cime("<Substation>\n@ id name\n# 1 'AB'C\n</Substation>\n"),
                  ParseError);
}

TEST_CASE("error taxonomy") {
  auto kind_of = [](const char* text) {
    try {
      parse_cime(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("expected a parse error");
    return ParseErrorKind::BadRecord;
  };

  CHECK(kind_of("<Bus>\n@ id name volt node st\n# 1 B 110 1 S\n") ==
        ParseErrorKind::UnterminatedBlock);
  CHECK(kind_of("<Bus>\n@ id name volt st\n# 1 B 110 S\n</Bus>\n") ==
        ParseErrorKind::HeaderMismatch);
  CHECK(kind_of("<Bus>\n@ id name volt node st extra\n# 1 B 110 1 S x\n</Bus>\n") ==
        ParseErrorKind::HeaderMismatch);
  CHECK(kind_of("<Windmill>\n@ id name\n# 1 W\n</Windmill>\n") ==
        ParseErrorKind::UnknownEntity);
  CHECK(kind_of("<Bus>\n@ id name volt node st\n# 1 B 110 1 S\n# 1 C 110 2 S\n</Bus>\n") ==
        ParseErrorKind::DuplicateId);
  CHECK(kind_of("<Bus>\n@ id name volt node st\n# 1 B 110 1 S\n</Bus>\n"
                "<Bus>\n@ id name volt node st\n# 2 C 110 2 S\n</Bus>\n") ==
        ParseErrorKind::DuplicateBlock);
  // Token count disagreeing with the header line is a shape error.
  CHECK(kind_of("<Bus>\n@ id name volt node st\n# 1 B 110 1\n</Bus>\n") ==
        ParseErrorKind::HeaderMismatch);
  CHECK(kind_of("<Bus>\n@ id name volt node st\n# 1 B -110 1 S\n</Bus>\n") ==
        ParseErrorKind::BadRecord);
  CHECK(kind_of("<Breaker>\n@ id name volt node_i node_j point st\n# 1 B 110 1 2 2 S\n"
                "</Breaker>\n") == ParseErrorKind::BadRecord);
}

TEST_CASE("same id in different kinds is fine") {
  ModelStore s = parse_cime(
      "<Bus>\n@ id name volt node st\n# 7 B 110 1 S\n</Bus>\n"
      "<Load>\n@ id name volt node st\n# 7 L 110 1 S\n</Load>\n");
  CHECK(s.records.size() == 2);
}

TEST_CASE("all seven fixture models parse") {
  CHECK(parse_cime(fixtures::kSingleBusFixture).records.size() == 7);
  CHECK(parse_cime(fixtures::kDoubleBusFixture).records.size() == 14);
  CHECK(parse_cime(fixtures::kSectionalizerFixture).records.size() == 12);
  CHECK(parse_cime(fixtures::kBypassFixture).records.size() == 13);
  CHECK(parse_cime(fixtures::kBreakerAndHalfFixture).records.size() == 17);
  CHECK(parse_cime(fixtures::kThreeLevelFixture).records.size() == 25);
  CHECK(parse_cime(fixtures::kFiveLevelFixture).records.size() == 16);
}
