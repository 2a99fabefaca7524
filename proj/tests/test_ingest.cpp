// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "mobility/ingest.hpp"

using namespace mobility;

namespace {

ViolationKind kind_of(std::string_view line) {
  try {
    parse_record(line, 7);
  } catch (const RecordError& e) {
    CHECK(e.line() == 7);
    return e.kind();
  }
  FAIL("record was accepted: " << line);
  return ViolationKind::malformed_json;
}

const char* kGood =
    R"({"pub_id":"W1","year":2010,"doc_type":"article","field":"chem","citations":4,)"
    R"("authors":[{"id":"a1","countries":["es"," gb "]},{"id":"a2","countries":["US"]}]})";

}  // namespace

TEST_CASE("country codes normalize and pack") {
  CHECK(Country::of(" es ").code() == "ES");
  CHECK_FALSE(Country::parse("ESP"));
  CHECK_FALSE(Country::parse("E1"));
  CHECK_THROWS_AS(Country::of(""), std::invalid_argument);
  CHECK(is_iso3166_alpha2(Country::of("GB")));
  CHECK_FALSE(is_iso3166_alpha2(Country::of("XX")));

  auto s = CountrySet::of({"GB", "ES", "GB"});
  CHECK(s.size() == 2);
  CHECK(s.join() == "ES;GB");
  CHECK(CountrySet::parse_joined("ES;GB") == s);
  CHECK(CountrySet::parse_joined("").empty());
  CHECK(set_difference(s, CountrySet::of({"ES"})) == CountrySet::of({"GB"}));
  CHECK(set_intersection(s, CountrySet::of({"ES", "US"})) == CountrySet::of({"ES"}));
  CHECK(set_union(s, CountrySet::of({"US", "AT", "FR"})).join() == "AT;ES;FR;GB;US");
  CHECK(CountrySet::of({"ES"}).is_subset_of(s));
  CHECK_FALSE(s.intersects(CountrySet::of({"US"})));
}

TEST_CASE("year windows") {
  CHECK(parse_year_window("2008-2015")->first == 2008);
  CHECK(parse_year_window("2010")->last == 2010);
  CHECK_FALSE(parse_year_window("2015-2008"));
  CHECK_FALSE(parse_year_window("20x0"));
  YearWindow w;
  CHECK(w.contains(2008));
  CHECK(w.contains(2015));
  CHECK_FALSE(w.contains(2016));
}

TEST_CASE("parse_record reads a well-formed line") {
  auto r = parse_record(kGood, 1);
  CHECK(r.pub_id == "W1");
  CHECK(r.year == 2010);
  CHECK(r.doc_type == DocType::article);
  CHECK(r.field_id == "chem");
  CHECK(r.citation_count == 4);
  REQUIRE(r.authorships.size() == 2);
  CHECK(r.authorships[0].countries.join() == "ES;GB");
  CHECK(parse_record(serialize_record(r)) == r);
}

TEST_CASE("parse_record ignores unknown fields, nested or not") {
  auto r = parse_record(
      R"({"x":{"a":[1,{"b":2}]},"pub_id":"W1","year":2010,"doc_type":"review","field":"f","citations":0,)"
      R"("authors":[{"id":"a","orcid":{"v":1},"countries":["FR"],"extra":[["x"]]}],"tail":null})");
  CHECK(r.doc_type == DocType::review);
  CHECK(r.authorships.at(0).countries.join() == "FR");
}

TEST_CASE("parse_record names the violation") {
  CHECK(kind_of("{not json") == ViolationKind::malformed_json);
  CHECK(kind_of("[1,2]") == ViolationKind::malformed_json);
  CHECK(kind_of(R"({"pub_id":"W"} trailing)") == ViolationKind::malformed_json);
  CHECK(kind_of(R"({"year":2010,"doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::missing_field);
  CHECK(kind_of(R"({"pub_id":"W","year":"2010","doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::wrong_type);
  CHECK(kind_of(R"({"pub_id":"W","year":2010.5,"doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::wrong_type);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"poster","field":"f","citations":1,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::bad_doc_type);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":-1,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::negative_citations);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":1,"authors":[]})") ==
        ViolationKind::empty_authors);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":[]}]})") ==
        ViolationKind::empty_countries);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":["Spain"]}]})") ==
        ViolationKind::bad_country_code);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":["ES"]},{"id":"a","countries":["FR"]}]})") ==
        ViolationKind::duplicate_authorship);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":1,"authors":[{"countries":["ES"]}]})") ==
        ViolationKind::missing_field);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":1,"authors":["a"]})") ==
        ViolationKind::wrong_type);
  CHECK(kind_of(R"({"pub_id":"","year":2010,"doc_type":"article","field":"f","citations":1,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::missing_field);
  CHECK(kind_of(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":18446744073709551615,"authors":[{"id":"a","countries":["ES"]}]})") ==
        ViolationKind::wrong_type);
  CHECK(kind_of(std::string_view("{\"pub_id\":\"W\"}\0x", 16)) == ViolationKind::malformed_json);
}

TEST_CASE("error messages carry line and field") {
  try {
    parse_record(R"({"pub_id":"W","year":2010,"doc_type":"article","field":"f","citations":"many","authors":[]})", 12);
    FAIL("expected an error");
  } catch (const RecordError& e) {
    CHECK(std::string(e.what()).find("line 12") != std::string::npos);
    CHECK(e.field() == "citations");
  }
}

TEST_CASE("validate_corpus counts by kind and keeps valid records") {
  using fixtures::paper;
  std::vector<PublicationRecord> recs = {
      paper("p1", "a", 2010, {"ES"}),
      paper("p1", "b", 2011, {"ES"}),  // duplicate id
      paper("p2", "a", 2007, {"ES"}),  // out of window
      paper("p3", "a", 2012, {"XX"}),  // flagged, kept
  };
  auto v = validate_corpus(recs);
  CHECK(v.records.size() == 2);
  CHECK(v.report.count(ViolationKind::duplicate_pub_id) == 1);
  CHECK(v.report.count(ViolationKind::out_of_window) == 1);
  CHECK(v.report.count(ViolationKind::unknown_country) == 1);
  CHECK(v.report.total_errors() == 2);
  CHECK(v.report.records_read() == 4);
  CHECK(v.report.records_accepted() == 2);
  CHECK(v.report.details().at(0).line == 2);
}

TEST_CASE("report merge is order independent") {
  ValidationReport a, b;
  a.record({3, ViolationKind::out_of_window, "year", "x"});
  b.record({1, ViolationKind::malformed_json, "", "y"});
  b.count_record(false);
  auto ab = a;
  ab.merge(b);
  auto ba = b;
  ba.merge(a);
  CHECK(ab == ba);
  CHECK(ab.total_violations() == 2);
}

TEST_CASE("CorpusReader streams, skipping blanks, strict and lenient") {
  fixtures::TempDir dir("ingest");
  const auto path = dir / "c.jsonl";
  {
    std::ofstream out(path);
    out << kGood << "\n\n   \n";
    out << "{oops}\n";
    out << serialize_record(fixtures::paper("W2", "a1", 2011, {"ES"})) << "\r\n";
  }
  SUBCASE("lenient") {
    CorpusReader reader(path, {YearWindow{}, Strictness::lenient});
    std::vector<std::string> ids;
    reader.for_each([&](const PublicationRecord& r) { ids.push_back(r.pub_id); });
    CHECK(ids == std::vector<std::string>{"W1", "W2"});
    CHECK(reader.report().count(ViolationKind::malformed_json) == 1);
    CHECK(reader.report().details().at(0).line == 4);
    CHECK(reader.lines_read() == 5);
  }
  SUBCASE("strict") {
    CorpusReader reader(path, {YearWindow{}, Strictness::strict});
    PublicationRecord r;
    CHECK(reader.next(r));
    CHECK_THROWS_AS(reader.next(r), RecordError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(CorpusReader(dir / "nope.jsonl", {}), IoError); }
}
