// SPDX-License-Identifier: Apache-2.0

#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "mobility/classify.hpp"
#include "mobility/oracle.hpp"

using namespace mobility;

namespace {

std::map<std::string, ResearcherProfile> profiles_by_id(const std::vector<PublicationRecord>& records) {
  std::map<std::string, ResearcherProfile> out;
  for (auto& p : profile_researchers(build_trajectories(records))) out.emplace(p.author_id, p);
  return out;
}

std::vector<CountryRole> roles(std::string_view text) { return parse_roles(text); }

}  // namespace

TEST_CASE("worked examples: two migrants and two directional travelers") {
  const auto p = profiles_by_id(fixtures::four_researchers());
  CHECK(p.at("A").cls == MobilityClass::migrant);
  CHECK(p.at("B").cls == MobilityClass::migrant);
  CHECK(p.at("C").cls == MobilityClass::traveler_directional);
  CHECK(p.at("D").cls == MobilityClass::traveler_directional);

  CHECK(p.at("A").roles == roles("emigrant:GR;emigrant:BE;immigrant:BE;immigrant:GB"));
  CHECK(p.at("B").roles == roles("emigrant:ES;emigrant:GB;immigrant:GB;immigrant:IT"));
  CHECK(p.at("C").roles == roles("outgoing:ES;incoming:DE;incoming:US"));
  CHECK(p.at("D").roles == roles("outgoing:GB;incoming:US;incoming:ES;incoming:FR"));

  CHECK(p.at("C").origin.join() == "ES");
  CHECK(p.at("D").linked_countries.join() == "ES;FR;GB;US");
  CHECK(p.at("B").pubs_citable == 13);
}

TEST_CASE("class precedence") {
  using fixtures::paper;
  SUBCASE("single country throughout") {
    auto p = profiles_by_id({paper("1", "x", 2008, {"ES"}), paper("2", "x", 2012, {"ES"})});
    CHECK(p.at("x").cls == MobilityClass::not_mobile);
    CHECK(p.at("x").roles.empty());
  }
  SUBCASE("one year, one country") {
    CHECK(profiles_by_id({paper("1", "x", 2008, {"ES"})}).at("x").cls == MobilityClass::not_mobile);
  }
  SUBCASE("one year, two countries") {
    CHECK(profiles_by_id({paper("1", "x", 2008, {"ES", "FR"})}).at("x").cls ==
          MobilityClass::traveler_non_directional);
  }
  SUBCASE("origin already holds both countries") {
    auto p = profiles_by_id({paper("1", "x", 2008, {"ES", "FR"}), paper("2", "x", 2009, {"ES"}),
                             paper("3", "x", 2010, {"FR", "ES"})});
    CHECK(p.at("x").cls == MobilityClass::traveler_non_directional);
    CHECK(p.at("x").roles.empty());
  }
  SUBCASE("rupture wins over gains") {
    auto p = profiles_by_id({paper("1", "x", 2008, {"ES"}), paper("2", "x", 2009, {"ES", "FR"}),
                             paper("3", "x", 2010, {"US"})});
    CHECK(p.at("x").cls == MobilityClass::migrant);
    CHECK(p.at("x").roles == roles("emigrant:ES;emigrant:FR;immigrant:FR;immigrant:US"));
  }
  SUBCASE("a migrant who returns is not an emigrant of the home country") {
    auto p = profiles_by_id({paper("1", "x", 2008, {"ES"}), paper("2", "x", 2009, {"FR"}),
                             paper("3", "x", 2010, {"ES"})});
    CHECK(p.at("x").cls == MobilityClass::migrant);
    CHECK(p.at("x").roles == roles("emigrant:FR;immigrant:ES;immigrant:FR"));
  }
  SUBCASE("gap years do not break a trajectory") {
    auto p = profiles_by_id({paper("1", "x", 2008, {"ES"}), paper("2", "x", 2014, {"FR"})});
    CHECK(p.at("x").cls == MobilityClass::migrant);
    EventOptions opts;
    opts.max_gap = 2;
    auto t = build_trajectories(std::vector{paper("1", "x", 2008, {"ES"}), paper("2", "x", 2014, {"FR"})});
    CHECK(profile_researcher(t.at(0), opts).cls == MobilityClass::traveler_directional);
  }
}

TEST_CASE("classify_researcher rejects an empty log") {
  EventLog log;
  log.author_id = "x";
  CHECK_THROWS_AS(classify_researcher(log), std::invalid_argument);
}

TEST_CASE("class and role names round-trip") {
  for (auto cls : kAllClasses) CHECK(parse_mobility_class(to_string(cls)) == cls);
  CHECK_FALSE(parse_mobility_class("tourist"));
  CHECK(join_roles(roles("incoming:US;outgoing:ES")) == "incoming:US;outgoing:ES");
  CHECK_THROWS_AS(parse_roles("incoming-US"), std::invalid_argument);
  CHECK_THROWS_AS(parse_roles("visitor:US"), std::invalid_argument);
  CHECK(is_mobile(MobilityClass::migrant));
  CHECK_FALSE(is_mobile(MobilityClass::not_mobile));
}

TEST_CASE("oracle agrees on the worked examples") {
  for (const auto& t : build_trajectories(fixtures::four_researchers())) {
    CHECK(oracle::classify(t) == profile_researcher(t).cls);
  }
  CHECK(oracle::table_code("C1", "C1*;C2*") == "E5");
  CHECK(oracle::table_code("C1*;C2*", "") == "E7");
  CHECK_FALSE(oracle::table_code("C2", "C1"));
  CHECK(oracle::class_for_code("E3") == MobilityClass::migrant);
  CHECK(oracle::class_for_code("E12") == MobilityClass::traveler_non_directional);
  CHECK_THROWS_AS(oracle::class_for_code("E16"), std::invalid_argument);
}
