// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mobility/events.hpp"
#include "mobility/trajectory.hpp"

using namespace mobility;

namespace {

const Trajectory& find(const std::vector<Trajectory>& ts, const std::string& id) {
  auto it = std::find_if(ts.begin(), ts.end(), [&](const Trajectory& t) { return t.author_id == id; });
  REQUIRE(it != ts.end());
  return *it;
}

YearProfile year(int y, std::initializer_list<std::initializer_list<std::string_view>> papers) {
  AffiliationAccumulator acc;
  int n = 0;
  for (auto p : papers) {
    acc.add(CountrySet::of(p));
    ++n;
  }
  const auto& inst = acc.instance();
  return YearProfile{y, inst.countries, inst.has_co, inst.has_multi, n, n};
}

Trajectory trajectory(std::vector<YearProfile> years) { return Trajectory{"t", std::move(years)}; }

}  // namespace

TEST_CASE("affiliation instances") {
  const auto es = CountrySet::of({"ES"});
  const auto gb = CountrySet::of({"GB"});
  const auto both = CountrySet::of({"ES", "GB"});

  auto single = classify_affiliation_instance(std::vector{es, es});
  CHECK(single.is_single());
  CHECK_FALSE(single.has_co);
  CHECK_FALSE(single.has_multi);

  auto multi = classify_affiliation_instance(std::vector{es, gb});
  CHECK(multi.has_multi);
  CHECK_FALSE(multi.has_co);
  CHECK(multi.countries == both);

  auto co = classify_affiliation_instance(std::vector{both, both});
  CHECK(co.has_co);
  CHECK_FALSE(co.has_multi);

  CHECK_THROWS_AS(classify_affiliation_instance(std::vector<CountrySet>{}), std::invalid_argument);
  CHECK_THROWS_AS(classify_affiliation_instance(std::vector{CountrySet{}}), std::invalid_argument);
}

TEST_CASE("incremental accumulation matches the batch rule in any order") {
  std::mt19937_64 rng(11);
  const std::vector<CountrySet> palette = {CountrySet::of({"ES"}), CountrySet::of({"GB"}), CountrySet::of({"ES", "GB"}),
                                           CountrySet::of({"FR"}), CountrySet::of({"ES", "FR", "GB"})};
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<CountrySet> papers(1 + rng() % 5);
    for (auto& p : papers) p = palette[rng() % palette.size()];
    const auto batch = classify_affiliation_instance(papers);
    std::shuffle(papers.begin(), papers.end(), rng);
    AffiliationAccumulator acc;
    for (const auto& p : papers) acc.add(p);
    REQUIRE(acc.instance() == batch);
  }
}

TEST_CASE("worked examples fold into year profiles") {
  const auto ts = build_trajectories(fixtures::four_researchers());
  REQUIRE(ts.size() == 4);
  CHECK(ts[0].author_id == "A");  // sorted by author id

  const auto& a = find(ts, "A");
  REQUIRE(a.profiles.size() == 7);
  CHECK(a.first_year() == 2008);
  CHECK(a.origin_countries().join() == "GR");
  CHECK(a.profiles[3].countries.join() == "BE;GR");
  CHECK(a.profiles[3].has_multi);
  CHECK_FALSE(a.profiles[3].has_co);
  CHECK(a.profiles[3].pubs_all == 3);
  CHECK(a.linked_countries().join() == "BE;GB;GR");
  CHECK(a.pubs_all() == 13);

  const auto& c = find(ts, "C");
  CHECK(c.profiles[2].countries.join() == "DE;ES;US");
  CHECK(c.profiles[2].has_co);
  CHECK(c.profiles[2].has_multi);

  const auto& d = find(ts, "D");
  CHECK(d.profiles[6].countries.join() == "ES;FR;GB");
  CHECK(d.profiles[6].has_co);
  CHECK_FALSE(d.profiles[6].has_multi);
}

TEST_CASE("non-citable documents count toward pubs_all only") {
  std::vector<PublicationRecord> recs = {fixtures::paper("1", "x", 2010, {"ES"}),
                                         fixtures::paper("2", "x", 2010, {"ES"}, DocType::letter)};
  const auto ts = build_trajectories(recs);
  CHECK(ts.at(0).pubs_all() == 2);
  CHECK(ts.at(0).pubs_citable() == 1);
}

TEST_CASE("academic age") {
  const auto ts = build_trajectories(fixtures::four_researchers());
  CHECK(academic_age(ts[0], 2008) == 0);
  CHECK(academic_age(ts[0], 2014) == 6);
  CHECK_THROWS_AS(academic_age(ts[0], 2007), std::domain_error);
}

TEST_CASE("builder drains in author order and empties") {
  TrajectoryBuilder b;
  for (const auto& r : fixtures::four_researchers()) b.add(r);
  CHECK(b.author_count() == 4);
  std::vector<std::string> seen;
  b.drain([&](Trajectory&& t) { seen.push_back(t.author_id); });
  CHECK(seen == std::vector<std::string>{"A", "B", "C", "D"});
  CHECK(b.author_count() == 0);
}

TEST_CASE("single-year trajectories get a single-point code") {
  CHECK(singleton_code(year(2010, {{"ES"}})) == EventCode::E1);
  CHECK(singleton_code(year(2010, {{"ES"}, {"GB"}})) == EventCode::E6);
  CHECK(singleton_code(year(2010, {{"ES", "GB"}})) == EventCode::E7);
  const auto log = detect_transitions(trajectory({year(2010, {{"ES", "GB"}})}));
  REQUIRE(log.singleton);
  CHECK(log.singleton->code == EventCode::E7);
  CHECK(log.transitions.empty());
}

TEST_CASE("transition sets and predicates") {
  const auto log = detect_transitions(trajectory(
      {year(2008, {{"ES"}}), year(2009, {{"ES"}, {"GB"}}), year(2010, {{"ES"}}), year(2011, {{"ES", "GB"}}),
       year(2012, {{"FR"}})}));
  REQUIRE(log.transitions.size() == 4);
  const auto& t0 = log.transitions[0];
  CHECK(t0.new_countries.join() == "GB");
  CHECK(t0.directional);
  CHECK_FALSE(t0.rupture);
  CHECK(t0.e_codes == EventCodeSet{EventCode::E4});

  const auto& t1 = log.transitions[1];
  CHECK(t1.lost_countries.join() == "GB");
  CHECK(t1.e_codes == EventCodeSet{EventCode::E12});

  // GB returns: not new, so no directionality and no consistent row
  const auto& t2 = log.transitions[2];
  CHECK(t2.reappeared_countries.join() == "GB");
  CHECK(t2.new_countries.empty());
  CHECK_FALSE(t2.directional);
  CHECK(t2.e_codes.empty());

  const auto& t3 = log.transitions[3];
  CHECK(t3.rupture);
  CHECK(t3.directional);
  CHECK(t3.e_codes.empty());  // three countries involved
}

TEST_CASE("C1 is the earlier established country") {
  // GB established before IT; co-affiliation then IT alone drops C1
  const auto log = detect_transitions(
      trajectory({year(2008, {{"GB"}}), year(2009, {{"GB", "IT"}}), year(2010, {{"IT"}})}));
  CHECK(log.transitions[1].e_codes == EventCodeSet{EventCode::E9});

  const auto multi = detect_transitions(
      trajectory({year(2008, {{"GB"}}), year(2009, {{"GB"}, {"IT"}}), year(2010, {{"IT"}})}));
  CHECK(multi.transitions[1].e_codes == EventCodeSet{EventCode::E13});

  // both established together: the retained country is C1
  const auto tie = detect_transitions(trajectory({year(2008, {{"GB", "IT"}}), year(2009, {{"IT"}})}));
  CHECK(tie.transitions[0].e_codes == EventCodeSet{EventCode::E8});
}

TEST_CASE("every taxonomy row is reachable") {
  EventCodeSet hit;
  using Papers = std::vector<std::vector<std::string_view>>;
  const std::vector<Papers> shapes = {
      {{"ES"}}, {{"GB"}}, {{"ES"}, {"GB"}}, {{"ES", "GB"}}};
  for (const auto& s0 : shapes) {
    for (const auto& s1 : shapes) {
      for (const auto& s2 : shapes) {
        auto mk = [](int y, const Papers& papers) {
          AffiliationAccumulator acc;
          for (const auto& p : papers) {
            CountrySet set;
            for (auto code : p) set.insert(Country::of(code));
            acc.add(set);
          }
          const auto& i = acc.instance();
          return YearProfile{y, i.countries, i.has_co, i.has_multi, 1, 1};
        };
        auto t = trajectory({mk(2008, s0), mk(2009, s1), mk(2010, s2)});
        for (const auto& ev : detect_transitions(t).transitions) {
          for (auto c : ev.e_codes.codes()) hit.insert(c);
        }
        auto single = trajectory({mk(2008, s0)});
        hit.insert(detect_transitions(single).singleton->code);
      }
    }
  }
  CHECK(hit.size() == 15);
}

TEST_CASE("max_gap suppresses ruptures across long gaps") {
  auto t = trajectory({year(2008, {{"ES"}}), year(2013, {{"GB"}})});
  CHECK(detect_transitions(t).transitions[0].rupture);
  EventOptions opts;
  opts.max_gap = 3;
  const auto log = detect_transitions(t, opts);
  CHECK_FALSE(log.transitions[0].rupture);
  CHECK(log.transitions[0].directional);  // GB is still new
  CHECK(log.transitions[0].e_codes.empty());
  opts.max_gap = 5;
  CHECK(detect_transitions(t, opts).transitions[0].rupture);
}

TEST_CASE("taxonomy table columns") {
  REQUIRE(event_taxonomy().size() == 15);
  CHECK(event_row(EventCode::E3).rupture);
  CHECK(event_row(EventCode::E3).directional);
  CHECK(event_row(EventCode::E5).directional);
  CHECK_FALSE(event_row(EventCode::E5).rupture);
  for (const auto& row : event_taxonomy()) {
    if (row.code != EventCode::E3) CHECK_FALSE(row.rupture);
  }
  CHECK(EventCodeSet{EventCode::E5, EventCode::E4}.join() == "E4;E5");
}
