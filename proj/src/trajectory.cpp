// SPDX-License-Identifier: Apache-2.0

#include "mobility/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace mobility {

AffiliationInstance classify_affiliation_instance(std::span<const CountrySet> paper_country_sets) {
  if (paper_country_sets.empty()) throw std::invalid_argument("affiliation instance needs at least one publication");
  AffiliationInstance out;
  for (const auto& set : paper_country_sets) {
    if (set.empty()) throw std::invalid_argument("publication with an empty country set");
    out.countries.insert_all(set);
    if (set.size() >= 2) out.has_co = true;
    if (set != paper_country_sets.front()) out.has_multi = true;
  }
  return out;
}

void AffiliationAccumulator::add(const CountrySet& paper_countries) {
  if (paper_countries.empty()) throw std::invalid_argument("publication with an empty country set");
  // Until has_multi is set every paper seen so far carries the same set,
  // which is then also the union; a paper that differs from the union
  // therefore differs from an earlier paper.
  if (!instance_.countries.empty() && !instance_.has_multi && paper_countries != instance_.countries) {
    instance_.has_multi = true;
  }
  instance_.countries.insert_all(paper_countries);
  if (paper_countries.size() >= 2) instance_.has_co = true;
}

CountrySet Trajectory::linked_countries() const {
  CountrySet out;
  for (const auto& p : profiles) out.insert_all(p.countries);
  return out;
}

int Trajectory::pubs_all() const {
  int n = 0;
  for (const auto& p : profiles) n += p.pubs_all;
  return n;
}

int Trajectory::pubs_citable() const {
  int n = 0;
  for (const auto& p : profiles) n += p.pubs_citable;
  return n;
}

void TrajectoryBuilder::add(const PublicationRecord& record) {
  for (const auto& a : record.authorships) add_authorship(a.author_id, record.year, record.doc_type, a.countries);
}

void TrajectoryBuilder::add_authorship(const std::string& author_id, int year, DocType doc_type,
                                       const CountrySet& countries) {
  auto& years = authors_[author_id];
  auto it = std::find_if(years.begin(), years.end(), [year](const YearState& s) { return s.year == year; });
  if (it == years.end()) {
    years.push_back(YearState{year, {}, 0, 0});
    it = std::prev(years.end());
  }
  it->affiliation.add(countries);
  ++it->pubs_all;
  if (is_citable(doc_type)) ++it->pubs_citable;
}

void TrajectoryBuilder::drain(const std::function<void(Trajectory&&)>& fn) {
  // Map nodes are stable, so ordering pointers to their keys is enough.
  std::vector<const std::string*> keys;
  keys.reserve(authors_.size());
  for (const auto& entry : authors_) keys.push_back(&entry.first);
  std::sort(keys.begin(), keys.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
  for (const std::string* key : keys) {
    auto node = authors_.extract(*key);
    auto& years = node.mapped();
    std::sort(years.begin(), years.end(), [](const YearState& a, const YearState& b) { return a.year < b.year; });
    Trajectory t;
    t.author_id = std::move(node.key());
    t.profiles.reserve(years.size());
    for (const auto& s : years) {
      const auto& inst = s.affiliation.instance();
      t.profiles.push_back(YearProfile{s.year, inst.countries, inst.has_co, inst.has_multi, s.pubs_all, s.pubs_citable});
    }
    fn(std::move(t));
  }
  authors_ = {};
}

std::vector<Trajectory> TrajectoryBuilder::finish() {
  std::vector<Trajectory> out;
  out.reserve(authors_.size());
  drain([&](Trajectory&& t) { out.push_back(std::move(t)); });
  return out;
}

std::vector<Trajectory> build_trajectories(std::span<const PublicationRecord> records) {
  TrajectoryBuilder builder;
  for (const auto& r : records) builder.add(r);
  return builder.finish();
}

int academic_age(const Trajectory& trajectory, int observation_year) {
  if (trajectory.profiles.empty()) throw std::invalid_argument("trajectory without tracked years");
  if (observation_year < trajectory.first_year()) {
    throw std::domain_error("observation year " + std::to_string(observation_year) +
                            " precedes first publication in " + std::to_string(trajectory.first_year()));
  }
  return observation_year - trajectory.first_year();
}

}  // namespace mobility
