// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mobility/country.hpp"
#include "mobility/record.hpp"

namespace mobility {

/// Affiliation pattern of one researcher-year.
///   single:   one country across every publication of the year
///   co:       some publication lists two or more countries
///   multiple: two publications carry different country sets
struct AffiliationInstance {
  CountrySet countries;  // union over the year's publications
  bool has_co = false;
  bool has_multi = false;

  bool is_single() const { return countries.size() == 1; }
  friend bool operator==(const AffiliationInstance&, const AffiliationInstance&) = default;
};

/// Throws std::invalid_argument on an empty multiset or an empty member set.
AffiliationInstance classify_affiliation_instance(std::span<const CountrySet> paper_country_sets);

/// Incremental form of classify_affiliation_instance: feed one paper's
/// country set at a time, in any order, and read the same flags back.
class AffiliationAccumulator {
 public:
  void add(const CountrySet& paper_countries);
  const AffiliationInstance& instance() const { return instance_; }
  bool empty() const { return instance_.countries.empty(); }

 private:
  AffiliationInstance instance_;
};

struct YearProfile {
  int year = 0;
  CountrySet countries;
  bool has_co = false;
  bool has_multi = false;
  int pubs_all = 0;
  int pubs_citable = 0;

  bool is_single() const { return countries.size() == 1; }
  friend bool operator==(const YearProfile&, const YearProfile&) = default;
};

struct Trajectory {
  std::string author_id;
  std::vector<YearProfile> profiles;  // strictly increasing years

  int first_year() const { return profiles.front().year; }
  const CountrySet& origin_countries() const { return profiles.front().countries; }
  CountrySet linked_countries() const;
  int pubs_all() const;
  int pubs_citable() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Folds publication records into per-author year summaries. Memory grows
/// with the number of distinct (author, year) pairs, never with the number
/// of publications.
class TrajectoryBuilder {
 public:
  void add(const PublicationRecord& record);

  /// Adds one author's participation directly; `add` calls this per authorship.
  void add_authorship(const std::string& author_id, int year, DocType doc_type, const CountrySet& countries);

  std::size_t author_count() const { return authors_.size(); }

  /// Hands each trajectory to `fn` in author_id order, releasing the
  /// author's summaries as it goes. Leaves the builder empty.
  void drain(const std::function<void(Trajectory&&)>& fn);

  /// Trajectories sorted by author_id. Leaves the builder empty.
  std::vector<Trajectory> finish();

 private:
  struct YearState {
    int year = 0;
    AffiliationAccumulator affiliation;
    int pubs_all = 0;
    int pubs_citable = 0;
  };
  std::unordered_map<std::string, std::vector<YearState>> authors_;
};

std::vector<Trajectory> build_trajectories(std::span<const PublicationRecord> records);

/// Years since first publication (0 in the first tracked year). Throws
/// std::domain_error when observation_year precedes the first publication.
int academic_age(const Trajectory& trajectory, int observation_year);

}  // namespace mobility
