// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mobility/mobility_class.hpp"
#include "mobility/record.hpp"
#include "mobility/trajectory.hpp"

namespace mobility {

/// Synthetic cohort parameters. class_mix is indexed by MobilityClass
/// (not-mobile, migrant, traveler-directional, traveler-non-directional).
struct SynthConfig {
  std::uint64_t n_researchers = 1000;
  std::array<double, 4> class_mix{0.963, 0.010, 0.013, 0.014};
  YearWindow window{};
  int country_pool = 40;
  /// Tracked years beyond the template minimum: each extra year is kept
  /// with this probability (geometric count, capped by the window).
  double extra_year_prob = 0.45;
  /// Papers per tracked year are 1 + Geometric(papers_per_year_p).
  double papers_per_year_p = 0.65;
  /// Share of multi-country years written as one co-affiliated paper rather
  /// than separate single-country papers.
  double co_affiliation_prob = 0.5;
  double citable_share = 0.85;
  double review_share = 0.1;
  int fields = 12;
  double citation_mean = 8.0;
  /// Authors packed onto one publication record (1 = solo papers).
  int authors_per_paper = 1;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

/// Reads any subset of the fields from a JSON object; unspecified fields
/// keep their defaults. Throws std::invalid_argument on bad input.
SynthConfig synth_config_from_json(const std::string& text);
std::string synth_config_to_json(const SynthConfig& config);

struct PlantedResearcher {
  std::string author_id;
  MobilityClass cls = MobilityClass::not_mobile;
  CountrySet origin;
  std::vector<CountryRole> roles;  // sorted

  friend bool operator==(const PlantedResearcher&, const PlantedResearcher&) = default;
};

struct GroundTruth {
  std::vector<PlantedResearcher> researchers;  // generation order == author_id order

  std::array<std::uint64_t, 4> tallies() const;
};

/// Substream seed for researcher `index`; independent of how researchers are
/// partitioned across workers.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

std::string synth_author_id(std::uint64_t index);

/// Streams a planted cohort. Each researcher's records come from a
/// class-specific template under which the planted class is exactly the
/// class the classifier detects.
class CohortGenerator {
 public:
  using RecordSink = std::function<void(const PublicationRecord&)>;
  using TruthSink = std::function<void(const PlantedResearcher&)>;

  explicit CohortGenerator(SynthConfig config);

  void run(const RecordSink& records, const TruthSink& truth);

 private:
  struct Slot {
    std::string author_id;
    int year;
    CountrySet countries;
    DocType doc_type;
    std::string field_id;
    std::int64_t citations;
  };

  PlantedResearcher plant(std::uint64_t index, std::vector<Slot>& slots) const;
  void place(Slot slot, const RecordSink& records);
  void flush_all(const RecordSink& records);
  void emit(PublicationRecord record, const RecordSink& records);

  SynthConfig config_;
  std::vector<Country> pool_;
  std::uint64_t next_pub_ = 0;
  std::unordered_map<int, std::vector<PublicationRecord>> open_papers_;
};

struct Cohort {
  std::vector<PublicationRecord> records;
  GroundTruth truth;
};

Cohort generate_cohort(const SynthConfig& config);

/// Author -> first year of the second fragment.
struct SplitPlan {
  std::unordered_map<std::string, int> boundary;

  /// Identity that owns `author_id`'s authorship in `year` after splitting.
  std::string identity(const std::string& author_id, int year) const;
};

/// Each author with at least two tracked years is split with probability
/// split_prob at a tracked-year boundary drawn uniformly. Decisions hash the
/// author id with the seed, so they do not depend on record order.
/// The per-author decision behind plan_splits: the boundary year, or
/// nullopt when the author stays whole.
std::optional<int> split_boundary(const Trajectory& trajectory, double split_prob, std::uint64_t seed);
SplitPlan plan_splits(std::span<const Trajectory> trajectories, double split_prob, std::uint64_t seed);

PublicationRecord apply_split(PublicationRecord record, const SplitPlan& plan);

/// Reassigns affected authors' publications to two fresh identities,
/// "<id>~1" before the boundary year and "<id>~2" from it on.
std::vector<PublicationRecord> split_perturbation(std::span<const PublicationRecord> records, double split_prob,
                                                  std::uint64_t seed);

/// Splits one author at `boundary_year` (first year of the second identity).
std::vector<PublicationRecord> split_author_at(std::span<const PublicationRecord> records, const std::string& author_id,
                                               int boundary_year);

}  // namespace mobility
