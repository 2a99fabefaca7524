// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mobility/classify.hpp"
#include "mobility/record.hpp"

namespace mobility {

/// Normalization cell. Only articles and reviews form cells.
struct CellKey {
  std::string field_id;
  int year = 0;
  DocType doc_type = DocType::article;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct Baseline {
  double mean_citations = 0.0;
  std::int64_t p90 = 0;  // nearest-rank: the ceil(0.9 n)-th smallest count
  std::size_t n = 0;
  std::int64_t max_citations = 0;

  bool all_uncited() const { return max_citations == 0; }
};

/// k-th smallest with k = ceil(num/den * n), computed in integers.
/// Throws std::invalid_argument on an empty sample.
std::int64_t nearest_rank_percentile(std::vector<std::int64_t> values, std::int64_t num, std::int64_t den);

class Baselines {
 public:
  const Baseline* find(const CellKey& key) const;
  /// Throws std::out_of_range for an unknown cell.
  const Baseline& at(const CellKey& key) const;
  std::size_t size() const { return cells_.size(); }
  const std::map<CellKey, Baseline>& cells() const { return cells_; }

 private:
  friend class BaselineBuilder;
  std::map<CellKey, Baseline> cells_;
};

/// Collects citation counts per cell; partial builders merge.
class BaselineBuilder {
 public:
  void add(const PublicationRecord& record);
  void merge(const BaselineBuilder& other);
  Baselines finish() const;

 private:
  std::map<CellKey, std::vector<std::int64_t>> citations_;
};

Baselines build_baselines(std::span<const PublicationRecord> records);

std::optional<CellKey> cell_of(const PublicationRecord& record);

/// citations / cell mean, or 1 when every paper in the cell is uncited.
double normalized_citation_score(std::int64_t citations, const Baseline& baseline);

/// Throws std::invalid_argument for non-citable records and
/// std::out_of_range when the record's cell is missing.
double normalized_citation_score(const PublicationRecord& record, const Baselines& baselines);

/// Top-10% membership is inclusive of the cell's p90.
inline bool is_highly_cited(std::int64_t citations, const Baseline& baseline) { return citations >= baseline.p90; }

struct IndicatorSet {
  std::string author_id;
  int pub_count = 0;  // articles and reviews
  std::optional<double> mncs;
  std::optional<double> hcp_share;

  friend bool operator==(const IndicatorSet&, const IndicatorSet&) = default;
};

/// Full counting: each citable paper contributes once to each of its authors.
class IndicatorAccumulator {
 public:
  explicit IndicatorAccumulator(const Baselines& baselines) : baselines_(&baselines) {}

  void add(const PublicationRecord& record);
  /// Sorted by author_id; authors seen only on non-citable papers get
  /// pub_count 0 and null indicators.
  std::vector<IndicatorSet> finish() const;

 private:
  struct Totals {
    int papers = 0;
    double ncs_sum = 0.0;
    int highly_cited = 0;
  };
  const Baselines* baselines_;
  std::unordered_map<std::string, Totals> totals_;
};

std::vector<IndicatorSet> researcher_indicators(std::span<const PublicationRecord> records, const Baselines& baselines);

/// Researcher groups of the publication-count table.
enum class IndicatorGroup { all, mobile, not_mobile, migrant, traveler_directional, traveler_non_directional };

std::string_view to_string(IndicatorGroup group);

struct BinRow {
  std::string bin;  // "1".."10" or ">10"
  IndicatorGroup group = IndicatorGroup::all;
  std::size_t n = 0;
  std::optional<double> mean_hcp_share;
  std::optional<double> mean_mncs;

  friend bool operator==(const BinRow&, const BinRow&) = default;
};

/// Rows for bins 1..10 and >10 crossed with every IndicatorGroup, bin-major.
/// Researchers with no citable paper are left out. Classes are joined on
/// author_id; an indicator set without a matching profile throws
/// std::invalid_argument.
std::vector<BinRow> bin_by_pubcount(std::span<const IndicatorSet> indicators,
                                    std::span<const ResearcherProfile> profiles);

}  // namespace mobility
