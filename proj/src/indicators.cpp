// SPDX-License-Identifier: Apache-2.0

#include "mobility/indicators.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace mobility {

std::int64_t nearest_rank_percentile(std::vector<std::int64_t> values, std::int64_t num, std::int64_t den) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  const auto n = static_cast<std::int64_t>(values.size());
  std::int64_t rank = (num * n + den - 1) / den;  // ceil(num/den * n), 1-based
  rank = std::clamp<std::int64_t>(rank, 1, n);
  auto kth = values.begin() + (rank - 1);
  std::nth_element(values.begin(), kth, values.end());
  return *kth;
}

const Baseline* Baselines::find(const CellKey& key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? nullptr : &it->second;
}

const Baseline& Baselines::at(const CellKey& key) const {
  const Baseline* b = find(key);
  if (!b) {
    throw std::out_of_range("no baseline for cell (" + key.field_id + ", " + std::to_string(key.year) + ", " +
                            std::string(to_string(key.doc_type)) + ")");
  }
  return *b;
}

std::optional<CellKey> cell_of(const PublicationRecord& record) {
  if (!is_citable(record.doc_type)) return std::nullopt;
  return CellKey{record.field_id, record.year, record.doc_type};
}

void BaselineBuilder::add(const PublicationRecord& record) {
  if (auto key = cell_of(record)) citations_[*key].push_back(record.citation_count);
}

void BaselineBuilder::merge(const BaselineBuilder& other) {
  for (const auto& [key, values] : other.citations_) {
    auto& mine = citations_[key];
    mine.insert(mine.end(), values.begin(), values.end());
  }
}

Baselines BaselineBuilder::finish() const {
  Baselines out;
  for (const auto& [key, values] : citations_) {
    Baseline b;
    b.n = values.size();
    const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
    b.mean_citations = static_cast<double>(total) / static_cast<double>(b.n);
    b.p90 = nearest_rank_percentile(values, 9, 10);
    b.max_citations = *std::max_element(values.begin(), values.end());
    out.cells_.emplace(key, b);
  }
  return out;
}

Baselines build_baselines(std::span<const PublicationRecord> records) {
  BaselineBuilder builder;
  for (const auto& r : records) builder.add(r);
  return builder.finish();
}

double normalized_citation_score(std::int64_t citations, const Baseline& baseline) {
  if (baseline.all_uncited()) return 1.0;
  return static_cast<double>(citations) / baseline.mean_citations;
}

double normalized_citation_score(const PublicationRecord& record, const Baselines& baselines) {
  auto key = cell_of(record);
  if (!key) throw std::invalid_argument("publication '" + record.pub_id + "' is not an article or review");
  return normalized_citation_score(record.citation_count, baselines.at(*key));
}

void IndicatorAccumulator::add(const PublicationRecord& record) {
  auto key = cell_of(record);
  if (!key) {
    for (const auto& a : record.authorships) totals_[a.author_id];
    return;
  }
  const Baseline& baseline = baselines_->at(*key);
  const double ncs = normalized_citation_score(record.citation_count, baseline);
  const bool top = is_highly_cited(record.citation_count, baseline);
  for (const auto& a : record.authorships) {
    auto& t = totals_[a.author_id];
    ++t.papers;
    t.ncs_sum += ncs;
    if (top) ++t.highly_cited;
  }
}

std::vector<IndicatorSet> IndicatorAccumulator::finish() const {
  std::vector<IndicatorSet> out;
  out.reserve(totals_.size());
  for (const auto& [author, t] : totals_) {
    IndicatorSet s;
    s.author_id = author;
    s.pub_count = t.papers;
    if (t.papers > 0) {
      s.mncs = t.ncs_sum / t.papers;
      s.hcp_share = static_cast<double>(t.highly_cited) / t.papers;
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const IndicatorSet& a, const IndicatorSet& b) { return a.author_id < b.author_id; });
  return out;
}

std::vector<IndicatorSet> researcher_indicators(std::span<const PublicationRecord> records, const Baselines& baselines) {
  IndicatorAccumulator acc(baselines);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

std::string_view to_string(IndicatorGroup group) {
  switch (group) {
    case IndicatorGroup::all: return "all";
    case IndicatorGroup::mobile: return "mobile";
    case IndicatorGroup::not_mobile: return "not-mobile";
    case IndicatorGroup::migrant: return "migrant";
    case IndicatorGroup::traveler_directional: return "traveler-directional";
    case IndicatorGroup::traveler_non_directional: return "traveler-non-directional";
  }
  return "all";
}

namespace {

constexpr std::array<IndicatorGroup, 6> kGroups = {
    IndicatorGroup::all,     IndicatorGroup::mobile,
    IndicatorGroup::not_mobile, IndicatorGroup::migrant,
    IndicatorGroup::traveler_directional, IndicatorGroup::traveler_non_directional};

constexpr int kBinCount = 11;  // 1..10 and >10

bool in_group(IndicatorGroup g, MobilityClass cls) {
  switch (g) {
    case IndicatorGroup::all: return true;
    case IndicatorGroup::mobile: return is_mobile(cls);
    case IndicatorGroup::not_mobile: return cls == MobilityClass::not_mobile;
    case IndicatorGroup::migrant: return cls == MobilityClass::migrant;
    case IndicatorGroup::traveler_directional: return cls == MobilityClass::traveler_directional;
    case IndicatorGroup::traveler_non_directional: return cls == MobilityClass::traveler_non_directional;
  }
  return false;
}

struct BinTotals {
  std::size_t n = 0;
  double hcp = 0.0;
  double mncs = 0.0;
};

}  // namespace

std::vector<BinRow> bin_by_pubcount(std::span<const IndicatorSet> indicators, std::span<const ResearcherProfile> profiles) {
  std::unordered_map<std::string_view, MobilityClass> class_of;
  class_of.reserve(profiles.size());
  for (const auto& p : profiles) class_of.emplace(p.author_id, p.cls);

  std::array<std::array<BinTotals, kGroups.size()>, kBinCount> totals{};
  for (const auto& s : indicators) {
    if (s.pub_count <= 0) continue;
    auto it = class_of.find(s.author_id);
    if (it == class_of.end()) throw std::invalid_argument("no mobility class for author '" + s.author_id + "'");
    const int bin = std::min(s.pub_count, kBinCount) - 1;
    for (std::size_t g = 0; g < kGroups.size(); ++g) {
      if (!in_group(kGroups[g], it->second)) continue;
      auto& t = totals[bin][g];
      ++t.n;
      t.hcp += s.hcp_share.value_or(0.0);
      t.mncs += s.mncs.value_or(0.0);
    }
  }

  std::vector<BinRow> rows;
  rows.reserve(kBinCount * kGroups.size());
  for (int bin = 0; bin < kBinCount; ++bin) {
    for (std::size_t g = 0; g < kGroups.size(); ++g) {
      const auto& t = totals[bin][g];
      BinRow row;
      row.bin = bin + 1 < kBinCount ? std::to_string(bin + 1) : ">10";
      row.group = kGroups[g];
      row.n = t.n;
      if (t.n > 0) {
        row.mean_hcp_share = t.hcp / static_cast<double>(t.n);
        row.mean_mncs = t.mncs / static_cast<double>(t.n);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace mobility
