// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "mobility/aggregate.hpp"
#include "mobility/classify.hpp"
#include "mobility/events.hpp"
#include "mobility/indicators.hpp"
#include "mobility/ingest.hpp"
#include "mobility/trajectory.hpp"

namespace mobility {

struct StreamStats {
  ValidationReport report;
  std::uint64_t links = 0;  // author-paper pairs folded into trajectories
  std::uint64_t researchers = 0;
  std::uint64_t author_years = 0;
  std::array<std::uint64_t, 4> tallies{};  // indexed by MobilityClass
};

using ResearcherSink = std::function<void(const Trajectory&, const EventLog&, const ResearcherProfile&)>;

/// Reads a JSONL corpus once, folds it into per-author-year summaries and
/// hands every researcher to `sink` in author_id order. The raw records are
/// never held; each trajectory is released once the sink returns.
StreamStats classify_corpus(const std::filesystem::path& path, const IngestOptions& ingest,
                            const EventOptions& events, const ResearcherSink& sink);

/// In-memory equivalent of classify_corpus for already validated records.
std::vector<ResearcherProfile> classify_records(std::span<const PublicationRecord> records,
                                                const EventOptions& events = {});

struct CorpusIndicators {
  ValidationReport report;
  Baselines baselines;
  std::vector<IndicatorSet> indicators;
};

/// Two passes over the corpus: cell baselines first, then per-author sums.
CorpusIndicators indicators_for_corpus(const std::filesystem::path& path, const IngestOptions& ingest);

/// Peak resident set size of this process in bytes, 0 when unavailable.
std::uint64_t peak_rss_bytes();

}  // namespace mobility
