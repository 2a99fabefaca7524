// SPDX-License-Identifier: Apache-2.0

#include "mobility/pipeline.hpp"

#include <sys/resource.h>

namespace mobility {

StreamStats classify_corpus(const std::filesystem::path& path, const IngestOptions& ingest,
                            const EventOptions& events, const ResearcherSink& sink) {
  StreamStats stats;
  TrajectoryBuilder builder;
  {
    CorpusReader reader(path, ingest);
    reader.for_each([&](const PublicationRecord& record) {
      builder.add(record);
      stats.links += record.authorships.size();
    });
    stats.report = reader.report();
  }
  builder.drain([&](Trajectory&& t) {
    const auto log = detect_transitions(t, events);
    const auto profile = profile_researcher(t, log);
    ++stats.researchers;
    stats.author_years += t.profiles.size();
    ++stats.tallies[static_cast<std::size_t>(profile.cls)];
    if (sink) sink(t, log, profile);
  });
  return stats;
}

std::vector<ResearcherProfile> classify_records(std::span<const PublicationRecord> records,
                                                const EventOptions& events) {
  return profile_researchers(build_trajectories(records), events);
}

CorpusIndicators indicators_for_corpus(const std::filesystem::path& path, const IngestOptions& ingest) {
  CorpusIndicators out;
  BaselineBuilder baseline_builder;
  {
    CorpusReader reader(path, ingest);
    reader.for_each([&](const PublicationRecord& record) { baseline_builder.add(record); });
    out.report = reader.report();
  }
  out.baselines = baseline_builder.finish();
  IndicatorAccumulator acc(out.baselines);
  CorpusReader reader(path, ingest);
  reader.for_each([&](const PublicationRecord& record) { acc.add(record); });
  out.indicators = acc.finish();
  return out;
}

std::uint64_t peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

}  // namespace mobility
