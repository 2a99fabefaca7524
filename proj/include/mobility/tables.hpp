// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mobility/aggregate.hpp"
#include "mobility/classify.hpp"
#include "mobility/events.hpp"
#include "mobility/indicators.hpp"
#include "mobility/synth.hpp"
#include "mobility/trajectory.hpp"

namespace mobility {

enum class OutputFormat { csv, jsonl };

std::optional<OutputFormat> parse_output_format(std::string_view text);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

std::string csv_escape(std::string_view field);
/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line);

using Cell = std::variant<std::monostate, std::string, std::int64_t, double, bool>;

inline Cell optional_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

/// Writes a header-keyed table as CSV (header line first, null = empty
/// field) or as JSONL (one object per row, null = JSON null).
class TableWriter {
 public:
  TableWriter(std::ostream& out, OutputFormat format, std::vector<std::string> header);
  void row(const std::vector<Cell>& cells);
  std::size_t rows_written() const { return rows_; }

 private:
  std::ostream& out_;
  OutputFormat format_;
  std::vector<std::string> header_;
  std::size_t rows_ = 0;
};

// Header constants double as the public column contract.
inline const std::vector<std::string> kTrajectoryColumns = {"author_id", "year", "countries", "has_co",
                                                             "has_multi", "pubs_all", "pubs_citable"};
inline const std::vector<std::string> kEventColumns = {"author_id", "year_from", "year_to", "s_from",
                                                       "s_to", "new", "lost", "reappeared",
                                                       "rupture", "directional", "e_codes"};
inline const std::vector<std::string> kResearcherColumns = {"author_id", "class", "origin", "first_year",
                                                            "pubs_citable", "pubs_all", "roles", "linked"};
inline const std::vector<std::string> kIndicatorColumns = {"author_id", "pub_count", "mncs", "hcp_share"};
inline const std::vector<std::string> kPubcountBinColumns = {"bin", "class", "n", "hcp", "mncs"};
inline const std::vector<std::string> kCountryLongColumns = {"country", "class_or_role", "count"};
inline const std::vector<std::string> kBalanceColumns = {"country", "migrant_balance", "traveler_balance"};
inline const std::vector<std::string> kTruthColumns = {"author_id", "class", "origin", "roles"};

void write_trajectory_rows(TableWriter& w, const Trajectory& t);
/// Transitions in order; a single-year trajectory yields one row carrying
/// its single-point code with an empty year_to.
void write_event_rows(TableWriter& w, const EventLog& log);
void write_researcher_row(TableWriter& w, const ResearcherProfile& p);

void write_researchers(std::ostream& out, std::span<const ResearcherProfile> profiles, OutputFormat format);
/// Reads the CSV written by write_researchers. Throws std::runtime_error
/// naming the line on malformed input.
std::vector<ResearcherProfile> read_researchers(std::istream& in);

void write_indicators(std::ostream& out, std::span<const IndicatorSet> rows, OutputFormat format);
void write_pubcount_bins(std::ostream& out, std::span<const BinRow> rows, OutputFormat format);

/// Long format: one row per (country, key) with a non-zero count. Keys are
/// class names under linkage counting and role names under role counting.
void write_country_long(std::ostream& out, const CountryTable& table, CountingMode mode, OutputFormat format);
/// Wide format: one row per country, one column per class or role.
void write_country_wide(std::ostream& out, std::span<const CountryAggregate> rows, CountingMode mode,
                        OutputFormat format);
void write_balance(std::ostream& out, std::span<const CountryAggregate> rows, OutputFormat format);

void write_truth(std::ostream& out, const GroundTruth& truth);

}  // namespace mobility
