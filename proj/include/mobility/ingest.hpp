// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <absl/container/flat_hash_set.h>
#include <vector>

#include "mobility/record.hpp"

namespace mobility {

enum class ViolationKind {
  malformed_json,
  missing_field,
  wrong_type,
  empty_authors,
  empty_countries,
  bad_country_code,
  bad_doc_type,
  negative_citations,
  duplicate_authorship,
  duplicate_pub_id,
  out_of_window,
  unknown_country,
};

std::string_view to_string(ViolationKind kind);

/// Raised by parse_record and by a strict-mode CorpusReader. what() names the
/// offending field and the 1-based line number.
class RecordError : public std::runtime_error {
 public:
  RecordError(ViolationKind kind, std::string field, std::size_t line, const std::string& detail);

  ViolationKind kind() const { return kind_; }
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  ViolationKind kind_;
  std::string field_;
  std::size_t line_;
};

/// Parses one JSONL line, normalizing country codes. Structural checks only;
/// corpus-level rules (window, duplicate ids) belong to CorpusValidator.
PublicationRecord parse_record(std::string_view line, std::size_t line_no = 0);

/// Single-line JSON encoding accepted by parse_record.
std::string serialize_record(const PublicationRecord& record);

struct Violation {
  std::size_t line = 0;
  ViolationKind kind{};
  std::string field;
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Counters per violation kind plus a bounded list of located violations.
/// merge() is associative and commutative.
class ValidationReport {
 public:
  static constexpr std::size_t kMaxDetails = 1000;

  void record(Violation violation);
  void count_record(bool accepted);
  void merge(const ValidationReport& other);

  std::uint64_t count(ViolationKind kind) const;
  std::uint64_t total_violations() const;
  /// Violations that exclude a record (everything except unknown_country).
  std::uint64_t total_errors() const;
  std::uint64_t records_read() const { return records_read_; }
  std::uint64_t records_accepted() const { return records_accepted_; }
  const std::vector<Violation>& details() const { return details_; }

  /// {"records_read":..,"records_accepted":..,"violations":{"kind":n,...}}
  std::string to_json() const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;

 private:
  std::map<ViolationKind, std::uint64_t> counts_;
  std::vector<Violation> details_;
  std::uint64_t records_read_ = 0;
  std::uint64_t records_accepted_ = 0;
};

enum class Strictness { strict, lenient };

struct IngestOptions {
  YearWindow window;
  Strictness strictness = Strictness::strict;
};

/// Corpus-level checks on parsed records: analysis window, pub_id
/// uniqueness, ISO membership of country codes.
class CorpusValidator {
 public:
  explicit CorpusValidator(YearWindow window) : window_(window) {}

  /// Returns true when the record should flow downstream. Throws RecordError
  /// for duplicate pub_ids when `strict` is set; out-of-window records are
  /// excluded in both modes and unknown countries are only flagged.
  bool check(const PublicationRecord& record, std::size_t line, bool strict, ValidationReport& report);

 private:
  YearWindow window_;
  absl::flat_hash_set<std::uint64_t> seen_pub_ids_;  // 64-bit hashes of pub_id
};

struct ValidatedCorpus {
  ValidationReport report;
  std::vector<PublicationRecord> records;
};

/// Lenient validation of an in-memory record stream; line numbers are
/// 1-based positions in `records`.
ValidatedCorpus validate_corpus(std::span<const PublicationRecord> records, YearWindow window = {});

/// Forward-only reader over a JSONL corpus. Holds one line at a time.
class CorpusReader {
 public:
  CorpusReader(const std::filesystem::path& path, IngestOptions options);

  /// Advances to the next valid record. Strict mode throws RecordError on
  /// the first data error; lenient mode skips and counts it.
  bool next(PublicationRecord& out);

  template <typename Fn>
  void for_each(Fn&& fn) {
    PublicationRecord record;
    while (next(record)) fn(record);
  }

  const ValidationReport& report() const { return report_; }
  std::size_t lines_read() const { return line_no_; }

 private:
  std::ifstream in_;
  std::unique_ptr<char[]> buffer_;
  IngestOptions options_;
  CorpusValidator validator_;
  ValidationReport report_;
  std::string line_;
  std::size_t line_no_ = 0;
};

/// Thrown when the corpus file cannot be opened or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mobility
