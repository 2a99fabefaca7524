// SPDX-License-Identifier: Apache-2.0

#include "mobility/ingest.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#if defined(__SSE4_2__)
#define RAPIDJSON_SSE42
#elif defined(__SSE2__)
#define RAPIDJSON_SSE2
#endif
#include <rapidjson/reader.h>
#include <rapidjson/error/en.h>

#include "json.hpp"

namespace mobility {

using nlohmann::json;

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::malformed_json: return "malformed-json";
    case ViolationKind::missing_field: return "missing-field";
    case ViolationKind::wrong_type: return "wrong-type";
    case ViolationKind::empty_authors: return "empty-authors";
    case ViolationKind::empty_countries: return "empty-countries";
    case ViolationKind::bad_country_code: return "bad-country-code";
    case ViolationKind::bad_doc_type: return "bad-doc-type";
    case ViolationKind::negative_citations: return "negative-citations";
    case ViolationKind::duplicate_authorship: return "duplicate-authorship";
    case ViolationKind::duplicate_pub_id: return "duplicate-pub-id";
    case ViolationKind::out_of_window: return "out-of-window";
    case ViolationKind::unknown_country: return "unknown-country";
  }
  return "unknown";
}

namespace {

std::string describe(std::size_t line, const std::string& field, const std::string& detail) {
  std::string msg = "line " + std::to_string(line);
  if (!field.empty()) msg += ", field '" + field + "'";
  return msg + ": " + detail;
}

[[noreturn]] void fail(ViolationKind kind, std::string field, std::size_t line, const std::string& detail) {
  throw RecordError(kind, std::move(field), line, detail);
}

/// SAX handler that fills a PublicationRecord as the parser walks the line.
/// Unknown keys are skipped whole; a schema violation stops the parse and
/// is reported after Parse returns.
class RecordHandler : public rapidjson::BaseReaderHandler<rapidjson::UTF8<>, RecordHandler> {
 public:
  explicit RecordHandler(PublicationRecord& rec) : rec_(rec) {}

  struct Error {
    ViolationKind kind;
    const char* field;
    std::string detail;
  };
  const std::optional<Error>& error() const { return error_; }

  /// Required-field checks once the whole object has been seen.
  void finish(std::size_t line) const {
    if (!seen_root_) fail(ViolationKind::malformed_json, "", line, "expected a JSON object");
    if (!has_pub_id_) fail(ViolationKind::missing_field, "pub_id", line, "missing required field");
    if (!has_year_) fail(ViolationKind::missing_field, "year", line, "missing required field");
    if (!has_doc_type_) fail(ViolationKind::missing_field, "doc_type", line, "missing required field");
    if (!has_field_) fail(ViolationKind::missing_field, "field", line, "missing required field");
    if (!has_citations_) fail(ViolationKind::missing_field, "citations", line, "missing required field");
    if (!has_authors_) fail(ViolationKind::missing_field, "authors", line, "missing required field");
    if (rec_.authorships.empty()) fail(ViolationKind::empty_authors, "authors", line, "empty author list");
  }

  bool Null() {
    if (state_ == State::skip) return true;
    if (state_ == State::record || state_ == State::author) return true;  // null reads as absent
    return unexpected();
  }
  bool Bool(bool) { return scalar_mismatch(); }
  bool Int(int v) { return integer(v); }
  bool Uint(unsigned v) { return integer(v); }
  bool Int64(std::int64_t v) { return integer(v); }
  bool Uint64(std::uint64_t v) {
    if (v > static_cast<std::uint64_t>(INT64_MAX)) {
      if (state_ == State::skip || (state_ == State::record && key_ == Field::other) ||
          (state_ == State::author && author_key_ == AuthorField::other)) {
        return true;
      }
      if (state_ == State::record && (key_ == Field::year || key_ == Field::citations)) {
        return set_error(ViolationKind::wrong_type, key_name(), "integer out of range");
      }
      return scalar_mismatch();
    }
    return integer(static_cast<std::int64_t>(v));
  }
  bool Double(double) {
    if (state_ == State::record && (key_ == Field::year || key_ == Field::citations)) {
      return set_error(ViolationKind::wrong_type, key_name(), "expected an integer");
    }
    return scalar_mismatch();
  }

  bool String(const char* str, rapidjson::SizeType len, bool) {
    const std::string_view text(str, len);
    switch (state_) {
      case State::skip: return true;
      case State::record:
        switch (key_) {
          case Field::pub_id: return set_string(rec_.pub_id, text, "pub_id", has_pub_id_);
          case Field::field: return set_string(rec_.field_id, text, "field", has_field_);
          case Field::doc_type: {
            if (text.empty()) return set_error(ViolationKind::missing_field, "doc_type", "empty value");
            auto dt = parse_doc_type(text);
            if (!dt) return set_error(ViolationKind::bad_doc_type, "doc_type", "unknown document type '" + std::string(text) + "'");
            rec_.doc_type = *dt;
            has_doc_type_ = true;
            return true;
          }
          case Field::year:
          case Field::citations: return set_error(ViolationKind::wrong_type, key_name(), "expected an integer");
          case Field::authors: return set_error(ViolationKind::wrong_type, "authors", "expected an array");
          case Field::other: return true;
        }
        return true;
      case State::author:
        switch (author_key_) {
          case AuthorField::id: return set_string(author_.author_id, text, "id", has_author_id_);
          case AuthorField::countries: return set_error(ViolationKind::wrong_type, "countries", "expected an array");
          case AuthorField::other: return true;
        }
        return true;
      case State::countries: {
        auto country = Country::parse(text);
        if (!country) {
          return set_error(ViolationKind::bad_country_code, "countries", "invalid country code '" + std::string(text) + "'");
        }
        author_.countries.insert(*country);
        return true;
      }
      default: return scalar_mismatch();
    }
  }

  bool StartObject() {
    switch (state_) {
      case State::top:
        seen_root_ = true;
        state_ = State::record;
        return true;
      case State::skip: ++skip_depth_; return true;
      case State::record:
        if (key_ == Field::other) return begin_skip();
        return set_error(ViolationKind::wrong_type, key_name(), key_ == Field::authors ? "expected an array" : "unexpected object");
      case State::authors:
        author_ = Authorship{};
        has_author_id_ = has_countries_ = false;
        author_key_ = AuthorField::other;
        state_ = State::author;
        return true;
      case State::author:
        if (author_key_ == AuthorField::other) return begin_skip();
        return set_error(ViolationKind::wrong_type, author_key_name(),
                         author_key_ == AuthorField::countries ? "expected an array" : "expected a string");
      case State::countries: return set_error(ViolationKind::wrong_type, "countries", "expected country code strings");
      case State::done: return unexpected();
    }
    return unexpected();
  }

  bool Key(const char* str, rapidjson::SizeType len, bool) {
    const std::string_view k(str, len);
    if (state_ == State::record) {
      key_ = k == "pub_id"      ? Field::pub_id
             : k == "year"      ? Field::year
             : k == "doc_type"  ? Field::doc_type
             : k == "field"     ? Field::field
             : k == "citations" ? Field::citations
             : k == "authors"   ? Field::authors
                                : Field::other;
    } else if (state_ == State::author) {
      author_key_ = k == "id" ? AuthorField::id : k == "countries" ? AuthorField::countries : AuthorField::other;
    }
    return true;
  }

  bool EndObject(rapidjson::SizeType) {
    switch (state_) {
      case State::skip: return end_skip();
      case State::record: state_ = State::done; return true;
      case State::author: {
        if (!has_author_id_) return set_error(ViolationKind::missing_field, "id", "missing required field");
        if (!has_countries_) return set_error(ViolationKind::missing_field, "countries", "missing required field");
        if (author_.countries.empty()) return set_error(ViolationKind::empty_countries, "countries", "empty country set");
        for (const auto& prior : rec_.authorships) {
          if (prior.author_id == author_.author_id) {
            return set_error(ViolationKind::duplicate_authorship, "authors",
                             "author '" + author_.author_id + "' listed twice");
          }
        }
        rec_.authorships.push_back(std::move(author_));
        state_ = State::authors;
        return true;
      }
      default: return unexpected();
    }
  }

  bool StartArray() {
    switch (state_) {
      case State::top: return set_error(ViolationKind::malformed_json, "", "expected a JSON object");
      case State::skip: ++skip_depth_; return true;
      case State::record:
        if (key_ == Field::authors) {
          rec_.authorships.clear();
          has_authors_ = true;
          state_ = State::authors;
          return true;
        }
        if (key_ == Field::other) return begin_skip();
        return set_error(ViolationKind::wrong_type, key_name(), "unexpected array");
      case State::authors: return set_error(ViolationKind::wrong_type, "authors", "expected author objects");
      case State::author:
        if (author_key_ == AuthorField::countries) {
          author_.countries = {};
          has_countries_ = true;
          state_ = State::countries;
          return true;
        }
        if (author_key_ == AuthorField::other) return begin_skip();
        return set_error(ViolationKind::wrong_type, "id", "expected a string");
      case State::countries: return set_error(ViolationKind::wrong_type, "countries", "expected country code strings");
      case State::done: return unexpected();
    }
    return unexpected();
  }

  bool EndArray(rapidjson::SizeType) {
    switch (state_) {
      case State::skip: return end_skip();
      case State::authors: state_ = State::record; return true;
      case State::countries: state_ = State::author; return true;
      default: return unexpected();
    }
  }

 private:
  enum class State { top, record, authors, author, countries, skip, done };
  enum class Field { pub_id, year, doc_type, field, citations, authors, other };
  enum class AuthorField { id, countries, other };

  const char* key_name() const {
    switch (key_) {
      case Field::pub_id: return "pub_id";
      case Field::year: return "year";
      case Field::doc_type: return "doc_type";
      case Field::field: return "field";
      case Field::citations: return "citations";
      case Field::authors: return "authors";
      case Field::other: break;
    }
    return "";
  }
  const char* author_key_name() const { return author_key_ == AuthorField::id ? "id" : "countries"; }

  bool set_error(ViolationKind kind, const char* field, std::string detail) {
    error_ = Error{kind, field, std::move(detail)};
    return false;
  }

  bool unexpected() { return set_error(ViolationKind::malformed_json, "", "unexpected JSON structure"); }

  bool set_string(std::string& dst, std::string_view text, const char* field, bool& flag) {
    if (text.empty()) return set_error(ViolationKind::missing_field, field, "empty value");
    dst.assign(text);
    flag = true;
    return true;
  }

  bool integer(std::int64_t v) {
    switch (state_) {
      case State::skip: return true;
      case State::record:
        if (key_ == Field::year) {
          if (v < -9999 || v > 9999) return set_error(ViolationKind::wrong_type, "year", "year out of range");
          rec_.year = static_cast<int>(v);
          has_year_ = true;
          return true;
        }
        if (key_ == Field::citations) {
          if (v < 0) return set_error(ViolationKind::negative_citations, "citations", "negative citation count");
          rec_.citation_count = v;
          has_citations_ = true;
          return true;
        }
        return scalar_mismatch();
      default: return scalar_mismatch();
    }
  }

  // A scalar of the wrong JSON type for the current position.
  bool scalar_mismatch() {
    switch (state_) {
      case State::skip: return true;
      case State::record:
        if (key_ == Field::other) return true;
        if (key_ == Field::year || key_ == Field::citations) {
          return set_error(ViolationKind::wrong_type, key_name(), "expected an integer");
        }
        return set_error(ViolationKind::wrong_type, key_name(), key_ == Field::authors ? "expected an array" : "expected a string");
      case State::authors: return set_error(ViolationKind::wrong_type, "authors", "expected author objects");
      case State::author:
        if (author_key_ == AuthorField::other) return true;
        return set_error(ViolationKind::wrong_type, author_key_name(),
                         author_key_ == AuthorField::id ? "expected a string" : "expected an array");
      case State::countries: return set_error(ViolationKind::wrong_type, "countries", "expected country code strings");
      default: return set_error(ViolationKind::malformed_json, "", "expected a JSON object");
    }
  }

  bool begin_skip() {
    resume_ = state_;
    state_ = State::skip;
    skip_depth_ = 1;
    return true;
  }
  bool end_skip() {
    if (--skip_depth_ == 0) state_ = resume_;
    return true;
  }

  PublicationRecord& rec_;
  std::optional<Error> error_;
  State state_ = State::top;
  State resume_ = State::top;
  int skip_depth_ = 0;
  Field key_ = Field::other;
  AuthorField author_key_ = AuthorField::other;
  Authorship author_;
  bool seen_root_ = false;
  bool has_pub_id_ = false, has_year_ = false, has_doc_type_ = false, has_field_ = false, has_citations_ = false,
       has_authors_ = false, has_author_id_ = false, has_countries_ = false;
};

}  // namespace

RecordError::RecordError(ViolationKind kind, std::string field, std::size_t line, const std::string& detail)
    : std::runtime_error(describe(line, field, detail)), kind_(kind), field_(std::move(field)), line_(line) {}

PublicationRecord parse_record(std::string_view line, std::size_t line_no) {
  if (line.find('\0') != std::string_view::npos) fail(ViolationKind::malformed_json, "", line_no, "NUL byte in line");
  thread_local std::string scratch;
  scratch.assign(line);
  PublicationRecord rec;
  RecordHandler handler(rec);
  rapidjson::Reader reader;
  rapidjson::InsituStringStream stream(scratch.data());
  const auto result = reader.Parse<rapidjson::kParseInsituFlag>(stream, handler);
  if (const auto& e = handler.error()) fail(e->kind, e->field, line_no, e->detail);
  if (result.IsError()) {
    fail(ViolationKind::malformed_json, "", line_no,
         std::string("malformed JSON: ") + rapidjson::GetParseError_En(result.Code()));
  }
  handler.finish(line_no);
  return rec;
}

std::string serialize_record(const PublicationRecord& record) {
  std::string authors = "[";
  for (const auto& a : record.authorships) {
    if (authors.size() > 1) authors += ',';
    authors += "{\"id\":" + json(a.author_id).dump() + ",\"countries\":[";
    bool first = true;
    for (Country c : a.countries) {
      if (!first) authors += ',';
      first = false;
      authors += '"' + c.code() + '"';
    }
    authors += "]}";
  }
  authors += ']';
  // Key order is fixed so that generated corpora are byte-stable.
  std::string out = "{\"pub_id\":" + json(record.pub_id).dump();
  out += ",\"year\":" + std::to_string(record.year);
  out += ",\"doc_type\":\"" + std::string(to_string(record.doc_type)) + "\"";
  out += ",\"field\":" + json(record.field_id).dump();
  out += ",\"citations\":" + std::to_string(record.citation_count);
  out += ",\"authors\":" + authors + "}";
  return out;
}

void ValidationReport::record(Violation violation) {
  ++counts_[violation.kind];
  if (details_.size() < kMaxDetails) details_.push_back(std::move(violation));
}

void ValidationReport::count_record(bool accepted) {
  ++records_read_;
  if (accepted) ++records_accepted_;
}

void ValidationReport::merge(const ValidationReport& other) {
  for (const auto& [kind, n] : other.counts_) counts_[kind] += n;
  records_read_ += other.records_read_;
  records_accepted_ += other.records_accepted_;
  details_.insert(details_.end(), other.details_.begin(), other.details_.end());
  std::sort(details_.begin(), details_.end());
  if (details_.size() > kMaxDetails) details_.resize(kMaxDetails);
}

std::uint64_t ValidationReport::count(ViolationKind kind) const {
  auto it = counts_.find(kind);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t ValidationReport::total_violations() const {
  std::uint64_t total = 0;
  for (const auto& [kind, n] : counts_) total += n;
  return total;
}

std::uint64_t ValidationReport::total_errors() const {
  return total_violations() - count(ViolationKind::unknown_country);
}

std::string ValidationReport::to_json() const {
  json violations = json::object();
  for (const auto& [kind, n] : counts_) violations[std::string(to_string(kind))] = n;
  json details = json::array();
  for (const auto& v : details_) {
    details.push_back(json{{"line", v.line}, {"kind", to_string(v.kind)}, {"field", v.field}, {"message", v.message}});
  }
  json out = json::object();
  out["records_read"] = records_read_;
  out["records_accepted"] = records_accepted_;
  out["violations"] = std::move(violations);
  out["details"] = std::move(details);
  return out.dump();
}

bool CorpusValidator::check(const PublicationRecord& record, std::size_t line, bool strict, ValidationReport& report) {
  for (const auto& a : record.authorships) {
    for (Country c : a.countries) {
      if (!is_iso3166_alpha2(c)) {
        report.record({line, ViolationKind::unknown_country, "countries", "country code '" + c.code() + "' is not ISO 3166-1"});
      }
    }
  }
  if (!seen_pub_ids_.insert(std::hash<std::string>{}(record.pub_id)).second) {
    RecordError error(ViolationKind::duplicate_pub_id, "pub_id", line, "duplicate pub_id '" + record.pub_id + "'");
    report.record({line, error.kind(), error.field(), error.what()});
    if (strict) throw error;
    return false;
  }
  if (!window_.contains(record.year)) {
    report.record({line, ViolationKind::out_of_window, "year", "year " + std::to_string(record.year) + " outside analysis window"});
    return false;
  }
  return true;
}

ValidatedCorpus validate_corpus(std::span<const PublicationRecord> records, YearWindow window) {
  ValidatedCorpus out;
  CorpusValidator validator(window);
  std::size_t line = 0;
  for (const auto& record : records) {
    ++line;
    bool ok = true;
    if (record.authorships.empty()) {
      out.report.record({line, ViolationKind::empty_authors, "authors", "empty author list"});
      ok = false;
    }
    if (record.citation_count < 0) {
      out.report.record({line, ViolationKind::negative_citations, "citations", "negative citation count"});
      ok = false;
    }
    for (const auto& a : record.authorships) {
      if (a.countries.empty()) {
        out.report.record({line, ViolationKind::empty_countries, "countries", "empty country set"});
        ok = false;
      }
    }
    ok = ok && validator.check(record, line, /*strict=*/false, out.report);
    out.report.count_record(ok);
    if (ok) out.records.push_back(record);
  }
  return out;
}

namespace {
constexpr std::size_t kReadBufferSize = 1 << 20;
}

CorpusReader::CorpusReader(const std::filesystem::path& path, IngestOptions options)
    : buffer_(new char[kReadBufferSize]), options_(options), validator_(options.window) {
  in_.rdbuf()->pubsetbuf(buffer_.get(), kReadBufferSize);
  in_.open(path, std::ios::binary);
  if (!in_) throw IoError("cannot open corpus file '" + path.string() + "'");
}

bool CorpusReader::next(PublicationRecord& out) {
  const bool strict = options_.strictness == Strictness::strict;
  while (std::getline(in_, line_)) {
    ++line_no_;
    if (!line_.empty() && line_.back() == '\r') line_.pop_back();
    if (line_.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      out = parse_record(line_, line_no_);
    } catch (const RecordError& e) {
      report_.record({e.line(), e.kind(), e.field(), e.what()});
      report_.count_record(false);
      if (strict) throw;
      continue;
    }
    bool accepted = validator_.check(out, line_no_, strict, report_);
    report_.count_record(accepted);
    if (accepted) return true;
  }
  if (in_.bad()) throw IoError("read error after line " + std::to_string(line_no_));
  return false;
}

}  // namespace mobility
