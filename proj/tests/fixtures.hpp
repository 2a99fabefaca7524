// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobility/ingest.hpp"
#include "mobility/record.hpp"
#include "mobility/trajectory.hpp"

namespace fixtures {

using mobility::CountrySet;
using mobility::DocType;
using mobility::PublicationRecord;

/// Solo-authored record; ids are generated per call site.
inline PublicationRecord paper(std::string pub_id, const std::string& author, int year,
                               std::initializer_list<std::string_view> countries, DocType type = DocType::article,
                               std::string field = "F1", std::int64_t citations = 0) {
  PublicationRecord r;
  r.pub_id = std::move(pub_id);
  r.year = year;
  r.doc_type = type;
  r.field_id = std::move(field);
  r.citation_count = citations;
  r.authorships.push_back({author, CountrySet::of(countries)});
  return r;
}

/// Builds a researcher's records from (year offset, country set, count)
/// rows; offsets count from 2008.
struct Row {
  int offset;
  std::initializer_list<std::string_view> countries;
  int count;
};

inline void add_rows(std::vector<PublicationRecord>& out, const std::string& author, std::initializer_list<Row> rows) {
  int n = 0;
  for (const auto& row : rows) {
    for (int i = 0; i < row.count; ++i) {
      out.push_back(paper(author + "-" + std::to_string(n++), author, 2008 + row.offset, row.countries));
    }
  }
}

/// Four worked example trajectories: two migrants (A, B) and two
/// directional travelers (C, D). Co-affiliated publications list several
/// countries on one paper.
inline std::vector<PublicationRecord> four_researchers() {
  std::vector<PublicationRecord> out;
  add_rows(out, "A", {{0, {"GR"}, 2}, {1, {"GR"}, 1}, {2, {"BE"}, 1}, {3, {"BE"}, 1}, {3, {"GR"}, 2},
                      {4, {"GR"}, 1}, {4, {"BE"}, 1}, {5, {"GB"}, 1}, {6, {"GB"}, 3}});
  add_rows(out, "B", {{0, {"ES"}, 1}, {1, {"ES"}, 3}, {2, {"ES"}, 1}, {3, {"GB"}, 2}, {4, {"GB"}, 1},
                      {5, {"GB", "IT"}, 1}, {6, {"IT"}, 1}, {7, {"IT"}, 3}});
  add_rows(out, "C", {{0, {"ES"}, 15}, {1, {"ES"}, 13}, {2, {"DE", "ES"}, 1}, {2, {"ES"}, 14}, {2, {"US", "ES"}, 2},
                      {3, {"US", "ES"}, 7}, {3, {"US"}, 5}, {4, {"US", "ES"}, 11}, {4, {"US"}, 9}});
  add_rows(out, "D", {{0, {"GB"}, 3}, {1, {"GB"}, 2}, {1, {"GB", "US"}, 1}, {2, {"GB"}, 3}, {2, {"GB", "US", "ES"}, 1},
                      {3, {"GB", "ES"}, 3}, {4, {"GB", "ES"}, 2}, {5, {"GB", "ES"}, 3}, {6, {"GB", "ES", "FR"}, 2}});
  return out;
}

inline void write_corpus(const std::filesystem::path& path, const std::vector<PublicationRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& r : records) out << mobility::serialize_record(r) << '\n';
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("mobility-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
