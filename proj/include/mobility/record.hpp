// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobility/country.hpp"

namespace mobility {

enum class DocType { article, review, letter, proceedings, other };

std::string_view to_string(DocType type);
std::optional<DocType> parse_doc_type(std::string_view text);

/// Articles and reviews carry production counts and citation indicators;
/// every document type contributes to mobility tracking.
constexpr bool is_citable(DocType type) {
  return type == DocType::article || type == DocType::review;
}

struct Authorship {
  std::string author_id;
  CountrySet countries;

  friend bool operator==(const Authorship&, const Authorship&) = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  DocType doc_type = DocType::article;
  std::string field_id;
  std::int64_t citation_count = 0;
  std::vector<Authorship> authorships;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

/// Inclusive range of publication years admitted to the analysis.
struct YearWindow {
  int first = 2008;
  int last = 2015;

  constexpr bool contains(int year) const { return year >= first && year <= last; }
  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

/// Parses "2008-2015" (or a single year "2010").
std::optional<YearWindow> parse_year_window(std::string_view text);

}  // namespace mobility
