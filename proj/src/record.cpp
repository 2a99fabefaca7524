// SPDX-License-Identifier: Apache-2.0

#include "mobility/record.hpp"

#include <charconv>

namespace mobility {

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::letter: return "letter";
    case DocType::proceedings: return "proceedings";
    case DocType::other: return "other";
  }
  return "other";
}

std::optional<DocType> parse_doc_type(std::string_view text) {
  if (text == "article") return DocType::article;
  if (text == "review") return DocType::review;
  if (text == "letter") return DocType::letter;
  if (text == "proceedings") return DocType::proceedings;
  if (text == "other") return DocType::other;
  return std::nullopt;
}

namespace {

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<YearWindow> parse_year_window(std::string_view text) {
  auto dash = text.find('-', 1);
  if (dash == std::string_view::npos) {
    auto year = parse_int(text);
    if (!year) return std::nullopt;
    return YearWindow{*year, *year};
  }
  auto first = parse_int(text.substr(0, dash));
  auto last = parse_int(text.substr(dash + 1));
  if (!first || !last || *first > *last) return std::nullopt;
  return YearWindow{*first, *last};
}

}  // namespace mobility
