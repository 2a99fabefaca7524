// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace mobility {

/// Two-letter country code packed into 16 bits. Any pair of uppercase ASCII
/// letters is representable; ISO 3166-1 membership is a separate question
/// (see is_iso3166_alpha2).
class Country {
 public:
  constexpr Country() = default;

  /// Trims surrounding whitespace and uppercases. Returns nullopt unless the
  /// result is exactly two ASCII letters.
  static std::optional<Country> parse(std::string_view text);

  /// Like parse() but throws std::invalid_argument.
  static Country of(std::string_view text);

  std::string code() const;
  constexpr std::uint16_t index() const { return index_; }

  friend constexpr auto operator<=>(Country, Country) = default;

 private:
  constexpr explicit Country(std::uint16_t index) : index_(index) {}
  std::uint16_t index_ = 0;
};

bool is_iso3166_alpha2(Country country);

/// Sorted, duplicate-free set of countries. Sets in this domain are tiny
/// (almost always 1-3 members) and stored inline up to three members.
class CountrySet {
  using Storage = boost::container::small_vector<Country, 3>;

 public:
  using const_iterator = Storage::const_iterator;

  CountrySet() = default;
  CountrySet(std::initializer_list<Country> countries);

  /// Test and fixture convenience: CountrySet::of({"ES", "GB"}).
  static CountrySet of(std::initializer_list<std::string_view> codes);

  void insert(Country country);
  void insert_all(const CountrySet& other);
  bool contains(Country country) const;
  bool intersects(const CountrySet& other) const;
  bool is_subset_of(const CountrySet& other) const;

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  Country front() const { return items_.front(); }
  std::span<const Country> items() const { return {items_.data(), items_.size()}; }

  /// Codes joined with `sep` in ascending order, e.g. "ES;GB".
  std::string join(char sep = ';') const;

  /// Inverse of join(); empty text gives the empty set.
  static CountrySet parse_joined(std::string_view text, char sep = ';');

  friend bool operator==(const CountrySet&, const CountrySet&) = default;
  friend bool operator<(const CountrySet& a, const CountrySet& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  Storage items_;
};

CountrySet set_union(const CountrySet& a, const CountrySet& b);
CountrySet set_intersection(const CountrySet& a, const CountrySet& b);
CountrySet set_difference(const CountrySet& a, const CountrySet& b);

}  // namespace mobility
