// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mobility/classify.hpp"

namespace mobility {

enum class CountingMode { linkage, roles };

std::string_view to_string(CountingMode mode);
std::optional<CountingMode> parse_counting_mode(std::string_view text);

struct CountryAggregate {
  Country country;
  /// Distinct researchers with any affiliation to the country, indexed by
  /// MobilityClass.
  std::array<std::uint64_t, 4> by_class{};
  std::uint64_t emigrants = 0;
  std::uint64_t immigrants = 0;
  std::uint64_t outgoing = 0;
  std::uint64_t incoming = 0;
  std::optional<double> migrant_balance;
  std::optional<double> traveler_balance;

  std::uint64_t linked(MobilityClass cls) const { return by_class[static_cast<std::size_t>(cls)]; }
  std::uint64_t mobile_linked() const;
  std::uint64_t directional_roles() const { return emigrants + immigrants + outgoing + incoming; }

  friend bool operator==(const CountryAggregate&, const CountryAggregate&) = default;
};

/// Country-keyed table. Partial tables from disjoint researcher sets merge
/// by adding counts; balances are recomputed afterwards.
class CountryTable {
 public:
  CountryAggregate& operator[](Country country);
  /// Linkage and role counts for one researcher. Balances are stale until
  /// compute_balances().
  void add(const ResearcherProfile& profile);
  void add_linkage(const ResearcherProfile& profile);
  void add_roles(const ResearcherProfile& profile);
  const std::map<Country, CountryAggregate>& rows() const { return rows_; }
  void merge(const CountryTable& other);
  void compute_balances();

  friend bool operator==(const CountryTable&, const CountryTable&) = default;

 private:
  std::map<Country, CountryAggregate> rows_;
};

/// Linkage counting: a researcher adds one to its class column in every
/// country it was ever affiliated with.
CountryTable country_class_counts(std::span<const ResearcherProfile> profiles);

/// Role counting: distinct researchers per (country, role). Non-directional
/// travelers contribute nothing.
CountryTable country_role_counts(std::span<const ResearcherProfile> profiles);

/// Both countings plus balances in one table.
CountryTable aggregate_countries(std::span<const ResearcherProfile> profiles);

/// (in - out) / (in + out), null on a zero denominator.
std::optional<double> balance(std::uint64_t in, std::uint64_t out);

/// (migrant_balance, traveler_balance) from the role counts.
std::pair<std::optional<double>, std::optional<double>> balance_rates(const CountryAggregate& aggregate);

/// Keeps researchers with at least `min_pubs` articles and reviews.
std::vector<ResearcherProfile> apply_min_pub_threshold(std::span<const ResearcherProfile> profiles, int min_pubs);

/// Countries ordered by descending `key`, ties by country code; top_n == 0 keeps all.
std::vector<CountryAggregate> top_countries(const CountryTable& table, std::size_t top_n,
                                            std::uint64_t (*key)(const CountryAggregate&));

}  // namespace mobility
