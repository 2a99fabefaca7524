// SPDX-License-Identifier: Apache-2.0

#include "mobility/aggregate.hpp"

#include <algorithm>
#include <stdexcept>

namespace mobility {

std::string_view to_string(CountingMode mode) { return mode == CountingMode::linkage ? "linkage" : "roles"; }

std::optional<CountingMode> parse_counting_mode(std::string_view text) {
  if (text == "linkage") return CountingMode::linkage;
  if (text == "roles") return CountingMode::roles;
  return std::nullopt;
}

std::uint64_t CountryAggregate::mobile_linked() const {
  return linked(MobilityClass::migrant) + linked(MobilityClass::traveler_directional) +
         linked(MobilityClass::traveler_non_directional);
}

CountryAggregate& CountryTable::operator[](Country country) {
  auto [it, inserted] = rows_.try_emplace(country);
  if (inserted) it->second.country = country;
  return it->second;
}

void CountryTable::merge(const CountryTable& other) {
  for (const auto& [country, row] : other.rows_) {
    auto& mine = (*this)[country];
    for (std::size_t i = 0; i < mine.by_class.size(); ++i) mine.by_class[i] += row.by_class[i];
    mine.emigrants += row.emigrants;
    mine.immigrants += row.immigrants;
    mine.outgoing += row.outgoing;
    mine.incoming += row.incoming;
  }
  compute_balances();
}

void CountryTable::compute_balances() {
  for (auto& [country, row] : rows_) {
    std::tie(row.migrant_balance, row.traveler_balance) = balance_rates(row);
  }
}

void CountryTable::add_linkage(const ResearcherProfile& profile) {
  for (Country c : profile.linked_countries) ++(*this)[c].by_class[static_cast<std::size_t>(profile.cls)];
}

void CountryTable::add_roles(const ResearcherProfile& profile) {
  if (profile.cls != MobilityClass::migrant && profile.cls != MobilityClass::traveler_directional) return;
  // roles are duplicate-free, so each (country, role) is one distinct researcher
  for (const auto& r : profile.roles) {
    auto& row = (*this)[r.country];
    switch (r.role) {
      case Role::emigrant_from: ++row.emigrants; break;
      case Role::immigrant_to: ++row.immigrants; break;
      case Role::outgoing_from: ++row.outgoing; break;
      case Role::incoming_to: ++row.incoming; break;
    }
  }
}

void CountryTable::add(const ResearcherProfile& profile) {
  add_linkage(profile);
  add_roles(profile);
}

CountryTable country_class_counts(std::span<const ResearcherProfile> profiles) {
  CountryTable table;
  for (const auto& p : profiles) table.add_linkage(p);
  return table;
}

CountryTable country_role_counts(std::span<const ResearcherProfile> profiles) {
  CountryTable table;
  for (const auto& p : profiles) table.add_roles(p);
  table.compute_balances();
  return table;
}

CountryTable aggregate_countries(std::span<const ResearcherProfile> profiles) {
  CountryTable table;
  for (const auto& p : profiles) table.add(p);
  table.compute_balances();
  return table;
}

std::optional<double> balance(std::uint64_t in, std::uint64_t out) {
  if (in + out == 0) return std::nullopt;
  return (static_cast<double>(in) - static_cast<double>(out)) / static_cast<double>(in + out);
}

std::pair<std::optional<double>, std::optional<double>> balance_rates(const CountryAggregate& aggregate) {
  return {balance(aggregate.immigrants, aggregate.emigrants), balance(aggregate.incoming, aggregate.outgoing)};
}

std::vector<ResearcherProfile> apply_min_pub_threshold(std::span<const ResearcherProfile> profiles, int min_pubs) {
  if (min_pubs < 0) throw std::invalid_argument("minimum publication threshold must be non-negative");
  std::vector<ResearcherProfile> out;
  for (const auto& p : profiles) {
    if (p.pubs_citable >= min_pubs) out.push_back(p);
  }
  return out;
}

std::vector<CountryAggregate> top_countries(const CountryTable& table, std::size_t top_n,
                                            std::uint64_t (*key)(const CountryAggregate&)) {
  std::vector<CountryAggregate> rows;
  rows.reserve(table.rows().size());
  for (const auto& [country, row] : table.rows()) rows.push_back(row);
  std::stable_sort(rows.begin(), rows.end(),
                   [key](const CountryAggregate& a, const CountryAggregate& b) { return key(a) > key(b); });
  if (top_n > 0 && rows.size() > top_n) rows.resize(top_n);
  return rows;
}

}  // namespace mobility
