// SPDX-License-Identifier: Apache-2.0

#include "mobility/oracle.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobility::oracle {

MobilityClass classify(const Trajectory& trajectory) {
  if (trajectory.profiles.empty()) throw std::invalid_argument("oracle: empty trajectory");

  // Local bit per distinct country, in order of appearance.
  std::vector<Country> local;
  std::vector<std::uint32_t> masks;
  for (const auto& year : trajectory.profiles) {
    std::uint32_t mask = 0;
    for (Country c : year.countries) {
      std::size_t bit = 0;
      while (bit < local.size() && local[bit] != c) ++bit;
      if (bit == local.size()) {
        if (local.size() == 16) throw std::invalid_argument("oracle: more than 16 countries");
        local.push_back(c);
      }
      mask |= 1u << bit;
    }
    masks.push_back(mask);
  }

  // Country rupture: nothing at t_n survives into t_n+1.
  // Directionality: t_n+1 brings a country never seen up to t_n, or ruptures.
  bool migrant = false;
  bool directional = false;
  bool several = std::popcount(masks[0]) >= 2;
  std::uint32_t seen = masks[0];
  for (std::size_t i = 1; i < masks.size(); ++i) {
    const bool rupture = (masks[i - 1] & masks[i]) == 0;
    const bool fresh = (masks[i] & ~seen) != 0;
    if (rupture) migrant = true;
    if (fresh || rupture) directional = true;
    if (std::popcount(masks[i]) >= 2) several = true;
    seen |= masks[i];
  }

  if (migrant) return MobilityClass::migrant;
  if (directional) return MobilityClass::traveler_directional;
  if (several) return MobilityClass::traveler_non_directional;
  return MobilityClass::not_mobile;
}

namespace {

struct Row {
  std::string_view code, from, to;
};

constexpr std::array<Row, 15> kRows = {{
    {"E1", "C1", ""},
    {"E2", "C1", "C1"},
    {"E3", "C1", "C2"},
    {"E4", "C1", "C1;C2"},
    {"E5", "C1", "C1*;C2*"},
    {"E6", "C1;C2", ""},
    {"E7", "C1*;C2*", ""},
    {"E8", "C1*;C2*", "C1"},
    {"E9", "C1*;C2*", "C2"},
    {"E10", "C1;C2", "C1;C2"},
    {"E11", "C1;C2", "C1*;C2*"},
    {"E12", "C1;C2", "C1"},
    {"E13", "C1;C2", "C2"},
    {"E14", "C1*;C2*", "C1;C2"},
    {"E15", "C1*;C2*", "C1*;C2*"},
}};

}  // namespace

std::optional<std::string_view> table_code(std::string_view from, std::string_view to) {
  for (const auto& row : kRows) {
    if (row.from == from && row.to == to) return row.code;
  }
  return std::nullopt;
}

MobilityClass class_for_code(std::string_view code) {
  if (code == "E1" || code == "E2") return MobilityClass::not_mobile;
  if (code == "E3") return MobilityClass::migrant;
  if (code == "E4" || code == "E5") return MobilityClass::traveler_directional;
  for (const auto& row : kRows) {
    if (row.code == code) return MobilityClass::traveler_non_directional;
  }
  throw std::invalid_argument("oracle: unknown event code '" + std::string(code) + "'");
}

}  // namespace mobility::oracle
