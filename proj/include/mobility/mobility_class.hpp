// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mobility/country.hpp"

namespace mobility {

enum class MobilityClass { not_mobile, migrant, traveler_directional, traveler_non_directional };

inline constexpr std::array<MobilityClass, 4> kAllClasses = {
    MobilityClass::not_mobile, MobilityClass::migrant, MobilityClass::traveler_directional,
    MobilityClass::traveler_non_directional};

/// Kebab-case names used in every output table: not-mobile, migrant,
/// traveler-directional, traveler-non-directional.
std::string_view to_string(MobilityClass cls);
std::optional<MobilityClass> parse_mobility_class(std::string_view text);

constexpr bool is_mobile(MobilityClass cls) { return cls != MobilityClass::not_mobile; }

enum class Role { emigrant_from, immigrant_to, outgoing_from, incoming_to };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

struct CountryRole {
  Country country;
  Role role;

  friend auto operator<=>(const CountryRole&, const CountryRole&) = default;
};

/// "emigrant:ES;immigrant:GB", sorted by role name then country.
std::string join_roles(const std::vector<CountryRole>& roles);
std::vector<CountryRole> parse_roles(std::string_view text);

}  // namespace mobility
