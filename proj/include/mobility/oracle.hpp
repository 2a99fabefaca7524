// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "mobility/mobility_class.hpp"
#include "mobility/trajectory.hpp"

namespace mobility::oracle {

// Reference classifier for tests. Deliberately shares no code with the
// events/classify modules: trajectories are re-encoded as bitmasks over the
// researcher's own countries and the class rules are applied directly.

/// Supports trajectories with at most 16 distinct countries; throws
/// std::invalid_argument beyond that or for an empty trajectory.
MobilityClass classify(const Trajectory& trajectory);

/// Row lookup for two-country shapes by literal pattern, e.g.
/// table_code("C1", "C1*;C2*") == "E5". Empty `to` is a single-point event.
/// Returns nullopt for patterns absent from the taxonomy.
std::optional<std::string_view> table_code(std::string_view from, std::string_view to);

/// Class implied by holding a given taxonomy row ("E1".."E15").
MobilityClass class_for_code(std::string_view code);

}  // namespace mobility::oracle
