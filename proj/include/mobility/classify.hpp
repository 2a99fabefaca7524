// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "mobility/events.hpp"
#include "mobility/mobility_class.hpp"
#include "mobility/trajectory.hpp"

namespace mobility {

/// Precedence is fixed: any rupture makes a migrant; otherwise any first-ever
/// new country makes a directional traveler; otherwise any multi-country
/// year makes a non-directional traveler. Throws std::invalid_argument for an
/// empty log.
MobilityClass classify_researcher(const EventLog& log);

/// Country roles implied by the class:
///   migrant              immigrant_to every country gained at a transition,
///                        emigrant_from every country lost for good
///   traveler_directional outgoing_from each origin country,
///                        incoming_to each first-ever new country
/// Non-directional travelers and non-mobile researchers hold no roles.
/// Result is sorted and duplicate-free.
std::vector<CountryRole> assign_country_roles(const EventLog& log, const CountrySet& origin, MobilityClass cls);

struct ResearcherProfile {
  std::string author_id;
  MobilityClass cls = MobilityClass::not_mobile;
  CountrySet origin;
  int first_year = 0;
  std::vector<CountryRole> roles;
  int pubs_citable = 0;
  int pubs_all = 0;
  CountrySet linked_countries;

  friend bool operator==(const ResearcherProfile&, const ResearcherProfile&) = default;
};

ResearcherProfile profile_researcher(const Trajectory& trajectory, const EventOptions& options = {});
/// Same, reusing an event log already computed for `trajectory`.
ResearcherProfile profile_researcher(const Trajectory& trajectory, const EventLog& log);

std::vector<ResearcherProfile> profile_researchers(std::span<const Trajectory> trajectories,
                                                   const EventOptions& options = {});

}  // namespace mobility
