// SPDX-License-Identifier: Apache-2.0

#include "mobility/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace mobility {

std::string_view to_string(MobilityClass cls) {
  switch (cls) {
    case MobilityClass::not_mobile: return "not-mobile";
    case MobilityClass::migrant: return "migrant";
    case MobilityClass::traveler_directional: return "traveler-directional";
    case MobilityClass::traveler_non_directional: return "traveler-non-directional";
  }
  return "not-mobile";
}

std::optional<MobilityClass> parse_mobility_class(std::string_view text) {
  for (auto cls : kAllClasses) {
    if (to_string(cls) == text) return cls;
  }
  return std::nullopt;
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::emigrant_from: return "emigrant";
    case Role::immigrant_to: return "immigrant";
    case Role::outgoing_from: return "outgoing";
    case Role::incoming_to: return "incoming";
  }
  return "emigrant";
}

std::optional<Role> parse_role(std::string_view text) {
  for (auto r : {Role::emigrant_from, Role::immigrant_to, Role::outgoing_from, Role::incoming_to}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::string join_roles(const std::vector<CountryRole>& roles) {
  std::vector<std::string> parts;
  parts.reserve(roles.size());
  for (const auto& r : roles) parts.push_back(std::string(to_string(r.role)) + ":" + r.country.code());
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(';');
    out += p;
  }
  return out;
}

std::vector<CountryRole> parse_roles(std::string_view text) {
  std::vector<CountryRole> out;
  while (!text.empty()) {
    auto pos = text.find(';');
    auto token = text.substr(0, pos);
    auto colon = token.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("malformed role '" + std::string(token) + "'");
    auto role = parse_role(token.substr(0, colon));
    if (!role) throw std::invalid_argument("unknown role '" + std::string(token.substr(0, colon)) + "'");
    out.push_back({Country::of(token.substr(colon + 1)), *role});
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

MobilityClass classify_researcher(const EventLog& log) {
  if (log.empty()) throw std::invalid_argument("cannot classify researcher '" + log.author_id + "' without tracked years");

  bool rupture = false;
  bool gained = false;
  bool multi_country = false;
  for (const auto& ev : log.transitions) {
    rupture = rupture || ev.rupture;
    gained = gained || !ev.new_countries.empty();
    multi_country = multi_country || ev.s_from.size() >= 2 || ev.s_to.size() >= 2;
  }
  if (log.singleton) multi_country = multi_country || log.singleton->code != EventCode::E1;

  if (rupture) return MobilityClass::migrant;
  if (gained) return MobilityClass::traveler_directional;
  if (multi_country) return MobilityClass::traveler_non_directional;
  return MobilityClass::not_mobile;
}

std::vector<CountryRole> assign_country_roles(const EventLog& log, const CountrySet& origin, MobilityClass cls) {
  std::vector<CountryRole> roles;
  const auto& tr = log.transitions;

  if (cls == MobilityClass::migrant) {
    for (std::size_t i = 0; i < tr.size(); ++i) {
      for (Country c : tr[i].new_countries) roles.push_back({c, Role::immigrant_to});
      if (tr[i].rupture) {
        for (Country c : tr[i].s_to) roles.push_back({c, Role::immigrant_to});
      }
      for (Country c : tr[i].lost_countries) {
        bool returns = false;
        for (std::size_t j = i; j < tr.size() && !returns; ++j) returns = tr[j].s_to.contains(c);
        if (!returns) roles.push_back({c, Role::emigrant_from});
      }
    }
  } else if (cls == MobilityClass::traveler_directional) {
    for (Country c : origin) roles.push_back({c, Role::outgoing_from});
    for (const auto& ev : tr) {
      for (Country c : ev.new_countries) roles.push_back({c, Role::incoming_to});
    }
  }

  std::sort(roles.begin(), roles.end());
  roles.erase(std::unique(roles.begin(), roles.end()), roles.end());
  return roles;
}

ResearcherProfile profile_researcher(const Trajectory& trajectory, const EventOptions& options) {
  return profile_researcher(trajectory, detect_transitions(trajectory, options));
}

ResearcherProfile profile_researcher(const Trajectory& trajectory, const EventLog& log) {
  ResearcherProfile p;
  p.author_id = trajectory.author_id;
  p.cls = classify_researcher(log);
  p.origin = trajectory.origin_countries();
  p.first_year = trajectory.first_year();
  p.roles = assign_country_roles(log, p.origin, p.cls);
  p.pubs_citable = trajectory.pubs_citable();
  p.pubs_all = trajectory.pubs_all();
  p.linked_countries = trajectory.linked_countries();
  return p;
}

std::vector<ResearcherProfile> profile_researchers(std::span<const Trajectory> trajectories, const EventOptions& options) {
  std::vector<ResearcherProfile> out;
  out.reserve(trajectories.size());
  for (const auto& t : trajectories) out.push_back(profile_researcher(t, options));
  return out;
}

}  // namespace mobility
