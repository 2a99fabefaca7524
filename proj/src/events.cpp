// SPDX-License-Identifier: Apache-2.0

#include "mobility/events.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace mobility {

namespace {

constexpr std::array<EventRow, 15> kTaxonomy = {{
    {EventCode::E1, "C1", "", false, false},
    {EventCode::E2, "C1", "C1", false, false},
    {EventCode::E3, "C1", "C2", true, true},
    {EventCode::E4, "C1", "C1;C2", true, false},
    {EventCode::E5, "C1", "C1*;C2*", true, false},
    {EventCode::E6, "C1;C2", "", false, false},
    {EventCode::E7, "C1*;C2*", "", false, false},
    {EventCode::E8, "C1*;C2*", "C1", false, false},
    {EventCode::E9, "C1*;C2*", "C2", false, false},
    {EventCode::E10, "C1;C2", "C1;C2", false, false},
    {EventCode::E11, "C1;C2", "C1*;C2*", false, false},
    {EventCode::E12, "C1;C2", "C1", false, false},
    {EventCode::E13, "C1;C2", "C2", false, false},
    {EventCode::E14, "C1*;C2*", "C1;C2", false, false},
    {EventCode::E15, "C1*;C2*", "C1*;C2*", false, false},
}};

bool agrees(EventCode code, bool directional, bool rupture) {
  const auto& row = event_row(code);
  return row.directional == directional && row.rupture == rupture;
}

EventCodeSet filter_consistent(EventCodeSet codes, bool directional, bool rupture) {
  EventCodeSet out;
  for (auto c : codes.codes()) {
    if (agrees(c, directional, rupture)) out.insert(c);
  }
  return out;
}

// Row lookup for shapes over at most two countries, before the consistency filter.
std::optional<EventCode> shape_code(const YearProfile& from, const YearProfile& to, const CountryHistory& history) {
  if (set_union(from.countries, to.countries).size() > 2) return std::nullopt;
  const InstanceKind kf = instance_kind(from);
  const InstanceKind kt = instance_kind(to);

  if (kf == InstanceKind::single) {
    if (kt == InstanceKind::single) return from.countries == to.countries ? EventCode::E2 : EventCode::E3;
    return kt == InstanceKind::multiple ? EventCode::E4 : EventCode::E5;
  }

  if (kt != InstanceKind::single) {
    if (kf == InstanceKind::multiple) return kt == InstanceKind::multiple ? EventCode::E10 : EventCode::E11;
    return kt == InstanceKind::multiple ? EventCode::E14 : EventCode::E15;
  }

  // Two countries narrowing to one: decide whether the survivor is C1.
  const Country kept = to.countries.front();
  Country dropped = from.countries.front();
  if (dropped == kept) dropped = *std::next(from.countries.begin());
  const int kept_since = history.first_seen(kept).value_or(from.year);
  const int dropped_since = history.first_seen(dropped).value_or(from.year);
  const bool kept_is_c1 = kept_since <= dropped_since;
  if (kf == InstanceKind::co) return kept_is_c1 ? EventCode::E8 : EventCode::E9;
  return kept_is_c1 ? EventCode::E12 : EventCode::E13;
}

}  // namespace

std::string_view to_string(EventCode code) {
  static constexpr std::array<std::string_view, 16> names = {
      "", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "E10", "E11", "E12", "E13", "E14", "E15"};
  return names.at(static_cast<std::size_t>(code));
}

std::size_t EventCodeSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<EventCode> EventCodeSet::codes() const {
  std::vector<EventCode> out;
  for (unsigned i = 1; i <= 15; ++i) {
    if (bits_ & (1u << i)) out.push_back(static_cast<EventCode>(i));
  }
  return out;
}

std::string EventCodeSet::join(char sep) const {
  std::string out;
  for (auto c : codes()) {
    if (!out.empty()) out.push_back(sep);
    out += to_string(c);
  }
  return out;
}

std::span<const EventRow> event_taxonomy() { return kTaxonomy; }

const EventRow& event_row(EventCode code) { return kTaxonomy.at(static_cast<std::size_t>(code) - 1); }

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::single: return "single";
    case InstanceKind::multiple: return "multiple";
    case InstanceKind::co: return "co";
  }
  return "single";
}

InstanceKind instance_kind(const YearProfile& profile) {
  if (profile.has_co) return InstanceKind::co;
  if (profile.countries.size() >= 2) return InstanceKind::multiple;
  return InstanceKind::single;
}

void CountryHistory::observe(const YearProfile& profile) {
  for (Country c : profile.countries) {
    if (!seen_.contains(c)) {
      seen_.insert(c);
      first_seen_.emplace_back(c, profile.year);
    }
  }
}

std::optional<int> CountryHistory::first_seen(Country country) const {
  for (const auto& [c, year] : first_seen_) {
    if (c == country) return year;
  }
  return std::nullopt;
}

EventCodeSet e_code_match(const YearProfile& from, const YearProfile& to, const CountryHistory& history) {
  const bool rupture = !from.countries.intersects(to.countries);
  bool gained = false;
  for (Country c : to.countries) {
    if (!history.seen().contains(c)) gained = true;
  }
  const bool directional = rupture || gained;
  auto code = shape_code(from, to, history);
  if (!code || !agrees(*code, directional, rupture)) return {};
  return {*code};
}

EventCode singleton_code(const YearProfile& profile) {
  switch (instance_kind(profile)) {
    case InstanceKind::single: return EventCode::E1;
    case InstanceKind::multiple: return EventCode::E6;
    case InstanceKind::co: return EventCode::E7;
  }
  return EventCode::E1;
}

EventLog detect_transitions(const Trajectory& trajectory, const EventOptions& options) {
  if (trajectory.profiles.empty()) throw std::invalid_argument("trajectory without tracked years");
  EventLog log;
  log.author_id = trajectory.author_id;
  log.origin = trajectory.origin_countries();

  const auto& profiles = trajectory.profiles;
  if (profiles.size() == 1) {
    log.singleton = SingletonEvent{profiles.front().year, singleton_code(profiles.front())};
    return log;
  }

  CountryHistory history;
  history.observe(profiles.front());
  log.transitions.reserve(profiles.size() - 1);
  for (std::size_t i = 0; i + 1 < profiles.size(); ++i) {
    const auto& from = profiles[i];
    const auto& to = profiles[i + 1];
    TransitionEvent ev;
    ev.year_from = from.year;
    ev.year_to = to.year;
    ev.s_from = from.countries;
    ev.s_to = to.countries;
    ev.new_countries = set_difference(to.countries, history.seen());
    ev.reappeared_countries = set_difference(set_difference(to.countries, from.countries), ev.new_countries);
    ev.lost_countries = set_difference(from.countries, to.countries);
    ev.rupture = !from.countries.intersects(to.countries);
    ev.e_codes = e_code_match(from, to, history);
    if (options.max_gap && to.year - from.year > *options.max_gap) {
      ev.rupture = false;
    }
    ev.directional = ev.rupture || !ev.new_countries.empty();
    ev.e_codes = filter_consistent(ev.e_codes, ev.directional, ev.rupture);
    ev.from_has_co = from.has_co;
    ev.from_has_multi = from.has_multi;
    ev.to_has_co = to.has_co;
    ev.to_has_multi = to.has_multi;
    log.transitions.push_back(std::move(ev));
    history.observe(to);
  }
  return log;
}

}  // namespace mobility
