// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobility/country.hpp"
#include "mobility/trajectory.hpp"

namespace mobility {

enum class EventCode : std::uint8_t { E1 = 1, E2, E3, E4, E5, E6, E7, E8, E9, E10, E11, E12, E13, E14, E15 };

std::string_view to_string(EventCode code);

class EventCodeSet {
 public:
  EventCodeSet() = default;
  EventCodeSet(std::initializer_list<EventCode> codes) {
    for (auto c : codes) insert(c);
  }

  void insert(EventCode code) { bits_ |= bit(code); }
  bool contains(EventCode code) const { return (bits_ & bit(code)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const;
  std::vector<EventCode> codes() const;
  /// "E4;E5" in ascending code order; empty string for the empty set.
  std::string join(char sep = ';') const;

  friend bool operator==(EventCodeSet, EventCodeSet) = default;

 private:
  static constexpr std::uint16_t bit(EventCode c) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(c)); }
  std::uint16_t bits_ = 0;
};

/// One row of the mobility-event taxonomy. Patterns use C1 for the country
/// established first, C2 for any other; "C1;C2" is a multiple-affiliation
/// instance and "C1*;C2*" a co-affiliation instance. An empty `to` marks a
/// single-point event.
struct EventRow {
  EventCode code;
  std::string_view from;
  std::string_view to;
  bool directional;
  bool rupture;
};

std::span<const EventRow> event_taxonomy();
const EventRow& event_row(EventCode code);

enum class InstanceKind { single, multiple, co };

std::string_view to_string(InstanceKind kind);

/// Co-affiliation takes precedence: a year with a co-affiliated paper is
/// reported as co even when its papers also differ.
InstanceKind instance_kind(const YearProfile& profile);

/// Countries seen up to some tracked year, with the year each first appeared.
class CountryHistory {
 public:
  void observe(const YearProfile& profile);
  const CountrySet& seen() const { return seen_; }
  std::optional<int> first_seen(Country country) const;

 private:
  CountrySet seen_;
  std::vector<std::pair<Country, int>> first_seen_;
};

/// Taxonomy rows matching the (from, to) transition. C1 is the single
/// country at t_n; when t_n holds two countries, C1 is the one that appeared
/// earlier in the history, and on a tie the one still present at t_{n+1}.
/// A row is returned only when its directionality and rupture columns agree
/// with the predicates computed from the sets, so shapes spanning three or
/// more countries, and re-appearances of countries seen before, give an
/// empty set.
EventCodeSet e_code_match(const YearProfile& from, const YearProfile& to, const CountryHistory& history);

struct TransitionEvent {
  int year_from = 0;
  int year_to = 0;
  CountrySet s_from;
  CountrySet s_to;
  CountrySet new_countries;         // never seen in any year <= year_from
  CountrySet reappeared_countries;  // (s_to \ s_from) \ new_countries
  CountrySet lost_countries;        // s_from \ s_to
  bool rupture = false;
  bool directional = false;
  EventCodeSet e_codes;
  bool from_has_co = false;
  bool from_has_multi = false;
  bool to_has_co = false;
  bool to_has_multi = false;
};

struct SingletonEvent {
  int year = 0;
  EventCode code = EventCode::E1;
};

struct EventLog {
  std::string author_id;
  CountrySet origin;
  std::vector<TransitionEvent> transitions;
  std::optional<SingletonEvent> singleton;  // set iff exactly one tracked year

  bool empty() const { return transitions.empty() && !singleton; }
};

struct EventOptions {
  /// Largest year gap across which a country rupture is recognised. Unset
  /// means any gap between consecutive tracked years qualifies.
  std::optional<int> max_gap;
};

EventCode singleton_code(const YearProfile& profile);

EventLog detect_transitions(const Trajectory& trajectory, const EventOptions& options = {});

}  // namespace mobility
