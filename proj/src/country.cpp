// SPDX-License-Identifier: Apache-2.0

#include "mobility/country.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <stdexcept>

namespace mobility {

namespace {

constexpr std::uint16_t kAlphabet = 26;

// Officially assigned ISO 3166-1 alpha-2 codes.
constexpr std::string_view kIsoCodes =
    "AD AE AF AG AI AL AM AO AQ AR AS AT AU AW AX AZ BA BB BD BE BF BG BH BI BJ BL BM BN BO BQ "
    "BR BS BT BV BW BY BZ CA CC CD CF CG CH CI CK CL CM CN CO CR CU CV CW CX CY CZ DE DJ DK DM "
    "DO DZ EC EE EG EH ER ES ET FI FJ FK FM FO FR GA GB GD GE GF GG GH GI GL GM GN GP GQ GR GS "
    "GT GU GW GY HK HM HN HR HT HU ID IE IL IM IN IO IQ IR IS IT JE JM JO JP KE KG KH KI KM KN "
    "KP KR KW KY KZ LA LB LC LI LK LR LS LT LU LV LY MA MC MD ME MF MG MH MK ML MM MN MO MP MQ "
    "MR MS MT MU MV MW MX MY MZ NA NC NE NF NG NI NL NO NP NR NU NZ OM PA PE PF PG PH PK PL PM "
    "PN PR PS PT PW PY QA RE RO RS RU RW SA SB SC SD SE SG SH SI SJ SK SL SM SN SO SR SS ST SV "
    "SX SY SZ TC TD TF TG TH TJ TK TL TM TN TO TR TT TV TW TZ UA UG UM US UY UZ VA VC VE VG VI "
    "VN VU WF WS YE YT ZA ZM ZW";

std::bitset<kAlphabet * kAlphabet> build_iso_table() {
  std::bitset<kAlphabet * kAlphabet> table;
  for (std::size_t i = 0; i + 1 < kIsoCodes.size(); i += 3) {
    table.set((kIsoCodes[i] - 'A') * kAlphabet + (kIsoCodes[i + 1] - 'A'));
  }
  return table;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

char to_upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

}  // namespace

std::optional<Country> Country::parse(std::string_view text) {
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (text.size() != 2) return std::nullopt;
  const char a = to_upper(text[0]);
  const char b = to_upper(text[1]);
  if (a < 'A' || a > 'Z' || b < 'A' || b > 'Z') return std::nullopt;
  return Country(static_cast<std::uint16_t>((a - 'A') * kAlphabet + (b - 'A')));
}

Country Country::of(std::string_view text) {
  auto c = parse(text);
  if (!c) throw std::invalid_argument("invalid country code '" + std::string(text) + "'");
  return *c;
}

std::string Country::code() const {
  return {static_cast<char>('A' + index_ / kAlphabet), static_cast<char>('A' + index_ % kAlphabet)};
}

bool is_iso3166_alpha2(Country country) {
  static const auto table = build_iso_table();
  return table.test(country.index());
}

CountrySet::CountrySet(std::initializer_list<Country> countries) {
  for (Country c : countries) insert(c);
}

CountrySet CountrySet::of(std::initializer_list<std::string_view> codes) {
  CountrySet set;
  for (auto code : codes) set.insert(Country::of(code));
  return set;
}

void CountrySet::insert(Country country) {
  auto it = std::lower_bound(items_.begin(), items_.end(), country);
  if (it == items_.end() || *it != country) items_.insert(it, country);
}

void CountrySet::insert_all(const CountrySet& other) {
  for (Country c : other) insert(c);
}

bool CountrySet::contains(Country country) const {
  return std::binary_search(items_.begin(), items_.end(), country);
}

bool CountrySet::intersects(const CountrySet& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

bool CountrySet::is_subset_of(const CountrySet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

std::string CountrySet::join(char sep) const {
  std::string out;
  out.reserve(items_.size() * 3);
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out.push_back(sep);
    out += items_[i].code();
  }
  return out;
}

CountrySet CountrySet::parse_joined(std::string_view text, char sep) {
  CountrySet set;
  while (!text.empty()) {
    auto pos = text.find(sep);
    auto token = text.substr(0, pos);
    set.insert(Country::of(token));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return set;
}

CountrySet set_union(const CountrySet& a, const CountrySet& b) {
  CountrySet out = a;
  out.insert_all(b);
  return out;
}

CountrySet set_intersection(const CountrySet& a, const CountrySet& b) {
  CountrySet out;
  for (Country c : a) {
    if (b.contains(c)) out.insert(c);
  }
  return out;
}

CountrySet set_difference(const CountrySet& a, const CountrySet& b) {
  CountrySet out;
  for (Country c : a) {
    if (!b.contains(c)) out.insert(c);
  }
  return out;
}

}  // namespace mobility
