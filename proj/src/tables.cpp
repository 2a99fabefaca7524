// SPDX-License-Identifier: Apache-2.0

#include "mobility/tables.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace mobility {

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "jsonl") return OutputFormat::jsonl;
  return std::nullopt;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

TableWriter::TableWriter(std::ostream& out, OutputFormat format, std::vector<std::string> header)
    : out_(out), format_(format), header_(std::move(header)) {
  if (format_ == OutputFormat::csv) {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_escape(header_[i]);
    }
    out_ << '\n';
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != header_.size()) throw std::logic_error("row width does not match table header");
  ++rows_;
  if (format_ == OutputFormat::csv) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line.push_back(',');
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
            } else if constexpr (std::is_same_v<T, std::string>) {
              line += csv_escape(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              line += v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, double>) {
              line += format_double(v);
            } else {
              line += std::to_string(v);
            }
          },
          cells[i]);
    }
    line.push_back('\n');
    out_ << line;
    return;
  }
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            obj[header_[i]] = nullptr;
          } else {
            obj[header_[i]] = v;
          }
        },
        cells[i]);
  }
  out_ << obj.dump() << '\n';
}

void write_trajectory_rows(TableWriter& w, const Trajectory& t) {
  for (const auto& p : t.profiles) {
    w.row({t.author_id, std::int64_t{p.year}, p.countries.join(), p.has_co, p.has_multi, std::int64_t{p.pubs_all},
           std::int64_t{p.pubs_citable}});
  }
}

void write_event_rows(TableWriter& w, const EventLog& log) {
  if (log.singleton) {
    w.row({log.author_id, std::int64_t{log.singleton->year}, Cell{}, log.origin.join(), std::string{}, std::string{},
           std::string{}, std::string{}, false, false, std::string(to_string(log.singleton->code))});
    return;
  }
  for (const auto& ev : log.transitions) {
    w.row({log.author_id, std::int64_t{ev.year_from}, std::int64_t{ev.year_to}, ev.s_from.join(), ev.s_to.join(),
           ev.new_countries.join(), ev.lost_countries.join(), ev.reappeared_countries.join(), ev.rupture, ev.directional,
           ev.e_codes.join()});
  }
}

void write_researcher_row(TableWriter& w, const ResearcherProfile& p) {
  w.row({p.author_id, std::string(to_string(p.cls)), p.origin.join(), std::int64_t{p.first_year},
         std::int64_t{p.pubs_citable}, std::int64_t{p.pubs_all}, join_roles(p.roles), p.linked_countries.join()});
}

void write_researchers(std::ostream& out, std::span<const ResearcherProfile> profiles, OutputFormat format) {
  TableWriter w(out, format, kResearcherColumns);
  for (const auto& p : profiles) write_researcher_row(w, p);
}

namespace {

int parse_int_field(const std::string& text, std::size_t line, const char* column) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": column '" + column + "' is not an integer");
  }
  return value;
}

}  // namespace

std::vector<ResearcherProfile> read_researchers(std::istream& in) {
  std::vector<ResearcherProfile> out;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error("researcher table is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (split_csv_line(line) != kResearcherColumns) throw std::runtime_error("line 1: unexpected researcher table header");
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != kResearcherColumns.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kResearcherColumns.size()) + " columns");
    }
    try {
      ResearcherProfile p;
      p.author_id = f[0];
      auto cls = parse_mobility_class(f[1]);
      if (!cls) throw std::invalid_argument("unknown class '" + f[1] + "'");
      p.cls = *cls;
      p.origin = CountrySet::parse_joined(f[2]);
      p.first_year = parse_int_field(f[3], line_no, "first_year");
      p.pubs_citable = parse_int_field(f[4], line_no, "pubs_citable");
      p.pubs_all = parse_int_field(f[5], line_no, "pubs_all");
      p.roles = parse_roles(f[6]);
      p.linked_countries = CountrySet::parse_joined(f[7]);
      out.push_back(std::move(p));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_indicators(std::ostream& out, std::span<const IndicatorSet> rows, OutputFormat format) {
  TableWriter w(out, format, kIndicatorColumns);
  for (const auto& s : rows) {
    w.row({s.author_id, std::int64_t{s.pub_count}, optional_cell(s.mncs), optional_cell(s.hcp_share)});
  }
}

void write_pubcount_bins(std::ostream& out, std::span<const BinRow> rows, OutputFormat format) {
  TableWriter w(out, format, kPubcountBinColumns);
  for (const auto& r : rows) {
    w.row({r.bin, std::string(to_string(r.group)), static_cast<std::int64_t>(r.n), optional_cell(r.mean_hcp_share),
           optional_cell(r.mean_mncs)});
  }
}

namespace {

struct Column {
  std::string_view name;
  std::uint64_t (*get)(const CountryAggregate&);
};

const std::vector<Column>& columns_for(CountingMode mode) {
  static const std::vector<Column> linkage = {
      {"not-mobile", [](const CountryAggregate& a) { return a.linked(MobilityClass::not_mobile); }},
      {"migrant", [](const CountryAggregate& a) { return a.linked(MobilityClass::migrant); }},
      {"traveler-directional", [](const CountryAggregate& a) { return a.linked(MobilityClass::traveler_directional); }},
      {"traveler-non-directional",
       [](const CountryAggregate& a) { return a.linked(MobilityClass::traveler_non_directional); }},
  };
  static const std::vector<Column> roles = {
      {"emigrant", [](const CountryAggregate& a) { return a.emigrants; }},
      {"immigrant", [](const CountryAggregate& a) { return a.immigrants; }},
      {"outgoing", [](const CountryAggregate& a) { return a.outgoing; }},
      {"incoming", [](const CountryAggregate& a) { return a.incoming; }},
  };
  return mode == CountingMode::linkage ? linkage : roles;
}

}  // namespace

void write_country_long(std::ostream& out, const CountryTable& table, CountingMode mode, OutputFormat format) {
  TableWriter w(out, format, kCountryLongColumns);
  for (const auto& [country, row] : table.rows()) {
    for (const auto& col : columns_for(mode)) {
      const auto n = col.get(row);
      if (n > 0) w.row({country.code(), std::string(col.name), static_cast<std::int64_t>(n)});
    }
  }
}

void write_country_wide(std::ostream& out, std::span<const CountryAggregate> rows, CountingMode mode,
                        OutputFormat format) {
  std::vector<std::string> header = {"country"};
  for (const auto& col : columns_for(mode)) header.emplace_back(col.name);
  TableWriter w(out, format, header);
  for (const auto& row : rows) {
    std::vector<Cell> cells = {row.country.code()};
    for (const auto& col : columns_for(mode)) cells.emplace_back(static_cast<std::int64_t>(col.get(row)));
    w.row(cells);
  }
}

void write_balance(std::ostream& out, std::span<const CountryAggregate> rows, OutputFormat format) {
  TableWriter w(out, format, kBalanceColumns);
  for (const auto& row : rows) {
    w.row({row.country.code(), optional_cell(row.migrant_balance), optional_cell(row.traveler_balance)});
  }
}

void write_truth(std::ostream& out, const GroundTruth& truth) {
  TableWriter w(out, OutputFormat::csv, kTruthColumns);
  for (const auto& r : truth.researchers) {
    w.row({r.author_id, std::string(to_string(r.cls)), r.origin.join(), join_roles(r.roles)});
  }
}

}  // namespace mobility
