// SPDX-License-Identifier: Apache-2.0

#include "mobility/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mobility/pipeline.hpp"
#include "mobility/synth.hpp"
#include "mobility/tables.hpp"

namespace mobility::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string window;
  bool strict = false;
  bool lenient = false;
  std::string format = "csv";
  int max_gap = -1;
};

void add_common(CLI::App* sub, Common& c, bool with_format = true) {
  sub->add_option("--window", c.window, "Analysis window, e.g. 2008-2015 (default: $MOBILITY_WINDOW or 2008-2015)");
  auto* strict = sub->add_flag("--strict", c.strict, "Stop at the first data error (default)");
  auto* lenient = sub->add_flag("--lenient", c.lenient, "Skip and count bad records");
  strict->excludes(lenient);
  if (with_format) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  }
}

void add_max_gap(CLI::App* sub, Common& c) {
  sub->add_option("--max-gap", c.max_gap, "Largest year gap across which a rupture counts (default: unlimited)")
      ->check(CLI::PositiveNumber);
}

YearWindow resolve_window(const Common& c) {
  std::string text = c.window;
  if (text.empty()) {
    if (const char* env = std::getenv("MOBILITY_WINDOW"); env && *env) text = env;
  }
  if (text.empty()) return YearWindow{};
  auto w = parse_year_window(text);
  if (!w) throw UsageError("invalid window '" + text + "' (expected YYYY or YYYY-YYYY with start <= end)");
  return *w;
}

IngestOptions ingest_options(const Common& c) {
  return IngestOptions{resolve_window(c), c.lenient ? Strictness::lenient : Strictness::strict};
}

EventOptions event_options(const Common& c) {
  EventOptions o;
  if (c.max_gap > 0) o.max_gap = c.max_gap;
  return o;
}

OutputFormat output_format(const Common& c) { return *parse_output_format(c.format); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path.string() + "'");
  return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

json class_counts(const std::array<std::uint64_t, 4>& tallies) {
  json j = json::object();
  for (auto cls : kAllClasses) j[std::string(to_string(cls))] = tallies[static_cast<std::size_t>(cls)];
  return j;
}

json report_json(const ValidationReport& report) {
  json j = json::parse(report.to_json());
  j.erase("details");
  return j;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
  Common common;
  std::string input;
  std::string report;
};

int do_validate(const ValidateArgs& a, json& summary) {
  auto opts = ingest_options(a.common);
  const bool strict = opts.strictness == Strictness::strict;
  opts.strictness = Strictness::lenient;
  CorpusReader reader(a.input, opts);
  reader.for_each([](const PublicationRecord&) {});
  const auto& report = reader.report();
  if (!a.report.empty()) {
    auto out = open_output(a.report);
    TableWriter w(out, OutputFormat::csv, {"line", "kind", "field", "message"});
    for (const auto& v : report.details()) {
      w.row({static_cast<std::int64_t>(v.line), std::string(to_string(v.kind)), v.field, v.message});
    }
    close_output(out, a.report);
  }
  summary["valid"] = report.total_errors() == 0;
  summary.update(report_json(report));
  return strict && report.total_errors() > 0 ? kDataError : kOk;
}

// ---- classify / events ----------------------------------------------------

struct ClassifyArgs {
  Common common;
  std::string input;
  std::string out;
  std::string trajectories;
  std::string events;
};

int do_classify(const ClassifyArgs& a, json& summary) {
  const auto format = output_format(a.common);
  std::optional<std::ofstream> out_file, traj_file, event_file;
  std::optional<TableWriter> researchers, trajectories, events;
  if (!a.out.empty()) {
    out_file = open_output(a.out);
    researchers.emplace(*out_file, format, kResearcherColumns);
  }
  if (!a.trajectories.empty()) {
    traj_file = open_output(a.trajectories);
    trajectories.emplace(*traj_file, format, kTrajectoryColumns);
  }
  if (!a.events.empty()) {
    event_file = open_output(a.events);
    events.emplace(*event_file, format, kEventColumns);
  }
  const auto stats = classify_corpus(a.input, ingest_options(a.common), event_options(a.common),
                                     [&](const Trajectory& t, const EventLog& log, const ResearcherProfile& p) {
                                       if (researchers) write_researcher_row(*researchers, p);
                                       if (trajectories) write_trajectory_rows(*trajectories, t);
                                       if (events) write_event_rows(*events, log);
                                     });
  if (out_file) close_output(*out_file, a.out);
  if (traj_file) close_output(*traj_file, a.trajectories);
  if (event_file) close_output(*event_file, a.events);
  summary.update(report_json(stats.report));
  summary["links"] = stats.links;
  summary["researchers"] = stats.researchers;
  summary["author_years"] = stats.author_years;
  summary["classes"] = class_counts(stats.tallies);
  return kOk;
}

// ---- indicators -----------------------------------------------------------

struct IndicatorArgs {
  Common common;
  std::string input;
  std::string out;
  std::string bins;
};

int do_indicators(const IndicatorArgs& a, json& summary) {
  const auto format = output_format(a.common);
  const auto opts = ingest_options(a.common);
  auto result = indicators_for_corpus(a.input, opts);
  {
    auto out = open_output(a.out);
    write_indicators(out, result.indicators, format);
    close_output(out, a.out);
  }
  if (!a.bins.empty()) {
    std::vector<ResearcherProfile> profiles;
    classify_corpus(a.input, opts, event_options(a.common),
                    [&](const Trajectory&, const EventLog&, const ResearcherProfile& p) { profiles.push_back(p); });
    auto out = open_output(a.bins);
    write_pubcount_bins(out, bin_by_pubcount(result.indicators, profiles), format);
    close_output(out, a.bins);
  }
  summary.update(report_json(result.report));
  summary["cells"] = result.baselines.size();
  summary["researchers"] = result.indicators.size();
  return kOk;
}

// ---- aggregate / report ---------------------------------------------------

struct ProfileSource {
  std::string input;
  std::string researchers;
};

void check_source(const ProfileSource& s) {
  if (s.input.empty() == s.researchers.empty()) throw UsageError("exactly one of --input or --researchers is required");
}

/// Streams researcher profiles from a corpus or from a classify output.
void for_each_profile(const ProfileSource& s, const Common& c, const std::function<void(const ResearcherProfile&)>& fn,
                      json& summary) {
  if (!s.input.empty()) {
    const auto stats = classify_corpus(s.input, ingest_options(c), event_options(c),
                                       [&](const Trajectory&, const EventLog&, const ResearcherProfile& p) { fn(p); });
    summary.update(report_json(stats.report));
    return;
  }
  std::ifstream in(s.researchers, std::ios::binary);
  if (!in) throw IoError("cannot open '" + s.researchers + "'");
  for (const auto& p : read_researchers(in)) fn(p);
}

struct AggregateArgs {
  Common common;
  ProfileSource source;
  std::string counting = "linkage";
  int min_pubs = 0;
  std::string out;
  std::string wide;
  std::string balance;
};

int do_aggregate(const AggregateArgs& a, json& summary) {
  check_source(a.source);
  const auto format = output_format(a.common);
  const auto mode = *parse_counting_mode(a.counting);
  CountryTable table;
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;
  for_each_profile(
      a.source, a.common,
      [&](const ResearcherProfile& p) {
        if (p.pubs_citable < a.min_pubs) {
          ++dropped;
          return;
        }
        ++kept;
        table.add(p);
      },
      summary);
  table.compute_balances();
  std::vector<CountryAggregate> rows;
  for (const auto& [country, row] : table.rows()) rows.push_back(row);
  {
    auto out = open_output(a.out);
    write_country_long(out, table, mode, format);
    close_output(out, a.out);
  }
  if (!a.wide.empty()) {
    auto out = open_output(a.wide);
    write_country_wide(out, rows, mode, format);
    close_output(out, a.wide);
  }
  if (!a.balance.empty()) {
    auto out = open_output(a.balance);
    write_balance(out, rows, format);
    close_output(out, a.balance);
  }
  summary["counting"] = a.counting;
  summary["min_pubs"] = a.min_pubs;
  summary["researchers"] = kept;
  summary["below_threshold"] = dropped;
  summary["countries"] = rows.size();
  return kOk;
}

struct ReportArgs {
  Common common;
  ProfileSource source;
  std::string out_dir;
  std::size_t top = 30;
};

int do_report(const ReportArgs& a, json& summary) {
  check_source(a.source);
  const auto format = output_format(a.common);
  const std::string ext = format == OutputFormat::csv ? ".csv" : ".jsonl";
  const fs::path dir = a.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

  std::vector<ResearcherProfile> profiles;
  for_each_profile(a.source, a.common, [&](const ResearcherProfile& p) { profiles.push_back(p); }, summary);

  auto write = [&](const std::string& name, const auto& body) {
    const fs::path path = dir / (name + ext);
    auto out = open_output(path);
    body(out);
    close_output(out, path);
  };

  json thresholds = json::array();
  for (int k : {0, 5, 10}) {
    const auto kept = apply_min_pub_threshold(profiles, k);
    const auto table = aggregate_countries(kept);
    const auto by_linked =
        top_countries(table, a.top, [](const CountryAggregate& c) { return c.mobile_linked(); });
    const auto by_roles =
        top_countries(table, a.top, [](const CountryAggregate& c) { return c.directional_roles(); });
    const std::string suffix = "_min" + std::to_string(k);
    write("countries_linkage" + suffix,
          [&](std::ostream& out) { write_country_wide(out, by_linked, CountingMode::linkage, format); });
    write("countries_roles" + suffix,
          [&](std::ostream& out) { write_country_wide(out, by_roles, CountingMode::roles, format); });
    write("balance" + suffix, [&](std::ostream& out) { write_balance(out, by_roles, format); });

    std::array<std::uint64_t, 4> tallies{};
    for (const auto& p : kept) ++tallies[static_cast<std::size_t>(p.cls)];
    json shares = json::object();
    for (auto cls : kAllClasses) {
      shares[std::string(to_string(cls))] =
          kept.empty() ? json(nullptr)
                       : json(static_cast<double>(tallies[static_cast<std::size_t>(cls)]) / kept.size());
    }
    thresholds.push_back(json{{"min_pubs", k},
                              {"researchers", kept.size()},
                              {"countries", table.rows().size()},
                              {"classes", class_counts(tallies)},
                              {"shares", shares}});
  }

  if (!a.source.input.empty()) {
    const auto result = indicators_for_corpus(a.source.input, ingest_options(a.common));
    write("pubcount_bins",
          [&](std::ostream& out) { write_pubcount_bins(out, bin_by_pubcount(result.indicators, profiles), format); });
  }

  json doc{{"researchers", profiles.size()},
           {"top", a.top},
           {"thresholds", thresholds},
           {"notes",
            json::array({"balance = (in - out) / (in + out) over role counts; null when both are zero",
                         "linkage counts add each researcher once to every country it was affiliated with"})}};
  {
    const fs::path path = dir / "summary.json";
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    close_output(out, path);
  }
  summary["out_dir"] = dir.string();
  summary["researchers"] = profiles.size();
  return kOk;
}

// ---- synth / perturb ------------------------------------------------------

struct SynthArgs {
  Common common;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  int authors_per_paper = 0;
  std::string config;
  std::string out;
  std::string truth;
  CLI::Option* n_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* app_opt = nullptr;
};

int do_synth(const SynthArgs& a, json& summary) {
  SynthConfig config;
  if (!a.config.empty()) {
    std::ifstream in(a.config, std::ios::binary);
    if (!in) throw IoError("cannot open '" + a.config + "'");
    std::ostringstream text;
    text << in.rdbuf();
    config = synth_config_from_json(text.str());
  }
  if (a.config.empty() || !a.common.window.empty()) config.window = resolve_window(a.common);
  if (a.n_opt->count()) config.n_researchers = a.n;
  if (a.seed_opt->count()) config.seed = a.seed;
  if (a.app_opt->count()) config.authors_per_paper = a.authors_per_paper;
  config.validate();

  auto out = open_output(a.out);
  std::optional<std::ofstream> truth_file;
  std::optional<TableWriter> truth;
  if (!a.truth.empty()) {
    truth_file = open_output(a.truth);
    truth.emplace(*truth_file, OutputFormat::csv, kTruthColumns);
  }
  std::uint64_t records = 0;
  std::uint64_t links = 0;
  std::array<std::uint64_t, 4> tallies{};
  std::string line;
  CohortGenerator gen(config);
  gen.run(
      [&](const PublicationRecord& r) {
        line = serialize_record(r);
        line.push_back('\n');
        out << line;
        ++records;
        links += r.authorships.size();
      },
      [&](const PlantedResearcher& p) {
        ++tallies[static_cast<std::size_t>(p.cls)];
        if (truth) truth->row({p.author_id, std::string(to_string(p.cls)), p.origin.join(), join_roles(p.roles)});
      });
  close_output(out, a.out);
  if (truth_file) close_output(*truth_file, a.truth);
  summary["seed"] = config.seed;
  summary["researchers"] = config.n_researchers;
  summary["records"] = records;
  summary["links"] = links;
  summary["classes"] = class_counts(tallies);
  return kOk;
}

struct PerturbArgs {
  Common common;
  std::string input;
  std::string out;
  double split_prob = 0.0;
  std::uint64_t seed = 42;
};

int do_perturb(const PerturbArgs& a, json& summary) {
  const auto opts = ingest_options(a.common);
  SplitPlan plan;
  {
    TrajectoryBuilder builder;
    CorpusReader reader(a.input, opts);
    reader.for_each([&](const PublicationRecord& r) { builder.add(r); });
    builder.drain([&](Trajectory&& t) {
      if (auto year = split_boundary(t, a.split_prob, a.seed)) plan.boundary.emplace(t.author_id, *year);
    });
  }
  auto out = open_output(a.out);
  CorpusReader reader(a.input, opts);
  std::uint64_t records = 0;
  reader.for_each([&](const PublicationRecord& r) {
    out << serialize_record(apply_split(r, plan)) << '\n';
    ++records;
  });
  close_output(out, a.out);
  summary.update(report_json(reader.report()));
  summary["split_prob"] = a.split_prob;
  summary["seed"] = a.seed;
  summary["records"] = records;
  summary["split_authors"] = plan.boundary.size();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Researcher mobility trajectories, classes and country indicators", "mobility"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check a JSONL corpus and count violations by kind");
  validate->add_option("--input", va.input, "Corpus (JSONL)")->required()->check(CLI::ExistingFile);
  validate->add_option("--report", va.report, "CSV listing located violations");
  add_common(validate, va.common, false);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Classify every researcher in a corpus");
  classify->add_option("--input", ca.input, "Corpus (JSONL)")->required()->check(CLI::ExistingFile);
  classify->add_option("--out", ca.out, "Researcher table")->required();
  classify->add_option("--trajectories", ca.trajectories, "Per-author-year table");
  classify->add_option("--events", ca.events, "Transition event table");
  add_common(classify, ca.common);
  add_max_gap(classify, ca.common);

  ClassifyArgs ea;
  auto* events = app.add_subcommand("events", "List mobility events per researcher");
  events->add_option("--input", ea.input, "Corpus (JSONL)")->required()->check(CLI::ExistingFile);
  events->add_option("--out", ea.events, "Transition event table")->required();
  add_common(events, ea.common);
  add_max_gap(events, ea.common);

  IndicatorArgs ia;
  auto* indicators = app.add_subcommand("indicators", "Per-researcher MNCS and highly-cited share");
  indicators->add_option("--input", ia.input, "Corpus (JSONL)")->required()->check(CLI::ExistingFile);
  indicators->add_option("--out", ia.out, "Indicator table")->required();
  indicators->add_option("--bins", ia.bins, "Indicators binned by publication count and class");
  add_common(indicators, ia.common);
  add_max_gap(indicators, ia.common);

  AggregateArgs aa;
  auto* aggregate = app.add_subcommand("aggregate", "Country counts by class or role, with balances");
  auto* agg_in = aggregate->add_option("--input", aa.source.input, "Corpus (JSONL)")->check(CLI::ExistingFile);
  auto* agg_res = aggregate->add_option("--researchers", aa.source.researchers, "Researcher table from classify")
                      ->check(CLI::ExistingFile);
  agg_in->excludes(agg_res);
  aggregate->add_option("--counting", aa.counting, "linkage or roles")->check(CLI::IsMember({"linkage", "roles"}));
  aggregate->add_option("--min-pubs", aa.min_pubs, "Keep researchers with at least this many articles and reviews")
      ->check(CLI::NonNegativeNumber);
  aggregate->add_option("--out", aa.out, "Long-format country table")->required();
  aggregate->add_option("--wide", aa.wide, "Wide-format country table");
  aggregate->add_option("--balance", aa.balance, "Balance rates per country");
  add_common(aggregate, aa.common);
  add_max_gap(aggregate, aa.common);

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Country rankings, balances and class shares at 0/5/10 papers");
  auto* rep_in = report->add_option("--input", ra.source.input, "Corpus (JSONL)")->check(CLI::ExistingFile);
  auto* rep_res = report->add_option("--researchers", ra.source.researchers, "Researcher table from classify")
                      ->check(CLI::ExistingFile);
  rep_in->excludes(rep_res);
  report->add_option("--out-dir", ra.out_dir, "Directory for the report files")->required();
  report->add_option("--top", ra.top, "Countries per ranking (0 keeps all)");
  add_common(report, ra.common);
  add_max_gap(report, ra.common);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate a planted synthetic cohort");
  sa.n_opt = synth->add_option("--n", sa.n, "Number of researchers");
  sa.seed_opt = synth->add_option("--seed", sa.seed, "Random seed");
  sa.app_opt = synth->add_option("--authors-per-paper", sa.authors_per_paper, "Authors packed onto each record")
                   ->check(CLI::PositiveNumber);
  synth->add_option("--config", sa.config, "JSON generator settings")->check(CLI::ExistingFile);
  synth->add_option("--out", sa.out, "Corpus (JSONL)")->required();
  synth->add_option("--truth", sa.truth, "Planted classes and roles (CSV)");
  add_common(synth, sa.common, false);

  PerturbArgs pa;
  auto* perturb = app.add_subcommand("perturb", "Split author identities at random tracked-year boundaries");
  perturb->add_option("--input", pa.input, "Corpus (JSONL)")->required()->check(CLI::ExistingFile);
  perturb->add_option("--out", pa.out, "Perturbed corpus (JSONL)")->required();
  perturb->add_option("--split-prob", pa.split_prob, "Probability that an author is split")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  perturb->add_option("--seed", pa.seed, "Random seed");
  add_common(perturb, pa.common, false);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("mobility");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  json summary = json::object();
  int code = kOk;
  try {
    if (validate->parsed()) {
      summary["command"] = "validate";
      code = do_validate(va, summary);
    } else if (classify->parsed()) {
      summary["command"] = "classify";
      code = do_classify(ca, summary);
    } else if (events->parsed()) {
      summary["command"] = "events";
      code = do_classify(ea, summary);
    } else if (indicators->parsed()) {
      summary["command"] = "indicators";
      code = do_indicators(ia, summary);
    } else if (aggregate->parsed()) {
      summary["command"] = "aggregate";
      code = do_aggregate(aa, summary);
    } else if (report->parsed()) {
      summary["command"] = "report";
      code = do_report(ra, summary);
    } else if (synth->parsed()) {
      summary["command"] = "synth";
      code = do_synth(sa, summary);
    } else if (perturb->parsed()) {
      summary["command"] = "perturb";
      code = do_perturb(pa, summary);
    }
  } catch (const RecordError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  summary["exit_code"] = code;
  out << summary.dump() << '\n';
  return code;
}

}  // namespace mobility::cli
