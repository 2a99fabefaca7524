// SPDX-License-Identifier: Apache-2.0

#include "mobility/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace mobility {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// The standard distributions are implementation-defined, so draws are
// derived from raw engine output to keep corpora identical across
// standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  /// Failures before the first success.
  int geometric(double p) {
    if (p >= 1.0) return 0;
    const double u = uniform();
    return static_cast<int>(std::floor(std::log1p(-u) / std::log1p(-p)));
  }

  std::int64_t exponential_count(double mean) {
    if (mean <= 0.0) return 0;
    return static_cast<std::int64_t>(std::floor(-mean * std::log1p(-uniform())));
  }

 private:
  std::mt19937_64 engine_;
};

// Pool members are drawn from the ISO list in a fixed order.
constexpr std::string_view kPoolOrder =
    "US CN GB DE JP FR CA IT ES AU IN KR NL BR CH SE PL TW BE IR RU TR DK AT IL NO FI PT SG MX "
    "ZA GR CZ NZ IE AR CL EG HU SA TH MY PK NG CO RO UA ID VN KE";

std::vector<Country> build_pool(int size) {
  std::vector<Country> pool;
  for (std::size_t i = 0; i + 1 < kPoolOrder.size() && static_cast<int>(pool.size()) < size; i += 3) {
    pool.push_back(Country::of(kPoolOrder.substr(i, 2)));
  }
  return pool;
}

constexpr int kMaxPool = 50;

MobilityClass pick_class(const std::array<double, 4>& mix, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mix.size(); ++i) {
    acc += mix[i];
    if (u < acc) return kAllClasses[i];
  }
  for (std::size_t i = mix.size(); i-- > 0;) {
    if (mix[i] > 0.0) return kAllClasses[i];
  }
  return MobilityClass::not_mobile;
}

std::vector<CountryRole> sorted_roles(std::vector<CountryRole> roles) {
  std::sort(roles.begin(), roles.end());
  roles.erase(std::unique(roles.begin(), roles.end()), roles.end());
  return roles;
}

}  // namespace

void SynthConfig::validate() const {
  auto bad = [](const std::string& what) { throw std::invalid_argument("invalid synth config: " + what); };
  if (n_researchers < 1) bad("n_researchers must be >= 1");
  double sum = 0.0;
  for (double p : class_mix) {
    if (!(p >= 0.0 && p <= 1.0)) bad("class_mix entries must lie in [0, 1]");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12) bad("class_mix must sum to 1");
  if (window.first > window.last) bad("window start after end");
  const int width = window.last - window.first + 1;
  if ((class_mix[1] > 0 || class_mix[2] > 0) && width < 2) bad("migrants and directional travelers need a window of >= 2 years");
  if (country_pool < 3 || country_pool > kMaxPool) bad("country_pool must lie in [3, 50]");
  if (!(extra_year_prob >= 0.0 && extra_year_prob < 1.0)) bad("extra_year_prob must lie in [0, 1)");
  if (!(papers_per_year_p > 0.0 && papers_per_year_p <= 1.0)) bad("papers_per_year_p must lie in (0, 1]");
  if (!(co_affiliation_prob >= 0.0 && co_affiliation_prob <= 1.0)) bad("co_affiliation_prob must lie in [0, 1]");
  if (!(citable_share >= 0.0 && citable_share <= 1.0)) bad("citable_share must lie in [0, 1]");
  if (!(review_share >= 0.0 && review_share <= 1.0)) bad("review_share must lie in [0, 1]");
  if (fields < 1) bad("fields must be >= 1");
  if (!(citation_mean >= 0.0)) bad("citation_mean must be >= 0");
  if (authors_per_paper < 1) bad("authors_per_paper must be >= 1");
}

SynthConfig synth_config_from_json(const std::string& text) {
  using nlohmann::json;
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw std::invalid_argument("synth config must be a JSON object");
  SynthConfig c;
  try {
    for (auto& [key, value] : doc.items()) {
      if (key == "n_researchers") c.n_researchers = value.get<std::uint64_t>();
      else if (key == "class_mix") c.class_mix = value.get<std::array<double, 4>>();
      else if (key == "window") c.window = YearWindow{value.at(0).get<int>(), value.at(1).get<int>()};
      else if (key == "country_pool") c.country_pool = value.get<int>();
      else if (key == "extra_year_prob") c.extra_year_prob = value.get<double>();
      else if (key == "papers_per_year_p") c.papers_per_year_p = value.get<double>();
      else if (key == "co_affiliation_prob") c.co_affiliation_prob = value.get<double>();
      else if (key == "citable_share") c.citable_share = value.get<double>();
      else if (key == "review_share") c.review_share = value.get<double>();
      else if (key == "fields") c.fields = value.get<int>();
      else if (key == "citation_mean") c.citation_mean = value.get<double>();
      else if (key == "authors_per_paper") c.authors_per_paper = value.get<int>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else throw std::invalid_argument("unknown synth config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("synth config: ") + e.what());
  }
  c.validate();
  return c;
}

std::string synth_config_to_json(const SynthConfig& c) {
  nlohmann::ordered_json doc;
  doc["n_researchers"] = c.n_researchers;
  doc["class_mix"] = c.class_mix;
  doc["window"] = {c.window.first, c.window.last};
  doc["country_pool"] = c.country_pool;
  doc["extra_year_prob"] = c.extra_year_prob;
  doc["papers_per_year_p"] = c.papers_per_year_p;
  doc["co_affiliation_prob"] = c.co_affiliation_prob;
  doc["citable_share"] = c.citable_share;
  doc["review_share"] = c.review_share;
  doc["fields"] = c.fields;
  doc["citation_mean"] = c.citation_mean;
  doc["authors_per_paper"] = c.authors_per_paper;
  doc["seed"] = c.seed;
  return doc.dump();
}

std::array<std::uint64_t, 4> GroundTruth::tallies() const {
  std::array<std::uint64_t, 4> out{};
  for (const auto& r : researchers) ++out[static_cast<std::size_t>(r.cls)];
  return out;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

std::string synth_author_id(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "a%08llu", static_cast<unsigned long long>(index));
  return buf;
}

CohortGenerator::CohortGenerator(SynthConfig config) : config_(std::move(config)) {
  config_.validate();
  pool_ = build_pool(config_.country_pool);
}

PlantedResearcher CohortGenerator::plant(std::uint64_t index, std::vector<Slot>& slots) const {
  Draw draw(substream_seed(config_.seed, index));
  PlantedResearcher truth;
  truth.author_id = synth_author_id(index);
  truth.cls = pick_class(config_.class_mix, draw.uniform());

  // Tracked years: distinct years of the window, ascending.
  const int width = config_.window.last - config_.window.first + 1;
  const bool needs_two = truth.cls == MobilityClass::migrant || truth.cls == MobilityClass::traveler_directional;
  const int min_years = needs_two ? 2 : 1;
  const int n_years = std::min(width, min_years + draw.geometric(1.0 - config_.extra_year_prob));
  std::vector<int> all_years(width);
  for (int i = 0; i < width; ++i) all_years[i] = config_.window.first + i;
  for (int i = 0; i < n_years; ++i) {
    std::swap(all_years[i], all_years[i + draw.index(width - i)]);
  }
  std::vector<int> years(all_years.begin(), all_years.begin() + n_years);
  std::sort(years.begin(), years.end());

  // Three distinct countries; templates use as many as they need.
  std::array<Country, 3> c{};
  {
    std::vector<Country> pool = pool_;
    for (int i = 0; i < 3; ++i) {
      std::swap(pool[i], pool[i + draw.index(pool.size() - i)]);
      c[i] = pool[i];
    }
  }

  const std::string field = "F" + std::to_string(draw.index(config_.fields));

  // One year's publications: `members` gives the year's country set, `co`
  // chooses one co-affiliated paper over separate papers per country.
  auto add_year = [&](int year, std::vector<Country> members, bool co) {
    int papers = 1 + draw.geometric(config_.papers_per_year_p);
    std::vector<CountrySet> sets;
    if (members.size() == 1) {
      sets.assign(papers, CountrySet{members[0]});
    } else if (co) {
      CountrySet all;
      for (Country m : members) all.insert(m);
      sets.push_back(all);
      for (int i = 1; i < papers; ++i) sets.push_back(draw.bernoulli(0.5) ? all : CountrySet{members[0]});
    } else {
      papers = std::max<int>(papers, static_cast<int>(members.size()));
      for (Country m : members) sets.push_back(CountrySet{m});
      for (int i = static_cast<int>(members.size()); i < papers; ++i) sets.push_back(CountrySet{members[draw.index(members.size())]});
    }
    for (auto& s : sets) {
      DocType type = DocType::letter;
      if (draw.bernoulli(config_.citable_share)) {
        type = draw.bernoulli(config_.review_share) ? DocType::review : DocType::article;
      } else {
        static constexpr std::array<DocType, 3> other = {DocType::letter, DocType::proceedings, DocType::other};
        type = other[draw.index(other.size())];
      }
      slots.push_back(Slot{truth.author_id, year, std::move(s), type, field, draw.exponential_count(config_.citation_mean)});
    }
  };

  const std::size_t k = years.size();
  std::vector<CountryRole> roles;
  switch (truth.cls) {
    case MobilityClass::not_mobile:
      truth.origin = CountrySet{c[0]};
      for (int y : years) add_year(y, {c[0]}, false);
      break;
    case MobilityClass::migrant: {
      // Single country up to the move, the destination only from then on.
      const std::size_t move = 1 + draw.index(k - 1);
      truth.origin = CountrySet{c[0]};
      for (std::size_t i = 0; i < k; ++i) add_year(years[i], {i < move ? c[0] : c[1]}, false);
      roles = {{c[0], Role::emigrant_from}, {c[1], Role::immigrant_to}};
      break;
    }
    case MobilityClass::traveler_directional: {
      // Origin alone, then a second country alongside it; the origin never
      // drops out, so no year is disjoint from the one before.
      const std::size_t gain = 1 + draw.index(k - 1);
      truth.origin = CountrySet{c[0]};
      roles = {{c[0], Role::outgoing_from}, {c[1], Role::incoming_to}};
      for (std::size_t i = 0; i < k; ++i) {
        if (i < gain) {
          add_year(years[i], {c[0]}, false);
        } else if (i == gain) {
          add_year(years[i], {c[0], c[1]}, draw.bernoulli(config_.co_affiliation_prob));
        } else {
          const std::size_t pick = draw.index(3);
          if (pick == 0) {
            add_year(years[i], {c[0]}, false);
          } else {
            const Country partner = pick == 1 ? c[1] : c[2];
            if (partner == c[2]) roles.push_back({c[2], Role::incoming_to});
            add_year(years[i], {c[0], partner}, draw.bernoulli(config_.co_affiliation_prob));
          }
        }
      }
      break;
    }
    case MobilityClass::traveler_non_directional: {
      // Two origin countries in the first year; later years keep the first
      // origin country and never add a third.
      truth.origin = CountrySet{c[0], c[1]};
      for (std::size_t i = 0; i < k; ++i) {
        if (i == 0 || draw.bernoulli(0.5)) {
          add_year(years[i], {c[0], c[1]}, draw.bernoulli(config_.co_affiliation_prob));
        } else {
          add_year(years[i], {c[0]}, false);
        }
      }
      break;
    }
  }
  truth.roles = sorted_roles(std::move(roles));
  return truth;
}

void CohortGenerator::emit(PublicationRecord record, const RecordSink& records) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%010llu", static_cast<unsigned long long>(next_pub_++));
  record.pub_id = buf;
  records(record);
}

void CohortGenerator::place(Slot slot, const RecordSink& records) {
  Authorship authorship{slot.author_id, std::move(slot.countries)};
  if (config_.authors_per_paper == 1) {
    emit(PublicationRecord{"", slot.year, slot.doc_type, std::move(slot.field_id), slot.citations, {std::move(authorship)}},
         records);
    return;
  }
  auto& open = open_papers_[slot.year];
  for (auto it = open.begin(); it != open.end(); ++it) {
    const bool present = std::any_of(it->authorships.begin(), it->authorships.end(),
                                     [&](const Authorship& a) { return a.author_id == authorship.author_id; });
    if (present) continue;
    it->authorships.push_back(std::move(authorship));
    if (static_cast<int>(it->authorships.size()) == config_.authors_per_paper) {
      PublicationRecord full = std::move(*it);
      open.erase(it);
      emit(std::move(full), records);
    }
    return;
  }
  open.push_back(PublicationRecord{"", slot.year, slot.doc_type, std::move(slot.field_id), slot.citations, {std::move(authorship)}});
}

void CohortGenerator::flush_all(const RecordSink& records) {
  for (int year = config_.window.first; year <= config_.window.last; ++year) {
    auto it = open_papers_.find(year);
    if (it == open_papers_.end()) continue;
    for (auto& paper : it->second) emit(std::move(paper), records);
  }
  open_papers_.clear();
}

void CohortGenerator::run(const RecordSink& records, const TruthSink& truth) {
  next_pub_ = 0;
  open_papers_.clear();
  std::vector<Slot> slots;
  for (std::uint64_t i = 0; i < config_.n_researchers; ++i) {
    slots.clear();
    PlantedResearcher planted = plant(i, slots);
    if (truth) truth(planted);
    for (auto& s : slots) place(std::move(s), records);
  }
  flush_all(records);
}

Cohort generate_cohort(const SynthConfig& config) {
  Cohort cohort;
  CohortGenerator gen(config);
  gen.run([&](const PublicationRecord& r) { cohort.records.push_back(r); },
          [&](const PlantedResearcher& p) { cohort.truth.researchers.push_back(p); });
  return cohort;
}

std::string SplitPlan::identity(const std::string& author_id, int year) const {
  auto it = boundary.find(author_id);
  if (it == boundary.end()) return author_id;
  return author_id + (year < it->second ? "~1" : "~2");
}

std::optional<int> split_boundary(const Trajectory& trajectory, double split_prob, std::uint64_t seed) {
  if (!(split_prob >= 0.0 && split_prob <= 1.0)) throw std::invalid_argument("split_prob must lie in [0, 1]");
  if (trajectory.profiles.size() < 2) return std::nullopt;
  Draw draw(splitmix64(seed ^ fnv1a(trajectory.author_id)));
  if (!draw.bernoulli(split_prob)) return std::nullopt;
  const std::size_t cut = 1 + draw.index(trajectory.profiles.size() - 1);
  return trajectory.profiles[cut].year;
}

SplitPlan plan_splits(std::span<const Trajectory> trajectories, double split_prob, std::uint64_t seed) {
  SplitPlan plan;
  for (const auto& t : trajectories) {
    if (auto year = split_boundary(t, split_prob, seed)) plan.boundary.emplace(t.author_id, *year);
  }
  return plan;
}

PublicationRecord apply_split(PublicationRecord record, const SplitPlan& plan) {
  for (auto& a : record.authorships) a.author_id = plan.identity(a.author_id, record.year);
  return record;
}

std::vector<PublicationRecord> split_perturbation(std::span<const PublicationRecord> records, double split_prob,
                                                  std::uint64_t seed) {
  const auto plan = plan_splits(build_trajectories(records), split_prob, seed);
  std::vector<PublicationRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(apply_split(r, plan));
  return out;
}

std::vector<PublicationRecord> split_author_at(std::span<const PublicationRecord> records, const std::string& author_id,
                                               int boundary_year) {
  SplitPlan plan;
  plan.boundary.emplace(author_id, boundary_year);
  std::vector<PublicationRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(apply_split(r, plan));
  return out;
}

}  // namespace mobility
