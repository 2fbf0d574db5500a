#include "chroma_infer/associations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "chroma_infer/csv.hpp"
#include "chroma_infer/error.hpp"

namespace chroma_infer::associations {

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::parse, "'" + std::string(s) + "' is not a number");
  }
  return v;
}

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string to_string(const ColorRef& ref) {
  if (const int* index = std::get_if<int>(&ref)) return std::to_string(*index);
  const auto& lab = std::get<color::LabColor>(ref);
  return "lab:" + format_number(lab.L) + ":" + format_number(lab.a) + ":" + format_number(lab.b);
}

ColorRef parse_color_ref(std::string_view text) {
  if (text.starts_with("lab:")) {
    std::string_view rest = text.substr(4);
    double parts[3];
    for (int i = 0; i < 3; ++i) {
      const auto colon = rest.find(':');
      if ((i < 2) == (colon == std::string_view::npos)) {
        throw Error(ErrorCode::parse, "expected lab:L:a:b, got '" + std::string(text) + "'");
      }
      parts[i] = parse_double(rest.substr(0, colon));
      rest = i < 2 ? rest.substr(colon + 1) : std::string_view{};
    }
    color::LabColor lab{parts[0], parts[1], parts[2]};
    color::validate(lab);
    return lab;
  }
  int index = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorCode::parse, "'" + std::string(text) + "' is not a color index or lab:L:a:b");
  }
  if (index < 1) throw Error(ErrorCode::parse, "color index must be positive");
  return index;
}

double normalize_rating(int raw) {
  if (raw < kRawRatingMin || raw > kRawRatingMax) {
    throw Error(ErrorCode::validation,
                "rating " + std::to_string(raw) + " outside [-200, 200]");
  }
  return (static_cast<double>(raw) + 200.0) / 400.0;
}

void AttentionCheckSpec::validate() const {
  std::set<int> strong(strong_colors.begin(), strong_colors.end());
  std::set<int> weak(weak_colors.begin(), weak_colors.end());
  if (strong.size() != strong_colors.size() || weak.size() != weak_colors.size()) {
    throw Error(ErrorCode::validation, "attention check color sets contain duplicates");
  }
  for (int c : strong) {
    if (weak.contains(c)) {
      throw Error(ErrorCode::validation, "attention check strong and weak sets overlap at color " +
                                             std::to_string(c));
    }
  }
  if (min_pass < 0 || min_pass > static_cast<int>(strong_colors.size())) {
    throw Error(ErrorCode::validation, "attention check min_pass out of range");
  }
}

bool attention_check(const std::map<int, double>& ratings, const AttentionCheckSpec& spec) {
  spec.validate();
  auto rating = [&](int c) {
    const auto it = ratings.find(c);
    if (it == ratings.end()) {
      throw Error(ErrorCode::incomplete_data,
                  "attention check rating missing for color " + std::to_string(c));
    }
    return it->second;
  };
  int strong_hits = 0, weak_hits = 0;
  for (int c : spec.strong_colors) strong_hits += rating(c) > spec.threshold;
  for (int c : spec.weak_colors) weak_hits += rating(c) < spec.threshold;
  return strong_hits >= spec.min_pass && weak_hits >= spec.min_pass;
}

double AssociationTable::mean(const ColorRef& ref) const { return stats(ref).mean; }

const ColorStats& AssociationTable::stats(const ColorRef& ref) const {
  const auto it = colors.find(ref);
  if (it == colors.end()) {
    throw Error(ErrorCode::lookup,
                "no association for color " + to_string(ref) + " with concept '" + concept_name + "'");
  }
  return it->second;
}

std::vector<std::string> failing_participants(std::span<const RatingRecord> records,
                                              const AttentionCheckSpec& spec) {
  std::map<std::string, std::map<int, std::vector<double>>> check;
  std::set<std::string> everyone;
  for (const auto& r : records) {
    everyone.insert(r.participant_id);
    if (r.concept_name != spec.concept_name) continue;
    if (const int* index = std::get_if<int>(&r.color)) {
      check[r.participant_id][*index].push_back(normalize_rating(r.raw_rating));
    }
  }
  if (check.empty()) return {};
  std::vector<std::string> failing;
  for (const auto& id : everyone) {
    std::map<int, double> means;
    if (const auto it = check.find(id); it != check.end()) {
      for (const auto& [c, values] : it->second) {
        double sum = 0.0;
        for (double v : values) sum += v;
        means[c] = sum / static_cast<double>(values.size());
      }
    }
    try {
      if (!attention_check(means, spec)) failing.push_back(id);
    } catch (const Error& e) {
      throw Error(e.code(), "participant " + id + ": " + e.what());
    }
  }
  return failing;
}

AssociationTable mean_associations(std::span<const RatingRecord> records, std::string_view concept_name,
                                   const std::optional<AttentionCheckSpec>& filter) {
  std::set<std::string> excluded;
  if (filter) {
    const auto failing = failing_participants(records, *filter);
    excluded.insert(failing.begin(), failing.end());
  }

  // participant -> color -> normalized ratings (repeats averaged).
  std::map<std::string, std::map<ColorRef, std::vector<double>>> by_participant;
  for (const auto& r : records) {
    if (r.concept_name != concept_name || excluded.contains(r.participant_id)) continue;
    by_participant[r.participant_id][r.color].push_back(normalize_rating(r.raw_rating));
  }
  if (by_participant.empty()) {
    throw Error(ErrorCode::empty_cohort,
                "no participants with ratings for '" + std::string(concept_name) + "' after filtering");
  }

  std::set<ColorRef> all_colors;
  for (const auto& [id, colors] : by_participant) {
    for (const auto& [c, v] : colors) all_colors.insert(c);
  }

  std::map<ColorRef, std::vector<double>> per_color;
  for (const auto& [id, colors] : by_participant) {
    if (colors.size() != all_colors.size()) {
      for (const auto& c : all_colors) {
        if (!colors.contains(c)) {
          throw Error(ErrorCode::incomplete_data, "participant " + id + " has no '" +
                                                      std::string(concept_name) + "' rating for color " +
                                                      to_string(c));
        }
      }
    }
    for (const auto& [c, values] : colors) {
      double sum = 0.0;
      for (double v : values) sum += v;
      per_color[c].push_back(sum / static_cast<double>(values.size()));
    }
  }

  AssociationTable table;
  table.concept_name = std::string(concept_name);
  table.n_participants = by_participant.size();
  for (const auto& [c, values] : per_color) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sem = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    table.colors[c] = {mean, sem, values.size()};
  }
  return table;
}

double association_difference(const AssociationTable& table, const ColorRef& light,
                              const ColorRef& dark) {
  return table.mean(dark) - table.mean(light);
}

std::vector<RatingRecord> read_ratings_csv(std::istream& in, std::string_view source) {
  const csv::Table t = csv::Table::parse(in, source);
  const std::size_t cp = t.column("participant_id"), cc = t.column("concept"),
                    ci = t.column("color_index"), cr = t.column("raw_rating");
  std::vector<RatingRecord> out;
  out.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    RatingRecord rec;
    rec.participant_id = t.text(r, cp);
    rec.concept_name = t.text(r, cc);
    try {
      rec.color = parse_color_ref(t.text(r, ci));
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, t.where(r) + ": " + e.what());
    }
    const long raw = t.integer(r, cr);
    if (raw < kRawRatingMin || raw > kRawRatingMax) {
      throw Error(ErrorCode::validation, t.where(r) + ": rating " + std::to_string(raw) +
                                             " outside [-200, 200]");
    }
    rec.raw_rating = static_cast<int>(raw);
    if (rec.participant_id.empty() || rec.concept_name.empty()) {
      throw Error(ErrorCode::parse, t.where(r) + ": empty participant_id or concept");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<RatingRecord> load_ratings_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return read_ratings_csv(in, path);
}

std::vector<std::string> concepts(std::span<const RatingRecord> records) {
  std::set<std::string> names;
  for (const auto& r : records) names.insert(r.concept_name);
  return {names.begin(), names.end()};
}

std::string more_concept(std::string_view domain) { return "a lot of " + std::string(domain); }
std::string less_concept(std::string_view domain) { return "no " + std::string(domain); }

void EndpointRatings::validate() const {
  for (double v : {dark_more, dark_less, light_more, light_less}) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::validation, "endpoint ratings for '" + concept_name + "' must lie in [0, 1]");
    }
  }
}

EndpointRatings endpoint_ratings(std::string_view domain, const AssociationTable& more,
                                 const AssociationTable& less, const ColorRef& light,
                                 const ColorRef& dark) {
  EndpointRatings r;
  r.concept_name = std::string(domain);
  r.dark_more = more.mean(dark);
  r.light_more = more.mean(light);
  r.dark_less = less.mean(dark);
  r.light_less = less.mean(light);
  r.validate();
  return r;
}

}  // namespace chroma_infer::associations
