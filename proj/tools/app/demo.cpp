#include "demo.hpp"

#include <algorithm>
#include <chroma_infer/csv.hpp>
#include <chroma_infer/error.hpp>
#include <chroma_infer/json.hpp>
#include <chroma_infer/scales.hpp>
#include <chroma_infer/stimuli.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

namespace chroma_infer::app {

namespace {

struct Profile {
  std::string concept_name;
  double hue;     // preferred hue angle, degrees
  double chroma;  // weight on chroma toward that hue
  double light;   // weight on (L - 50) / 50
  double bias;
};

const std::vector<Profile>& profiles() {
  static const std::vector<Profile> p = {
      {"a lot of fire", 35.0, 2.6, -0.7, -0.4}, {"no fire", 210.0, 1.4, 0.9, -0.3},
      {"a lot of water", 235.0, 2.6, -0.9, -0.2}, {"no water", 70.0, 1.0, 1.3, -0.3},
      {"a lot of ice", 220.0, 1.6, 1.1, 0.1},   {"no ice", 40.0, 1.6, -0.7, -0.3},
      {"celery", 130.0, 3.2, 0.3, -0.9},
  };
  return p;
}

double true_association(const Profile& p, const color::PaletteEntry& e) {
  const double dh = (e.lch.h - p.hue) * std::numbers::pi / 180.0;
  const double z = p.chroma * (e.lch.C / 60.0) * std::cos(dh) + p.light * (e.lab.L - 50.0) / 50.0 +
                   p.bias;
  return 1.0 / (1.0 + std::exp(-z));
}

std::string padded(std::size_t n, int width) {
  std::string s = std::to_string(n);
  return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))),
                     '0') +
         s;
}

}  // namespace

DemoData generate_demo(const color::Palette& palette, const DemoOptions& options) {
  options.weights.validate();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> noise(0.0, 70.0);
  std::uniform_int_distribution<int> random_rating(associations::kRawRatingMin,
                                                   associations::kRawRatingMax);
  DemoData data;

  // Attention-check colors: the six most and six least celery-like.
  const Profile& celery = profiles().back();
  std::vector<std::pair<double, int>> ranked;
  for (const auto& e : palette.entries()) ranked.push_back({true_association(celery, e), e.index});
  std::sort(ranked.begin(), ranked.end());
  for (std::size_t i = 0; i < 6; ++i) {
    data.attention_check.weak_colors[i] = ranked[i].second;
    data.attention_check.strong_colors[i] = ranked[ranked.size() - 1 - i].second;
  }
  data.attention_check.concept_name = celery.concept_name;

  for (std::size_t r = 0; r < options.raters; ++r) {
    const std::string id = "r" + padded(r + 1, 2);
    const bool careless = r >= options.raters - options.inattentive_raters;
    for (const auto& p : profiles()) {
      for (const auto& e : palette.entries()) {
        int raw = 0;
        if (careless) {
          raw = random_rating(rng);
        } else {
          const double v = 400.0 * true_association(p, e) - 200.0 + noise(rng);
          raw = static_cast<int>(std::lround(std::clamp(v, -200.0, 200.0)));
        }
        data.ratings.push_back({id, p.concept_name, e.index, raw});
      }
    }
  }

  // Scales: evenly spaced picks from the lightness-filtered pairs.
  const auto pairs = scales::select_endpoint_pairs(palette, {}, {}).candidates;
  if (pairs.empty()) throw Error(ErrorCode::validation, "palette has no admissible pairs");
  for (std::size_t d = 0; d < kDemoDomains.size(); ++d) {
    for (std::size_t k = 0; k < options.scales_per_domain; ++k) {
      const auto& pair = pairs[(k * pairs.size() / options.scales_per_domain + d) % pairs.size()];
      data.scales.push_back({kDemoDomains[d] + "-" + padded(k + 1, 2), kDemoDomains[d],
                             pair.light_index, pair.dark_index});
    }
  }

  std::map<std::string, associations::AssociationTable> tables;
  for (const auto& p : profiles()) {
    if (p.concept_name == celery.concept_name) continue;
    tables.emplace(p.concept_name, associations::mean_associations(data.ratings, p.concept_name,
                                                                   data.attention_check));
  }

  for (const auto& s : data.scales) {
    const auto ends = associations::endpoint_ratings(
        s.concept_name, tables.at(associations::more_concept(s.concept_name)),
        tables.at(associations::less_concept(s.concept_name)), s.light, s.dark);
    const double dl = color::lightness_difference(palette.at(std::get<int>(s.light)).lab,
                                                  palette.at(std::get<int>(s.dark)).lab);
    const auto darkness =
        inference::darkness_merit(inference::darkness_salience_from_lightness(dl).salience);
    const double p_dark =
        inference::predict(inference::direct_merit(ends), darkness, options.weights).p_dark_more;
    std::bernoulli_distribution chooses_dark(p_dark);
    for (std::size_t i = 0; i < options.participants_per_scale; ++i) {
      const std::string id = s.scale_id + "-p" + padded(i + 1, 2);
      for (std::size_t t = 0; t < options.trials; ++t) {
        eval::ResponseRecord rec;
        rec.participant_id = id;
        rec.concept_name = s.concept_name;
        rec.scale_id = s.scale_id;
        rec.trial = static_cast<int>(t + 1);
        rec.left_was_dark = t < options.trials / 2;
        const bool dark = chooses_dark(rng);
        rec.chose_left = dark == rec.left_was_dark;
        data.responses.push_back(std::move(rec));
      }
    }
  }
  return data;
}

void write_demo(const DemoData& data, const std::filesystem::path& dir,
                const std::filesystem::path& palette_path) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("ratings.csv");
    out << "participant_id,concept,color_index,raw_rating\n";
    for (const auto& r : data.ratings) {
      out << r.participant_id << ',' << csv::escape(r.concept_name) << ','
          << associations::to_string(r.color) << ',' << r.raw_rating << '\n';
    }
  }
  {
    auto out = open("scales.csv");
    out << "scale_id,concept,light,dark\n";
    for (const auto& s : data.scales) {
      out << s.scale_id << ',' << csv::escape(s.concept_name) << ','
          << associations::to_string(s.light) << ',' << associations::to_string(s.dark) << '\n';
    }
  }
  {
    auto out = open("responses.csv");
    out << "participant_id,concept,scale_id,trial,chose_left,left_was_dark\n";
    for (const auto& r : data.responses) {
      out << r.participant_id << ',' << csv::escape(r.concept_name) << ',' << r.scale_id << ','
          << r.trial << ',' << (r.chose_left ? 1 : 0) << ',' << (r.left_was_dark ? 1 : 0) << '\n';
    }
  }
  {
    fs::path palette_ref = palette_path;
    if (palette_path.is_absolute()) {
      palette_ref = fs::relative(palette_path, fs::absolute(dir));
    }
    const nlohmann::json config = {{"palette", palette_ref.generic_string()},
                                   {"ratings", "ratings.csv"},
                                   {"responses", "responses.csv"},
                                   {"scales", "scales.csv"},
                                   {"seed", 7},
                                   {"grid_increment", 0.05},
                                   {"output_dir", "out"},
                                   {"attention_check", data.attention_check}};
    auto out = open("config.json");
    out << config.dump(2) << '\n';
  }
}

}  // namespace chroma_infer::app
