#include "workspace.hpp"

#include <algorithm>
#include <chroma_infer/csv.hpp>
#include <chroma_infer/error.hpp>
#include <chroma_infer/json.hpp>
#include <set>

namespace chroma_infer::app {

using associations::ColorRef;
using nlohmann::json;

namespace {

std::vector<ScaleSpec> load_scale_specs(const fs::path& path) {
  const csv::Table t = csv::Table::load(path.string());
  const std::size_t ci = t.column("scale_id"), cc = t.column("concept"), cl = t.column("light"),
                    cd = t.column("dark");
  std::vector<ScaleSpec> specs;
  std::set<std::string> ids;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    ScaleSpec s;
    s.scale_id = t.text(r, ci);
    s.concept_name = t.text(r, cc);
    try {
      s.light = associations::parse_color_ref(t.text(r, cl));
      s.dark = associations::parse_color_ref(t.text(r, cd));
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, t.where(r) + ": " + e.what());
    }
    if (!ids.insert(s.scale_id).second) {
      throw Error(ErrorCode::validation, t.where(r) + ": duplicate scale id " + s.scale_id);
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

using PairKey = std::pair<std::string, std::string>;

std::map<PairKey, std::vector<inference::DarknessRating>> load_darkness(const fs::path& path) {
  const csv::Table t = csv::Table::load(path.string());
  const std::size_t cl = t.column("light"), cd = t.column("dark"), cr = t.column("rater_id"),
                    cs = t.column("slider"), co = t.column("darker_on_left");
  std::map<PairKey, std::vector<inference::DarknessRating>> out;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    PairKey key;
    try {
      key = {associations::to_string(associations::parse_color_ref(t.text(r, cl))),
             associations::to_string(associations::parse_color_ref(t.text(r, cd)))};
    } catch (const Error& e) {
      throw Error(ErrorCode::parse, t.where(r) + ": " + e.what());
    }
    out[key].push_back({t.text(r, cr), t.number(r, cs), t.boolean(r, co)});
  }
  return out;
}

}  // namespace

Workspace::Workspace(Config config)
    : config_(std::move(config)), palette_(color::Palette::load_csv(config_.palette.string())) {
  const auto issues = palette_.check_consistency(0.05, config_.white_point);
  if (!issues.empty()) {
    const auto& i = issues.front();
    throw Error(ErrorCode::validation, config_.palette.string() + ": color " +
                                           std::to_string(i.index) + " column " + i.column +
                                           " does not match its xyY coordinates");
  }

  if (config_.ratings) {
    ratings_ = associations::load_ratings_csv(config_.ratings->string());
    if (config_.attention_check) {
      excluded_ = associations::failing_participants(ratings_, *config_.attention_check);
    }
    for (const auto& name : associations::concepts(ratings_)) {
      if (config_.attention_check && name == config_.attention_check->concept_name) continue;
      tables_.emplace(name,
                      associations::mean_associations(ratings_, name, config_.attention_check));
    }
  }

  for (const auto& [name, table] : tables_) {
    std::vector<color::LchColor> colors;
    std::vector<double> means;
    for (const auto& [ref, stats] : table.colors) {
      if (const int* index = std::get_if<int>(&ref)) {
        colors.push_back(palette_.at(*index).lch);
      } else {
        colors.push_back(color::lab_to_lch(std::get<color::LabColor>(ref)));
      }
      means.push_back(stats.mean);
    }
    try {
      models_.emplace(name, scales::ConceptModel{
                                table, scales::fit_colorspace_regression(colors, means)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::singular_fit && e.code() != ErrorCode::validation) throw;
    }
  }

  if (config_.scales) scale_specs_ = load_scale_specs(*config_.scales);
  if (config_.responses) responses_ = eval::load_responses_csv(config_.responses->string());
  if (config_.darkness) darkness_ = load_darkness(*config_.darkness);
}

std::vector<std::string> Workspace::concepts() const {
  std::vector<std::string> out;
  for (const auto& [name, t] : tables_) out.push_back(name);
  return out;
}

std::vector<std::string> Workspace::domains() const {
  const std::string prefix = associations::more_concept("");
  std::vector<std::string> out;
  for (const auto& [name, t] : tables_) {
    if (!name.starts_with(prefix)) continue;
    const std::string domain = name.substr(prefix.size());
    if (tables_.contains(associations::less_concept(domain))) out.push_back(domain);
  }
  return out;
}

bool Workspace::has_table(const std::string& concept_name) const {
  return tables_.contains(concept_name);
}

const associations::AssociationTable& Workspace::table(const std::string& concept_name) const {
  const auto it = tables_.find(concept_name);
  if (it == tables_.end()) {
    throw Error(ErrorCode::lookup, "unknown concept '" + concept_name + "'");
  }
  return it->second;
}

const scales::ConceptModel& Workspace::model(const std::string& concept_name) const {
  const auto it = models_.find(concept_name);
  if (it == models_.end()) {
    throw Error(ErrorCode::lookup, "no fitted model for concept '" + concept_name + "'");
  }
  return it->second;
}

color::LabColor Workspace::resolve(const ColorRef& ref) const {
  if (const int* index = std::get_if<int>(&ref)) return palette_.at(*index).lab;
  return std::get<color::LabColor>(ref);
}

std::optional<inference::SalienceEstimate> Workspace::rated_salience(const ColorRef& light,
                                                                     const ColorRef& dark) const {
  const auto it = darkness_.find({associations::to_string(light), associations::to_string(dark)});
  if (it == darkness_.end()) return std::nullopt;
  return inference::darkness_salience(it->second);
}

ColorRef color_ref_from_json(const json& j) {
  if (j.is_number_integer()) {
    const int index = j.get<int>();
    if (index < 1) throw Error(ErrorCode::invalid_input, "color index must be positive");
    return index;
  }
  if (j.is_string()) return associations::parse_color_ref(j.get<std::string>());
  if (j.is_array() || j.is_object()) {
    const auto lab = j.get<color::LabColor>();
    color::validate(lab);
    return lab;
  }
  throw Error(ErrorCode::invalid_input, "expected a color index or Lab color");
}

namespace {

associations::EndpointRatings endpoint_ratings_for(const Workspace& ws, const std::string& domain,
                                                   const ColorRef& light, const ColorRef& dark) {
  const std::string more = associations::more_concept(domain);
  const std::string less = associations::less_concept(domain);
  if (!ws.has_table(more) || !ws.has_table(less)) {
    throw Error(ErrorCode::lookup, "unknown concept '" + domain + "'",
                "expected ratings for '" + more + "' and '" + less + "'");
  }
  return associations::endpoint_ratings(domain, ws.table(more), ws.table(less), light, dark);
}

void check_ordering(const Workspace& ws, const ColorRef& light, const ColorRef& dark) {
  const double ll = ws.resolve(light).L;
  const double dl = ws.resolve(dark).L;
  if (!(ll > dl)) {
    throw Error(ErrorCode::ordering, "light endpoint must have higher L* than dark endpoint",
                "light L*=" + std::to_string(ll) + ", dark L*=" + std::to_string(dl));
  }
}

}  // namespace

PredictAnswer run_predict(const Workspace& ws, const PredictQuery& q) {
  q.weights.validate();
  PredictAnswer a;
  a.weights = q.weights;
  const bool have_colors = q.light.has_value() && q.dark.has_value();
  if (have_colors) check_ordering(ws, *q.light, *q.dark);

  if (q.direct) {
    q.direct->validate();
    a.direct = *q.direct;
  } else {
    if (!q.concept_name) {
      throw Error(ErrorCode::invalid_input, "either direct merits or a concept is required");
    }
    if (!have_colors) {
      throw Error(ErrorCode::invalid_input, "light and dark colors are required with a concept");
    }
    a.endpoints = endpoint_ratings_for(ws, *q.concept_name, *q.light, *q.dark);
    a.direct = inference::direct_merit(*a.endpoints);
  }

  if (q.darkness) {
    q.darkness->validate();
  } else if (q.salience) {
    if (!(*q.salience >= 0.0 && *q.salience <= 1.0)) {
      throw Error(ErrorCode::validation, "salience must lie in [0, 1]");
    }
    a.salience.salience = *q.salience;
  } else if (const auto rated = have_colors ? ws.rated_salience(*q.light, *q.dark) : std::nullopt) {
    a.salience = *rated;
  } else if (have_colors) {
    a.salience = inference::darkness_salience_from_lightness(
        color::lightness_difference(ws.resolve(*q.light), ws.resolve(*q.dark)));
  } else if (q.weights.wd != 0.0) {
    throw Error(ErrorCode::missing_data,
                "darkness salience needs endpoint colors or an explicit salience");
  }
  a.darkness = q.darkness ? *q.darkness : inference::darkness_merit(a.salience.salience);
  a.combined = inference::combine_merit(a.direct, a.darkness, a.weights);
  a.result = inference::predict(a.direct, a.darkness, a.weights);
  return a;
}

PredictQuery predict_query_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_input, "request body must be a JSON object");
  PredictQuery q;
  if (j.contains("concept") && !j["concept"].is_null()) {
    q.concept_name = j["concept"].get<std::string>();
  }
  if (j.contains("light")) q.light = color_ref_from_json(j["light"]);
  if (j.contains("dark")) q.dark = color_ref_from_json(j["dark"]);
  if (j.contains("direct") && !j["direct"].is_null()) {
    q.direct = j["direct"].get<inference::MeritGraph2x2>();
  }
  if (j.contains("darkness") && !j["darkness"].is_null()) {
    q.darkness = j["darkness"].get<inference::MeritGraph2x2>();
  }
  if (j.contains("weights") && !j["weights"].is_null()) {
    q.weights = j["weights"].get<inference::WeightPair>();
  }
  if (j.contains("salience") && !j["salience"].is_null()) q.salience = j["salience"].get<double>();
  return q;
}

json to_json(const PredictAnswer& a) {
  json j = {{"direct", a.direct},   {"salience", a.salience}, {"darkness", a.darkness},
            {"weights", a.weights}, {"combined", a.combined}, {"result", a.result}};
  j["endpoints"] = a.endpoints ? json(*a.endpoints) : json(nullptr);
  return j;
}

ScaleAnswer run_scale(const Workspace& ws, const ScaleQuery& q) {
  check_ordering(ws, q.light, q.dark);
  ScaleAnswer a;
  a.scale = color::interpolate_scale(ws.resolve(q.light), ws.resolve(q.dark));
  if (const int* i = std::get_if<int>(&q.light)) a.scale.light_index = *i;
  if (const int* i = std::get_if<int>(&q.dark)) a.scale.dark_index = *i;

  std::vector<std::string> names;
  if (!q.concept_name) {
    for (const auto& [name, m] : ws.models()) names.push_back(name);
  } else if (ws.has_table(*q.concept_name)) {
    names.push_back(*q.concept_name);
  } else {
    for (const auto& name : {associations::more_concept(*q.concept_name),
                             associations::less_concept(*q.concept_name)}) {
      if (ws.has_table(name)) names.push_back(name);
    }
    if (names.empty()) throw Error(ErrorCode::lookup, "unknown concept '" + *q.concept_name + "'");
  }
  const double threshold = ws.config().pair_constraints.monotonicity_threshold;
  for (const auto& name : names) {
    const auto& model = ws.model(name);
    scales::ConceptCheck check;
    check.concept_name = name;
    check.monotonicity = scales::monotonicity_check(a.scale, model.fit, threshold);
    const bool rated = model.table.contains(q.light) && model.table.contains(q.dark);
    check.association_difference =
        rated ? associations::association_difference(model.table, q.light, q.dark)
              : check.monotonicity.predicted.back() - check.monotonicity.predicted.front();
    a.checks.push_back(std::move(check));
  }
  return a;
}

ScaleQuery scale_query_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_input, "request body must be a JSON object");
  ScaleQuery q{color_ref_from_json(j.at("light")), color_ref_from_json(j.at("dark")), {}};
  if (j.contains("concept") && !j["concept"].is_null()) {
    q.concept_name = j["concept"].get<std::string>();
  }
  return q;
}

json to_json(const ScaleAnswer& a) {
  json checks = json::array();
  for (const auto& c : a.checks) {
    checks.push_back({{"concept", c.concept_name},
                      {"association_difference", c.association_difference},
                      {"monotonicity", c.monotonicity}});
  }
  return {{"scale", a.scale}, {"checks", checks}};
}

StimulusAnswer run_stimulus(const Workspace& ws, const StimulusQuery& q) {
  check_ordering(ws, q.light, q.dark);
  const color::ColorScale scale = color::interpolate_scale(ws.resolve(q.light), ws.resolve(q.dark));
  StimulusAnswer a;
  a.dataset = stimuli::generate_underlying_data(q.seed, q.reversed, ws.config().curve);
  a.stimulus = stimuli::render_colormap_svg(a.dataset, scale, q.orientation,
                                            {q.axis_labels, ws.config().white_point});
  return a;
}

StimulusQuery stimulus_query_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::invalid_input, "request body must be a JSON object");
  StimulusQuery q{color_ref_from_json(j.at("light")), color_ref_from_json(j.at("dark"))};
  q.seed = j.value("seed", q.seed);
  q.reversed = j.value("reversed", q.reversed);
  if (j.contains("orientation")) {
    q.orientation = stimuli::parse_orientation(j["orientation"].get<std::string>());
  }
  q.axis_labels = j.value("axis_labels", q.axis_labels);
  return q;
}

json to_json(const StimulusAnswer& a) {
  json cells = json::array();
  for (const auto& row : a.stimulus.cells) {
    json r = json::array();
    for (const auto& c : row) r.push_back(c.hex());
    cells.push_back(r);
  }
  return {{"svg", a.stimulus.svg}, {"dataset", a.dataset}, {"cells", cells}};
}

std::vector<eval::ScaleCase> scale_cases(const Workspace& ws) {
  std::vector<eval::ScaleCase> cases;
  for (const auto& spec : ws.scale_specs()) {
    PredictQuery q;
    q.concept_name = spec.concept_name;
    q.light = spec.light;
    q.dark = spec.dark;
    q.weights = {1.0, 0.0};
    try {
      const PredictAnswer a = run_predict(ws, q);
      cases.push_back({spec.scale_id, spec.concept_name, a.direct, a.darkness});
    } catch (const Error& e) {
      throw Error(e.code(), "scale " + spec.scale_id + ": " + e.what(), e.detail());
    }
  }
  return cases;
}

}  // namespace chroma_infer::app
