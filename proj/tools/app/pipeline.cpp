#include "pipeline.hpp"

#include <charconv>
#include <chroma_infer/csv.hpp>
#include <chroma_infer/error.hpp>
#include <chroma_infer/json.hpp>
#include <cstdio>
#include <fstream>

namespace chroma_infer::app {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class Writer {
 public:
  explicit Writer(fs::path root) : root_(std::move(root)) {}

  void begin(std::string stage) { report_.stages.push_back({std::move(stage), {}}); }

  void text(const std::string& rel, const std::string& content) {
    const fs::path p = root_ / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    if (!out) throw Error(ErrorCode::io, "cannot write " + p.string());
    report_.stages.back().files.push_back({rel, content.size(), fnv1a_hex(content)});
  }

  void json_file(const std::string& rel, const json& j) { text(rel, j.dump(2) + "\n"); }

  PipelineReport finish() {
    report_.output_dir = root_;
    return report_;
  }

 private:
  fs::path root_;
  PipelineReport report_;
};

template <typename F>
void stage(Writer& w, const std::string& name, F&& body) {
  w.begin(name);
  try {
    body();
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + name + ": " + e.what(), e.detail());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::io, "stage " + name + ": " + e.what());
  }
}

}  // namespace

PipelineReport run_pipeline(const Workspace& ws, const fs::path& output_dir) {
  fs::create_directories(output_dir);
  Writer w(output_dir);
  const Config& cfg = ws.config();

  stage(w, "fits", [&] {
    json fits = json::object();
    for (const auto& [name, model] : ws.models()) fits[name] = model.fit;
    w.json_file("fits.json", fits);
  });

  stage(w, "pairs", [&] {
    json doc = {{"constraints", cfg.pair_constraints},
                {"lightness_counts", scales::count_lightness_filters(ws.palette(),
                                                                     cfg.pair_constraints)}};
    json domains = json::object();
    for (const auto& domain : ws.domains()) {
      const std::string more = associations::more_concept(domain);
      if (!ws.models().contains(more)) continue;
      const std::vector<scales::ConceptModel> models{ws.model(more)};
      domains[domain] = scales::select_endpoint_pairs(ws.palette(), models, cfg.pair_constraints);
    }
    doc["domains"] = domains;
    w.json_file("pairs.json", doc);
  });

  stage(w, "scales", [&] {
    json list = json::array();
    for (const auto& spec : ws.scale_specs()) {
      const ScaleAnswer a = run_scale(ws, {spec.light, spec.dark, spec.concept_name});
      json entry = to_json(a);
      entry["scale_id"] = spec.scale_id;
      entry["concept"] = spec.concept_name;
      list.push_back(entry);
    }
    w.json_file("scales.json", list);
  });

  stage(w, "stimuli", [&] {
    std::uint64_t base_seed = cfg.seed;
    for (const auto& spec : ws.scale_specs()) {
      color::ColorScale scale =
          color::interpolate_scale(ws.resolve(spec.light), ws.resolve(spec.dark));
      const auto set = stimuli::make_stimulus_set(base_seed, scale, cfg.curve);
      base_seed += stimuli::kDatasetsPerScale;
      const std::string dir = "stimuli/" + spec.scale_id + "/";
      w.json_file(dir + "datasets.json", set.datasets);
      for (std::size_t i = 0; i < set.datasets.size(); ++i) {
        const auto svg = stimuli::render_colormap_svg(
            set.datasets[i], scale, stimuli::Orientation::more_is_dark_end,
            {true, cfg.white_point});
        w.text(dir + std::to_string(i) + ".svg", svg.svg);
      }
    }
  });

  stage(w, "predictions", [&] {
    json list = json::array();
    for (const auto& spec : ws.scale_specs()) {
      PredictQuery q;
      q.concept_name = spec.concept_name;
      q.light = spec.light;
      q.dark = spec.dark;
      json entry = to_json(run_predict(ws, q));
      entry["scale_id"] = spec.scale_id;
      entry["concept"] = spec.concept_name;
      list.push_back(entry);
    }
    w.json_file("predictions.json", list);
  });

  if (!ws.responses().empty() && !ws.scale_specs().empty()) {
    stage(w, "weights", [&] {
      const auto cases = scale_cases(ws);
      const eval::Split split = eval::train_test_split(ws.responses(), cfg.seed);
      const auto train = eval::scale_outcomes(split.train_records(ws.responses()));
      const auto test = eval::scale_outcomes(split.test_records(ws.responses()));
      const auto search = eval::grid_search_weights(cases, train, cfg.grid_increment);
      w.json_file("weights.json", {{"seed", cfg.seed},
                                   {"train_participants", split.train},
                                   {"test_participants", split.test},
                                   {"search", search}});

      std::vector<std::string> concept_names;
      for (const auto& [name, v] : search.surface.front().concept_mse) concept_names.push_back(name);
      std::string surface = "wa,wd,mean_mse";
      for (const auto& name : concept_names) surface += "," + csv::escape(name);
      surface += "\n";
      for (const auto& p : search.surface) {
        surface += number(p.weights.wa) + "," + number(p.weights.wd) + "," + number(p.mean_mse);
        for (const auto& name : concept_names) surface += "," + number(p.concept_mse.at(name));
        surface += "\n";
      }
      w.text("weight_surface.csv", surface);

      const auto table =
          eval::evaluate_weightings(cases, test, eval::standard_weightings(search.best));
      json correlations = json::object();
      const auto predicted = eval::signed_distances(cases, search.best);
      for (const auto& name : concept_names) {
        std::vector<double> xs, ys;
        for (const auto& o : test) {
          if (o.concept_name != name) continue;
          xs.push_back(predicted.at(o.scale_id));
          ys.push_back(o.scaled_response());
        }
        try {
          correlations[name] = eval::pearson_r(xs, ys);
        } catch (const Error&) {
          correlations[name] = nullptr;
        }
      }
      w.json_file("evaluation.json", {{"test_outcomes", test},
                                      {"table", table},
                                      {"correlations", correlations}});
    });
  }

  PipelineReport report = w.finish();
  const json manifest = to_json(report);
  std::ofstream out(output_dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << "\n";
  if (!out) throw Error(ErrorCode::io, "cannot write manifest.json");
  return report;
}

json to_json(const PipelineReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    json files = json::array();
    for (const auto& f : s.files) {
      files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"fnv1a", f.fnv1a}});
    }
    stages.push_back({{"stage", s.stage}, {"files", files}});
  }
  return {{"stages", stages}};
}

}  // namespace chroma_infer::app
