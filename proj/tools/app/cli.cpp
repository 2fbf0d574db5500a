#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chroma_infer/error.hpp>
#include <chroma_infer/json.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <httplib.h>
#include <optional>

#include "config.hpp"
#include "demo.hpp"
#include "pipeline.hpp"
#include "server.hpp"
#include "workspace.hpp"

namespace chroma_infer::app {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string field = text.substr(start, comma - start);
    field.erase(0, field.find_first_not_of(" \t"));
    field.erase(field.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
        !std::isfinite(v)) {
      throw UsageError(std::string("malformed ") + what + " '" + text + "'");
    }
    values.push_back(v);
    start = comma + 1;
  }
  if (values.size() != count) {
    throw UsageError(std::string(what) + " needs " + std::to_string(count) +
                     " comma-separated numbers, got '" + text + "'");
  }
  return values;
}

associations::ColorRef parse_ref(const std::string& text) {
  try {
    return associations::parse_color_ref(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string fixed(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  if (std::round(v * scale) == 0.0) v = 0.0;  // no "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::ordering:
      return kExitUsage;
    case ErrorCode::singular_fit:
    case ErrorCode::undefined_correlation:
      return kExitNumeric;
    default:
      return kExitData;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Color-concept assignment inference for colormap design", "chroma-infer"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path,
                 "Config JSON (default: bundled demo config under the data directory)");

  std::function<int()> action;
  auto workspace = [&] {
    Config c = config_path.empty() ? default_config() : load_config(config_path);
    return Workspace(std::move(c));
  };

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a color between xyY, Lab, LCh and sRGB");
  std::string in_xyy, in_lab, in_lch, to = "lab", white;
  auto* gxyy = convert->add_option("--xyy", in_xyy, "x,y,Y");
  auto* glab = convert->add_option("--lab", in_lab, "L,a,b");
  auto* glch = convert->add_option("--lch", in_lch, "L,C,h");
  gxyy->excludes(glab)->excludes(glch);
  glab->excludes(glch);
  convert->add_option("--to", to, "Target space")
      ->check(CLI::IsMember({"lab", "lch", "xyy", "srgb", "hex"}));
  convert->add_option("--white-point", white, "x,y chromaticity (default D65)");
  convert->callback([&] {
    action = [&] {
      color::WhitePoint wp = color::WhitePoint::d65();
      if (!white.empty()) {
        const auto w = parse_list(white, 2, "white point");
        wp = {w[0], w[1], 100.0};
      }
      color::LabColor lab;
      try {
        if (!in_xyy.empty()) {
          const auto v = parse_list(in_xyy, 3, "xyY triple");
          lab = color::xyy_to_lab({v[0], v[1], v[2]}, wp);
        } else if (!in_lab.empty()) {
          const auto v = parse_list(in_lab, 3, "Lab triple");
          lab = {v[0], v[1], v[2]};
          color::validate(lab);
        } else if (!in_lch.empty()) {
          const auto v = parse_list(in_lch, 3, "LCh triple");
          lab = color::lch_to_lab({v[0], v[1], v[2]});
          color::validate(lab);
        } else {
          throw UsageError("one of --xyy, --lab or --lch is required");
        }
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      if (to == "lab") {
        out << fixed(lab.L, 2) << ' ' << fixed(lab.a, 2) << ' ' << fixed(lab.b, 2) << '\n';
      } else if (to == "lch") {
        const auto c = color::lab_to_lch(lab);
        out << fixed(c.L, 2) << ' ' << fixed(c.C, 2) << ' ' << fixed(c.h, 2) << '\n';
      } else if (to == "xyy") {
        const auto c = color::lab_to_xyy(lab, wp);
        out << fixed(c.x, 5) << ' ' << fixed(c.y, 5) << ' ' << fixed(c.Y, 3) << '\n';
      } else {
        const auto c = color::lab_to_srgb(lab, wp);
        if (to == "hex") {
          out << c.hex() << '\n';
        } else {
          out << int(c.r) << ' ' << int(c.g) << ' ' << int(c.b) << '\n';
        }
        if (c.clipped) err << "warning: color is outside the sRGB gamut and was clipped\n";
      }
      return kExitOk;
    };
  });

  // predict
  auto* predict = app.add_subcommand("predict", "Predict the inferred mapping for a color scale");
  std::string p_concept, p_light, p_dark, p_merits, p_weights;
  std::optional<double> p_salience;
  predict->add_option("--concept", p_concept, "Domain concept, e.g. fire");
  predict->add_option("--light", p_light, "Light endpoint: UW-71 index or lab:L:a:b");
  predict->add_option("--dark", p_dark, "Dark endpoint: UW-71 index or lab:L:a:b");
  predict->add_option("--merits", p_merits, "Inline direct merits x1,x2,x3,x4");
  predict->add_option("--weights", p_weights, "wa,wd (default 0.7,0.3)");
  predict->add_option("--salience", p_salience, "Darkness salience in [0, 1]");
  predict->callback([&] {
    action = [&] {
      PredictQuery q;
      if (!p_concept.empty()) q.concept_name = p_concept;
      if (!p_light.empty()) q.light = parse_ref(p_light);
      if (!p_dark.empty()) q.dark = parse_ref(p_dark);
      if (!p_merits.empty()) {
        const auto m = parse_list(p_merits, 4, "merits");
        q.direct = inference::MeritGraph2x2{m[0], m[1], m[2], m[3]};
      }
      if (!p_weights.empty()) {
        const auto w = parse_list(p_weights, 2, "weights");
        q.weights = {w[0], w[1]};
      }
      q.salience = p_salience;
      try {
        q.weights.validate();
        if (q.direct) q.direct->validate();
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      if (!q.direct && !q.concept_name) {
        throw UsageError("predict needs --merits or --concept with --light and --dark");
      }
      const bool needs_data = !q.direct || q.light || q.dark;
      if (needs_data) {
        const Workspace ws = workspace();
        out << to_json(run_predict(ws, q)).dump(2) << '\n';
      } else {
        // Inline merits without colors need no data files.
        PredictAnswer a;
        a.weights = q.weights;
        a.direct = *q.direct;
        if (q.salience) {
          if (!(*q.salience >= 0.0 && *q.salience <= 1.0)) {
            throw UsageError("salience must lie in [0, 1]");
          }
          a.salience.salience = *q.salience;
        } else if (q.weights.wd != 0.0) {
          throw UsageError("--salience is required when --weights gives darkness a weight");
        }
        a.darkness = inference::darkness_merit(a.salience.salience);
        a.combined = inference::combine_merit(a.direct, a.darkness, a.weights);
        a.result = inference::predict(a.direct, a.darkness, a.weights);
        out << to_json(a).dump(2) << '\n';
      }
      return kExitOk;
    };
  });

  // associations
  auto* assoc = app.add_subcommand("associations", "Mean color-concept associations for a concept");
  std::string a_concept;
  assoc->add_option("--concept", a_concept, "Rated concept, e.g. \"a lot of fire\"")->required();
  assoc->callback([&] {
    action = [&] {
      const Workspace ws = workspace();
      out << json(ws.table(a_concept)).dump(2) << '\n';
      return kExitOk;
    };
  });

  // fit
  auto* fit = app.add_subcommand("fit", "Fit the color-space regression for a concept");
  std::string f_concept;
  bool legacy = false;
  fit->add_option("--concept", f_concept, "Rated concept")->required();
  fit->add_flag("--legacy-radians", legacy, "Feed hue degrees straight into sin/cos");
  fit->callback([&] {
    action = [&] {
      const Workspace ws = workspace();
      const auto& table = ws.table(f_concept);
      std::vector<color::LchColor> colors;
      std::vector<double> means;
      for (const auto& [ref, stats] : table.colors) {
        colors.push_back(color::lab_to_lch(ws.resolve(ref)));
        if (const int* i = std::get_if<int>(&ref)) colors.back() = ws.palette().at(*i).lch;
        means.push_back(stats.mean);
      }
      const auto units = legacy ? scales::HueUnits::legacy_radians : scales::HueUnits::degrees;
      out << json(scales::fit_colorspace_regression(colors, means, units)).dump(2) << '\n';
      return kExitOk;
    };
  });

  // pairs
  auto* pairs = app.add_subcommand("pairs", "Endpoint-pair filtering and monotonicity checks");
  std::string pr_domain;
  bool counts_only = false;
  pairs->add_option("--concept", pr_domain, "Rated concept or domain for monotonicity checks");
  pairs->add_flag("--counts-only", counts_only, "Only the lightness filter counts");
  pairs->callback([&] {
    action = [&] {
      const Workspace ws = workspace();
      const auto& constraints = ws.config().pair_constraints;
      if (counts_only) {
        out << json(scales::count_lightness_filters(ws.palette(), constraints)).dump(2) << '\n';
        return kExitOk;
      }
      std::vector<scales::ConceptModel> models;
      if (!pr_domain.empty()) {
        const std::string name = ws.has_table(pr_domain)
                                     ? pr_domain
                                     : associations::more_concept(pr_domain);
        models.push_back(ws.model(name));
      }
      out << json(scales::select_endpoint_pairs(ws.palette(), models, constraints)).dump(2)
          << '\n';
      return kExitOk;
    };
  });

  // scale
  auto* scale = app.add_subcommand("scale", "Interpolate a 10-step scale and check monotonicity");
  std::string s_light, s_dark, s_concept;
  scale->add_option("--light", s_light, "Light endpoint")->required();
  scale->add_option("--dark", s_dark, "Dark endpoint")->required();
  scale->add_option("--concept", s_concept, "Domain or rated concept (default: all fitted)");
  scale->callback([&] {
    action = [&] {
      ScaleQuery q{parse_ref(s_light), parse_ref(s_dark), {}};
      if (!s_concept.empty()) q.concept_name = s_concept;
      const Workspace ws = workspace();
      out << to_json(run_scale(ws, q)).dump(2) << '\n';
      return kExitOk;
    };
  });

  // stimulus
  auto* stim = app.add_subcommand("stimulus", "Render one colormap stimulus as SVG");
  std::string st_light, st_dark, st_orientation = "more_is_dark_end", st_out;
  std::uint64_t st_seed = 1;
  bool st_reversed = false, st_no_labels = false, st_json = false;
  stim->add_option("--light", st_light, "Light endpoint")->required();
  stim->add_option("--dark", st_dark, "Dark endpoint")->required();
  stim->add_option("--seed", st_seed, "Dataset seed");
  stim->add_flag("--reversed", st_reversed, "Darker region on the left");
  stim->add_option("--orientation", st_orientation, "more_is_dark_end or more_is_light_end");
  stim->add_flag("--no-labels", st_no_labels, "Omit the Left/Right labels");
  stim->add_flag("--json", st_json, "Print dataset, cells and SVG as JSON");
  stim->add_option("-o,--out", st_out, "Write to a file instead of stdout");
  stim->callback([&] {
    action = [&] {
      StimulusQuery q{parse_ref(st_light), parse_ref(st_dark)};
      q.seed = st_seed;
      q.reversed = st_reversed;
      q.axis_labels = !st_no_labels;
      try {
        q.orientation = stimuli::parse_orientation(st_orientation);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      const Workspace ws = workspace();
      const StimulusAnswer a = run_stimulus(ws, q);
      const std::string text = st_json ? to_json(a).dump(2) + "\n" : a.stimulus.svg;
      if (st_out.empty()) {
        out << text;
      } else {
        std::ofstream f(st_out, std::ios::binary);
        f << text;
        if (!f) throw Error(ErrorCode::io, "cannot write " + st_out);
      }
      return kExitOk;
    };
  });

  // weights
  auto* weights = app.add_subcommand("weights", "Grid-search merit weights on training responses");
  std::optional<std::uint64_t> w_seed;
  weights->add_option("--seed", w_seed, "Train/test split seed (default: config seed)");
  weights->callback([&] {
    action = [&] {
      const Workspace ws = workspace();
      if (ws.responses().empty()) throw Error(ErrorCode::missing_data, "config has no responses");
      const auto cases = scale_cases(ws);
      const auto split = eval::train_test_split(ws.responses(), w_seed.value_or(ws.config().seed));
      const auto train = eval::scale_outcomes(split.train_records(ws.responses()));
      out << json(eval::grid_search_weights(cases, train, ws.config().grid_increment)).dump(2)
          << '\n';
      return kExitOk;
    };
  });

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage and write artifacts");
  std::string pl_out;
  std::optional<std::uint64_t> pl_seed;
  pipeline->add_option("-o,--out", pl_out, "Output directory (default: config output_dir)");
  pipeline->add_option("--seed", pl_seed, "Override the config seed");
  pipeline->callback([&] {
    action = [&] {
      Config c = config_path.empty() ? default_config() : load_config(config_path);
      if (pl_seed) c.seed = *pl_seed;
      const fs::path dir = pl_out.empty() ? c.output_dir : fs::path(pl_out);
      const Workspace ws(std::move(c));
      const auto report = run_pipeline(ws, dir);
      out << "wrote " << (dir / "manifest.json").string() << '\n';
      for (const auto& s : report.stages) {
        out << "  " << s.stage << ": " << s.files.size() << " file(s)\n";
      }
      return kExitOk;
    };
  });

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the JSON API over HTTP");
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve->callback([&] {
    action = [&] {
      const Workspace ws = workspace();
      httplib::Server server;
      register_routes(server, ws);
      if (!server.bind_to_port(host, port)) {
        throw Error(ErrorCode::io, "cannot bind " + host + ":" + std::to_string(port));
      }
      err << "listening on http://" << host << ":" << port << "/api/v1\n";
      server.listen_after_bind();
      return kExitOk;
    };
  });

  // demo-data
  auto* demo = app.add_subcommand("demo-data", "Regenerate the bundled synthetic dataset");
  std::string d_out, d_palette;
  DemoOptions d_options;
  demo->add_option("-o,--out", d_out, "Output directory (default: <data>/demo)");
  demo->add_option("--palette", d_palette, "Palette CSV (default: <data>/uw71.csv)");
  demo->add_option("--seed", d_options.seed, "Generator seed");
  demo->callback([&] {
    action = [&] {
      const fs::path palette_path = d_palette.empty() ? data_dir() / "uw71.csv" : fs::path(d_palette);
      const fs::path dir = d_out.empty() ? data_dir() / "demo" : fs::path(d_out);
      const auto palette = color::Palette::load_csv(palette_path.string());
      write_demo(generate_demo(palette, d_options), dir, fs::absolute(palette_path));
      out << "wrote demo data to " << dir.string() << '\n';
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    if (!e.detail().empty()) err << "  " << e.detail() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace chroma_infer::app
