#include "chroma_infer/eval.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "chroma_infer/csv.hpp"
#include "chroma_infer/error.hpp"

namespace chroma_infer::eval {

namespace {

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
};

MeanSem mean_sem(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  MeanSem out{sum / n, 0.0};
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sem = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

// Unbiased draw in [0, bound) from a 64-bit generator.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r = 0;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace

std::vector<ResponseRecord> read_responses_csv(std::istream& in, std::string_view source) {
  const csv::Table t = csv::Table::parse(in, source);
  const std::size_t cp = t.column("participant_id"), cc = t.column("concept"),
                    cs = t.column("scale_id"), ct = t.column("trial"),
                    cl = t.column("chose_left"), cd = t.column("left_was_dark");
  std::vector<ResponseRecord> out;
  out.reserve(t.rows());
  for (std::size_t r = 0; r < t.rows(); ++r) {
    ResponseRecord rec;
    rec.participant_id = t.text(r, cp);
    rec.concept_name = t.text(r, cc);
    rec.scale_id = t.text(r, cs);
    const long trial = t.integer(r, ct);
    if (trial < 1) throw Error(ErrorCode::validation, t.where(r) + ": trial must be >= 1");
    rec.trial = static_cast<int>(trial);
    rec.chose_left = t.boolean(r, cl);
    rec.left_was_dark = t.boolean(r, cd);
    if (rec.participant_id.empty() || rec.scale_id.empty()) {
      throw Error(ErrorCode::parse, t.where(r) + ": empty participant_id or scale_id");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResponseRecord> load_responses_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  return read_responses_csv(in, path);
}

std::vector<ScaleOutcome> scale_outcomes(std::span<const ResponseRecord> records) {
  if (records.empty()) throw Error(ErrorCode::missing_data, "no response records");
  struct Acc {
    std::string concept_name;
    std::map<std::string, std::pair<double, int>> participants;
  };
  std::map<std::string, Acc> scales;
  for (const auto& r : records) {
    auto [it, inserted] = scales.try_emplace(r.scale_id);
    if (inserted) {
      it->second.concept_name = r.concept_name;
    } else if (it->second.concept_name != r.concept_name) {
      throw Error(ErrorCode::validation, "scale " + r.scale_id + " appears with concepts '" +
                                             it->second.concept_name + "' and '" + r.concept_name + "'");
    }
    auto& [sum, count] = it->second.participants[r.participant_id];
    sum += r.chose_dark() ? 1.0 : 0.0;
    ++count;
  }
  std::vector<ScaleOutcome> out;
  for (const auto& [id, acc] : scales) {
    std::vector<double> props;
    for (const auto& [pid, sc] : acc.participants) props.push_back(sc.first / sc.second);
    const MeanSem ms = mean_sem(props);
    out.push_back({id, acc.concept_name, ms.mean, ms.sem, props.size()});
  }
  return out;
}

double mse(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    throw Error(ErrorCode::alignment, "prediction and target counts differ");
  }
  if (predictions.empty()) throw Error(ErrorCode::validation, "mse of an empty set");
  double ss = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions[i] - targets[i];
    ss += d * d;
  }
  return ss / static_cast<double>(predictions.size());
}

double mse(const std::map<std::string, double>& predictions,
           std::span<const ScaleOutcome> outcomes) {
  std::vector<double> p, t;
  std::set<std::string> seen;
  for (const auto& o : outcomes) {
    const auto it = predictions.find(o.scale_id);
    if (it == predictions.end()) {
      throw Error(ErrorCode::alignment, "no prediction for scale " + o.scale_id);
    }
    seen.insert(o.scale_id);
    p.push_back(it->second);
    t.push_back(o.scaled_response());
  }
  for (const auto& [id, v] : predictions) {
    if (!seen.contains(id)) throw Error(ErrorCode::alignment, "no outcome for scale " + id);
  }
  return mse(p, t);
}

Correlation pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::alignment, "correlation inputs differ in length");
  if (xs.size() < 3) throw Error(ErrorCode::validation, "correlation needs at least 3 points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::undefined_correlation, "correlation undefined for zero variance");
  }
  Correlation c;
  c.n = xs.size();
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = n - 2.0;
  if (std::abs(c.r) >= 1.0) {
    c.p = 0.0;
  } else {
    const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
    const boost::math::students_t dist(df);
    c.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return c;
}

CorrelationComparison compare_correlations(double r1, std::size_t n1, double r2, std::size_t n2) {
  if (n1 <= 3 || n2 <= 3) {
    throw Error(ErrorCode::validation, "correlation comparison needs more than 3 observations");
  }
  for (double r : {r1, r2}) {
    if (!std::isfinite(r) || std::abs(r) > 1.0) {
      throw Error(ErrorCode::validation, "correlations must lie in [-1, 1]");
    }
  }
  CorrelationComparison c;
  if (r1 == r2) return c;
  if (std::abs(r1) == 1.0 || std::abs(r2) == 1.0) {
    c.infinite = true;
    c.z = r1 > r2 ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
    c.p = 0.0;
    return c;
  }
  const double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) + 1.0 / static_cast<double>(n2 - 3));
  c.z = (std::atanh(r1) - std::atanh(r2)) / se;
  const boost::math::normal standard;
  c.p = 2.0 * boost::math::cdf(boost::math::complement(standard, std::abs(c.z)));
  return c;
}

namespace {

std::vector<ResponseRecord> select(std::span<const ResponseRecord> records,
                                   const std::map<std::string, std::vector<std::string>>& part) {
  std::vector<ResponseRecord> out;
  for (const auto& r : records) {
    const auto it = part.find(r.scale_id);
    if (it == part.end()) continue;
    if (std::find(it->second.begin(), it->second.end(), r.participant_id) != it->second.end()) {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

std::vector<ResponseRecord> Split::train_records(std::span<const ResponseRecord> records) const {
  return select(records, train);
}

std::vector<ResponseRecord> Split::test_records(std::span<const ResponseRecord> records) const {
  return select(records, test);
}

Split train_test_split(std::span<const ResponseRecord> records, std::uint64_t seed) {
  std::map<std::string, std::set<std::string>> by_scale;
  std::map<std::string, std::string> scale_of;
  for (const auto& r : records) {
    const auto [it, inserted] = scale_of.try_emplace(r.participant_id, r.scale_id);
    if (!inserted && it->second != r.scale_id) {
      throw Error(ErrorCode::split, "participant " + r.participant_id +
                                        " responded to more than one scale");
    }
    by_scale[r.scale_id].insert(r.participant_id);
  }
  if (by_scale.empty()) throw Error(ErrorCode::split, "no response records to split");

  std::mt19937_64 rng(seed);
  Split split;
  for (const auto& [scale, ids] : by_scale) {
    if (ids.size() < 2) {
      throw Error(ErrorCode::split, "scale " + scale + " has fewer than 2 participants");
    }
    std::vector<std::string> order(ids.begin(), ids.end());
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[bounded(rng, i + 1)]);
    }
    const std::size_t n_train = (order.size() + 1) / 2;
    std::vector<std::string> train(order.begin(), order.begin() + static_cast<long>(n_train));
    std::vector<std::string> test(order.begin() + static_cast<long>(n_train), order.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    split.train[scale] = std::move(train);
    split.test[scale] = std::move(test);
  }
  return split;
}

std::vector<inference::WeightPair> weight_grid(double increment) {
  if (!(increment > 0.0 && increment <= 1.0)) {
    throw Error(ErrorCode::validation, "grid increment must lie in (0, 1]");
  }
  const double steps_real = 1.0 / increment;
  const long steps = std::lround(steps_real);
  if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * steps_real) {
    throw Error(ErrorCode::validation, "grid increment must divide 1 exactly");
  }
  std::vector<inference::WeightPair> grid;
  for (long k = 0; k <= steps; ++k) {
    grid.push_back({static_cast<double>(k) / static_cast<double>(steps),
                    static_cast<double>(steps - k) / static_cast<double>(steps)});
  }
  return grid;
}

std::map<std::string, double> signed_distances(std::span<const ScaleCase> cases,
                                               const inference::WeightPair& w) {
  std::map<std::string, double> out;
  for (const auto& c : cases) {
    if (!out.emplace(c.scale_id, inference::predict(c.direct, c.darkness, w).signed_s).second) {
      throw Error(ErrorCode::validation, "duplicate scale id " + c.scale_id);
    }
  }
  return out;
}

namespace {

const ScaleOutcome& outcome_for(std::span<const ScaleOutcome> outcomes, const std::string& id) {
  const auto it = std::find_if(outcomes.begin(), outcomes.end(),
                               [&](const ScaleOutcome& o) { return o.scale_id == id; });
  if (it == outcomes.end()) throw Error(ErrorCode::alignment, "no outcome for scale " + id);
  return *it;
}

void check_alignment(std::span<const ScaleCase> cases, std::span<const ScaleOutcome> outcomes) {
  std::set<std::string> ids;
  for (const auto& c : cases) ids.insert(c.scale_id);
  for (const auto& o : outcomes) {
    if (!ids.contains(o.scale_id)) {
      throw Error(ErrorCode::alignment, "no merit graphs for scale " + o.scale_id);
    }
  }
  for (const auto& c : cases) outcome_for(outcomes, c.scale_id);
}

double mean_of(const std::map<std::string, double>& values) {
  double sum = 0.0;
  for (const auto& [k, v] : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

std::map<std::string, double> concept_mse(std::span<const ScaleCase> cases,
                                          std::span<const ScaleOutcome> outcomes,
                                          const inference::WeightPair& w) {
  check_alignment(cases, outcomes);
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto& c : cases) {
    const double s = inference::predict(c.direct, c.darkness, w).signed_s;
    const double d = s - outcome_for(outcomes, c.scale_id).scaled_response();
    auto& [sum, n] = acc[c.concept_name];
    sum += d * d;
    ++n;
  }
  std::map<std::string, double> out;
  for (const auto& [concept_name, sn] : acc) out[concept_name] = sn.first / sn.second;
  return out;
}

WeightSearchResult grid_search_weights(std::span<const ScaleCase> cases,
                                       std::span<const ScaleOutcome> outcomes, double increment) {
  if (cases.empty()) throw Error(ErrorCode::missing_data, "no scales to evaluate");
  check_alignment(cases, outcomes);
  const auto grid = weight_grid(increment);

  WeightSearchResult result;
  result.surface.resize(grid.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, grid.size());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < grid.size(); i += workers) {
        SurfacePoint& point = result.surface[i];
        point.weights = grid[i];
        point.concept_mse = concept_mse(cases, outcomes, grid[i]);
        point.mean_mse = mean_of(point.concept_mse);
      }
    }));
  }
  for (auto& job : jobs) job.get();

  result.best_mse = std::numeric_limits<double>::infinity();
  for (const auto& point : result.surface) {
    // Grid is ascending in wa, so <= hands ties to the larger wa.
    if (point.mean_mse <= result.best_mse) {
      result.best_mse = point.mean_mse;
      result.best = point.weights;
    }
  }
  return result;
}

const WeightingSummary& EvaluationTable::summary(std::string_view weighting,
                                                 std::string_view concept_name) const {
  const auto it = std::find_if(summaries.begin(), summaries.end(), [&](const WeightingSummary& s) {
    return s.weighting == weighting && s.concept_name == concept_name;
  });
  if (it == summaries.end()) {
    throw Error(ErrorCode::lookup, "no summary for weighting '" + std::string(weighting) +
                                       "' and concept '" + std::string(concept_name) + "'");
  }
  return *it;
}

EvaluationTable evaluate_weightings(std::span<const ScaleCase> cases,
                                    std::span<const ScaleOutcome> outcomes,
                                    std::span<const NamedWeighting> weightings) {
  check_alignment(cases, outcomes);
  EvaluationTable table;
  for (const auto& named : weightings) {
    std::map<std::string, std::vector<double>> by_concept;
    for (const auto& c : cases) {
      ScaleError row;
      row.scale_id = c.scale_id;
      row.concept_name = c.concept_name;
      row.weighting = named.label;
      row.signed_s = inference::predict(c.direct, c.darkness, named.weights).signed_s;
      row.scaled_response = outcome_for(outcomes, c.scale_id).scaled_response();
      const double d = row.signed_s - row.scaled_response;
      row.squared_error = d * d;
      by_concept[c.concept_name].push_back(row.squared_error);
      table.rows.push_back(std::move(row));
    }
    std::vector<double> concept_means;
    std::size_t total = 0;
    for (const auto& [concept_name, errors] : by_concept) {
      const MeanSem ms = mean_sem(errors);
      table.summaries.push_back({named.label, concept_name, ms.mean, ms.sem, errors.size()});
      concept_means.push_back(ms.mean);
      total += errors.size();
    }
    if (!concept_means.empty()) {
      const MeanSem ms = mean_sem(concept_means);
      table.summaries.push_back({named.label, "all", ms.mean, ms.sem, total});
    }
  }
  return table;
}

std::vector<NamedWeighting> standard_weightings(const inference::WeightPair& best) {
  return {{"combined", best}, {"direct", {1.0, 0.0}}, {"darkness", {0.0, 1.0}}};
}

}  // namespace chroma_infer::eval
