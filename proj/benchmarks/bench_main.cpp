#include <benchmark/benchmark.h>

#include <chroma_infer/color.hpp>
#include <chroma_infer/inference.hpp>
#include <chroma_infer/palette.hpp>
#include <chroma_infer/scales.hpp>
#include <chroma_infer/stimuli.hpp>
#include <random>

using namespace chroma_infer;

namespace {

const std::string kUw71 = std::string(CHROMA_INFER_BENCH_DATA_DIR) + "/uw71.csv";

void BM_SemanticDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<inference::MeritGraph2x2> graphs(1024);
  for (auto& g : graphs) g = {u(rng), u(rng), u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inference::signed_semantic_distance(graphs[i++ & 1023]));
  }
}
BENCHMARK(BM_SemanticDistance);

void BM_Assignment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  inference::MeritMatrix m(n, std::vector<double>(n));
  for (auto& row : m)
    for (auto& v : row) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(inference::optimal_assignment_n(m));
}
BENCHMARK(BM_Assignment)->Arg(2)->Arg(6)->Arg(32)->Arg(128);

void BM_Regression(benchmark::State& state) {
  const color::Palette palette = color::Palette::load_csv(kUw71);
  std::vector<color::LchColor> colors;
  std::vector<double> means;
  for (const auto& e : palette.entries()) {
    colors.push_back(e.lch);
    means.push_back(0.01 * e.lab.L + 0.001 * e.lch.C);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(scales::fit_colorspace_regression(colors, means));
  }
}
BENCHMARK(BM_Regression);

void BM_LightnessFilters(benchmark::State& state) {
  const color::Palette palette = color::Palette::load_csv(kUw71);
  const scales::PairConstraints c;
  for (auto _ : state) benchmark::DoNotOptimize(scales::count_lightness_filters(palette, c));
}
BENCHMARK(BM_LightnessFilters);

void BM_RenderSvg(benchmark::State& state) {
  const color::ColorScale scale =
      color::interpolate_scale({88, -10, 40}, {50, 27.583, -48.623});
  const auto data = stimuli::generate_underlying_data(42, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        stimuli::render_colormap_svg(data, scale, stimuli::Orientation::more_is_dark_end, {}));
  }
}
BENCHMARK(BM_RenderSvg);

}  // namespace

BENCHMARK_MAIN();
