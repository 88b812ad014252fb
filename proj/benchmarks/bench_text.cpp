#include <benchmark/benchmark.h>

#include <string>

#include "stylerl/text.hpp"

namespace {

std::string make_generation(std::size_t thought_words) {
  std::string s = "<think>";
  for (std::size_t i = 0; i < thought_words; ++i) s += "word ";
  s += "</think> [free] a natural reading adapted for the target audience";
  return s;
}

void BM_parse_generation(benchmark::State& state) {
  const std::string text = make_generation(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylerl::parse_generation(text));
  }
}
BENCHMARK(BM_parse_generation)->Arg(8)->Arg(60)->Arg(400);

void BM_count_whitespace_tokens(benchmark::State& state) {
  const std::string text = make_generation(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(stylerl::count_whitespace_tokens(text));
  }
}
BENCHMARK(BM_count_whitespace_tokens)->Arg(60)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
