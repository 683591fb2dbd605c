// Copyright 2026 The LocLC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "loclc/codec.h"
#include "loclc/distribution.h"
#include "loclc/model.h"
#include "loclc/rans.h"
#include "loclc/schedule.h"

namespace loclc {
namespace {

Image GradientImage(int size, int channels) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> noise(-4, 4);
  Image img(size, size, channels);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      for (int c = 0; c < channels; ++c)
        img.at(i, j, c) = static_cast<uint8_t>((i * 2 + j + c * 50) % 200 + 20 + noise(rng));
  return img;
}

const Model& DefaultModel() {
  static const Model model(DefaultWeights(DefaultConfig()));
  return model;
}

void BM_Encode(benchmark::State& state) {
  const Image img = GradientImage(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Encode(img, DefaultModel(), {1}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.size()));
}
BENCHMARK(BM_Encode)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

// Args: image side, scheme, worker threads (0 = all cores).
void BM_Decode(benchmark::State& state) {
  const Image img = GradientImage(static_cast<int>(state.range(0)), 3);
  const Scheme scheme = static_cast<Scheme>(state.range(1));
  const CodecOptions options{static_cast<int>(state.range(2))};
  const CompressedStream stream = Encode(img, DefaultModel(), options);
  DecodeStats stats;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Decode(stream, DefaultModel(), scheme, options, &stats));
  }
  state.counters["rounds"] = static_cast<double>(stats.rounds);
  state.SetLabel(SchemeName(scheme));
}
BENCHMARK(BM_Decode)
    ->ArgsProduct({{32, 64, 128}, {0, 1, 2}, {1, 0}})
    ->Unit(benchmark::kMillisecond);

void BM_ForwardPatch(benchmark::State& state) {
  const ModelConfig config = DefaultConfig();
  const Image img = GradientImage(16, 3);
  const Tensor patch = GatherPatch(img, 8, 8, config.horizon);
  const WeightSet& w = DefaultModel().weights();
  for (auto _ : state) benchmark::DoNotOptimize(ForwardPatch(patch, w));
}
BENCHMARK(BM_ForwardPatch);

void BM_ComputeCdf(benchmark::State& state) {
  const Image img = GradientImage(16, 3);
  const OutputParams params =
      ForwardPatch(GatherPatch(img, 8, 8, 3), DefaultModel().weights());
  const uint8_t prior[2] = {120, 80};
  const int channel = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ComputeCdf(params, channel, prior));
}
BENCHMARK(BM_ComputeCdf)->Arg(0)->Arg(2);

void BM_Rans(benchmark::State& state) {
  Pmf pmf;
  for (int s = 0; s < kNumSymbols; ++s) pmf[s] = 1.0 / (1 + std::abs(s - 128));
  double total = 0;
  for (double p : pmf) total += p;
  for (double& p : pmf) p /= total;
  const QuantizedCdf cdf = Quantize(pmf);
  std::mt19937 rng(3);
  std::vector<int> symbols(1 << 16);
  for (int& s : symbols) s = cdf.Lookup(rng() & 0xffff);
  for (auto _ : state) {
    RansEncoder enc;
    for (auto it = symbols.rbegin(); it != symbols.rend(); ++it) enc.EncodeSymbol(*it, cdf);
    const std::vector<uint8_t> bytes = enc.Finish();
    RansDecoder dec(bytes);
    for (size_t i = 0; i < symbols.size(); ++i) benchmark::DoNotOptimize(dec.DecodeSymbol(cdf));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(symbols.size()));
}
BENCHMARK(BM_Rans);

}  // namespace
}  // namespace loclc

BENCHMARK_MAIN();
