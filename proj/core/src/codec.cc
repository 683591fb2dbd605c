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

#include "loclc/codec.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "loclc/distribution.h"
#include "loclc/error.h"
#include "loclc/executor.h"
#include "loclc/rans.h"
#include "loclc/schedule.h"
#include "loclc/shear.h"

namespace loclc {

namespace {

struct Interval {
  uint32_t start = 0;
  uint32_t freq = 0;
};

void CheckImage(const Image& image, const Model& model) {
  if (image.empty()) throw Error(ErrorCode::kShape, "empty image");
  if (image.channels() != model.config().channels) {
    throw Error(ErrorCode::kShape,
                "image has " + std::to_string(image.channels()) +
                    " channels, model expects " +
                    std::to_string(model.config().channels));
  }
}

void CheckStream(const CompressedStream& stream, const Model& model) {
  const StreamHeader& h = stream.header;
  if (h.model_hash != model.hash()) {
    throw Error(ErrorCode::kModelMismatch,
                "stream was encoded with a different model (hash mismatch)");
  }
  if (h.channels != model.config().channels || h.horizon != model.config().horizon) {
    throw Error(ErrorCode::kModelMismatch, "stream channels/horizon differ from model");
  }
  if (h.payload_length != stream.payload.size()) {
    throw Error(ErrorCode::kCorruptStream, "payload length mismatch");
  }
}

// The per-pixel inference path shared by the encoder and the
// sequential/parallel decoders.
OutputParams PixelParams(const Image& image, int row, int col, const Model& model) {
  return ForwardPatch(GatherPatch(image, row, col, model.config().horizon),
                      model.weights());
}

std::array<uint8_t, 3> PixelValues(const Image& image, int row, int col) {
  std::array<uint8_t, 3> v{};
  for (int c = 0; c < image.channels(); ++c) v[c] = image.at(row, col, c);
  return v;
}

std::span<const uint8_t> Prior(const std::array<uint8_t, 3>& values, int channel) {
  return std::span<const uint8_t>(values).first(static_cast<size_t>(channel));
}

}  // namespace

const char* SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kSequential:
      return "sequential";
    case Scheme::kParallel:
      return "parallel";
    case Scheme::kSheared:
      return "sheared";
  }
  return "unknown";
}

std::optional<Scheme> ParseScheme(std::string_view name) {
  if (name == "seq" || name == "sequential") return Scheme::kSequential;
  if (name == "par" || name == "parallel") return Scheme::kParallel;
  if (name == "shear" || name == "sheared") return Scheme::kSheared;
  return std::nullopt;
}

int64_t ExpectedRounds(Scheme scheme, int height, int width, int horizon) {
  if (scheme == Scheme::kSequential) return static_cast<int64_t>(height) * width;
  return NumSteps(height, width, horizon);
}

CompressedStream Encode(const Image& image, const Model& model,
                        const CodecOptions& options) {
  CheckImage(image, model);
  const Executor exec(options.threads);
  const int height = image.height(), width = image.width();
  const int channels = image.channels();

  // Every pixel is observed, so all distributions are built up front, each
  // through the exact per-pixel path the decoders use.
  std::vector<OutputParams> params(static_cast<size_t>(height) * width);
  exec.ParallelFor(params.size(), [&](size_t p) {
    const int row = static_cast<int>(p / width), col = static_cast<int>(p % width);
    params[p] = PixelParams(image, row, col, model);
  });

  const auto order = CanonicalOrder(height, width, channels, model.config().horizon);
  std::vector<Interval> intervals(order.size());
  exec.ParallelFor(order.size(), [&](size_t s) {
    const SymbolRef& sym = order[s];
    const auto values = PixelValues(image, sym.row, sym.col);
    const QuantizedCdf cdf =
        ComputeCdf(params[static_cast<size_t>(sym.row) * width + sym.col],
                   sym.channel, Prior(values, sym.channel));
    const uint8_t x = values[sym.channel];
    intervals[s] = {cdf.start(x), cdf.freq(x)};
  });

  RansEncoder enc;
  for (auto it = intervals.rbegin(); it != intervals.rend(); ++it) {
    enc.Put(it->start, it->freq);
  }

  CompressedStream stream;
  stream.payload = enc.Finish();
  stream.header.height = static_cast<uint32_t>(height);
  stream.header.width = static_cast<uint32_t>(width);
  stream.header.channels = static_cast<uint8_t>(channels);
  stream.header.horizon = static_cast<uint8_t>(model.config().horizon);
  stream.header.model_hash = model.hash();
  stream.header.payload_length = static_cast<uint32_t>(stream.payload.size());
  return stream;
}

Image DecodeSequential(const CompressedStream& stream, const Model& model,
                       const CodecOptions& /*options*/, DecodeStats* stats) {
  CheckStream(stream, model);
  const StreamHeader& hdr = stream.header;
  Image image(static_cast<int>(hdr.height), static_cast<int>(hdr.width), hdr.channels);
  const auto schedule =
      CachedSchedule(image.height(), image.width(), model.config().horizon);
  RansDecoder dec(stream.payload);
  DecodeStats local;

  std::vector<OutputParams> step_params;
  for (const auto& step : schedule->steps) {
    step_params.resize(step.size());
    for (int ch = 0; ch < image.channels(); ++ch) {
      for (size_t k = 0; k < step.size(); ++k) {
        const Position p = step[k];
        if (ch == 0) {
          step_params[k] = PixelParams(image, p.row, p.col, model);
          ++local.forward_passes;
          ++local.rounds;
        }
        const auto values = PixelValues(image, p.row, p.col);
        const QuantizedCdf cdf = ComputeCdf(step_params[k], ch, Prior(values, ch));
        image.at(p.row, p.col, ch) = static_cast<uint8_t>(dec.DecodeSymbol(cdf));
      }
    }
  }
  dec.Finish();
  if (stats) *stats = local;
  return image;
}

Image DecodeParallel(const CompressedStream& stream, const Model& model,
                     const CodecOptions& options, DecodeStats* stats) {
  CheckStream(stream, model);
  const StreamHeader& hdr = stream.header;
  const int h = model.config().horizon;
  Image image(static_cast<int>(hdr.height), static_cast<int>(hdr.width), hdr.channels);
  const auto schedule = CachedSchedule(image.height(), image.width(), h);
  const Executor exec(options.threads);
  RansDecoder dec(stream.payload);
  DecodeStats local;

  std::vector<Tensor> batch;
  std::vector<OutputParams> params;
  std::vector<QuantizedCdf> cdfs;
  for (const auto& step : schedule->steps) {
    ++local.rounds;
    const size_t n = step.size();
    batch.resize(n);
    params.resize(n);
    cdfs.resize(n);
    exec.ParallelFor(n, [&](size_t k) {
      batch[k] = GatherPatch(image, step[k].row, step[k].col, h);
    });
    exec.ParallelFor(n, [&](size_t k) {
      params[k] = ForwardPatch(batch[k], model.weights());
    });
    local.forward_passes += static_cast<int64_t>(n);
    for (int ch = 0; ch < image.channels(); ++ch) {
      exec.ParallelFor(n, [&](size_t k) {
        const auto values = PixelValues(image, step[k].row, step[k].col);
        cdfs[k] = ComputeCdf(params[k], ch, Prior(values, ch));
      });
      for (size_t k = 0; k < n; ++k) {
        image.at(step[k].row, step[k].col, ch) =
            static_cast<uint8_t>(dec.DecodeSymbol(cdfs[k]));
      }
    }
  }
  dec.Finish();
  if (stats) *stats = local;
  return image;
}

Image DecodeSheared(const CompressedStream& stream, const Model& model,
                    const CodecOptions& options, DecodeStats* stats) {
  CheckStream(stream, model);
  const StreamHeader& hdr = stream.header;
  const int h = model.config().horizon;
  const int height = static_cast<int>(hdr.height), width = static_cast<int>(hdr.width);
  const int channels = hdr.channels;
  const int offset = h + 1;
  // Zero margins supply the padding, so context reads need no bounds checks.
  ShearedBuffer buffer(height, width, channels, offset, h, h * (h + 2));
  const WeightSet& sheared = model.sheared_weights();
  const Executor exec(options.threads);
  RansDecoder dec(stream.payload);
  DecodeStats local;

  std::vector<OutputParams> params;
  std::vector<QuantizedCdf> cdfs;
  for (int col = 0; col < buffer.length(); ++col) {
    ++local.rounds;
    const RowRange rows = ColumnRows(col, height, width, offset);
    const size_t n = static_cast<size_t>(rows.size());
    params.resize(n);
    cdfs.resize(n);
    exec.ParallelFor(n, [&](size_t k) {
      params[k] = ForwardSheared(buffer, rows.first + static_cast<int>(k), col, sheared);
    });
    local.forward_passes += static_cast<int64_t>(n);
    for (int ch = 0; ch < channels; ++ch) {
      exec.ParallelFor(n, [&](size_t k) {
        std::array<uint8_t, 3> values{};
        const int row = rows.first + static_cast<int>(k);
        for (int c = 0; c < ch; ++c) values[c] = buffer.at(row, col, c);
        cdfs[k] = ComputeCdf(params[k], ch, Prior(values, ch));
      });
      for (size_t k = 0; k < n; ++k) {
        buffer.at(rows.first + static_cast<int>(k), col, ch) =
            static_cast<uint8_t>(dec.DecodeSymbol(cdfs[k]));
      }
    }
  }
  dec.Finish();
  if (stats) *stats = local;
  return UnshearImage(buffer);
}

Image Decode(const CompressedStream& stream, const Model& model, Scheme scheme,
             const CodecOptions& options, DecodeStats* stats) {
  switch (scheme) {
    case Scheme::kSequential:
      return DecodeSequential(stream, model, options, stats);
    case Scheme::kParallel:
      return DecodeParallel(stream, model, options, stats);
    case Scheme::kSheared:
      return DecodeSheared(stream, model, options, stats);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown scheme");
}

double QuantizedCodeLength(const Image& image, const Model& model,
                           const CodecOptions& options) {
  CheckImage(image, model);
  const Executor exec(options.threads);
  const int width = image.width();
  std::vector<double> per_pixel(static_cast<size_t>(image.height()) * width);
  exec.ParallelFor(per_pixel.size(), [&](size_t p) {
    const int row = static_cast<int>(p / width), col = static_cast<int>(p % width);
    const OutputParams params = PixelParams(image, row, col, model);
    const auto values = PixelValues(image, row, col);
    double bits = 0.0;
    for (int ch = 0; ch < image.channels(); ++ch) {
      const QuantizedCdf cdf = ComputeCdf(params, ch, Prior(values, ch));
      bits -= std::log2(static_cast<double>(cdf.freq(values[ch])) / kTotalFreq);
    }
    per_pixel[p] = bits;
  });
  double total = 0.0;
  for (double b : per_pixel) total += b;
  return total;
}

TimingRecord Measure(const Model& model, const Image& image, Scheme scheme,
                     int repeats, const CodecOptions& options) {
  if (repeats < 1) throw Error(ErrorCode::kInvalidArgument, "repeats must be >= 1");
  const CompressedStream stream = Encode(image, model, options);
  TimingRecord record;
  record.scheme = scheme;
  record.bits = stream.payload_bits();
  record.bpd = static_cast<double>(record.bits) / static_cast<double>(image.size());

  std::vector<double> seconds;
  for (int r = 0; r < repeats; ++r) {
    DecodeStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    const Image decoded = Decode(stream, model, scheme, options, &stats);
    const auto t1 = std::chrono::steady_clock::now();
    if (decoded != image) {
      throw Error(ErrorCode::kCorruptStream,
                  std::string(SchemeName(scheme)) + " decode is not lossless");
    }
    seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    record.rounds = stats.rounds;
  }
  std::sort(seconds.begin(), seconds.end());
  const size_t mid = seconds.size() / 2;
  record.wall_seconds = seconds.size() % 2 == 1
                            ? seconds[mid]
                            : 0.5 * (seconds[mid - 1] + seconds[mid]);
  return record;
}

}  // namespace loclc
