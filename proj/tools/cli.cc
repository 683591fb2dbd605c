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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loclc/byte_io.h"
#include "loclc/codec.h"
#include "loclc/container.h"
#include "loclc/image_io.h"
#include "loclc/model.h"
#include "loclc/weights_io.h"

namespace loclc {
namespace {

constexpr char kThreadsEnv[] = "LOCLC_THREADS";

std::string Hex64(uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016" PRIx64, v);
  return buf;
}

// Shortest decimal form that round-trips to the same double.
std::string ExactDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RawFlags {
  int width = 0;
  int height = 0;
  int channels = 1;

  std::optional<RawShape> shape() const {
    if (width == 0 && height == 0) return std::nullopt;
    return RawShape{width, height, channels};
  }
};

void AddRawFlags(CLI::App* cmd, RawFlags* raw) {
  auto* w = cmd->add_option("--width", raw->width, "Raw input width")
                ->check(CLI::PositiveNumber);
  auto* h = cmd->add_option("--height", raw->height, "Raw input height")
                ->check(CLI::PositiveNumber);
  w->needs(h);
  h->needs(w);
  cmd->add_option("--channels", raw->channels, "Raw input channels (1 or 3)")
      ->check(CLI::IsMember({1, 3}))
      ->needs(w);
}

CLI::Option* AddThreads(CLI::App* cmd, int* threads) {
  return cmd
      ->add_option("--threads", *threads,
                   "Worker threads (0 = all cores); falls back to $LOCLC_THREADS")
      ->check(CLI::NonNegativeNumber);
}

// Applies LOCLC_THREADS when --threads was not given on the command line.
void ThreadsFromEnvironment(const CLI::App& app, int* threads) {
  for (const CLI::App* sub : app.get_subcommands()) {
    const CLI::Option* opt = sub->get_option_no_throw("--threads");
    if (opt == nullptr || opt->count() > 0) continue;
    const char* env = std::getenv(kThreadsEnv);
    if (env == nullptr || *env == '\0') return;
    const std::string_view text(env);
    int value = -1;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || value < 0) {
      throw CLI::ValidationError(kThreadsEnv, "expected a non-negative integer, got '" +
                                                  std::string(text) + "'");
    }
    *threads = value;
  }
}

Model LoadModel(const std::string& path) {
  return Model(ReadWeightsFile(path));
}

std::vector<Scheme> ParseSchemeList(const std::string& list) {
  std::vector<Scheme> schemes;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::optional<Scheme> s = ParseScheme(item);
    if (!s) throw CLI::ValidationError("--schemes", "unknown scheme '" + item + "'");
    schemes.push_back(*s);
  }
  if (schemes.empty()) throw CLI::ValidationError("--schemes", "empty list");
  return schemes;
}

const CLI::Validator kSchemeName(
    [](std::string& v) -> std::string {
      return ParseScheme(v) ? "" : "expected seq, par or shear, got '" + v + "'";
    },
    "SCHEME");

// --- Subcommands -------------------------------------------------------------

int Compress(const std::string& in, const std::string& out_path,
             const std::string& model_path, const RawFlags& raw, int threads,
             std::ostream& out) {
  const Model model = LoadModel(model_path);
  const Image image = ReadImage(in, raw.shape());
  const CompressedStream stream = Encode(image, model, {threads});
  const std::vector<uint8_t> bytes = SerializeStream(stream);
  WriteFileBytes(out_path, bytes);
  out << in << ": " << image.height() << "x" << image.width() << "x"
      << image.channels() << " -> " << bytes.size() << " bytes, "
      << std::fixed << std::setprecision(4)
      << static_cast<double>(stream.payload_bits()) / image.size() << " bpd\n";
  return kExitOk;
}

int Decompress(const std::string& in, const std::string& out_path,
               const std::string& model_path, Scheme scheme, int threads,
               std::ostream& out) {
  const Model model = LoadModel(model_path);
  const CompressedStream stream = ParseStream(ReadFileBytes(in));
  DecodeStats stats;
  const Image image = Decode(stream, model, scheme, {threads}, &stats);
  WritePnm(out_path, image);
  out << in << ": decoded " << image.height() << "x" << image.width() << "x"
      << image.channels() << " with " << SchemeName(scheme) << " scheme in "
      << stats.rounds << " rounds\n";
  return kExitOk;
}

int Verify(const std::string& image_path, const std::string& model_path,
           const RawFlags& raw, int threads, std::ostream& out,
           std::ostream& err) {
  const Model model = LoadModel(model_path);
  const Image image = ReadImage(image_path, raw.shape());
  const std::vector<uint8_t> bytes =
      SerializeStream(Encode(image, model, {threads}));
  const std::vector<uint8_t> serial_bytes =
      SerializeStream(Encode(image, model, {1}));
  if (bytes != serial_bytes) {
    err << "encoder output depends on the worker count\n";
    return kExitFailure;
  }
  const CompressedStream stream = ParseStream(bytes);
  int identical = 0;
  const Scheme schemes[] = {Scheme::kSequential, Scheme::kParallel,
                            Scheme::kSheared};
  for (Scheme s : schemes) {
    const Image decoded = Decode(stream, model, s, {threads});
    const bool ok = decoded == image;
    identical += ok ? 1 : 0;
    if (!ok) err << SchemeName(s) << ": decoded pixels differ from input\n";
  }
  out << identical << "/3 schemes identical (" << bytes.size() << " bytes, "
      << std::fixed << std::setprecision(4)
      << static_cast<double>(stream.payload_bits()) / image.size()
      << " bpd)\n";
  return identical == 3 ? kExitOk : kExitFailure;
}

struct BenchRow {
  std::string image;
  TimingRecord record;
  std::optional<double> speedup;
};

void PrintBenchTable(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << std::left << std::setw(24) << "image" << std::setw(12) << "scheme"
      << std::right << std::setw(12) << "seconds" << std::setw(10) << "rounds"
      << std::setw(10) << "bpd" << std::setw(10) << "speedup" << "\n";
  for (const BenchRow& r : rows) {
    std::string name = std::filesystem::path(r.image).filename().string();
    if (name.size() > 23) name = name.substr(0, 23);
    out << std::left << std::setw(24) << name << std::setw(12)
        << SchemeName(r.record.scheme) << std::right << std::fixed
        << std::setprecision(4) << std::setw(12) << r.record.wall_seconds
        << std::setw(10) << r.record.rounds << std::setw(10) << r.record.bpd;
    if (r.speedup) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(2) << *r.speedup << "x";
      out << std::setw(10) << s.str();
    } else {
      out << std::setw(10) << "-";
    }
    out << "\n";
  }
}

void PrintBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "image,scheme,wall_seconds,rounds,bits,bpd,speedup\n";
  for (const BenchRow& r : rows) {
    out << r.image << "," << SchemeName(r.record.scheme) << ","
        << ExactDouble(r.record.wall_seconds) << "," << r.record.rounds << ","
        << r.record.bits << "," << ExactDouble(r.record.bpd) << ","
        << (r.speedup ? ExactDouble(*r.speedup) : "") << "\n";
  }
}

void PrintBenchJson(const std::vector<BenchRow>& rows, int repeats,
                    int threads, std::ostream& out) {
  nlohmann::json records = nlohmann::json::array();
  for (const BenchRow& r : rows) {
    records.push_back({
        {"image", r.image},
        {"scheme", SchemeName(r.record.scheme)},
        {"wall_seconds", r.record.wall_seconds},
        {"rounds", r.record.rounds},
        {"bits", r.record.bits},
        {"bpd", r.record.bpd},
        {"speedup", r.speedup ? nlohmann::json(*r.speedup) : nlohmann::json()},
    });
  }
  nlohmann::json doc = {
      {"repeats", repeats}, {"threads", threads}, {"records", records}};
  out << doc.dump(2) << "\n";
}

int Bench(const std::vector<std::string>& images, const std::string& model_path,
          const std::vector<Scheme>& schemes, int repeats,
          const std::string& format, const RawFlags& raw, int threads,
          std::ostream& out) {
  const Model model = LoadModel(model_path);
  std::vector<BenchRow> rows;
  for (const std::string& path : images) {
    const Image image = ReadImage(path, raw.shape());
    const size_t first = rows.size();
    std::optional<double> sequential_seconds;
    for (Scheme s : schemes) {
      BenchRow row{path, Measure(model, image, s, repeats, {threads}), {}};
      if (s == Scheme::kSequential) sequential_seconds = row.record.wall_seconds;
      rows.push_back(row);
    }
    if (sequential_seconds) {
      for (size_t i = first; i < rows.size(); ++i) {
        const double t = rows[i].record.wall_seconds;
        rows[i].speedup = rows[i].record.scheme == Scheme::kSequential
                              ? 1.0
                              : (t > 0.0 ? *sequential_seconds / t : 0.0);
      }
    }
  }
  if (format == "csv") {
    PrintBenchCsv(rows, out);
  } else if (format == "json") {
    PrintBenchJson(rows, repeats, threads, out);
  } else {
    PrintBenchTable(rows, out);
  }
  return kExitOk;
}

int Info(const std::string& path, std::ostream& out) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  if (bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, "NLWT")) {
    const WeightSet w = LoadWeights(bytes);
    out << "format:      NLWT weights v" << int{kWeightsVersion} << "\n"
        << "horizon:     " << w.config.horizon << "\n"
        << "channels:    " << w.config.channels << "\n"
        << "hidden:      " << w.config.hidden_width << "\n"
        << "resblocks:   " << w.config.n_resblocks << "\n"
        << "mixtures:    " << w.config.n_mixtures << "\n"
        << "model_hash:  " << Hex64(w.hash) << "\n";
    return kExitOk;
  }
  const CompressedStream stream = ParseStream(bytes);
  const StreamHeader& h = stream.header;
  const double dims = static_cast<double>(h.height) * h.width * h.channels;
  out << "format:      NLLC v" << int{kContainerVersion} << "\n"
      << "height:      " << h.height << "\n"
      << "width:       " << h.width << "\n"
      << "channels:    " << int{h.channels} << "\n"
      << "horizon:     " << int{h.horizon} << "\n"
      << "model_hash:  " << Hex64(h.model_hash) << "\n"
      << "payload:     " << h.payload_length << " bytes\n"
      << "bpd:         " << std::fixed << std::setprecision(4)
      << 8.0 * h.payload_length / dims << "\n";
  return kExitOk;
}

struct InitModelFlags {
  std::string out;
  std::string kind = "default";
  ModelConfig config = DefaultConfig();
  uint64_t seed = 1;
  float gain = 1.0f;
};

int InitModel(const InitModelFlags& f, std::ostream& out) {
  WeightSet w;
  if (f.kind == "uniform") {
    w = UniformWeights(f.config.horizon, f.config.channels);
  } else if (f.kind == "random") {
    w = RandomWeights(f.config, f.seed, f.gain);
  } else {
    w = DefaultWeights(f.config, f.seed);
  }
  WriteWeightsFile(f.out, w);
  out << f.out << ": " << f.kind << " model, h=" << w.config.horizon
      << " C=" << w.config.channels << " hash " << Hex64(w.hash) << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Lossless image codec built on a local autoregressive model",
               "loclc"};
  app.require_subcommand(1);

  int threads = 0;
  std::string model_path;
  RawFlags raw;

  std::string in_path, out_path, scheme_name = "shear";
  auto* compress = app.add_subcommand("compress", "Encode an image");
  compress->add_option("input", in_path, "PGM/PPM or raw image")->required();
  compress->add_option("output", out_path, "Compressed stream")->required();
  compress->add_option("--model", model_path, "NLWT weight file")->required();
  AddRawFlags(compress, &raw);
  AddThreads(compress, &threads);

  auto* decompress = app.add_subcommand("decompress", "Decode a stream");
  decompress->add_option("input", in_path, "Compressed stream")->required();
  decompress->add_option("output", out_path, "Output PGM/PPM")->required();
  decompress->add_option("--model", model_path, "NLWT weight file")->required();
  decompress->add_option("--scheme", scheme_name, "seq, par or shear")
      ->check(kSchemeName);
  AddThreads(decompress, &threads);

  std::string image_path;
  auto* verify = app.add_subcommand(
      "verify", "Round-trip an image through every decoding scheme");
  verify->add_option("--model", model_path, "NLWT weight file")->required();
  verify->add_option("--image", image_path, "Input image")->required();
  AddRawFlags(verify, &raw);
  AddThreads(verify, &threads);

  std::vector<std::string> bench_images;
  std::string scheme_list = "seq,par,shear", format = "table";
  int repeats = 3;
  auto* bench = app.add_subcommand("bench", "Time the decoding schemes");
  bench->add_option("--model", model_path, "NLWT weight file")->required();
  bench->add_option("--image", bench_images, "Input images")->required();
  bench->add_option("--schemes", scheme_list, "Comma-separated schemes");
  bench->add_option("--repeats", repeats, "Decodes per scheme")
      ->check(CLI::PositiveNumber);
  bench->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  AddRawFlags(bench, &raw);
  AddThreads(bench, &threads);

  std::string info_path;
  auto* info = app.add_subcommand("info", "Print stream or model header");
  info->add_option("file", info_path, "NLLC stream or NLWT model")->required();

  InitModelFlags init;
  auto* init_model = app.add_subcommand(
      "init-model", "Write an untrained model file");
  init_model->add_option("output", init.out, "NLWT output path")->required();
  init_model->add_option("--kind", init.kind, "default, random or uniform")
      ->check(CLI::IsMember({"default", "random", "uniform"}));
  init_model->add_option("--horizon", init.config.horizon)
      ->check(CLI::Range(1, 16));
  init_model->add_option("--channels", init.config.channels)
      ->check(CLI::IsMember({1, 3}));
  init_model->add_option("--hidden", init.config.hidden_width)
      ->check(CLI::Range(1, 1024));
  init_model->add_option("--resblocks", init.config.n_resblocks)
      ->check(CLI::Range(0, 64));
  init_model->add_option("--mixtures", init.config.n_mixtures)
      ->check(CLI::Range(1, 255));
  init_model->add_option("--seed", init.seed);
  init_model->add_option("--gain", init.gain);

  std::vector<Scheme> schemes;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    ThreadsFromEnvironment(app, &threads);
    if (bench->parsed()) schemes = ParseSchemeList(scheme_list);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compress->parsed()) {
      return Compress(in_path, out_path, model_path, raw, threads, out);
    }
    if (decompress->parsed()) {
      return Decompress(in_path, out_path, model_path,
                        *ParseScheme(scheme_name), threads, out);
    }
    if (verify->parsed()) {
      return Verify(image_path, model_path, raw, threads, out, err);
    }
    if (bench->parsed()) {
      return Bench(bench_images, model_path, schemes, repeats, format, raw,
                   threads, out);
    }
    if (info->parsed()) return Info(info_path, out);
    if (init_model->parsed()) return InitModel(init, out);
  } catch (const std::exception& e) {
    err << "loclc: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace loclc
