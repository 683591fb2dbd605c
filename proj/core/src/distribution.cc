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

#include "loclc/distribution.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "loclc/error.h"

namespace loclc {

namespace {

constexpr double kPixelScale = 127.5;

double NormalizeDouble(double v) { return v / kPixelScale - 1.0; }

struct Logistic {
  double mean;
  double inv_scale;
};

// sigma(z) and sigma(-z) from one exp, accurate in both tails.
struct SigmoidPair {
  double cdf;
  double ccdf;
};

SigmoidPair Sigmoids(double z) {
  const double t = std::exp(-std::fabs(z));
  const double big = 1.0 / (1.0 + t);
  const double small = t / (1.0 + t);
  return z >= 0.0 ? SigmoidPair{big, small} : SigmoidPair{small, big};
}

double EdgeZ(const Logistic& l, int edge) {
  // Upper edge of bin `edge`, i.e. pixel value edge + 0.5.
  return (NormalizeDouble(edge + 0.5) - l.mean) * l.inv_scale;
}

// Mass of bin x with tail absorption at 0 and 255.
double BinMass(const Logistic& l, int x) {
  if (x == 0) return Sigmoids(EdgeZ(l, 0)).cdf;
  const double z_lo = EdgeZ(l, x - 1);
  if (x == kNumSymbols - 1) return Sigmoids(z_lo).ccdf;
  const SigmoidPair lo = Sigmoids(z_lo);
  const SigmoidPair hi = Sigmoids(EdgeZ(l, x));
  const double m = z_lo >= 0.0 ? lo.ccdf - hi.ccdf : hi.cdf - lo.cdf;
  return std::max(m, 0.0);
}

void AccumulateMasses(const Logistic& l, double weight, Pmf& pmf) {
  std::array<SigmoidPair, kNumSymbols - 1> edges;
  std::array<double, kNumSymbols - 1> z;
  for (int e = 0; e < kNumSymbols - 1; ++e) {
    z[e] = EdgeZ(l, e);
    edges[e] = Sigmoids(z[e]);
  }
  pmf[0] += weight * edges[0].cdf;
  for (int x = 1; x < kNumSymbols - 1; ++x) {
    const double m = z[x - 1] >= 0.0 ? edges[x - 1].ccdf - edges[x].ccdf
                                     : edges[x].cdf - edges[x - 1].cdf;
    pmf[x] += weight * std::max(m, 0.0);
  }
  pmf[kNumSymbols - 1] += weight * edges[kNumSymbols - 2].ccdf;
}

Logistic Component(const OutputParams& p, int k, int channel,
                   std::span<const uint8_t> prior) {
  double mean = p.mean(k, channel);
  if (p.channels == 3 && channel > 0) {
    const double r = NormalizeDouble(prior[0]);
    if (channel == 1) {
      mean += std::tanh(static_cast<double>(p.coeff(k, 0))) * r;
    } else {
      const double g = NormalizeDouble(prior[1]);
      mean += std::tanh(static_cast<double>(p.coeff(k, 1))) * r +
              std::tanh(static_cast<double>(p.coeff(k, 2))) * g;
    }
  }
  const double log_scale =
      std::max(static_cast<double>(p.log_scale(k, channel)),
               static_cast<double>(kMinLogScale));
  return {mean, std::exp(-log_scale)};
}

void CheckParams(const OutputParams& p, int channel,
                 std::span<const uint8_t> prior) {
  if (channel < 0 || channel >= p.channels) {
    throw Error(ErrorCode::kInvalidArgument, "channel out of range");
  }
  if (prior.size() < static_cast<size_t>(channel)) {
    throw Error(ErrorCode::kInvalidArgument, "missing prior channel values");
  }
  const size_t expected = static_cast<size_t>(
      p.channels == 3 ? 10 * p.n_mixtures : 3 * p.n_mixtures);
  if (p.values.size() != expected || p.n_mixtures < 1) {
    throw Error(ErrorCode::kShape, "output params have the wrong length");
  }
  for (float v : p.values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite distribution parameter");
    }
  }
}

}  // namespace

int QuantizedCdf::Lookup(uint32_t slot) const {
  // First boundary strictly greater than slot, minus one.
  const auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), slot);
  return static_cast<int>(it - cdf.begin()) - 1;
}

Pmf ComputePmf(const OutputParams& params, int channel,
               std::span<const uint8_t> prior) {
  CheckParams(params, channel, prior);
  const int mixtures = params.n_mixtures;

  // Log mixture weights, reweighted by the earlier channels' likelihoods.
  std::vector<double> log_w(static_cast<size_t>(mixtures));
  double max_logit = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < mixtures; ++k) {
    max_logit = std::max(max_logit, static_cast<double>(params.logit(k)));
  }
  for (int k = 0; k < mixtures; ++k) {
    log_w[k] = static_cast<double>(params.logit(k)) - max_logit;
  }
  if (channel > 0) {
    std::vector<double> post = log_w;
    for (int k = 0; k < mixtures; ++k) {
      for (int c = 0; c < channel; ++c) {
        post[k] += std::log(BinMass(Component(params, k, c, prior), prior[c]));
      }
    }
    const double best = *std::max_element(post.begin(), post.end());
    if (std::isfinite(best)) {
      log_w = post;
      for (double& v : log_w) v -= best;
    }
    // Otherwise every component assigns zero mass to the known channels in
    // double precision; keep the prior weights.
  }
  double norm = 0.0;
  std::vector<double> w(static_cast<size_t>(mixtures));
  for (int k = 0; k < mixtures; ++k) {
    w[k] = std::exp(log_w[k]);
    norm += w[k];
  }

  Pmf pmf{};
  for (int k = 0; k < mixtures; ++k) {
    if (w[k] == 0.0) continue;
    AccumulateMasses(Component(params, k, channel, prior), w[k] / norm, pmf);
  }
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  for (double& p : pmf) p /= total;
  return pmf;
}

QuantizedCdf Quantize(const Pmf& pmf) {
  constexpr int64_t kBudget = kTotalFreq - kNumSymbols;
  std::array<int64_t, kNumSymbols> freq;
  std::array<double, kNumSymbols> residual;
  int64_t assigned = 0;
  for (int s = 0; s < kNumSymbols; ++s) {
    const double scaled = pmf[s] * static_cast<double>(kBudget);
    const double whole = std::floor(scaled);
    freq[s] = static_cast<int64_t>(whole);
    residual[s] = scaled - whole;
    assigned += freq[s];
  }

  std::array<int, kNumSymbols> order;
  std::iota(order.begin(), order.end(), 0);
  int64_t remainder = kBudget - assigned;
  if (remainder > 0) {
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return residual[a] != residual[b] ? residual[a] > residual[b] : a < b;
    });
    for (int i = 0; remainder > 0; i = (i + 1) % kNumSymbols, --remainder) {
      ++freq[order[i]];
    }
  } else if (remainder < 0) {
    // Only reachable through rounding in pmf * budget; take from the
    // smallest residuals.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return residual[a] != residual[b] ? residual[a] < residual[b] : a < b;
    });
    for (int i = 0; remainder < 0; i = (i + 1) % kNumSymbols) {
      if (freq[order[i]] > 0) {
        --freq[order[i]];
        ++remainder;
      }
    }
  }

  QuantizedCdf out;
  out.cdf[0] = 0;
  for (int s = 0; s < kNumSymbols; ++s) {
    out.cdf[s + 1] = out.cdf[s] + static_cast<uint32_t>(freq[s] + 1);
  }
  return out;
}

QuantizedCdf ComputeCdf(const OutputParams& params, int channel,
                        std::span<const uint8_t> prior) {
  return Quantize(ComputePmf(params, channel, prior));
}

double Log2Likelihood(const Image& image, std::span<const OutputParams> params) {
  if (params.size() != static_cast<size_t>(image.height()) * image.width()) {
    throw Error(ErrorCode::kShape, "params grid does not match image");
  }
  double bits = 0.0;
  std::array<uint8_t, 3> values{};
  for (int i = 0; i < image.height(); ++i) {
    for (int j = 0; j < image.width(); ++j) {
      const OutputParams& p = params[static_cast<size_t>(i) * image.width() + j];
      if (p.channels != image.channels()) {
        throw Error(ErrorCode::kShape, "params/image channel mismatch");
      }
      for (int c = 0; c < image.channels(); ++c) values[c] = image.at(i, j, c);
      for (int c = 0; c < image.channels(); ++c) {
        const double prob = ComputePmf(p, c, std::span(values).first(c))[values[c]];
        if (!(prob > 0.0)) {
          throw Error(ErrorCode::kValidation, "zero-probability symbol");
        }
        bits -= std::log2(prob);
      }
    }
  }
  return bits;
}

}  // namespace loclc
