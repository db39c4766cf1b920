// Copyright (c) 2026 The infodrive Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "infodrive/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace infodrive::info {

namespace {

constexpr std::size_t kDenseAlphabetLimit = std::size_t{1} << 22;

// Plug-in entropy (bits) of the empirical distribution of `codes` over
// [0, alphabet). Counting is O(n) with a reusable dense table; only touched
// cells are visited when summing and resetting.
double code_entropy(std::span<const std::uint32_t> codes, std::size_t alphabet) {
  const double n = static_cast<double>(codes.size());
  if (codes.empty()) return 0.0;
  double weighted = 0.0;
  if (alphabet <= kDenseAlphabetLimit) {
    thread_local std::vector<std::uint32_t> counts;
    thread_local std::vector<std::uint32_t> touched;
    if (counts.size() < alphabet) counts.assign(alphabet, 0);
    touched.clear();
    for (std::uint32_t c : codes) {
      if (counts[c]++ == 0) touched.push_back(c);
    }
    for (std::uint32_t c : touched) {
      const double k = counts[c];
      weighted += k * std::log2(k / n);
      counts[c] = 0;
    }
  } else {
    std::vector<std::uint32_t> sorted(codes.begin(), codes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const double k = static_cast<double>(j - i);
      weighted += k * std::log2(k / n);
      i = j;
    }
  }
  return std::max(0.0, -weighted / n);
}

// I(next; current) over the consecutive pairs of `codes`.
double code_one_step_pi(std::span<const std::uint32_t> codes, std::size_t alphabet) {
  require(alphabet <= 65535, "one_step_pi: alphabet too large for joint coding");
  const std::size_t pairs = codes.size() - 1;
  std::vector<std::uint32_t> joint(pairs);
  for (std::size_t t = 0; t < pairs; ++t) {
    joint[t] = static_cast<std::uint32_t>(codes[t] * alphabet + codes[t + 1]);
  }
  const double h_now = code_entropy(codes.first(pairs), alphabet);
  const double h_next = code_entropy(codes.last(pairs), alphabet);
  const double h_joint = code_entropy(joint, alphabet * alphabet);
  const double mi = h_now + h_next - h_joint;
  return std::clamp(mi, 0.0, std::min(h_now, h_next));
}

std::vector<std::uint32_t> as_codes(const SymbolSequence& seq) {
  return {seq.symbols.begin(), seq.symbols.end()};
}

void check_pairing(const SensorTrace& trace, const SensorPairing& pairing, int bins) {
  require(bins >= 2, "pairwise measure: bins_per_channel must be >= 2");
  require(!pairing.empty(), "pairwise measure: pairing is empty");
  require(trace.length() >= 2, "pairwise measure: trace needs at least 2 steps");
  const int channels = static_cast<int>(trace.channels());
  for (const auto& p : pairing) {
    require(p.first >= 0 && p.first < channels && p.second >= 0 && p.second < channels,
            "pairwise measure: pair index out of range");
    require(p.first != p.second, "pairwise measure: pair uses the same channel twice");
  }
}

double pair_term(const std::vector<std::vector<std::uint32_t>>& binned, const SensorPair& pair,
                 int bins, PairMeasure measure) {
  const auto& a = binned[static_cast<std::size_t>(pair.first)];
  const auto& b = binned[static_cast<std::size_t>(pair.second)];
  std::vector<std::uint32_t> joint(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    joint[t] = a[t] * static_cast<std::uint32_t>(bins) + b[t];
  }
  const auto alphabet = static_cast<std::size_t>(bins) * static_cast<std::size_t>(bins);
  return measure == PairMeasure::kEntropy ? code_entropy(joint, alphabet)
                                          : code_one_step_pi(joint, alphabet);
}

std::vector<std::vector<std::uint32_t>> bin_used_channels(const SensorTrace& trace,
                                                          const SensorPairing& pairing, int bins) {
  std::vector<std::vector<std::uint32_t>> binned(trace.channels());
  for (const auto& p : pairing) {
    for (int c : {p.first, p.second}) {
      auto& dst = binned[static_cast<std::size_t>(c)];
      if (!dst.empty()) continue;
      const auto values = trace.channel(static_cast<std::size_t>(c));
      const auto range = trace.range(static_cast<std::size_t>(c));
      dst.resize(values.size());
      for (std::size_t t = 0; t < values.size(); ++t) {
        dst[t] = static_cast<std::uint32_t>(bin_index(values[t], range, bins));
      }
    }
  }
  return binned;
}

double normalized_mean(const std::vector<double>& terms, int bins) {
  const double bound = 2.0 * std::log2(static_cast<double>(bins));
  double sum = 0.0;
  for (double t : terms) sum += std::clamp(t / bound, 0.0, 1.0);
  return std::clamp(sum / static_cast<double>(terms.size()), 0.0, 1.0);
}

}  // namespace

SymbolSequence::SymbolSequence(std::vector<int> s, int alphabet)
    : symbols(std::move(s)), alphabet_size(alphabet) {
  require(alphabet_size >= 1, "SymbolSequence: alphabet_size must be positive");
  for (int v : symbols) {
    require(v >= 0 && v < alphabet_size, "SymbolSequence: symbol outside alphabet");
  }
}

SensorTrace::SensorTrace(std::vector<ChannelRange> ranges, std::vector<std::string> names)
    : ranges_(std::move(ranges)), names_(std::move(names)), values_(ranges_.size()) {
  require(!ranges_.empty(), "SensorTrace: at least one channel required");
  for (const auto& r : ranges_) {
    require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi,
            "SensorTrace: channel range must satisfy lo <= hi");
  }
  if (names_.empty()) {
    for (std::size_t c = 0; c < ranges_.size(); ++c) names_.push_back("s" + std::to_string(c));
  }
  require(names_.size() == ranges_.size(), "SensorTrace: one name per channel");
}

void SensorTrace::reserve(std::size_t steps) {
  for (auto& v : values_) v.reserve(steps);
}

void SensorTrace::push_back(std::span<const double> values) {
  require(values.size() == ranges_.size(), "SensorTrace: sample width does not match channels");
  for (std::size_t c = 0; c < values.size(); ++c) {
    require(!std::isnan(values[c]), "SensorTrace: NaN sample");
    values_[c].push_back(std::clamp(values[c], ranges_[c].lo, ranges_[c].hi));
  }
  ++length_;
}

int bin_index(double value, ChannelRange range, int bins) {
  const double width = range.hi - range.lo;
  if (!(width > 0.0)) return 0;
  const double clamped = std::clamp(value, range.lo, range.hi);
  const auto b = static_cast<int>(std::floor((clamped - range.lo) / width * bins));
  return std::clamp(b, 0, bins - 1);
}

SymbolSequence discretize(const SensorTrace& trace, std::size_t channel, int bins) {
  require(bins >= 2, "discretize: bins must be >= 2");
  require(channel < trace.channels(), "discretize: channel index out of range");
  require(trace.length() > 0, "discretize: trace is empty");
  const auto values = trace.channel(channel);
  const auto range = trace.range(channel);
  std::vector<int> symbols(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) symbols[t] = bin_index(values[t], range, bins);
  return SymbolSequence(std::move(symbols), bins);
}

double entropy(const SymbolSequence& seq) {
  require(seq.size() >= 1, "entropy: sequence is empty");
  const auto codes = as_codes(seq);
  const double bound = std::log2(static_cast<double>(seq.alphabet_size));
  return std::min(code_entropy(codes, static_cast<std::size_t>(seq.alphabet_size)), bound);
}

double one_step_pi(const SymbolSequence& seq) {
  require(seq.size() >= 2, "one_step_pi: sequence needs at least 2 symbols");
  const auto codes = as_codes(seq);
  return code_one_step_pi(codes, static_cast<std::size_t>(seq.alphabet_size));
}

double normalized_pi(const SymbolSequence& seq) {
  require(seq.alphabet_size >= 2, "normalized_pi: alphabet_size < 2 has a zero upper bound");
  return std::clamp(one_step_pi(seq) / std::log2(static_cast<double>(seq.alphabet_size)), 0.0,
                    1.0);
}

double normalized_entropy(const SymbolSequence& seq) {
  require(seq.alphabet_size >= 2, "normalized_entropy: alphabet_size < 2 has a zero upper bound");
  return std::clamp(entropy(seq) / std::log2(static_cast<double>(seq.alphabet_size)), 0.0, 1.0);
}

SensorPairing sample_pairings(int channels, int n, Rng& rng) {
  require(channels >= 2, "sample_pairings: need at least 2 channels");
  const int available = channels * (channels - 1) / 2;
  require(n >= 1, "sample_pairings: n must be positive");
  require(n <= available, "sample_pairings: n exceeds the number of distinct pairs (" +
                              std::to_string(available) + ")");
  SensorPairing all;
  all.reserve(static_cast<std::size_t>(available));
  for (int k = 0; k < channels; ++k) {
    for (int l = k + 1; l < channels; ++l) all.push_back({k, l});
  }
  // Partial Fisher-Yates.
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(available - i)));
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
  }
  all.resize(static_cast<std::size_t>(n));
  return all;
}

std::vector<double> pairwise_terms_serial(const SensorTrace& trace, const SensorPairing& pairing,
                                          int bins, PairMeasure measure) {
  check_pairing(trace, pairing, bins);
  const auto binned = bin_used_channels(trace, pairing, bins);
  std::vector<double> terms(pairing.size());
  for (std::size_t u = 0; u < pairing.size(); ++u) {
    terms[u] = pair_term(binned, pairing[u], bins, measure);
  }
  return terms;
}

std::vector<double> pairwise_terms(const SensorTrace& trace, const SensorPairing& pairing,
                                   int bins, PairMeasure measure) {
  check_pairing(trace, pairing, bins);
  const auto binned = bin_used_channels(trace, pairing, bins);
  std::vector<double> terms(pairing.size());
  const auto count = static_cast<std::ptrdiff_t>(pairing.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t u = 0; u < count; ++u) {
    terms[static_cast<std::size_t>(u)] =
        pair_term(binned, pairing[static_cast<std::size_t>(u)], bins, measure);
  }
  return terms;
}

double pairwise_pi(const SensorTrace& trace, const SensorPairing& pairing, int bins) {
  return normalized_mean(pairwise_terms(trace, pairing, bins, PairMeasure::kPredictiveInformation),
                         bins);
}

double pairwise_entropy(const SensorTrace& trace, const SensorPairing& pairing, int bins) {
  return normalized_mean(pairwise_terms(trace, pairing, bins, PairMeasure::kEntropy), bins);
}

double pairwise_pi_sum(const SensorTrace& trace, const SensorPairing& pairing, int bins) {
  const auto terms = pairwise_terms(trace, pairing, bins, PairMeasure::kPredictiveInformation);
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

double pairwise_entropy_sum(const SensorTrace& trace, const SensorPairing& pairing, int bins) {
  const auto terms = pairwise_terms(trace, pairing, bins, PairMeasure::kEntropy);
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

}  // namespace infodrive::info
