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

#pragma once

// Plug-in information measures over discretized sensor streams.
//
// All quantities are in bits. Estimators are maximum-likelihood (empirical
// frequencies, zero-count bins contribute nothing, no bias correction).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "infodrive/common.hpp"

namespace infodrive::info {

struct SymbolSequence {
  std::vector<int> symbols;
  int alphabet_size = 0;

  SymbolSequence() = default;
  /// Validates 0 <= s < alphabet_size for every symbol.
  SymbolSequence(std::vector<int> symbols, int alphabet_size);

  std::size_t size() const { return symbols.size(); }
};

struct ChannelRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// Multichannel time series recorded during one episode. Values are clamped
/// into their channel's declared range on ingestion.
class SensorTrace {
 public:
  SensorTrace() = default;
  SensorTrace(std::vector<ChannelRange> ranges, std::vector<std::string> names = {});

  void reserve(std::size_t steps);
  /// Appends one time step; `values.size()` must equal channels().
  void push_back(std::span<const double> values);

  std::size_t channels() const { return ranges_.size(); }
  std::size_t length() const { return length_; }
  const ChannelRange& range(std::size_t channel) const { return ranges_.at(channel); }
  const std::string& name(std::size_t channel) const { return names_.at(channel); }
  std::span<const double> channel(std::size_t c) const { return values_.at(c); }

 private:
  std::vector<ChannelRange> ranges_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> values_;
  std::size_t length_ = 0;
};

/// Unordered pair of distinct channel indices (0-based).
struct SensorPair {
  int first = 0;
  int second = 1;
  bool operator==(const SensorPair&) const = default;
};

using SensorPairing = std::vector<SensorPair>;

/// Uniform-width bin of a value within [lo, hi]; hi maps to the top bin.
int bin_index(double value, ChannelRange range, int bins);

SymbolSequence discretize(const SensorTrace& trace, std::size_t channel, int bins);

double entropy(const SymbolSequence& seq);
/// I(S_{t+1}; S_t) from the empirical distribution of consecutive pairs.
double one_step_pi(const SymbolSequence& seq);
double normalized_pi(const SymbolSequence& seq);
double normalized_entropy(const SymbolSequence& seq);

/// Draws `n` distinct unordered pairs uniformly without replacement.
SensorPairing sample_pairings(int channels, int n, Rng& rng);

enum class PairMeasure { kPredictiveInformation, kEntropy };

/// Per-pair raw (bits) values over the product alphabet b_k * bins + b_l.
/// Pairs are evaluated in parallel; each result lands in its own slot so the
/// output does not depend on thread count.
std::vector<double> pairwise_terms(const SensorTrace& trace, const SensorPairing& pairing,
                                   int bins_per_channel, PairMeasure measure);
/// Serial reference for pairwise_terms.
std::vector<double> pairwise_terms_serial(const SensorTrace& trace, const SensorPairing& pairing,
                                          int bins_per_channel, PairMeasure measure);

/// Mean over pairs of the per-pair PI normalized by log2(bins^2); in [0, 1].
double pairwise_pi(const SensorTrace& trace, const SensorPairing& pairing, int bins_per_channel);
/// Mean over pairs of the per-pair joint entropy normalized by log2(bins^2).
double pairwise_entropy(const SensorTrace& trace, const SensorPairing& pairing,
                        int bins_per_channel);
/// Unnormalized sums in bits, kept for inspection.
double pairwise_pi_sum(const SensorTrace& trace, const SensorPairing& pairing, int bins_per_channel);
double pairwise_entropy_sum(const SensorTrace& trace, const SensorPairing& pairing,
                            int bins_per_channel);

}  // namespace infodrive::info
