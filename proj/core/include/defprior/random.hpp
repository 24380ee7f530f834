#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace defprior {

/// 64-bit FNV-1a hash of a stream name; used to give each simulation its own
/// stream so that adding a check never perturbs the draws of another.
std::uint64_t stream_id(std::string_view name);

/// SplitMix64 finalizer; derives child seeds deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// MT19937-64 keyed by (seed, stream) through std::seed_seq, with portable
/// uniform and Box-Muller normal variates (bit-identical across standard
/// libraries, unlike std::normal_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace defprior
