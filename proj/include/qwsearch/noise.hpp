/*
 * noise.hpp: noise model configuration and per-step sampling
 *
 * Random streams: every walk realization owns a std::mt19937_64 seeded with
 *
 *     child = derive_seed(master, index) = splitmix64(master ⊕ splitmix64(index + 1))
 *
 * where splitmix64 is the standard SplitMix64 finalizer. Gaussian phases are
 * drawn as σ·z with z ~ N(0, 1), and a link breaks when u < p with
 * u ~ U[0, 1), so one stream consumes the same draws for every strength
 * (common random numbers across a strength sweep).
 */
#pragma once

#include <cstdint>
#include <random>

#include "qwsearch/link_set.hpp"
#include "qwsearch/noise_kind.hpp"
#include "qwsearch/operators.hpp"
#include "qwsearch/state_space.hpp"

namespace qwsearch {

/// Noise model identity, strength and seed.
///
/// strength is θ for the systematic kinds, σ for the Gaussian kinds and the
/// per-step breaking probability p for BrokenLinks. Ignored for None.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double strength = 0.0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for a negative σ/p, p > 1 or a non-finite strength.
  void validate() const;

  /// True when every realization yields the same trajectory.
  bool deterministic() const noexcept;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Random stream owned by one realization.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::mt19937_64& engine() noexcept { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Draws the noise for one step into `out`, reusing its link storage.
void realize_step_noise(const NoiseSpec& spec, const WalkSpec& walk, RngStream& stream, StepNoise& out);

inline StepNoise realize_step_noise(const NoiseSpec& spec, const WalkSpec& walk, RngStream& stream) {
  StepNoise out;
  realize_step_noise(spec, walk, stream, out);
  return out;
}

/// N^(−δ).
double strength_from_delta(double state_space_size, double delta);

}  // namespace qwsearch
