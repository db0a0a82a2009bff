#pragma once

#include <optional>
#include <string_view>

namespace qwsearch {

/// Decoherence model driving a walk.
enum class NoiseKind {
  None,
  SystematicPhase,          ///< model I: constant marked-coin phase θ
  GaussianPhase,            ///< model II: marked-coin phase ~ N(0, σ²), fresh each step
  BrokenLinks,              ///< model III: each edge broken with probability p, fresh each step
  UnmarkedSystematicPhase,  ///< constant phase on the unmarked-vertex coin
  UnmarkedGaussianPhase,    ///< Gaussian phase on the unmarked-vertex coin
};

/// CLI spelling: none, systematic, gaussian, broken-link, unmarked-systematic, unmarked-gaussian.
std::string_view to_string(NoiseKind kind) noexcept;
std::optional<NoiseKind> parse_noise_kind(std::string_view text) noexcept;

constexpr bool acts_on_unmarked_coin(NoiseKind kind) noexcept {
  return kind == NoiseKind::UnmarkedSystematicPhase || kind == NoiseKind::UnmarkedGaussianPhase;
}

constexpr bool is_gaussian(NoiseKind kind) noexcept {
  return kind == NoiseKind::GaussianPhase || kind == NoiseKind::UnmarkedGaussianPhase;
}

constexpr bool is_systematic(NoiseKind kind) noexcept {
  return kind == NoiseKind::SystematicPhase || kind == NoiseKind::UnmarkedSystematicPhase;
}

}  // namespace qwsearch
