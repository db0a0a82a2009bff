#include "qwsearch/noise.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qwsearch {

namespace {

constexpr std::array<std::pair<NoiseKind, std::string_view>, 6> kNoiseNames{{
    {NoiseKind::None, "none"},
    {NoiseKind::SystematicPhase, "systematic"},
    {NoiseKind::GaussianPhase, "gaussian"},
    {NoiseKind::BrokenLinks, "broken-link"},
    {NoiseKind::UnmarkedSystematicPhase, "unmarked-systematic"},
    {NoiseKind::UnmarkedGaussianPhase, "unmarked-gaussian"},
}};

void sample_broken_links(double p, const WalkSpec& walk, RngStream& stream, LinkSet& links) {
  const Index vertices = walk.vertex_count();
  if (walk.family() == Family::Hypercube) {
    for (int axis = 0; axis < walk.axis_count(); ++axis) {
      const Index bit = Index{1} << axis;
      for (Index base = 0; base < vertices; base += 2 * bit)
        for (Index x = base; x < base + bit; ++x)
          if (stream.uniform() < p) links.insert_canonical(axis, x);
    }
    return;
  }
  for (int axis = 0; axis < 2; ++axis)
    for (Index site = 0; site < vertices; ++site)
      if (stream.uniform() < p) links.insert_canonical(axis, site);
}

}  // namespace

std::string_view to_string(NoiseKind kind) noexcept {
  for (const auto& [k, name] : kNoiseNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<NoiseKind> parse_noise_kind(std::string_view text) noexcept {
  for (const auto& [k, name] : kNoiseNames)
    if (name == text) return k;
  return std::nullopt;
}

void NoiseSpec::validate() const {
  if (!std::isfinite(strength)) throw std::invalid_argument("noise strength must be finite");
  if ((is_gaussian(kind) || kind == NoiseKind::BrokenLinks) && strength < 0)
    throw std::invalid_argument(std::string(to_string(kind)) + " strength must be non-negative");
  if (kind == NoiseKind::BrokenLinks && strength > 1)
    throw std::invalid_argument("broken-link probability must not exceed 1");
}

bool NoiseSpec::deterministic() const noexcept {
  switch (kind) {
    case NoiseKind::None:
    case NoiseKind::SystematicPhase:
    case NoiseKind::UnmarkedSystematicPhase:
      return true;
    case NoiseKind::GaussianPhase:
    case NoiseKind::UnmarkedGaussianPhase:
    case NoiseKind::BrokenLinks:
      return strength == 0.0;
  }
  return false;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 1));
}

void realize_step_noise(const NoiseSpec& spec, const WalkSpec& walk, RngStream& stream, StepNoise& out) {
  out.phase = 0.0;
  out.links.clear();
  switch (spec.kind) {
    case NoiseKind::None:
      return;
    case NoiseKind::SystematicPhase:
    case NoiseKind::UnmarkedSystematicPhase:
      out.phase = wrap_phase(spec.strength);
      return;
    case NoiseKind::GaussianPhase:
    case NoiseKind::UnmarkedGaussianPhase:
      out.phase = wrap_phase(spec.strength * stream.gaussian());
      return;
    case NoiseKind::BrokenLinks:
      if (!out.links.bound_to(walk)) out.links = LinkSet(walk);
      sample_broken_links(spec.strength, walk, stream, out.links);
      return;
  }
}

double strength_from_delta(double state_space_size, double delta) {
  if (!(state_space_size >= 2)) throw std::invalid_argument("state-space size must be at least 2");
  return std::pow(state_space_size, -delta);
}

}  // namespace qwsearch
