#include "qwsearch/link_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qwsearch {

LinkSet::LinkSet(const WalkSpec& spec)
    : family_(spec.family()),
      dimension_(spec.dimension()),
      vertex_count_(spec.vertex_count()),
      flags_(static_cast<std::size_t>(spec.axis_count() * spec.vertex_count()), 0) {}

std::optional<Link> LinkSet::canonical(const WalkSpec& spec, int axis, Index vertex) noexcept {
  if (axis < 0 || axis >= spec.axis_count() || vertex < 0 || vertex >= spec.vertex_count()) return std::nullopt;
  if (spec.family() == Family::Hypercube) return Link{axis, vertex & ~(Index{1} << axis)};
  return Link{axis, vertex};
}

void LinkSet::insert(int axis, Index vertex) {
  if (!family_) throw std::logic_error("insert into a LinkSet that is not bound to a lattice");
  const WalkSpec spec = *family_ == Family::Hypercube ? WalkSpec::hypercube(dimension_) : WalkSpec::grid(dimension_);
  const auto link = canonical(spec, axis, vertex);
  if (!link)
    throw std::out_of_range("link (axis " + std::to_string(axis) + ", vertex " + std::to_string(vertex) +
                            ") is not an edge of " + spec.describe());
  insert_canonical(link->axis, link->vertex);
}

bool LinkSet::contains(int axis, Index vertex) const {
  if (count_ == 0) return false;
  const WalkSpec spec = *family_ == Family::Hypercube ? WalkSpec::hypercube(dimension_) : WalkSpec::grid(dimension_);
  const auto link = canonical(spec, axis, vertex);
  return link && broken_canonical(link->axis, link->vertex);
}

void LinkSet::clear() noexcept {
  if (count_ == 0) return;
  std::fill(flags_.begin(), flags_.end(), std::uint8_t{0});
  count_ = 0;
}

std::vector<Link> LinkSet::links() const {
  std::vector<Link> out;
  out.reserve(count_);
  if (count_ == 0) return out;
  for (std::size_t i = 0; i < flags_.size(); ++i)
    if (flags_[i] != 0)
      out.push_back({static_cast<int>(static_cast<Index>(i) / vertex_count_), static_cast<Index>(i) % vertex_count_});
  return out;
}

bool LinkSet::compatible_with(const WalkSpec& spec) const noexcept {
  return count_ == 0 || bound_to(spec);
}

std::int64_t edge_count(const WalkSpec& spec) noexcept {
  if (spec.family() == Family::Hypercube) return std::int64_t{spec.dimension()} * (spec.vertex_count() / 2);
  return 2 * std::int64_t{spec.vertex_count()};
}

}  // namespace qwsearch
