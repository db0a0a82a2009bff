#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qwsearch/state_space.hpp"

namespace qwsearch {

/// One undirected lattice edge.
///
/// Hypercube: {vertex, vertex ⊕ e_axis}, stored with bit `axis` of `vertex`
/// cleared. Grid: the link from site `vertex` to its forward neighbour along
/// `axis` (periodic).
struct Link {
  int axis = 0;
  Index vertex = 0;

  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

/// Set of links broken during one step. A default-constructed set is empty
/// and fits every spec; inserting requires a set bound to a spec.
class LinkSet {
public:
  LinkSet() = default;
  explicit LinkSet(const WalkSpec& spec);

  /// Adds the edge, normalizing the hypercube representative. Re-inserting
  /// an edge is a no-op. Throws std::out_of_range for an invalid edge.
  void insert(int axis, Index vertex);
  void insert(const Link& link) { insert(link.axis, link.vertex); }

  /// Unchecked insert for samplers; `vertex` must be the canonical representative.
  void insert_canonical(int axis, Index vertex) noexcept {
    auto& flag = flags_[static_cast<std::size_t>(axis * vertex_count_ + vertex)];
    count_ += flag == 0;
    flag = 1;
  }

  bool contains(int axis, Index vertex) const;

  /// Fast lookup for kernels: `vertex` must already be the canonical representative.
  bool broken_canonical(int axis, Index vertex) const noexcept {
    return count_ != 0 && flags_[static_cast<std::size_t>(axis * vertex_count_ + vertex)] != 0;
  }

  bool empty() const noexcept { return count_ == 0; }
  std::size_t size() const noexcept { return count_; }
  void clear() noexcept;

  /// Links in ascending (axis, vertex) order.
  std::vector<Link> links() const;

  /// True when empty or bound to a lattice of the same family and dimension.
  bool compatible_with(const WalkSpec& spec) const noexcept;

  /// True when this set was constructed for the lattice of `spec`.
  bool bound_to(const WalkSpec& spec) const noexcept {
    return family_ == spec.family() && dimension_ == spec.dimension();
  }

  /// Canonical representative of an edge, or std::nullopt when it is not a lattice edge.
  static std::optional<Link> canonical(const WalkSpec& spec, int axis, Index vertex) noexcept;

private:
  std::optional<Family> family_;
  int dimension_ = 0;
  Index vertex_count_ = 0;
  std::vector<std::uint8_t> flags_;
  std::size_t count_ = 0;
};

/// Total number of undirected edges: n·2^(n−1) for the hypercube, 2·side² for the grid.
std::int64_t edge_count(const WalkSpec& spec) noexcept;

}  // namespace qwsearch
