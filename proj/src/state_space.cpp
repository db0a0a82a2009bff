#include "qwsearch/state_space.hpp"

namespace qwsearch {

const char* to_string(Family family) {
  return family == Family::Hypercube ? "hypercube" : "grid";
}

WalkSpec::WalkSpec(Family family, int dimension, Index vertex_count, Index marked)
    : family_(family), dimension_(dimension), vertex_count_(vertex_count), marked_(marked) {
  if (marked_ < 0 || marked_ >= vertex_count_)
    throw std::out_of_range("marked vertex " + std::to_string(marked_) + " outside " + describe());
}

WalkSpec WalkSpec::hypercube(int n, Index marked) {
  if (n < 2 || n > 26) throw std::invalid_argument("hypercube dimension must lie in [2, 26], got " + std::to_string(n));
  return {Family::Hypercube, n, Index{1} << n, marked};
}

WalkSpec WalkSpec::grid(int side, Index marked) {
  if (side < 2 || side > 8192) throw std::invalid_argument("grid side must lie in [2, 8192], got " + std::to_string(side));
  return {Family::Grid, side, Index{side} * side, marked};
}

WalkSpec WalkSpec::with_marked(Index marked) const {
  return {family_, dimension_, vertex_count_, marked};
}

Index WalkSpec::grid_vertex(int n0, int n1) const {
  if (family_ != Family::Grid) throw std::logic_error("grid_vertex on a hypercube spec");
  if (n0 < 0 || n0 >= dimension_ || n1 < 0 || n1 >= dimension_)
    throw std::out_of_range("grid site outside " + describe());
  return n0 + Index{dimension_} * n1;
}

std::pair<int, int> WalkSpec::grid_coords(Index vertex) const {
  if (family_ != Family::Grid) throw std::logic_error("grid_coords on a hypercube spec");
  return {static_cast<int>(vertex % dimension_), static_cast<int>(vertex / dimension_)};
}

std::string WalkSpec::describe() const {
  std::string label = to_string(family_);
  label += family_ == Family::Hypercube ? " n=" : " side=";
  label += std::to_string(dimension_);
  label += " marked=" + std::to_string(marked_);
  return label;
}

}  // namespace qwsearch
