#pragma once

#include <random>

#include "qwsearch/link_set.hpp"
#include "qwsearch/state_space.hpp"

namespace qwsearch::testing {

inline WalkerState random_state(const WalkSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  WalkerState::Vector psi(spec.size());
  for (Index i = 0; i < psi.size(); ++i) psi[i] = {normal(rng), normal(rng)};
  psi.normalize();
  return {spec, psi};
}

inline LinkSet random_links(const WalkSpec& spec, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution broken(p);
  LinkSet links(spec);
  for (int axis = 0; axis < spec.axis_count(); ++axis)
    for (Index v = 0; v < spec.vertex_count(); ++v)
      if (auto link = LinkSet::canonical(spec, axis, v); link && link->vertex == v && broken(rng)) links.insert(*link);
  return links;
}

}  // namespace qwsearch::testing
