#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tagmap/class_set.hpp"
#include "tagmap/type_graph.hpp"

namespace tagmap {

/// A conjunctive description: hierarchy node plus single-value feature
/// constraints. Covers produced by minimal_cover hold the maximal description
/// of each cube (lowest common node, every feature constant on the cube).
struct Cube {
  NodeId node = 0;
  std::vector<std::pair<FeatureId, ValueId>> constraints;  // declaration order

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;
};

struct Cover {
  std::vector<Cube> cubes;  // canonical order

  bool empty() const { return cubes.empty(); }
};

ClassSet denote(const Cube& cube, const TypeGraph& g);
ClassSet denote(const Cover& cover, const TypeGraph& g);

/// Smallest set of conjunctive descriptions whose denotations union to
/// exactly `classes`. Ties are broken by hierarchy and declaration order.
Cover minimal_cover(const ClassSet& classes, const TypeGraph& g);

/// Factored rendering, e.g. `vtype=con & (vform=inf | vform=fin & (mood=subj | mood=imp))`.
/// The `pos=` atom is omitted when the feature constraints already imply it.
/// An empty cover renders as the empty string.
std::string render_cover(const Cover& cover, const TypeGraph& g);
std::string render_cube(const Cube& cube, const TypeGraph& g);

}  // namespace tagmap
