#pragma once

#include <map>
#include <string>
#include <vector>

#include "tagmap/class_set.hpp"
#include "tagmap/cover.hpp"
#include "tagmap/rules.hpp"
#include "tagmap/type_graph.hpp"

namespace tagmap {

struct Inconsistency {
  enum class Kind { definition_hole_source, definition_hole_target, nondisjunctive, hierarchical };

  Kind kind = Kind::definition_hole_source;
  std::vector<std::string> tags;
  ClassSet classes;  // holes / overlaps; for hierarchical, the outer node's classes
  Cover cover;
  std::string text;  // deterministic one-line rendering, without the WARN prefix
};

std::string_view kind_name(Inconsistency::Kind kind);
/// `WARN <kind>: <text>`
std::string render(const Inconsistency& inc);

/// Mapping tree of one physical tagset: each tag's covering nodes (the
/// minimal cover of its coverage denotation) plus the exact inverse map from
/// terminal classes to tags. The graph and rule set must outlive the tree.
struct MTree {
  const TypeGraph* graph = nullptr;
  const RuleSet* rules = nullptr;
  std::map<std::string, Cover> assignments;          // alphabetical by tag
  std::vector<std::vector<std::string>> class_of;  // indexed by ClassId, tags sorted
  std::vector<Inconsistency> diagnostics;
};

/// Builds the tree and runs every consistency check. Never fails; findings
/// are recorded as diagnostics.
MTree build_mtree(const RuleSet& rs, const TypeGraph& g);

/// Source holes: inventory tags without a coverage rule. Target holes: classes
/// reached neither by a coverage rule nor by an exception reading.
std::vector<Inconsistency> check_definition_holes(const RuleSet& rs, const TypeGraph& g);

/// One finding per unordered tag pair whose coverage denotations overlap.
std::vector<Inconsistency> check_nondisjointness(const RuleSet& rs, const TypeGraph& g);

/// Covering nodes of one tag that strictly contain covering nodes of others.
std::vector<Inconsistency> check_hierarchical(const MTree& mt);

/// `TAG -> <cover> [n classes]` per coverage rule, then one WARN line per
/// diagnostic.
std::string render_explain(const MTree& mt);

}  // namespace tagmap
