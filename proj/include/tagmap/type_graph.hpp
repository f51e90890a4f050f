#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagmap/class_set.hpp"
#include "tagmap/diagnostic.hpp"

namespace tagmap {

using NodeId = std::size_t;
using FeatureId = std::size_t;
using ValueId = std::size_t;
using ClassId = std::size_t;

/// Name of the pseudo-feature whose values are hierarchy node names.
inline constexpr std::string_view kPosFeature = "pos";

struct HierarchyNode {
  std::string name;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  std::size_t depth = 0;
  SourceSpan span;

  bool is_leaf() const { return children.empty(); }
};

/// An appropriateness condition `feature = value`.
struct Condition {
  FeatureId feature = 0;
  ValueId value = 0;
};

struct FeatureDecl {
  std::string name;
  std::vector<std::string> values;
  NodeId home = 0;
  // Disjunctive: the feature is appropriate when any condition holds.
  std::vector<Condition> conditions;
  SourceSpan span;
};

inline constexpr int kAbsent = -1;

/// A maximal consistent description: one hierarchy leaf plus exactly one value
/// for each feature appropriate to it. `values` is indexed by FeatureId and
/// holds kAbsent for features that are not appropriate.
struct TerminalClass {
  NodeId leaf = 0;
  std::vector<int> values;

  bool has(FeatureId f) const { return values[f] != kAbsent; }
  friend bool operator==(const TerminalClass&, const TerminalClass&) = default;
  friend auto operator<=>(const TerminalClass&, const TerminalClass&) = default;
};

struct ValueRef {
  FeatureId feature = 0;
  ValueId value = 0;
};

/// Compiled standard tagset: POS hierarchy, feature declarations and the
/// enumerated universe of terminal classes. Immutable once built.
class TypeGraph {
 public:

  const std::string& name() const { return name_; }

  const std::vector<HierarchyNode>& nodes() const { return nodes_; }
  const HierarchyNode& node(NodeId id) const { return nodes_[id]; }
  NodeId root() const { return 0; }
  /// Leaves in document order.
  const std::vector<NodeId>& leaves() const { return leaves_; }
  std::optional<NodeId> find_node(std::string_view name) const;
  bool is_ancestor_or_self(NodeId ancestor, NodeId node) const;
  /// Lowest common ancestor of two nodes.
  NodeId common_ancestor(NodeId a, NodeId b) const;

  const std::vector<FeatureDecl>& features() const { return features_; }
  const FeatureDecl& feature(FeatureId id) const { return features_[id]; }
  std::optional<FeatureId> find_feature(std::string_view name) const;
  std::optional<ValueId> find_value(FeatureId feature, std::string_view value) const;
  /// Bare-atom lookup: value name -> owning feature.
  std::optional<ValueRef> value_owner(std::string_view value) const;
  const std::map<std::string, ValueRef, std::less<>>& value_index() const { return value_index_; }

  /// Features whose home is `node` or one of its ancestors, in declaration
  /// order. Conditional features are included.
  std::vector<FeatureId> appropriate_features(NodeId node) const;

  /// The universe U, deterministically ordered: leaves in document order, then
  /// values in declaration order.
  const std::vector<TerminalClass>& universe() const { return universe_; }
  const TerminalClass& terminal(ClassId id) const { return universe_[id]; }
  std::size_t universe_size() const { return universe_.size(); }
  std::optional<ClassId> class_id(const TerminalClass& tc) const;

  ClassSet empty_set() const { return ClassSet(universe_.size()); }
  ClassSet all_classes() const { return ClassSet::full(universe_.size()); }
  /// Classes whose leaf lies under `node`.
  const ClassSet& classes_under(NodeId node) const { return under_[node]; }
  /// Classes in which `feature` is appropriate.
  const ClassSet& classes_with(FeatureId feature) const { return with_feature_[feature]; }
  /// Classes with `feature = value`.
  const ClassSet& classes_with(FeatureId feature, ValueId value) const {
    return with_value_[feature][value];
  }

  /// `[pos=<leaf> & f1=v1 & ...]`, features in declaration order.
  std::string render_class(ClassId id) const;
  std::string render_class(const TerminalClass& tc) const;
  /// Inverse of render_class.
  Result<TerminalClass> parse_class(std::string_view text) const;

 private:
  TypeGraph() = default;
  void finalize();

  std::string name_;
  std::vector<HierarchyNode> nodes_;
  std::vector<NodeId> leaves_;
  std::map<std::string, NodeId, std::less<>> node_index_;
  std::vector<FeatureDecl> features_;
  std::vector<FeatureId> topo_order_;
  std::map<std::string, FeatureId, std::less<>> feature_index_;
  std::map<std::string, ValueRef, std::less<>> value_index_;

  std::vector<TerminalClass> universe_;
  std::map<TerminalClass, ClassId> class_index_;
  std::vector<ClassSet> under_;
  std::vector<ClassSet> with_feature_;
  std::vector<std::vector<ClassSet>> with_value_;

  friend Result<TypeGraph> parse_tagset_definition(std::string_view source);
};

/// Compiles a tagset-definition file:
///
///   tagset <name>
///   hierarchy { <node> { <child> ... } }
///   feature <name> for <node> [when <f>=<v> (or <f>=<v>)*] { <v>, <v>, ... }
///
/// All problems are collected and returned together.
Result<TypeGraph> parse_tagset_definition(std::string_view source);

std::vector<TerminalClass> enumerate_terminal_classes(const TypeGraph& graph);

Result<std::vector<FeatureId>> appropriate_features(const TypeGraph& graph, std::string_view node);

}  // namespace tagmap
