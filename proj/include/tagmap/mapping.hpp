#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "tagmap/mtree.hpp"
#include "tagmap/resolver.hpp"
#include "tagmap/retagger.hpp"
#include "tagmap/rules.hpp"
#include "tagmap/spec_expr.hpp"
#include "tagmap/type_graph.hpp"

namespace tagmap {

/// A compiled tagset, rule set and MTree kept together so the tree's
/// references stay valid. Cheap to copy; all parts are immutable.
class Mapping {
 public:
  Mapping(TypeGraph graph, RuleSet rules);

  const TypeGraph& graph() const { return *graph_; }
  const RuleSet& rules() const { return *rules_; }
  const MTree& mtree() const { return *mtree_; }

  std::size_t warning_count() const { return mtree_->diagnostics.size() + rules_->warnings().size(); }

  /// Parses, type-checks and resolves one specification line.
  Result<ResolvedQuery> query(std::string_view spec) const;

 private:
  std::shared_ptr<const TypeGraph> graph_;
  std::shared_ptr<const RuleSet> rules_;
  std::shared_ptr<const MTree> mtree_;
};

/// Compiles both sources. Diagnostics are kept per source so callers can
/// attach the right file name.
struct CompileOutcome {
  std::shared_ptr<const Mapping> mapping;  // null on error
  Diagnostics tagset_diagnostics;
  Diagnostics rules_diagnostics;
};

CompileOutcome compile_mapping(std::string_view tagset_source, std::string_view rules_source);

}  // namespace tagmap
