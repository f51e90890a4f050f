#include "tagmap/mapping.hpp"

namespace tagmap {

Mapping::Mapping(TypeGraph graph, RuleSet rules)
    : graph_(std::make_shared<const TypeGraph>(std::move(graph))),
      rules_(std::make_shared<const RuleSet>(std::move(rules))),
      mtree_(std::make_shared<const MTree>(build_mtree(*rules_, *graph_))) {}

Result<ResolvedQuery> Mapping::query(std::string_view spec) const {
  auto parsed = parse_spec(spec);
  if (!parsed) return parsed.diagnostics();
  auto typed = typecheck(parsed.value(), *graph_);
  if (!typed) return typed.error().to_diagnostic();
  return resolve(typed.value(), *mtree_, *rules_);
}

CompileOutcome compile_mapping(std::string_view tagset_source, std::string_view rules_source) {
  CompileOutcome out;
  auto graph = parse_tagset_definition(tagset_source);
  if (!graph) {
    out.tagset_diagnostics = graph.diagnostics();
    return out;
  }
  auto rules = parse_rules(rules_source, graph.value());
  if (!rules) {
    out.rules_diagnostics = rules.diagnostics();
    return out;
  }
  out.rules_diagnostics = rules->warnings();
  out.mapping = std::make_shared<const Mapping>(std::move(graph).value(), std::move(rules).value());
  return out;
}

}  // namespace tagmap
