#include "tagmap/mtree.hpp"

#include <algorithm>

namespace tagmap {

std::string_view kind_name(Inconsistency::Kind kind) {
  switch (kind) {
    case Inconsistency::Kind::definition_hole_source: return "definition_hole_source";
    case Inconsistency::Kind::definition_hole_target: return "definition_hole_target";
    case Inconsistency::Kind::nondisjunctive: return "nondisjunctive";
    case Inconsistency::Kind::hierarchical: return "hierarchical";
  }
  return "?";
}

std::string render(const Inconsistency& inc) { return "WARN " + std::string(kind_name(inc.kind)) + ": " + inc.text; }

namespace {

std::string quoted_list(const std::vector<std::string>& tags) {
  std::string out;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (i != 0) out += ", ";
    out += "'" + tags[i] + "'";
  }
  return out;
}

std::string class_count(const ClassSet& s) {
  std::size_t n = s.count();
  return "[" + std::to_string(n) + (n == 1 ? " class]" : " classes]");
}

}  // namespace

std::vector<Inconsistency> check_definition_holes(const RuleSet& rs, const TypeGraph& g) {
  std::vector<Inconsistency> out;

  std::vector<std::string> missing;
  for (const std::string& tag : rs.inventory())
    if (rs.coverage_for(tag) == nullptr) missing.push_back(tag);
  std::sort(missing.begin(), missing.end());
  for (const std::string& tag : missing) {
    Inconsistency inc;
    inc.kind = Inconsistency::Kind::definition_hole_source;
    inc.tags = {tag};
    inc.classes = g.empty_set();
    inc.text = "tag '" + tag + "' has no coverage rule";
    out.push_back(std::move(inc));
  }

  ClassSet covered = g.empty_set();
  for (const auto& [tag, rule] : rs.coverage()) covered |= rule.target.denotation;
  for (const ExceptionEntry& e : rs.exceptions()) covered |= e.into.denotation;
  ClassSet holes = g.all_classes() - covered;
  if (!holes.empty()) {
    Inconsistency inc;
    inc.kind = Inconsistency::Kind::definition_hole_target;
    inc.classes = holes;
    inc.cover = minimal_cover(holes, g);
    inc.text = "no rule covers " + render_cover(inc.cover, g) + " " + class_count(holes);
    out.push_back(std::move(inc));
  }
  return out;
}

std::vector<Inconsistency> check_nondisjointness(const RuleSet& rs, const TypeGraph& g) {
  std::vector<Inconsistency> out;
  for (auto a = rs.coverage().begin(); a != rs.coverage().end(); ++a) {
    for (auto b = std::next(a); b != rs.coverage().end(); ++b) {
      ClassSet shared = a->second.target.denotation & b->second.target.denotation;
      if (shared.empty()) continue;
      Inconsistency inc;
      inc.kind = Inconsistency::Kind::nondisjunctive;
      inc.tags = {a->first, b->first};
      inc.classes = shared;
      inc.cover = minimal_cover(shared, g);
      inc.text = "'" + a->first + "' and '" + b->first + "' both cover " + render_cover(inc.cover, g) + " " +
                 class_count(shared);
      out.push_back(std::move(inc));
    }
  }
  return out;
}

std::vector<Inconsistency> check_hierarchical(const MTree& mt) {
  std::vector<Inconsistency> out;
  const TypeGraph& g = *mt.graph;
  for (const auto& [outer_tag, outer_cover] : mt.assignments) {
    for (const Cube& outer : outer_cover.cubes) {
      ClassSet outer_set = denote(outer, g);
      std::vector<std::string> inner_tags;
      for (const auto& [inner_tag, inner_cover] : mt.assignments) {
        if (inner_tag == outer_tag) continue;
        bool contained = std::any_of(inner_cover.cubes.begin(), inner_cover.cubes.end(), [&](const Cube& c) {
          ClassSet s = denote(c, g);
          return s.is_subset_of(outer_set) && s != outer_set;
        });
        if (contained) inner_tags.push_back(inner_tag);
      }
      if (inner_tags.empty()) continue;
      Inconsistency inc;
      inc.kind = Inconsistency::Kind::hierarchical;
      inc.tags = {outer_tag};
      inc.tags.insert(inc.tags.end(), inner_tags.begin(), inner_tags.end());
      inc.classes = outer_set;
      inc.cover.cubes = {outer};
      inc.text = "'" + outer_tag + "' is assigned to " + render_cube(outer, g) +
                 ", whose subclasses are already assigned to " + quoted_list(inner_tags);
      out.push_back(std::move(inc));
    }
  }
  return out;
}

MTree build_mtree(const RuleSet& rs, const TypeGraph& g) {
  MTree mt;
  mt.graph = &g;
  mt.rules = &rs;
  mt.class_of.resize(g.universe_size());
  for (const auto& [tag, rule] : rs.coverage()) {
    mt.assignments.emplace(tag, minimal_cover(rule.target.denotation, g));
    rule.target.denotation.for_each([&](std::size_t id) { mt.class_of[id].push_back(tag); });
  }

  auto holes = check_definition_holes(rs, g);
  auto overlaps = check_nondisjointness(rs, g);
  auto hier = check_hierarchical(mt);
  for (auto* group : {&holes, &overlaps, &hier})
    for (auto& inc : *group) mt.diagnostics.push_back(std::move(inc));
  std::stable_sort(mt.diagnostics.begin(), mt.diagnostics.end(),
                   [](const Inconsistency& a, const Inconsistency& b) { return a.kind < b.kind; });
  return mt;
}

std::string render_explain(const MTree& mt) {
  std::string out;
  for (const auto& [tag, cover] : mt.assignments) {
    const CoverageRule* rule = mt.rules->coverage_for(tag);
    out += tag + " -> " + render_cover(cover, *mt.graph) + " " + class_count(rule->target.denotation) + "\n";
  }
  for (const Inconsistency& inc : mt.diagnostics) out += render(inc) + "\n";
  return out;
}

}  // namespace tagmap
