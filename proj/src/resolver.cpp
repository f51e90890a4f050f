#include "tagmap/resolver.hpp"

namespace tagmap {

namespace {

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i != 0) out += "|";
    out += words[i];
  }
  return out;
}

}  // namespace

ResolvedQuery resolve(const TypedSpec& query, const MTree& mt, const RuleSet& rs) {
  const TypeGraph& g = *mt.graph;
  const ClassSet& wanted = query.denotation;
  ResolvedQuery out;
  ClassSet reached = g.empty_set();

  for (const std::string& tag : rs.inventory()) {
    const CoverageRule* rule = rs.coverage_for(tag);
    if (rule == nullptr) continue;
    const ClassSet& standard = rule->target.denotation;
    const bool base = standard.intersects(wanted);

    TagPattern pat;
    pat.tag = tag;
    pat.via_coverage = base;
    pat.retrieved = base ? standard : g.empty_set();
    std::vector<std::string> excluded;
    std::vector<std::string> injected;
    std::vector<std::string> both;
    for (const ExceptionEntry* e : rs.exceptions_for(tag)) {
      const bool hit = e->into.denotation.intersects(wanted);
      if (hit) {
        pat.retrieved |= e->into.denotation;
        auto& dest = base ? both : injected;
        dest.insert(dest.end(), e->words.begin(), e->words.end());
      } else if (base) {
        excluded.insert(excluded.end(), e->words.begin(), e->words.end());
      }
    }

    if (base) {
      // Words whose exception reading also matches are wanted under both
      // readings and so stay unconstrained.
      if (!excluded.empty()) {
        pat.constraint = WordConstraint::not_equals;
        pat.words = std::move(excluded);
      }
    } else if (!injected.empty()) {
      pat.constraint = WordConstraint::equals;
      pat.words = std::move(injected);
    } else {
      continue;
    }

    ClassSet noise = pat.retrieved - wanted;
    if (!noise.empty() || !both.empty()) {
      TagNoise tn;
      tn.tag = tag;
      tn.classes = noise;
      tn.cover = minimal_cover(noise, g);
      tn.cover_text = render_cover(tn.cover, g);
      if (!both.empty()) {
        tn.notes.push_back("words \"" + join_words(both) +
                           "\" are retrieved under both their standard and their exception reading");
      }
      out.noise.entries.push_back(std::move(tn));
    }
    reached |= pat.retrieved;
    out.patterns.push_back(std::move(pat));
  }

  out.uncovered = wanted - reached;
  out.uncovered_cover = minimal_cover(out.uncovered, g);
  out.uncovered_text = render_cover(out.uncovered_cover, g);
  return out;
}

std::string render_patterns(const ResolvedQuery& r) {
  std::vector<std::string> parts;
  for (const TagPattern& p : r.patterns) {
    std::string s = "(pos = \"" + p.tag + "\"";
    if (p.constraint == WordConstraint::equals) s += " & word = \"" + join_words(p.words) + "\"";
    if (p.constraint == WordConstraint::not_equals) s += " & word != \"" + join_words(p.words) + "\"";
    s += ")";
    parts.push_back(std::move(s));
  }
  if (parts.empty()) return "[]";
  if (parts.size() == 1) return "[" + parts.front() + "]";
  std::string out = "[(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += "|";
    out += parts[i];
  }
  return out + ")]";
}

std::string render_query(const ResolvedQuery& r) {
  std::string out = render_patterns(r) + "\n";
  for (const TagNoise& tn : r.noise.entries) {
    if (!tn.classes.empty()) {
      std::size_t n = tn.classes.count();
      out += "WARN noise " + tn.tag + ": " + tn.cover_text + " [" + std::to_string(n) +
             (n == 1 ? " class]\n" : " classes]\n");
    }
    for (const std::string& note : tn.notes) out += "WARN noise " + tn.tag + ": " + note + "\n";
  }
  if (!r.uncovered.empty()) {
    std::size_t n = r.uncovered.count();
    out += "WARN uncovered: no physical tag retrieves " + r.uncovered_text + " [" + std::to_string(n) +
           (n == 1 ? " class]\n" : " classes]\n");
  }
  return out;
}

}  // namespace tagmap
