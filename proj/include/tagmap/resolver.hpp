#pragma once

#include <string>
#include <vector>

#include "tagmap/class_set.hpp"
#include "tagmap/cover.hpp"
#include "tagmap/mtree.hpp"
#include "tagmap/rules.hpp"
#include "tagmap/spec_expr.hpp"

namespace tagmap {

enum class WordConstraint { none, equals, not_equals };

struct TagPattern {
  std::string tag;
  WordConstraint constraint = WordConstraint::none;
  std::vector<std::string> words;  // exception-entry order
  // Classes the pattern retrieves: the coverage reading (unless only exception
  // words are retrieved) plus the readings of matching exception words.
  ClassSet retrieved;
  bool via_coverage = false;
};

struct TagNoise {
  std::string tag;
  ClassSet classes;  // retrieved classes outside the query
  Cover cover;
  std::string cover_text;
  std::vector<std::string> notes;
};

struct NoiseReport {
  std::vector<TagNoise> entries;  // pattern order; only tags with noise or notes
};

struct ResolvedQuery {
  std::vector<TagPattern> patterns;  // inventory order
  NoiseReport noise;
  ClassSet uncovered;
  Cover uncovered_cover;
  std::string uncovered_text;
};

/// Computes the physical-tag patterns retrieving the query's classes, the
/// lexical constraints induced by the exception lexicon, and the noise to
/// expect from each included tag.
ResolvedQuery resolve(const TypedSpec& query, const MTree& mt, const RuleSet& rs);

/// `[((pos = "VB" & word != "be|do|have")|(pos = "VBD"))]` followed by WARN
/// lines for noise and uncovered classes, one per line.
std::string render_query(const ResolvedQuery& r);
/// Only the bracketed disjunction.
std::string render_patterns(const ResolvedQuery& r);

}  // namespace tagmap
