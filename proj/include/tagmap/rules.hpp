#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagmap/diagnostic.hpp"
#include "tagmap/spec_expr.hpp"
#include "tagmap/type_graph.hpp"

namespace tagmap {

struct CoverageRule {
  std::string tag;
  TypedSpec target;
  SourceSpan span;
};

/// `[w1, w2, ...] << [pos = 'TAG'] >> <spec>.` -- the listed words, when
/// tagged TAG, take the `into` reading instead of the coverage reading.
struct ExceptionEntry {
  std::vector<std::string> words;
  std::string out_of;
  TypedSpec into;
  SourceSpan span;
};

class RuleSet {
 public:
  const std::string& name() const { return name_; }
  const std::string& tagset_name() const { return tagset_name_; }
  /// Declared physical inventory, in declaration order.
  const std::vector<std::string>& inventory() const { return inventory_; }
  bool in_inventory(std::string_view tag) const;

  const std::map<std::string, CoverageRule, std::less<>>& coverage() const { return coverage_; }
  const CoverageRule* coverage_for(std::string_view tag) const;

  const std::vector<ExceptionEntry>& exceptions() const { return exceptions_; }
  /// Entries whose out-of tag is `tag`, in entry order.
  std::vector<const ExceptionEntry*> exceptions_for(std::string_view tag) const;
  const ExceptionEntry* exception_for(std::string_view word, std::string_view tag) const;

  /// Non-fatal findings from compilation (e.g. exceptions that change nothing).
  const Diagnostics& warnings() const { return warnings_; }

  /// Copies with rules removed, for what-if consistency checks.
  RuleSet without_coverage(std::string_view tag) const;
  RuleSet without_exception(std::size_t index) const;

 private:
  void rebuild_word_index();

  std::string name_;
  std::string tagset_name_;
  std::vector<std::string> inventory_;
  std::map<std::string, CoverageRule, std::less<>> coverage_;
  std::vector<ExceptionEntry> exceptions_;
  std::map<std::pair<std::string, std::string>, std::size_t> word_index_;
  Diagnostics warnings_;

  friend Result<RuleSet> parse_rules(std::string_view, const TypeGraph&, const std::vector<std::string>*);
};

/// Compiles a rule file:
///
///   mapping <name> for tagset <tagset-name>
///   tags <TAG>, <TAG>, ...
///   [pos = 'TAG'] => <spec> .
///   [word, word, ...] << [pos = 'TAG'] >> <spec> .
///
/// Diagnostics are collected for the whole file. When `inventory` is given it
/// replaces the header's `tags` list (which then becomes optional).
Result<RuleSet> parse_rules(std::string_view source, const TypeGraph& g,
                            const std::vector<std::string>* inventory = nullptr);

inline Result<RuleSet> parse_rules(std::string_view source, const TypeGraph& g,
                                   const std::vector<std::string>& inventory) {
  return parse_rules(source, g, &inventory);
}

enum class Provenance { coverage, exception };

struct Reading {
  const TypedSpec* spec = nullptr;
  Provenance provenance = Provenance::coverage;
  const ExceptionEntry* entry = nullptr;
};

/// Raised when a tag has no coverage rule.
struct DefinitionHoleError {
  std::string tag;

  std::string message() const { return "definition hole: no coverage rule for tag '" + tag + "'"; }
};

/// The exception reading when (word, tag) is in the exception lexicon,
/// otherwise the tag's coverage reading.
Result<Reading, DefinitionHoleError> standard_reading(const RuleSet& rs, std::string_view word, std::string_view tag);

}  // namespace tagmap
