#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tagmap/class_set.hpp"
#include "tagmap/diagnostic.hpp"
#include "tagmap/lexer.hpp"
#include "tagmap/type_graph.hpp"

namespace tagmap {

enum class AtomOp { eq, ne };

/// AST of a Boolean specification expression.
struct SpecExpr {
  enum class Kind { atom, bare, conj, disj, neg };

  Kind kind = Kind::bare;
  // atom: feature `op` value; bare: feature holds the name.
  std::string feature;
  AtomOp op = AtomOp::eq;
  std::string value;
  bool value_quoted = false;
  std::vector<SpecExpr> children;
  SourceSpan span;

  static SpecExpr atom(std::string feature, AtomOp op, std::string value, bool quoted = false);
  static SpecExpr bare(std::string name);
  static SpecExpr conj(SpecExpr lhs, SpecExpr rhs);
  static SpecExpr disj(SpecExpr lhs, SpecExpr rhs);
  static SpecExpr negation(SpecExpr child);
};

/// Equality ignoring source spans.
bool structurally_equal(const SpecExpr& a, const SpecExpr& b);

/// Minimal-parenthesis rendering that reparses to a structurally equal AST.
std::string to_string(const SpecExpr& e);
/// `[` + to_string(e) + `]`.
std::string to_bracketed(const SpecExpr& e);

/// Parses `'[' expr ']' | expr`, with an optional trailing `.`.
Result<SpecExpr> parse_spec(std::string_view source);

/// Parses one specification from a token stream, stopping before the first
/// token that cannot continue it (used by the rule-file parser).
Result<SpecExpr> parse_spec(TokenStream& ts);

// ---------------------------------------------------------------------------
// Resolved literals and DNF

/// A resolved atomic constraint. `pos_eq`/`pos_ne` test hierarchy membership;
/// `feat_any` means "feature is appropriate" and arises only from negation.
struct Literal {
  enum class Kind { pos_eq, pos_ne, feat_eq, feat_ne, feat_any };
  Kind kind = Kind::pos_eq;
  std::size_t subject = 0;  // NodeId for pos literals, FeatureId otherwise
  std::size_t value = 0;    // ValueId for feat_eq / feat_ne
  SourceSpan span;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.kind == b.kind && a.subject == b.subject && a.value == b.value;
  }
};

using Conjunct = std::vector<Literal>;

struct Dnf {
  std::vector<Conjunct> disjuncts;
};

ClassSet denote(const Literal& lit, const TypeGraph& g);
ClassSet denote(const Conjunct& c, const TypeGraph& g);
ClassSet denote(const Dnf& dnf, const TypeGraph& g);

std::string to_string(const Literal& lit, const TypeGraph& g);
std::string to_string(const Conjunct& c, const TypeGraph& g);
std::string to_string(const Dnf& dnf, const TypeGraph& g);

// ---------------------------------------------------------------------------
// Type checking

struct TypeError {
  enum class Kind { unknown_name, malformed_atom, ill_typed, too_complex };
  Kind kind = Kind::ill_typed;
  std::string message;
  std::string disjunct;                  // pretty-printed offending disjunct
  std::vector<std::string> conflicting;  // mutually incompatible atoms
  std::vector<SourceSpan> spans;

  Diagnostic to_diagnostic() const;
};

/// A well-typed specification together with its denotation over U.
struct TypedSpec {
  SpecExpr expr;
  ClassSet denotation;
  std::vector<NodeId> compatible_leaves;

  std::string text() const { return to_bracketed(expr); }
};

/// Upper bound on DNF size before a specification is rejected as too complex.
inline constexpr std::size_t kMaxDisjuncts = 1u << 14;

Result<Dnf, TypeError> to_dnf(const SpecExpr& e, const TypeGraph& g);

/// Direct closed-world denotation: `!e` is the complement restricted to
/// classes where every feature mentioned in `e` is appropriate.
Result<ClassSet, TypeError> denote(const SpecExpr& e, const TypeGraph& g);

/// Resolves names, converts to DNF, and requires every disjunct to denote at
/// least one terminal class.
Result<TypedSpec, TypeError> typecheck(const SpecExpr& e, const TypeGraph& g);

}  // namespace tagmap
